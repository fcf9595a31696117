//! Degrees of radical extensions of ℚ, with the per-prime breakdown.
//!
//!     cargo run --example degrees

use radicals::engine::total_degree;
use radicals::RadicalGroup;

fn main() -> radicals::Result<()> {
    let groups = [
        "zeta(4), rt(2,4)",
        "rt(-4,4)",
        "rt(5,2), zeta(5)",
        "zeta(3), rt(2,3)",
        "rt(2,3), zeta(7)",
        "zeta(3), zeta(8)^3*rt(6,2)",
    ];
    for spec in groups {
        let g = RadicalGroup::parse(spec)?;
        let r = total_degree(&g)?;
        println!("<Q*, {spec}>: degree {}, index {}", r.total, r.index);
        for (ell, f) in &r.per_prime {
            println!("    l = {ell}: {:?}, |G_l| = {}, |G_l,E| = {}", f.branch, f.index, f.entangled_index);
        }
    }
    Ok(())
}
