//! Radical extensions of 𝔽_p, where every radical is a root of unity times
//! an element of 𝔽_p.
//!
//!     cargo run --example finite_fields

use radicals::engine::{entanglement_params, total_degree_ff};
use radicals::rgroup::{ff_degree, ff_group};
use radicals::BaseField;

fn main() -> radicals::Result<()> {
    for (p, e) in [(5, 8), (3, 16), (7, 30), (7, 24), (13, 12 * 9), (2, 7 * 5)] {
        let g = ff_group(p, e)?;
        let r = total_degree_ff(&g)?;
        println!("F_{p}(zeta({e})): degree {} (brute force {}), index {}, Kneser {}", r.total, ff_degree(&g), r.index, r.kneser);
        for (ell, f) in &r.per_prime {
            println!("    l = {ell}: {:?}, degree {}", f.branch, f.degree);
        }
    }
    let t = entanglement_params(BaseField::Fp(7), 3)?;
    println!("over F_7, l = 3: t = {}, w = {:?}", t.t, t.w.map(|w| w.to_string()));
    Ok(())
}
