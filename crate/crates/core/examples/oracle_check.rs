//! Engine degrees against the independent oracle: minimal polynomials,
//! factorization and primitive elements.
//!
//!     cargo run --release --example oracle_check

use radicals::engine::total_degree;
use radicals::oracle::{compositum_degree, factor_over_q, radical_minpoly, Poly, DEFAULT_SEED};
use radicals::RadicalGroup;

fn main() -> radicals::Result<()> {
    let f = Poly::from_ints(&[4, 0, 0, 0, 1]);
    let factors: Vec<String> = factor_over_q(&f)?.iter().map(|(g, _)| format!("({g})")).collect();
    println!("x^4 + 4 = {}", factors.join(" * "));
    println!("minpoly of rt(-4,4): {}", radical_minpoly(&"rt(-4,4)".parse()?)?);

    for spec in ["rt(-4,4), rt(3,4)", "rt(5,2), zeta(5)", "zeta(3), zeta(8)^3*rt(6,2)", "rt(2,2), zeta(5)", "zeta(9), rt(3,3)"]
    {
        let g = RadicalGroup::parse(spec)?;
        let engine = total_degree(&g)?.total;
        let oracle = compositum_degree(g.generators(), 64, DEFAULT_SEED)?.degree;
        println!("<Q*, {spec}>: engine {engine}, oracle {oracle}");
        assert_eq!(engine, oracle as u64);
    }
    Ok(())
}
