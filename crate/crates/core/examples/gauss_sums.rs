//! Quadratic Gauss sums and explicit expressions of radicals in cyclotomic
//! fields.
//!
//!     cargo run --example gauss_sums

use radicals::engine::{cyclotomic_expression, gauss_sum};
use radicals::Radical;

fn main() -> radicals::Result<()> {
    for p in [3, 5, 7, 11, 13] {
        let g = gauss_sum(p)?;
        println!("g_{p} = {g},  g^2 = {}", g.pow(2).as_rational().expect("rational"));
    }
    for s in ["rt(2,2)", "rt(5,2)", "rt(-4,4)", "rt(6,2)", "zeta(3)*rt(-7,2)", "rt(2,3)"] {
        let a: Radical = s.parse()?;
        match cyclotomic_expression(&a)? {
            Some(e) => println!("{s} = {e}"),
            None => println!("{s} lies in no cyclotomic field"),
        }
    }
    Ok(())
}
