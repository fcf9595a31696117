//! Kneser's condition, Lang's irreducibility test and Schinzel's criterion.
//!
//!     cargo run --example criteria

use radicals::engine::{kneser_condition, lang_irreducible, schinzel_abelian};
use radicals::{RadicalGroup, Rational};

fn main() -> radicals::Result<()> {
    for spec in ["rt(2,4)", "rt(-4,4)", "zeta(3), rt(2,3)", "zeta(8), rt(2,2)"] {
        let v = kneser_condition(&RadicalGroup::parse(spec)?);
        println!("<Q*, {spec}>: {}", v.describe());
    }
    for (a, n) in [(-4i64, 4u32), (2, 4), (-8, 3), (16, 4), (-27, 6)] {
        let q = Rational::from_integer(a.into());
        let s = schinzel_abelian(&q, n)?;
        println!("x^{n} - ({a}): irreducible {}, abelian {}", lang_irreducible(&q, n)?, s.abelian);
    }
    Ok(())
}
