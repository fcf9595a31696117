//! Generators of the radicals inside K(ζ_{2𝒫}) and the parameters t, w, s.
//!
//!     cargo run --example entanglement

use radicals::engine::{cyclotomic_radicals, entangled_generators};
use radicals::{BaseField, Radical};

fn main() -> radicals::Result<()> {
    for base in [BaseField::Rationals, BaseField::Fp(7), BaseField::Fp(13)] {
        for ell in [2, 3, 5] {
            if base.characteristic() == ell {
                continue;
            }
            let e = entangled_generators(base, ell)?;
            let w = e.params.w.map_or("undefined".to_string(), |w| w.to_string());
            println!("{base}, l = {ell}: {}  (t = {}, w = {w})", e.describe(), e.params.t);
        }
    }

    // which square roots lie in ℚ(ζ₂₄)?
    let lambda = cyclotomic_radicals(24);
    for d in [-1i64, 2, 3, 5, 6, -3, 7] {
        let r = Radical::rt(&radicals::Rational::from_integer(d.into()), 2)?;
        println!("rt({d},2) in Q(zeta(24)): {}", lambda.contains(&r));
    }
    Ok(())
}
