//! Deciding whether a radical lies in a cyclotomic field ℚ(ζ_N).
//!
//! A subfield of an abelian field is normal, so a positive real radical
//! `ρ ∈ ℚ(ζ_N)` has a minimal polynomial with only real roots; for
//! radicals this leaves `ρ² ∈ ℚ`. Square roots inside ℚ(ζ_N) are settled by
//! exhibiting them (Gauss sums, ζ₄, ζ₈ + ζ₈⁷, each squared exactly) and
//! comparing the count with the number of quadratic subfields, which is
//! `|G/G²| − 1` for `G = (ℤ/N)×`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::algebra::radical_minpoly;
use super::cyclo::CycloElement;
use crate::arith::{factor_u64, gcd_u64, legendre, mul_mod};
use crate::error::{domain, resource, Result};
use crate::radical::Radical;

/// `|G/G²| − 1` for `G = (ℤ/N)×`, by listing squares.
pub fn quadratic_subfield_count(n: u64) -> usize {
    if n <= 2 {
        return 0;
    }
    let units: Vec<u64> = (1..n).filter(|&a| gcd_u64(a, n) == 1).collect();
    let squares: BTreeSet<u64> = units.iter().map(|&a| mul_mod(a, a, n)).collect();
    units.len() / squares.len() - 1
}

/// Squarefree part of a nonzero rational, keeping the sign.
fn squarefree_class(c: &BigRational) -> i64 {
    let sign = if c.is_negative() { -1 } else { 1 };
    let prod = (c.numer() * c.denom()).abs();
    let f = crate::arith::factorize(&prod).expect("nonzero");
    let mut d: i64 = 1;
    for (p, e) in f.factors {
        if e % 2 == 1 {
            d *= p.to_i64().expect("small prime");
        }
    }
    sign * d
}

fn class_mul(a: i64, b: i64) -> i64 {
    let g = num_integer::gcd(a.abs(), b.abs());
    (a / g) * (b / g)
}

/// Exact square roots of the basic classes inside ℚ(ζ_N).
pub fn basic_square_roots(n: u64) -> Result<Vec<(i64, CycloElement)>> {
    let mut out = Vec::new();
    if n % 4 == 0 {
        out.push((-1, CycloElement::zeta(4, 1)?));
    }
    if n % 8 == 0 {
        out.push((2, CycloElement::zeta(8, 1)?.add(&CycloElement::zeta(8, 7)?)));
    }
    for (q, _) in factor_u64(n) {
        if q == 2 {
            continue;
        }
        let mut g = CycloElement::zero(q)?;
        for i in 1..q {
            let s = legendre(i as i64, q)?;
            g = g.add(&CycloElement::zeta(q, i as i64)?.scale(&BigRational::from_integer(s.into())));
        }
        let star = if q % 4 == 1 { q as i64 } else { -(q as i64) };
        out.push((star, g));
    }
    for (d, s) in &out {
        let sq = s.mul(s).as_rational();
        if sq != Some(BigRational::from_integer(BigInt::from(*d))) {
            return resource(format!("square root certificate for {d} failed"));
        }
    }
    Ok(out)
}

/// Square classes `d` (squarefree, signed) with `√d ∈ ℚ(ζ_N)`.
pub fn square_classes(n: u64) -> Result<BTreeSet<i64>> {
    let mut classes = BTreeSet::from([1i64]);
    for (d, _) in basic_square_roots(n)? {
        let next: Vec<i64> = classes.iter().map(|&c| class_mul(c, d)).collect();
        classes.extend(next);
    }
    if classes.len() != quadratic_subfield_count(n) + 1 {
        return resource(format!("quadratic subfields of ℚ(ζ_{n}) not all exhibited"));
    }
    Ok(classes)
}

/// True if `a ∈ ℚ(ζ_N)`; the torsion denominator of `a` must divide `N`.
pub fn radical_in_cyclotomic(a: &Radical, n: u64) -> Result<bool> {
    radical_in_cyclotomic_with(a, n, &square_classes(n)?)
}

/// As [`radical_in_cyclotomic`] with precomputed [`square_classes`].
pub fn radical_in_cyclotomic_with(a: &Radical, n: u64, classes: &BTreeSet<i64>) -> Result<bool> {
    let m = a.torsion().denom().to_u64().expect("small torsion");
    if n % m != 0 {
        return domain(format!("torsion order {m} does not divide {n}"));
    }
    let rho = Radical::make(BigRational::zero(), a.exponents().iter().map(|(&p, e)| (BigInt::from(p), e.clone())))?;
    if rho.as_rational().is_some() {
        return Ok(true);
    }
    let g = radical_minpoly(&rho)?;
    if g.real_root_count() < g.degree() {
        return Ok(false);
    }
    match g.degree() {
        2 => {
            let c = rho.pow(2).as_rational().expect("degree-two radical squares into ℚ");
            Ok(classes.contains(&squarefree_class(&c)))
        }
        d => resource(format!("totally real radical of degree {d}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Radical {
        s.parse().unwrap()
    }

    #[test]
    fn quadratic_counts() {
        assert_eq!(quadratic_subfield_count(5), 1);
        assert_eq!(quadratic_subfield_count(8), 3);
        assert_eq!(quadratic_subfield_count(12), 3);
        assert_eq!(quadratic_subfield_count(840), 31);
        assert_eq!(square_classes(840).unwrap().len(), 32);
        assert_eq!(square_classes(5).unwrap(), BTreeSet::from([1, 5]));
        assert_eq!(square_classes(4).unwrap(), BTreeSet::from([-1, 1]));
    }

    #[test]
    fn memberships() {
        assert!(radical_in_cyclotomic(&r("rt(2,2)"), 8).unwrap());
        assert!(!radical_in_cyclotomic(&r("rt(2,2)"), 4).unwrap());
        assert!(radical_in_cyclotomic(&r("zeta(8)*rt(2,2)"), 8).unwrap());
        assert!(radical_in_cyclotomic(&r("rt(5,2)"), 5).unwrap());
        assert!(!radical_in_cyclotomic(&r("rt(5,4)"), 840).unwrap());
        assert!(radical_in_cyclotomic(&r("rt(210,2)"), 840).unwrap());
        assert!(radical_in_cyclotomic(&r("zeta(7)*rt(3,2)/rt(7,2)"), 840).unwrap());
        assert!(!radical_in_cyclotomic(&r("rt(11,2)"), 840).unwrap());
        assert!(!radical_in_cyclotomic(&r("rt(2,3)"), 840).unwrap());
        assert!(radical_in_cyclotomic(&r("zeta(8)"), 4).is_err());
    }
}
