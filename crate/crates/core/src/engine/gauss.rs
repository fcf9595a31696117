//! Gauss sums and explicit cyclotomic expressions for abelian radicals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::entangle::sqrt_q_star;
use crate::arith::{is_prime_u64, lcm_u64, legendre};
use crate::error::{domain, resource, Result};
use crate::oracle::CycloElement;
use crate::radical::Radical;

/// `g = ∑_{i=1}^{p−1} (i/p)·ζ_p^i`, checked to satisfy `g² = (−1)^{(p−1)/2}·p`.
pub fn gauss_sum(p: u64) -> Result<CycloElement> {
    if p == 2 || !is_prime_u64(p) {
        return domain(format!("{p} is not an odd prime"));
    }
    let mut coeffs = vec![BigRational::from_integer(BigInt::from(0)); p as usize];
    for i in 1..p {
        coeffs[i as usize] = BigRational::from_integer(BigInt::from(legendre(i as i64, p)?));
    }
    let g = CycloElement::from_coeffs(p, &coeffs)?;
    let star = if p % 4 == 1 { p as i64 } else { -(p as i64) };
    if g.mul(&g).as_rational() != Some(BigRational::from_integer(BigInt::from(star))) {
        return resource(format!("Gauss sum for {p} failed its square check"));
    }
    Ok(g)
}

/// A radical written exactly inside ℚ(ζ_N).
#[derive(Clone, Debug)]
pub struct CyclotomicExpression {
    pub conductor: u64,
    pub value: CycloElement,
}

impl fmt::Display for CyclotomicExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in Q(zeta({}))", self.value, self.conductor)
    }
}

/// Decide `x = a` or `x = −a` for `x² = a²`, refining precision until the
/// enclosures separate.
fn same_sign(x: &CycloElement, a: &Radical) -> Result<bool> {
    let mut bits = 64;
    while bits <= 8192 {
        let xv = x.numeric_eval(bits);
        let av = a.numeric_eval(bits);
        let minus = xv.sub(&av).contains_zero();
        let plus = xv.add(&av).contains_zero();
        if minus != plus {
            return Ok(minus);
        }
        bits *= 2;
    }
    resource("sign of a square root could not be separated numerically")
}

/// `c·ζ^u` inside ℚ(ζ_n) for rational `c` and `u`, if it lies there.
fn scaled_root_of_unity(n: u64, c: &BigRational, u: &BigRational) -> Result<Option<CycloElement>> {
    let m = u.denom().to_u64().expect("small torsion");
    let j = u.numer().to_i64().expect("small torsion");
    let (z, sign) = if n % m == 0 {
        (CycloElement::zeta(n, j * (n / m) as i64)?, BigRational::one())
    } else if m % 4 == 2 && n % (m / 2) == 0 {
        // ζ_m^j = −ζ_{m/2}^{j'} with j' ≡ j + m/2 (mod m) halved
        let h = m / 2;
        let jj = (j + h as i64).rem_euclid(m as i64) / 2;
        (CycloElement::zeta(n, jj * (n / h) as i64)?, -BigRational::one())
    } else {
        return Ok(None);
    };
    Ok(Some(z.scale(&(c * sign))))
}

fn rational_and_torsion(a: &Radical) -> Option<(BigRational, BigRational)> {
    let unit = Radical::make(BigRational::from_integer(0.into()), a.exponents().iter().map(|(&p, e)| (BigInt::from(p), e.clone())))
        .ok()?;
    Some((unit.as_rational()?, a.torsion().clone()))
}

/// Exact expansion of `a` in some ℚ(ζ_N) when `a` generates an abelian
/// extension, i.e. when every exponent lies in `½ℤ`.
///
/// Square roots come from Gauss sums (`√q*`) and from `1 + ζ₄ = ζ₈√2`; the
/// sign of each Gauss sum is fixed numerically, then `value² = a²` is checked
/// exactly and the overall sign once more numerically.
pub fn cyclotomic_expression(a: &Radical) -> Result<Option<CyclotomicExpression>> {
    let two = BigRational::from_integer(BigInt::from(2));
    if !a.exponents().values().all(|e| (e * &two).is_integer()) {
        return Ok(None);
    }
    let mut rest = a.clone();
    let mut parts: Vec<(u64, CycloElement)> = Vec::new();
    for (&p, e) in a.exponents() {
        if e.is_integer() || p == 2 {
            continue;
        }
        let s = sqrt_q_star(p);
        let mut g = gauss_sum(p)?;
        if !same_sign(&g, &s)? {
            g = g.neg();
        }
        rest = rest.div(&s);
        parts.push((p, g));
    }
    if !a.exponent(2).is_integer() {
        rest = rest.div(&Radical::one_plus_i());
        parts.push((4, CycloElement::one(4)?.add(&CycloElement::zeta(4, 1)?)));
    }
    let (c, u) = rational_and_torsion(&rest).expect("only integral exponents remain");
    let m = u.denom().to_u64().expect("small torsion");
    let mut n = parts.iter().fold(if m % 4 == 2 { m / 2 } else { m }, |acc, (k, _)| lcm_u64(acc, *k));
    if n % 4 == 2 {
        n /= 2;
    }
    let n = n.max(1);
    let mut value = scaled_root_of_unity(n, &c, &u)?.expect("conductor covers the torsion");
    for (_, part) in &parts {
        value = value.mul(&part.embed(n)?);
    }
    // exact check of the square, then the sign
    let sq = a.pow(2);
    let (c2, u2) = rational_and_torsion(&sq).expect("squares have integral exponents");
    match scaled_root_of_unity(n, &c2, &u2)? {
        Some(target) if value.mul(&value) == target => {}
        _ => return resource(format!("expansion of {a} failed its exact square check")),
    }
    if !same_sign(&value, a)? {
        return resource(format!("expansion of {a} has the wrong sign"));
    }
    Ok(Some(CyclotomicExpression { conductor: n, value }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Radical {
        s.parse().unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn gauss_sums() {
        let g5 = gauss_sum(5).unwrap();
        let expect: Vec<BigRational> = [0, 1, -1, -1, 1].iter().map(|&c| q(c)).collect();
        let lit = CycloElement::from_coeffs(5, &expect).unwrap();
        assert_eq!(g5, lit);
        assert_eq!(gauss_sum(3).unwrap().pow(2).as_rational(), Some(q(-3)));
        assert_eq!(gauss_sum(7).unwrap().pow(2).as_rational(), Some(q(-7)));
        assert!(gauss_sum(2).is_err() && gauss_sum(9).is_err());
    }

    #[test]
    fn expressions() {
        let e = cyclotomic_expression(&r("rt(2,2)")).unwrap().unwrap();
        assert_eq!(e.conductor, 8);
        assert_eq!(e.value, CycloElement::zeta(8, 1).unwrap().add(&CycloElement::zeta(8, 7).unwrap()));
        let e = cyclotomic_expression(&r("rt(-4,4)")).unwrap().unwrap();
        assert_eq!(e.conductor, 4);
        assert_eq!(e.value, CycloElement::one(4).unwrap().add(&CycloElement::zeta(4, 1).unwrap()));
        assert!(cyclotomic_expression(&r("rt(2,3)")).unwrap().is_none());
        assert_eq!(cyclotomic_expression(&r("rt(-3,2)")).unwrap().unwrap().conductor, 3);
        assert_eq!(cyclotomic_expression(&r("rt(3,2)")).unwrap().unwrap().conductor, 12);
        assert_eq!(cyclotomic_expression(&r("rt(5,2)")).unwrap().unwrap().conductor, 5);
        assert_eq!(cyclotomic_expression(&r("zeta(6)")).unwrap().unwrap().conductor, 3);
        assert_eq!(cyclotomic_expression(&r("3/2*zeta(7)^2*rt(21,2)")).unwrap().unwrap().conductor, 21);
        let eta = cyclotomic_expression(&Radical::eta()).unwrap().unwrap();
        assert_eq!(8 % eta.conductor, 0);
    }

    #[test]
    fn square_roots_up_to_thirty() {
        for d in 2..=30i64 {
            if crate::arith::factor_u64(d as u64).iter().any(|&(_, e)| e > 1) {
                continue;
            }
            let a = Radical::rt(&q(d), 2).unwrap();
            let e = cyclotomic_expression(&a).unwrap().unwrap();
            assert_eq!(e.value.pow(2).as_rational(), Some(q(d)));
        }
    }
}
