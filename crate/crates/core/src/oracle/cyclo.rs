//! Arithmetic in cyclotomic fields ℚ(ζ_N) on the power basis of ζ_N.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use crate::arith::{euler_phi, factor_u64, gcd_u64};
use crate::error::{domain, resource, Result};
use crate::radical::numeric::{root_of_unity, ComplexInterval, Interval};

/// Largest conductor accepted by [`CycloElement`].
pub const MAX_CONDUCTOR: u64 = 100_000;

/// Integer coefficients of Φ_n, ascending.
pub fn cyclotomic_coefficients(n: u64) -> Result<Vec<i64>> {
    if n == 0 {
        return domain("cyclotomic polynomial of order 0");
    }
    if n > MAX_CONDUCTOR {
        return resource(format!("conductor {n} exceeds {MAX_CONDUCTOR}"));
    }
    // Φ_{mp}(x) = Φ_m(x^p) / Φ_m(x) for p ∤ m, then Φ_n(x) = Φ_rad(x^{n/rad})
    let mut phi: Vec<i128> = vec![-1, 1];
    let mut rad = 1u64;
    for (p, _) in factor_u64(n) {
        let spread = spread(&phi, p as usize);
        phi = exact_div_monic(&spread, &phi);
        rad *= p;
    }
    let phi = spread(&phi, (n / rad) as usize);
    phi.into_iter()
        .map(|c| i64::try_from(c).or_else(|_| resource("cyclotomic coefficient overflow")))
        .collect()
}

pub fn cyclotomic_polynomial(n: u64) -> Result<Poly> {
    Ok(Poly::from_ints(&cyclotomic_coefficients(n)?))
}

fn spread(f: &[i128], k: usize) -> Vec<i128> {
    let mut out = vec![0; (f.len() - 1) * k + 1];
    for (i, &c) in f.iter().enumerate() {
        out[i * k] = c;
    }
    out
}

fn exact_div_monic(a: &[i128], b: &[i128]) -> Vec<i128> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![0i128; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db];
        q[i] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] -= c * bj;
            }
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// An element of ℚ(ζ_N), reduced modulo Φ_N.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloElement {
    n: u64,
    coeffs: Vec<BigRational>,
    modulus: std::sync::Arc<Vec<i64>>,
}

impl CycloElement {
    pub fn zero(n: u64) -> Result<Self> {
        let modulus = std::sync::Arc::new(cyclotomic_coefficients(n)?);
        let deg = modulus.len() - 1;
        Ok(CycloElement { n, coeffs: vec![BigRational::zero(); deg], modulus })
    }

    pub fn from_rational(n: u64, q: &BigRational) -> Result<Self> {
        let mut z = Self::zero(n)?;
        z.coeffs[0] = q.clone();
        Ok(z)
    }

    pub fn one(n: u64) -> Result<Self> {
        Self::from_rational(n, &BigRational::one())
    }

    /// ζ_N^k.
    pub fn zeta(n: u64, k: i64) -> Result<Self> {
        let z = Self::zero(n)?;
        let e = k.rem_euclid(n as i64) as usize;
        let mut v = vec![BigRational::zero(); e + 1];
        v[e] = BigRational::one();
        Ok(z.with(v))
    }

    /// Element with coefficients `c_k` on ζ_N^k, any length.
    pub fn from_coeffs(n: u64, coeffs: &[BigRational]) -> Result<Self> {
        let z = Self::zero(n)?;
        let mut wrapped = vec![BigRational::zero(); (n as usize).min(coeffs.len().max(1))];
        for (k, c) in coeffs.iter().enumerate() {
            wrapped[k % n as usize] += c;
        }
        Ok(z.with(wrapped))
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    /// Coefficients on `1, ζ_N, …, ζ_N^{φ(N)-1}`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn with(&self, mut v: Vec<BigRational>) -> Self {
        let m = &self.modulus;
        let d = m.len() - 1;
        if v.len() > d {
            for i in (d..v.len()).rev() {
                let c = std::mem::take(&mut v[i]);
                if c.is_zero() {
                    continue;
                }
                for (j, &mj) in m.iter().enumerate().take(d) {
                    if mj != 0 {
                        v[i - d + j] -= &c * BigInt::from(mj);
                    }
                }
            }
        }
        v.resize(d, BigRational::zero());
        CycloElement { n: self.n, coeffs: v, modulus: self.modulus.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as a rational, if it lies in ℚ.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    fn check_same(&self, o: &Self) {
        assert_eq!(self.n, o.n, "conductors differ; embed first");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_same(o);
        let v = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        CycloElement { n: self.n, coeffs: v, modulus: self.modulus.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let v = self.coeffs.iter().map(|a| a * q).collect();
        CycloElement { n: self.n, coeffs: v, modulus: self.modulus.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check_same(o);
        let d = self.coeffs.len();
        let mut v = vec![BigRational::zero(); (2 * d).saturating_sub(1).max(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        self.with(v)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.with(vec![BigRational::one()]);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// The same element viewed in ℚ(ζ_M) for a multiple M of N.
    pub fn embed(&self, m: u64) -> Result<Self> {
        if m % self.n != 0 {
            return domain(format!("ℚ(ζ_{}) is not a subfield of ℚ(ζ_{m})", self.n));
        }
        let target = Self::zero(m)?;
        let step = (m / self.n) as usize;
        let mut v = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[k * step] = c.clone();
        }
        Ok(target.with(v))
    }

    /// Image under the automorphism ζ_N ↦ ζ_N^a.
    pub fn galois(&self, a: i64) -> Result<Self> {
        let n = self.n as i64;
        if gcd_u64(a.rem_euclid(n) as u64, self.n) != 1 {
            return domain(format!("{a} is not a unit modulo {n}"));
        }
        let mut v = vec![BigRational::zero(); self.n as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[(k as i64 * a).rem_euclid(n) as usize] += c;
        }
        Ok(self.with(v))
    }

    /// Certified enclosure of the complex value.
    pub fn numeric_eval(&self, bits: u32) -> ComplexInterval {
        let prec = bits.max(64);
        let mut acc = ComplexInterval::real(Interval::zero(prec));
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let z = root_of_unity(&BigRational::new(BigInt::from(k), BigInt::from(self.n)), prec);
            acc = acc.add(&z.scale(c));
        }
        acc
    }
}

/// True if the two elements are equal in a common cyclotomic field.
pub fn verify_identity(lhs: &CycloElement, rhs: &CycloElement) -> Result<bool> {
    let m = num_integer::lcm(lhs.n, rhs.n);
    Ok(lhs.embed(m)? == rhs.embed(m)?)
}

/// Degree of ℚ(ζ_N) over ℚ.
pub fn cyclotomic_degree(n: u64) -> u64 {
    euler_phi(n).expect("positive conductor")
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let base = match k {
                0 => String::new(),
                1 => format!("zeta({})", self.n),
                _ => format!("zeta({})^{k}", self.n),
            };
            if base.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{base}")?;
            } else {
                write!(f, "{mag}*{base}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_coefficients(1).unwrap(), vec![-1, 1]);
        assert_eq!(cyclotomic_coefficients(8).unwrap(), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_coefficients(12).unwrap(), vec![1, 0, -1, 0, 1]);
        // first coefficient of absolute value 2 appears in Φ_105
        assert!(cyclotomic_coefficients(105).unwrap().iter().any(|&c| c == -2));
        for n in 1..200u64 {
            let c = cyclotomic_coefficients(n).unwrap();
            assert_eq!(c.len() as u64 - 1, cyclotomic_degree(n));
        }
        // x^n − 1 is the product over divisors
        for n in [12u64, 30, 36] {
            let mut prod = Poly::one();
            for d in crate::arith::divisors(n) {
                prod = &prod * &cyclotomic_polynomial(d).unwrap();
            }
            assert_eq!(prod, Poly::binomial(n as usize, &q(1)));
        }
        assert!(cyclotomic_coefficients(0).is_err());
        assert!(cyclotomic_coefficients(MAX_CONDUCTOR + 1).is_err());
    }

    #[test]
    fn sum_of_roots_vanishes() {
        for n in 2..=50u64 {
            let mut s = CycloElement::zero(n).unwrap();
            for k in 0..n as i64 {
                s = s.add(&CycloElement::zeta(n, k).unwrap());
            }
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn zeta_is_a_root_of_phi() {
        for n in [5u64, 8, 12, 15] {
            let phi = cyclotomic_coefficients(n).unwrap();
            let mut acc = CycloElement::zero(n).unwrap();
            for (k, &c) in phi.iter().enumerate() {
                acc = acc.add(&CycloElement::zeta(n, k as i64).unwrap().scale(&q(c)));
            }
            assert!(acc.is_zero());
            assert_eq!(CycloElement::zeta(n, 1).unwrap().pow(n), CycloElement::one(n).unwrap());
        }
    }

    #[test]
    fn sqrt_two_identity() {
        let s = CycloElement::zeta(8, 1).unwrap().add(&CycloElement::zeta(8, 7).unwrap());
        assert_eq!(s.mul(&s).as_rational(), Some(q(2)));
        assert_eq!(s.to_string(), "zeta(8) - zeta(8)^3");
        let v = s.numeric_eval(128);
        assert!((v.re.mid_f64() - 2f64.sqrt()).abs() < 1e-12 && v.im.contains_zero());
    }

    #[test]
    fn embedding_and_galois() {
        let z4 = CycloElement::zeta(4, 1).unwrap();
        let z8 = CycloElement::zeta(8, 1).unwrap();
        assert_eq!(z4.embed(8).unwrap(), z8.pow(2));
        assert!(verify_identity(&z4, &z8.pow(2)).unwrap());
        assert!(z4.embed(6).is_err());
        // complex conjugation fixes ζ₈ + ζ₈⁷
        let s = z8.add(&CycloElement::zeta(8, 7).unwrap());
        assert_eq!(s.galois(-1).unwrap(), s);
        assert_eq!(s.galois(3).unwrap(), s.neg());
        assert!(s.galois(2).is_err());
    }

    #[test]
    fn field_multiplication_matches_numeric() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in [7u64, 9, 20] {
            for _ in 0..10 {
                let mk = |rng: &mut rand_chacha::ChaCha8Rng| {
                    let c: Vec<BigRational> = (0..n).map(|_| q(rng.gen_range(-3..4))).collect();
                    CycloElement::from_coeffs(n, &c).unwrap()
                };
                let (a, b) = (mk(&mut rng), mk(&mut rng));
                let prod = a.mul(&b).numeric_eval(96);
                let direct = a.numeric_eval(96).mul(&b.numeric_eval(96));
                assert!((prod.re.mid_f64() - direct.re.mid_f64()).abs() < 1e-9);
                assert!((prod.im.mid_f64() - direct.im.mid_f64()).abs() < 1e-9);
            }
        }
    }
}
