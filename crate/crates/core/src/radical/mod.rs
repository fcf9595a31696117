//! Radicals `ζ^u · ∏ p^{e_p}` in canonical form.
//!
//! A [`Radical`] names one specific complex number: `ζ = e^{2πi·u}` with
//! `u ∈ [0, 1)` and real positive prime powers. Canonical forms are unique, so
//! structural equality is numeric equality.

pub mod numeric;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{factorize, is_prime_u64};
use crate::error::{domain, resource, Error, Result};

pub use numeric::{pi, real_power, root_of_unity, ComplexInterval, Interval};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Radical {
    torsion: BigRational,
    exponents: BTreeMap<u64, BigRational>,
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn reduce_mod_one(u: &BigRational) -> BigRational {
    u - u.floor()
}

impl Radical {
    /// The number 1.
    pub fn one() -> Self {
        Radical { torsion: BigRational::zero(), exponents: BTreeMap::new() }
    }

    /// Build from a torsion fraction and prime → exponent pairs.
    ///
    /// Repeated keys are added together. Keys must be primes.
    pub fn make<I>(torsion: BigRational, exponents: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigInt, BigRational)>,
    {
        let mut map: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (p, e) in exponents {
            if !p.is_positive() {
                return domain(format!("radical base {p} is not a positive prime"));
            }
            let Some(pu) = p.to_u64() else {
                return resource(format!("prime base {p} exceeds 64 bits"));
            };
            if !is_prime_u64(pu) {
                return domain(format!("radical base {p} is not prime"));
            }
            *map.entry(pu).or_insert_with(BigRational::zero) += e;
        }
        map.retain(|_, e| !e.is_zero());
        Ok(Radical { torsion: reduce_mod_one(&torsion), exponents: map })
    }

    /// `ζ_m^k = e^{2πik/m}`.
    pub fn zeta(m: u64, k: i64) -> Self {
        assert!(m >= 1, "root of unity of order 0");
        Radical {
            torsion: reduce_mod_one(&BigRational::new(BigInt::from(k), BigInt::from(m))),
            exponents: BTreeMap::new(),
        }
    }

    /// `p^e` for a prime `p`, as a positive real.
    pub fn prime_power(p: u64, e: BigRational) -> Self {
        assert!(is_prime_u64(p), "{p} is not prime");
        let mut exponents = BTreeMap::new();
        if !e.is_zero() {
            exponents.insert(p, e);
        }
        Radical { torsion: BigRational::zero(), exponents }
    }

    /// A nonzero rational number.
    pub fn from_rational(q: &BigRational) -> Result<Self> {
        Self::rt(q, 1)
    }

    pub fn from_int(n: i64) -> Result<Self> {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    /// Principal `n`-th root of a nonzero rational.
    ///
    /// For `a < 0` this is `ζ_{2n} · |a|^{1/n}`, for every `n`.
    pub fn rt(a: &BigRational, n: u32) -> Result<Self> {
        if a.is_zero() {
            return domain("zero radicand");
        }
        if n == 0 {
            return domain("root index must be positive");
        }
        let torsion = if a.is_negative() { ratio(1, 2 * n as i64) } else { BigRational::zero() };
        let n_big = BigInt::from(n);
        let mut exps = Vec::new();
        for (p, v) in factorize(a.numer())?.factors {
            exps.push((p, BigRational::new(BigInt::from(v), n_big.clone())));
        }
        for (p, v) in factorize(a.denom())?.factors {
            exps.push((p, BigRational::new(-BigInt::from(v), n_big.clone())));
        }
        Self::make(torsion, exps)
    }

    /// `η = ζ₈·√2`, which equals `1 + ζ₄`.
    pub fn eta() -> Self {
        Radical {
            torsion: ratio(1, 8),
            exponents: BTreeMap::from([(2, ratio(1, 2))]),
        }
    }

    /// `1 + ζ₄ = ζ₈√2`.
    pub fn one_plus_i() -> Self {
        Self::eta()
    }

    /// `1 − ζ₄ = ζ₈^7·√2`.
    pub fn one_minus_i() -> Self {
        Radical {
            torsion: ratio(7, 8),
            exponents: BTreeMap::from([(2, ratio(1, 2))]),
        }
    }

    pub fn torsion(&self) -> &BigRational {
        &self.torsion
    }

    pub fn exponents(&self) -> &BTreeMap<u64, BigRational> {
        &self.exponents
    }

    pub fn exponent(&self, p: u64) -> BigRational {
        self.exponents.get(&p).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.exponents.keys().copied()
    }

    pub fn is_one(&self) -> bool {
        self.torsion.is_zero() && self.exponents.is_empty()
    }

    pub fn is_root_of_unity(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Real iff the torsion part is ±1.
    pub fn is_real(&self) -> bool {
        self.torsion.is_zero() || self.torsion == ratio(1, 2)
    }

    /// Order of the torsion part as a root of unity.
    pub fn torsion_order(&self) -> u64 {
        self.torsion.denom().to_u64().expect("torsion denominator fits u64")
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut exponents = self.exponents.clone();
        for (p, e) in &o.exponents {
            *exponents.entry(*p).or_insert_with(BigRational::zero) += e;
        }
        exponents.retain(|_, e| !e.is_zero());
        Radical { torsion: reduce_mod_one(&(&self.torsion + &o.torsion)), exponents }
    }

    pub fn inv(&self) -> Self {
        Radical {
            torsion: reduce_mod_one(&-self.torsion.clone()),
            exponents: self.exponents.iter().map(|(p, e)| (*p, -e.clone())).collect(),
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    pub fn pow(&self, n: i64) -> Self {
        self.pow_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    /// Scale every coordinate by `q`: the principal `q`-power in this
    /// parametrization (a group endomorphism only for integer `q`).
    pub fn pow_rational(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::one();
        }
        Radical {
            torsion: reduce_mod_one(&(&self.torsion * q)),
            exponents: self.exponents.iter().map(|(p, e)| (*p, e * q)).collect(),
        }
    }

    /// `−a`: adds `1/2` to the torsion.
    pub fn negate(&self) -> Self {
        Radical {
            torsion: reduce_mod_one(&(&self.torsion + ratio(1, 2))),
            exponents: self.exponents.clone(),
        }
    }

    /// The rational value, when the radical lies in ℚ×.
    pub fn as_rational(&self) -> Option<BigRational> {
        if !self.is_real() || self.exponents.values().any(|e| !e.is_integer()) {
            return None;
        }
        let mut v = BigRational::one();
        for (p, e) in &self.exponents {
            let k = e.to_integer();
            let pp = num_traits::pow(BigInt::from(*p), k.abs().to_usize().expect("exponent fits"));
            if k.is_negative() {
                v /= BigRational::from_integer(pp);
            } else {
                v *= BigRational::from_integer(pp);
            }
        }
        if self.torsion.is_zero() {
            Some(v)
        } else {
            Some(-v)
        }
    }

    /// Smallest `n ≥ 1` with `a^n ∈ ℚ×`.
    ///
    /// `n` must clear every exponent denominator and send the torsion into
    /// `{0, 1/2}`; for `u = k/M` reduced the latter means `M / gcd(M, 2) | n`.
    pub fn order_over_q(&self) -> u64 {
        let mut n = BigInt::one();
        for e in self.exponents.values() {
            n = n.lcm(e.denom());
        }
        let m = self.torsion.denom();
        let m_half = if m.is_even() { m / 2 } else { m.clone() };
        n = n.lcm(&m_half);
        n.to_u64().expect("order fits u64")
    }

    /// Least common denominator of all coordinates.
    pub fn denominator(&self) -> BigInt {
        self.exponents.values().fold(self.torsion.denom().clone(), |acc, e| acc.lcm(e.denom()))
    }

    /// Certified enclosure of the value at `bits` fractional bits.
    pub fn numeric_eval(&self, bits: u32) -> ComplexInterval {
        let prec = bits.max(64);
        let mut acc = root_of_unity(&self.torsion, prec);
        for (p, e) in &self.exponents {
            let r = real_power(&BigInt::from(*p), e, prec);
            acc = ComplexInterval { re: acc.re.mul(&r), im: acc.im.mul(&r) };
        }
        acc
    }

    /// Render in the expression grammar accepted by [`Radical::from_str`].
    pub fn format(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        let negative = self.torsion == ratio(1, 2);
        if !self.torsion.is_zero() && !negative {
            let (k, m) = (self.torsion.numer(), self.torsion.denom());
            if k.is_one() {
                parts.push(format!("zeta({m})"));
            } else {
                parts.push(format!("zeta({m})^{k}"));
            }
        }
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        let mut roots = Vec::new();
        for (p, e) in &self.exponents {
            if e.is_integer() {
                let k = e.to_integer();
                let pp = num_traits::pow(BigInt::from(*p), k.abs().to_usize().expect("exponent fits"));
                if k.is_negative() {
                    den *= pp;
                } else {
                    num *= pp;
                }
            } else {
                let (a, b) = (e.numer(), e.denom());
                if a.is_one() {
                    roots.push(format!("rt({p},{b})"));
                } else {
                    roots.push(format!("rt({p},{b})^{a}"));
                }
            }
        }
        if negative {
            num = -num;
        }
        let has_rational = !(num.is_one() && den.is_one());
        if has_rational || (negative && roots.is_empty()) {
            parts.push(if den.is_one() { num.to_string() } else { format!("{num}/{den}") });
        } else if negative {
            parts.push("-1".to_string());
        }
        parts.extend(roots);
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

impl fmt::Debug for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Radical({}, {{", self.torsion)?;
        for (i, (p, e)) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}: {e}")?;
        }
        write!(f, "}})")
    }
}

impl FromStr for Radical {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse::parse(s)
    }
}

/// Parse a single radical expression.
pub fn parse(s: &str) -> Result<Radical> {
    parse::parse(s)
}

/// Parse a comma-separated list of radical expressions.
pub fn parse_list(s: &str) -> Result<Vec<Radical>> {
    parse::parse_list(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        ratio(n, d)
    }

    fn rad(u: (i64, i64), e: &[(i64, i64, i64)]) -> Radical {
        Radical::make(q(u.0, u.1), e.iter().map(|&(p, a, b)| (BigInt::from(p), q(a, b)))).unwrap()
    }

    #[test]
    fn make_normalizes() {
        assert_eq!(rad((1, 2), &[]).as_rational(), Some(q(-1, 1)));
        assert_eq!(rad((9, 8), &[(2, 1, 2)]), Radical::eta());
        let r = rad((3, 8), &[(2, 3, 2)]);
        assert_eq!(r.torsion(), &q(3, 8));
        assert_eq!(r.exponent(2), q(3, 2));
        assert_eq!(rad((0, 1), &[(3, 0, 1)]), Radical::one());
        assert!(matches!(
            Radical::make(q(0, 1), [(BigInt::from(4), q(1, 2))]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            Radical::make(q(0, 1), [(BigInt::from(-3), q(1, 2))]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn group_law_examples() {
        let eta = Radical::eta();
        assert_eq!(eta.mul(&eta), rad((1, 4), &[(2, 1, 1)]));
        assert_eq!(eta.pow(4), rad((1, 2), &[(2, 2, 1)]));
        assert_eq!(eta.pow(4).as_rational(), Some(q(-4, 1)));
        assert_eq!(rad((0, 1), &[(3, 1, 2)]).inv(), rad((0, 1), &[(3, -1, 2)]));
        assert_eq!(eta.pow(8), rad((0, 1), &[(2, 4, 1)]));
        assert_eq!(eta.pow(2), Radical::one_plus_i().pow(2));
    }

    #[test]
    fn rationality() {
        assert_eq!(rad((1, 2), &[(2, 2, 1)]).as_rational(), Some(q(-4, 1)));
        assert_eq!(Radical::eta().as_rational(), None);
        assert_eq!(Radical::one().as_rational(), Some(q(1, 1)));
        assert_eq!(rad((0, 1), &[(2, -1, 1), (3, 1, 1)]).as_rational(), Some(q(3, 2)));
    }

    #[test]
    fn orders() {
        assert_eq!(Radical::eta().order_over_q(), 4);
        assert_eq!(Radical::zeta(3, 1).order_over_q(), 3);
        assert_eq!(rad((0, 1), &[(5, 1, 2)]).order_over_q(), 2);
        assert_eq!(Radical::zeta(4, 1).order_over_q(), 2);
        assert_eq!(Radical::one().order_over_q(), 1);
    }

    #[test]
    fn principal_roots() {
        let r = Radical::rt(&q(-4, 1), 4).unwrap();
        assert_eq!(r, Radical::eta());
        assert_eq!(Radical::rt(&q(8, 1), 6).unwrap(), rad((0, 1), &[(2, 1, 2)]));
        assert_eq!(Radical::rt(&q(12, 1), 2).unwrap(), rad((0, 1), &[(2, 1, 1), (3, 1, 2)]));
        // odd index: principal branch, not the real root
        assert_eq!(Radical::rt(&q(-8, 1), 3).unwrap(), rad((1, 6), &[(2, 1, 1)]));
        assert!(Radical::rt(&q(0, 1), 2).is_err());
    }

    #[test]
    fn numeric_values() {
        let s = rad((0, 1), &[(2, 1, 2)]).numeric_eval(64);
        assert!((s.re.mid_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!(s.im.contains_zero());
        let m = Radical::zeta(2, 1).numeric_eval(64);
        assert!(m.re.contains_rational(&q(-1, 1)));
        let e = Radical::eta().numeric_eval(80);
        assert!(e.re.contains_rational(&q(1, 1)) && e.im.contains_rational(&q(1, 1)));
        let cbrt = Radical::rt(&q(-8, 1), 3).unwrap().numeric_eval(80);
        assert!(cbrt.re.contains_rational(&q(1, 1)));
        assert!((cbrt.im.mid_f64() - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn formatting() {
        assert_eq!(Radical::one().to_string(), "1");
        assert_eq!(Radical::eta().to_string(), "zeta(8)*rt(2,2)");
        assert_eq!(rad((3, 8), &[(2, 3, 2)]).to_string(), "zeta(8)^3*rt(2,2)^3");
        assert_eq!(rad((1, 2), &[(2, 2, 1)]).to_string(), "-4");
        assert_eq!(rad((1, 2), &[(2, 1, 2)]).to_string(), "-1*rt(2,2)");
        assert_eq!(rad((0, 1), &[(2, -1, 1), (3, -1, 2)]).to_string(), "1/2*rt(3,2)^-1");
        assert_eq!(rad((1, 3), &[(5, 2, 1)]).to_string(), "zeta(3)*25");
    }

    fn arb_radical() -> impl Strategy<Value = Radical> {
        let prime = prop::sample::select(vec![2i64, 3, 5, 7, 11, 13]);
        (
            (-12i64..12, 1i64..13),
            prop::collection::vec((prime, -9i64..9, 1i64..9), 0..4),
        )
            .prop_map(|(u, e)| rad(u, &e))
    }

    proptest! {
        #[test]
        fn group_axioms(a in arb_radical(), b in arb_radical(), c in arb_radical()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert!(a.mul(&a.inv()).is_one());
            prop_assert!(a.inv().mul(&a).is_one());
        }

        #[test]
        fn pow_is_repeated_mul(a in arb_radical(), n in 0i64..7) {
            let mut acc = Radical::one();
            for _ in 0..n {
                acc = acc.mul(&a);
            }
            prop_assert_eq!(a.pow(n), acc);
            prop_assert_eq!(a.pow(-n), a.inv().pow(n));
        }

        #[test]
        fn order_is_minimal(a in arb_radical()) {
            let n = a.order_over_q();
            prop_assert!(a.pow(n as i64).as_rational().is_some());
            for k in 1..n.min(200) {
                prop_assert!(a.pow(k as i64).as_rational().is_none());
            }
        }

        #[test]
        fn order_of_product_divides_lcm(a in arb_radical(), b in arb_radical()) {
            let l = a.order_over_q().lcm(&b.order_over_q());
            prop_assert_eq!(l % a.mul(&b).order_over_q(), 0);
        }

        #[test]
        fn ratio_to_negative_is_rational(a in arb_radical()) {
            prop_assert!(a.mul(&a.negate().inv()).as_rational().is_some());
        }

        #[test]
        fn format_parse_roundtrip(a in arb_radical()) {
            let text = a.to_string();
            prop_assert_eq!(parse(&text).unwrap(), a);
        }

        #[test]
        fn canonical_equality_matches_numeric(a in arb_radical(), b in arb_radical()) {
            let (za, zb) = (a.numeric_eval(256), b.numeric_eval(256));
            let diff = za.sub(&zb);
            if a == b {
                prop_assert!(diff.contains_zero());
            } else {
                // distinct algebraic numbers of this height separate far above 2^-200
                prop_assert!(!diff.contains_zero());
            }
        }
    }
}
