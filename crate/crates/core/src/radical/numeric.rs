//! Certified enclosures for radicals.
//!
//! Real intervals are fixed-point: `[lo, hi] · 2^-prec` with `BigInt`
//! endpoints. Every operation rounds `lo` toward −∞ and `hi` toward +∞, so an
//! enclosure stays valid through arbitrary chains of arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.12}, {:.12}]", self.lo_f64(), self.hi_f64())
    }
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn shr_floor(x: &BigInt, bits: u32) -> BigInt {
    x.div_floor(&(BigInt::one() << bits))
}

fn shr_ceil(x: &BigInt, bits: u32) -> BigInt {
    ceil_div(x, &(BigInt::one() << bits))
}

impl Interval {
    pub fn zero(prec: u32) -> Self {
        Interval { lo: BigInt::zero(), hi: BigInt::zero(), prec }
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let scaled = q.numer() << prec;
        Interval {
            lo: scaled.div_floor(q.denom()),
            hi: ceil_div(&scaled, q.denom()),
            prec,
        }
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        let v = BigInt::from(n) << prec;
        Interval { lo: v.clone(), hi: v, prec }
    }

    /// Interval from already scaled endpoints.
    pub fn from_scaled(lo: BigInt, hi: BigInt, prec: u32) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi, prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn lo(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.prec)
    }

    pub fn hi(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.prec)
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo().to_f64().unwrap_or(f64::NAN)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi().to_f64().unwrap_or(f64::NAN)
    }

    pub fn mid_f64(&self) -> f64 {
        (self.lo_f64() + self.hi_f64()) / 2.0
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        &self.lo() <= q && q <= &self.hi()
    }

    /// Upper bound of the width, in units of 2^-prec.
    pub fn width_ulps(&self) -> BigInt {
        &self.hi - &self.lo
    }

    pub fn neg(&self) -> Self {
        Interval { lo: -&self.hi, hi: -&self.lo, prec: self.prec }
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.prec, o.prec);
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi, prec: self.prec }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.prec, o.prec);
        let cands = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let min = cands.iter().min().expect("nonempty");
        let max = cands.iter().max().expect("nonempty");
        Interval { lo: shr_floor(min, self.prec), hi: shr_ceil(max, self.prec), prec: self.prec }
    }

    pub fn mul_rational(&self, q: &BigRational) -> Self {
        self.mul(&Interval::from_rational(q, self.prec))
    }

    pub fn div_int(&self, n: &BigInt) -> Self {
        assert!(n.is_positive());
        Interval { lo: self.lo.div_floor(n), hi: ceil_div(&self.hi, n), prec: self.prec }
    }

    /// Reciprocal of an interval that excludes zero.
    pub fn recip(&self) -> Self {
        assert!(!self.contains_zero(), "reciprocal of an interval containing 0");
        let one = BigInt::one() << (2 * self.prec);
        let (a, b) = (&self.lo, &self.hi);
        // 1/x is decreasing on each sign component
        Interval { lo: one.div_floor(b), hi: ceil_div(&one, a), prec: self.prec }
    }

    /// Widen symmetrically by `rad` ulps.
    pub fn widen(&self, rad: &BigInt) -> Self {
        Interval { lo: &self.lo - rad, hi: &self.hi + rad, prec: self.prec }
    }

    /// Upper bound of |x| in ulps.
    pub fn mag_ulps(&self) -> BigInt {
        self.lo.abs().max(self.hi.abs())
    }
}

/// Rectangular complex interval.
#[derive(Clone, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl fmt::Debug for ComplexInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + i{:?}", self.re, self.im)
    }
}

impl ComplexInterval {
    pub fn real(re: Interval) -> Self {
        let p = re.prec;
        ComplexInterval { re, im: Interval::zero(p) }
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        Self::real(Interval::from_rational(q, prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexInterval { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ComplexInterval { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        ComplexInterval {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        ComplexInterval { re: self.re.mul_rational(q), im: self.im.mul_rational(q) }
    }

    /// Evaluate a polynomial with rational coefficients (ascending) by Horner.
    pub fn eval_poly(&self, coeffs: &[BigRational]) -> Self {
        let prec = self.prec();
        let mut acc = ComplexInterval::real(Interval::zero(prec));
        for c in coeffs.iter().rev() {
            acc = acc.mul(self).add(&ComplexInterval::from_rational(c, prec));
        }
        acc
    }

    pub fn mid(&self) -> (f64, f64) {
        (self.re.mid_f64(), self.im.mid_f64())
    }
}

/// Enclosure of π by Machin's formula `π = 16·atan(1/5) − 4·atan(1/239)`.
pub fn pi(prec: u32) -> Interval {
    let guard = 32;
    let w = prec + guard;
    let (a, ea) = atan_inv(5, w);
    let (b, eb) = atan_inv(239, w);
    let approx = a * 16 - b * 4;
    let err = ea * 16 + eb * 4;
    let lo = shr_floor(&(&approx - &err), guard);
    let hi = shr_ceil(&(&approx + &err), guard);
    Interval { lo, hi, prec }
}

/// atan(1/x) · 2^w as (approximation, error bound), both in ulps.
fn atan_inv(x: u64, w: u32) -> (BigInt, BigInt) {
    let one = BigInt::one() << w;
    let x2 = BigInt::from(x * x);
    let mut power = BigInt::from(x); // x^(2k+1)
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    loop {
        let term = &one / (&power * BigInt::from(2 * k + 1));
        if term.is_zero() {
            break;
        }
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        power *= &x2;
        k += 1;
    }
    // one truncation ulp per term plus the (sub-ulp) alternating tail
    (sum, BigInt::from(k + 2))
}

/// Enclosure of `e^{2πi·r}` for rational `r`.
pub fn root_of_unity(r: &BigRational, prec: u32) -> ComplexInterval {
    // reduce r into [-1/2, 1/2]
    let floor = r.floor();
    let mut f = r - floor;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if f > half {
        f -= BigRational::one();
    }
    if f.is_zero() {
        return ComplexInterval::real(Interval::from_int(1, prec));
    }
    let guard = 16;
    let w = prec + guard;
    let theta = pi(w).mul_rational(&(f * BigInt::from(2)));
    let (c, s) = cos_sin(&theta);
    let round = |x: &Interval| Interval {
        lo: shr_floor(&x.lo, guard),
        hi: shr_ceil(&x.hi, guard),
        prec,
    };
    ComplexInterval { re: round(&c), im: round(&s) }
}

/// Taylor enclosures of (cos θ, sin θ) for |θ| ≤ 4.
fn cos_sin(theta: &Interval) -> (Interval, Interval) {
    let prec = theta.prec;
    let one = Interval::from_int(1, prec);
    let mut cos = one.clone();
    let mut sin = theta.clone();
    let mut term = one; // θ^n / n!
    let mut n: u64 = 1;
    let x2 = theta.mul(theta);
    let mut sin_term = theta.clone();
    loop {
        // cos terms: θ^(2j)/(2j)!, sin terms: θ^(2j+1)/(2j+1)!
        term = term.mul(&x2).div_int(&BigInt::from((2 * n - 1) * (2 * n)));
        sin_term = sin_term.mul(&x2).div_int(&BigInt::from((2 * n) * (2 * n + 1)));
        if n % 2 == 1 {
            cos = cos.sub(&term);
            sin = sin.sub(&sin_term);
        } else {
            cos = cos.add(&term);
            sin = sin.add(&sin_term);
        }
        n += 1;
        if term.mag_ulps() <= BigInt::one() && sin_term.mag_ulps() <= BigInt::one() && n > 4 {
            break;
        }
    }
    // remaining alternating tail is bounded by the next term (< 2 ulps here)
    let tail = BigInt::from(2);
    (cos.widen(&tail), sin.widen(&tail))
}

/// Enclosure of `p^{a/b}` for positive integer `p` and rational exponent.
pub fn real_power(p: &BigInt, e: &BigRational, prec: u32) -> Interval {
    let a = e.numer().clone();
    let b = e.denom().to_u32().expect("root index fits u32");
    let pa = num_traits::pow(p.clone(), a.abs().to_usize().expect("exponent fits"));
    let scale = BigInt::one() << (prec * b);
    if !a.is_negative() {
        let target = &pa * &scale;
        let lo = target.nth_root(b);
        let hi = if num_traits::pow(lo.clone(), b as usize) == target { lo.clone() } else { &lo + 1 };
        Interval { lo, hi, prec }
    } else {
        let lo_t = scale.div_floor(&pa);
        let hi_t = ceil_div(&scale, &pa);
        let lo = lo_t.nth_root(b);
        let r = hi_t.nth_root(b);
        let hi = if num_traits::pow(r.clone(), b as usize) == hi_t { r } else { r + 1 };
        Interval { lo, hi, prec }
    }
}
