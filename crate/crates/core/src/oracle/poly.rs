//! Dense univariate polynomials over ℚ and ℤ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Result};

/// Polynomial with rational coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    c: Vec<BigRational>,
}

fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn constant(a: BigRational) -> Self {
        Self::new(vec![a])
    }

    pub fn monomial(a: BigRational, n: usize) -> Self {
        let mut c = vec![BigRational::zero(); n + 1];
        c[n] = a;
        Self::new(c)
    }

    pub fn new(mut c: Vec<BigRational>) -> Self {
        trim(&mut c);
        Poly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
    }

    pub fn from_bigints(c: &[BigInt]) -> Self {
        Self::new(c.iter().map(|x| BigRational::from_integer(x.clone())).collect())
    }

    /// `x^n − a`.
    pub fn binomial(n: usize, a: &BigRational) -> Self {
        let mut c = vec![BigRational::zero(); n + 1];
        c[n] = BigRational::one();
        c[0] -= a;
        Self::new(c)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.c.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn lc(&self) -> BigRational {
        self.c.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(One::is_one)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.lc();
        Poly { c: self.c.iter().map(|x| x / &lc).collect() }
    }

    pub fn scale(&self, a: &BigRational) -> Self {
        Self::new(self.c.iter().map(|x| x * a).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    /// `p(q(x))`.
    pub fn compose(&self, q: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * q) + &Poly::constant(a.clone());
        }
        acc
    }

    /// `p(a·x)`.
    pub fn scale_var(&self, a: &BigRational) -> Poly {
        let mut pw = BigRational::one();
        let mut c = Vec::with_capacity(self.c.len());
        for x in &self.c {
            c.push(x * &pw);
            pw *= a;
        }
        Poly::new(c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn pow(&self, mut n: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        if d.is_zero() {
            return domain("division by the zero polynomial");
        }
        let mut r = self.c.clone();
        let dd = d.degree();
        if r.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let lc_inv = d.lc().recip();
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let coef = &r[i + dd] * &lc_inv;
            if coef.is_zero() {
                continue;
            }
            for (j, dj) in d.c.iter().enumerate() {
                r[i + j] -= &coef * dj;
            }
            q[i] = coef;
        }
        r.truncate(dd);
        Ok((Poly::new(q), Poly::new(r)))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).expect("nonzero divisor").1
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, f: &Poly) -> bool {
        f.div_rem(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·o = g` monic.
    pub fn xgcd(&self, o: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Yun's squarefree decomposition: `[(a₁, 1), (a₂, 2), …]` with monic,
    /// pairwise coprime, squarefree `aᵢ` and `f = lc·∏ aᵢ^i`.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0);
        let mut c = df.exact_div(&a0);
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a);
            if b.degree() == 0 {
                break;
            }
            c = d.exact_div(&a);
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Number of distinct real roots, by a Sturm sequence.
    pub fn real_root_count(&self) -> usize {
        if self.degree() == 0 {
            return 0;
        }
        let sq = self.exact_div(&self.gcd(&self.derivative()));
        let mut seq = vec![sq.clone(), sq.derivative()];
        while !seq.last().expect("nonempty").is_zero() {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]);
            seq.push(-&r);
        }
        seq.pop();
        let changes = |signs: Vec<i8>| signs.windows(2).filter(|w| w[0] != w[1]).count();
        let lcs = |neg: bool| -> Vec<i8> {
            seq.iter()
                .map(|p| {
                    let s = if p.lc().is_positive() { 1 } else { -1 };
                    if neg && p.degree() % 2 == 1 {
                        -s
                    } else {
                        s
                    }
                })
                .collect()
        };
        changes(lcs(true)) - changes(lcs(false))
    }

    /// Smallest `L > 0` with `L^d·f(x/L)` integral, for monic `f`.
    pub fn integral_scale(&self) -> BigInt {
        self.c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    /// `L^d·f(x/L)` as integers for monic `f`, where `L` is [`integral_scale`](Self::integral_scale).
    pub fn integral_monic(&self) -> Vec<BigInt> {
        let l = BigRational::from_integer(self.integral_scale());
        self.scale_var(&l.recip()).scale(&num_traits::pow::Pow::pow(&l, self.degree())).c.iter().map(|x| x.to_integer()).collect()
    }

    /// `self = content · primitive` with a primitive integer polynomial whose
    /// leading coefficient is positive.
    pub fn integer_primitive(&self) -> (BigRational, Vec<BigInt>) {
        if self.is_zero() {
            return (BigRational::zero(), Vec::new());
        }
        let den = self.c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = self.c.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if ints.last().expect("nonzero").is_negative() {
            g = -g;
        }
        let prim = ints.iter().map(|x| x / &g).collect();
        (BigRational::new(g, den), prim)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect();
        Poly::new(c)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect();
        Poly::new(c)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { c: self.c.iter().map(|x| -x).collect() }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

// ---- integer polynomials -------------------------------------------------

/// Primitive integer polynomial helpers (lowest degree first).
pub(crate) mod z {
    use super::*;

    pub fn trimmed(mut v: Vec<BigInt>) -> Vec<BigInt> {
        trim(&mut v);
        v
    }

    pub fn degree(a: &[BigInt]) -> usize {
        a.len().saturating_sub(1)
    }

    pub fn content(a: &[BigInt]) -> BigInt {
        a.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
    }

    pub fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        trimmed(c)
    }

    /// Exact division over ℤ; `None` if `b ∤ a` in ℤ[x].
    pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
        let db = degree(b);
        if a.len() < b.len() {
            return if a.is_empty() { Some(Vec::new()) } else { None };
        }
        let lb = b.last().expect("nonzero divisor");
        let mut r = a.to_vec();
        let mut q = vec![BigInt::zero(); a.len() - db];
        for i in (0..q.len()).rev() {
            let (qi, rem) = r[i + db].div_rem(lb);
            if !rem.is_zero() {
                return None;
            }
            if qi.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= &qi * bj;
            }
            q[i] = qi;
        }
        if r.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(trimmed(q))
    }

    /// Pseudo-remainder `lc(b)^{deg a − deg b + 1}·a mod b`.
    pub fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let db = degree(b);
        let lb = b.last().expect("nonzero").clone();
        let mut r = a.to_vec();
        let mut k = (a.len() as isize - b.len() as isize + 1).max(0) as u32;
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for x in r.iter_mut() {
                *x *= &lb;
            }
            for (j, bj) in b.iter().enumerate() {
                r[dr - db + j] -= &lr * bj;
            }
            trim(&mut r);
            k = k.saturating_sub(1);
        }
        let scale = num_traits::pow(lb, k as usize);
        r.into_iter().map(|x| x * &scale).collect()
    }

    /// Resultant by the subresultant PRS.
    pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
        if a.is_empty() || b.is_empty() {
            return BigInt::zero();
        }
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        let mut s = BigInt::one();
        if degree(&a) < degree(&b) {
            if degree(&a) % 2 == 1 && degree(&b) % 2 == 1 {
                s = -s;
            }
            std::mem::swap(&mut a, &mut b);
        }
        if degree(&b) == 0 {
            return s * num_traits::pow(b[0].clone(), degree(&a));
        }
        let ca = content(&a);
        let cb = content(&b);
        let t = num_traits::pow(ca.clone(), degree(&b)) * num_traits::pow(cb.clone(), degree(&a));
        a = a.iter().map(|x| x / &ca).collect();
        b = b.iter().map(|x| x / &cb).collect();
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let (da, db) = (degree(&a), degree(&b));
            let delta = da - db;
            if da % 2 == 1 && db % 2 == 1 {
                s = -s;
            }
            let r = prem(&a, &b);
            if r.is_empty() {
                return BigInt::zero();
            }
            let div = &g * num_traits::pow(h.clone(), delta);
            a = b;
            b = r.iter().map(|x| x / &div).collect();
            g = a.last().expect("nonzero").clone();
            h = if delta == 0 {
                h
            } else {
                num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
            };
            if degree(&b) == 0 {
                let da = degree(&a);
                let lb = b[0].clone();
                let hh = if da == 0 {
                    h
                } else {
                    num_traits::pow(lb, da) / num_traits::pow(h, da - 1)
                };
                return s * t * hh;
            }
        }
    }
}

/// `Res(f, g)` over ℚ.
pub fn resultant(f: &Poly, g: &Poly) -> BigRational {
    if f.is_zero() || g.is_zero() {
        return BigRational::zero();
    }
    let (cf, pf) = f.integer_primitive();
    let (cg, pg) = g.integer_primitive();
    let r = BigRational::from_integer(z::resultant(&pf, &pg));
    r * num_traits::pow(cf, g.degree()) * num_traits::pow(cg, f.degree())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn arithmetic() {
        let (quo, rem) = p(&[0, 0, 0, 1]).div_rem(&p(&[0, 1])).unwrap();
        assert_eq!(quo, p(&[0, 0, 1]));
        assert!(rem.is_zero());
        assert!(p(&[1]).div_rem(&Poly::zero()).is_err());
        assert_eq!(p(&[4, 0, 0, 0, 1]).gcd(&p(&[2, 2, 1])), p(&[2, 2, 1]));
        assert_eq!(p(&[-1, 0, 1]).compose(&p(&[1, 1])), p(&[0, 2, 1]));
        assert_eq!(p(&[1, 1]).pow(3), p(&[1, 3, 3, 1]));
        assert_eq!(p(&[2, -2, 1]).to_string(), "x^2 - 2*x + 2");
    }

    #[test]
    fn xgcd_identity() {
        let a = p(&[1, 0, 1]);
        let b = p(&[-1, 0, 0, 1]);
        let (g, s, t) = a.xgcd(&b);
        assert!(g.is_one());
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn resultants() {
        assert_eq!(resultant(&p(&[-2, 0, 1]), &p(&[-3, 0, 1])), q(1));
        // Res(x² + 1, x − 2) = 5
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[-2, 1])), q(5));
        // shared root
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[-1, 1])), q(0));
        // discriminant-style check: Res(f, f') for x³ − 2 is −(−108)... = 108
        let f = p(&[-2, 0, 0, 1]);
        assert_eq!(resultant(&f, &f.derivative()), q(108));
        let g = Poly::new(vec![BigRational::new(1.into(), 2.into()), q(3), q(0), q(2)]);
        let h = p(&[5, -1, 7]);
        // resultant is multiplicative in each argument
        assert_eq!(resultant(&(&g * &h), &f), resultant(&g, &f) * resultant(&h, &f));
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(Poly::from_ints(&[-2, 0, 1]).real_root_count(), 2);
        assert_eq!(Poly::from_ints(&[2, 0, 1]).real_root_count(), 0);
        assert_eq!(Poly::from_ints(&[-2, 0, 0, 1]).real_root_count(), 1);
        assert_eq!(Poly::from_ints(&[-2, 0, 0, 0, 1]).real_root_count(), 2);
        assert_eq!(Poly::from_ints(&[1, 0, -10, 0, 1]).real_root_count(), 4);
        // (x−1)²(x+2)
        assert_eq!((&Poly::from_ints(&[-1, 1]).pow(2) * &Poly::from_ints(&[2, 1])).real_root_count(), 2);
    }

    #[test]
    fn integral_versions() {
        let f = Poly::new(vec![BigRational::new(1.into(), 4.into()), BigRational::new(1.into(), 2.into()), BigRational::one()]);
        assert_eq!(f.integral_scale(), BigInt::from(4));
        let g = f.integral_monic();
        assert_eq!(g, vec![BigInt::from(4), BigInt::from(2), BigInt::one()]);
    }

    #[test]
    fn yun() {
        // (x−1)(x+2)²(x²+1)³
        let f = &(&p(&[-1, 1]) * &p(&[2, 1]).pow(2)) * &p(&[1, 0, 1]).pow(3);
        let d = f.scale(&q(5)).squarefree_decomposition();
        assert_eq!(d, vec![(p(&[-1, 1]), 1), (p(&[2, 1]), 2), (p(&[1, 0, 1]), 3)]);
    }

    #[test]
    fn resultant_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let a: Vec<i64> = (0..rng.gen_range(1..6)).map(|_| rng.gen_range(-5..6)).collect();
            let b: Vec<i64> = (0..rng.gen_range(1..5)).map(|_| rng.gen_range(-5..6)).collect();
            let (fa, fb) = (p(&a), p(&b));
            if fa.is_zero() || fb.is_zero() {
                continue;
            }
            assert_eq!(resultant(&fa, &fb), sylvester(&fa, &fb), "{fa} / {fb}");
        }
    }

    /// Determinant of the Sylvester matrix by rational elimination.
    fn sylvester(f: &Poly, g: &Poly) -> BigRational {
        let (m, n) = (f.degree(), g.degree());
        let size = m + n;
        if size == 0 {
            return q(1);
        }
        let mut a = vec![vec![BigRational::zero(); size]; size];
        for i in 0..n {
            for j in 0..=m {
                a[i][i + j] = f.coeff(m - j);
            }
        }
        for i in 0..m {
            for j in 0..=n {
                a[n + i][i + j] = g.coeff(n - j);
            }
        }
        let mut det = q(1);
        for col in 0..size {
            let Some(piv) = (col..size).find(|&r| !a[r][col].is_zero()) else { return q(0) };
            if piv != col {
                a.swap(piv, col);
                det = -det;
            }
            det *= &a[col][col];
            for r in col + 1..size {
                let f = &a[r][col] / &a[col][col];
                for c in col..size {
                    let v = &f * &a[col][c];
                    a[r][c] -= v;
                }
            }
        }
        det
    }
}
