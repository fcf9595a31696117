//! Simple extensions `K = ℚ[y]/(m)` and factorization over them by Trager's
//! norm method.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::algebra::primitive_element_of;
use super::factor::{factor_over_q_bounded, is_irreducible};
use super::poly::Poly;
use super::tensor::Tensor;
use crate::arith::gcd_u64;
use crate::error::{domain, resource, Error, Result};
use crate::radical::numeric::ComplexInterval;
use crate::radical::Radical;

/// Bound on `deg f · [K:ℚ]` for [`factor_over_extension`].
pub const TRAGER_BOUND: usize = 256;

/// The field `ℚ[y]/(m)` for a monic irreducible `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    modulus: Poly,
}

/// An element of a [`NumberField`], reduced modulo its modulus.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtensionElement {
    pub modulus: Poly,
    pub value: Poly,
}

impl fmt::Debug for ExtensionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod ({})", self.value, self.modulus)
    }
}

impl NumberField {
    /// Fails unless `m` is irreducible over ℚ.
    pub fn new(m: &Poly) -> Result<Self> {
        if m.degree() == 0 || !is_irreducible(m)? {
            return domain(format!("{m} is not irreducible over ℚ"));
        }
        Ok(NumberField { modulus: m.monic() })
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree()
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn element(&self, p: &Poly) -> ExtensionElement {
        ExtensionElement { modulus: self.modulus.clone(), value: p.rem(&self.modulus) }
    }

    fn reduce(&self, p: &Poly) -> Poly {
        p.rem(&self.modulus)
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&(a * b))
    }

    fn inv(&self, a: &Poly) -> Poly {
        let (g, s, _) = a.xgcd(&self.modulus);
        debug_assert!(g.is_one(), "inverting zero in a field");
        s
    }

    /// Polynomial over K: coefficient list, each reduced, trailing zeros trimmed.
    fn trim(&self, mut v: Vec<Poly>) -> Vec<Poly> {
        while v.last().is_some_and(Poly::is_zero) {
            v.pop();
        }
        v
    }

    fn poly_mul(&self, a: &[Poly], b: &[Poly]) -> Vec<Poly> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Poly::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
        self.trim(out.iter().map(|p| self.reduce(p)).collect())
    }

    pub(crate) fn poly_rem(&self, a: &[Poly], b: &[Poly]) -> Vec<Poly> {
        let mut r = self.trim(a.to_vec());
        let db = b.len() - 1;
        let inv = self.inv(&b[db]);
        while r.len() > db {
            let k = r.len() - 1;
            let c = self.mul(&r[k], &inv);
            for (j, bj) in b.iter().enumerate() {
                let t = self.mul(&c, bj);
                r[k - db + j] = &r[k - db + j] - &t;
            }
            r = self.trim(r);
        }
        r
    }

    fn poly_monic(&self, a: &[Poly]) -> Vec<Poly> {
        let inv = self.inv(a.last().expect("nonzero"));
        a.iter().map(|c| self.mul(c, &inv)).collect()
    }

    fn poly_gcd(&self, a: &[Poly], b: &[Poly]) -> Vec<Poly> {
        let (mut a, mut b) = (self.trim(a.to_vec()), self.trim(b.to_vec()));
        while !b.is_empty() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        self.poly_monic(&a)
    }

    /// `g(c₁·x + c₀)` for a rational polynomial `g` and `c₀, c₁ ∈ K`.
    fn compose_linear(&self, g: &Poly, c1: &Poly, c0: &Poly) -> Vec<Poly> {
        let lin = vec![c0.clone(), c1.clone()];
        let mut acc: Vec<Poly> = Vec::new();
        for a in g.coeffs().iter().rev() {
            acc = self.poly_mul(&acc, &lin);
            if acc.is_empty() {
                acc.push(Poly::zero());
            }
            acc[0] = &acc[0] + &Poly::constant(a.clone());
            acc = self.trim(acc);
        }
        acc
    }
}

/// A polynomial over a number field, coefficients ascending.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtPoly {
    pub coeffs: Vec<Poly>,
}

impl ExtPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Coefficient of `x^0` as a polynomial in the field generator.
    pub fn constant_term(&self) -> &Poly {
        &self.coeffs[0]
    }
}

impl fmt::Display for ExtPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = c.to_string().replace('x', "y");
            match i {
                0 => write!(f, "({cs})")?,
                1 => write!(f, "({cs})*x")?,
                _ => write!(f, "({cs})*x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ExtPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Irreducible factorization of `f ∈ ℚ[x]` over `K`, monic factors with
/// multiplicities.
pub fn factor_over_extension(f: &Poly, field: &NumberField) -> Result<Vec<(ExtPoly, u32)>> {
    factor_over_extension_bounded(f, field, TRAGER_BOUND)
}

pub fn factor_over_extension_bounded(f: &Poly, field: &NumberField, bound: usize) -> Result<Vec<(ExtPoly, u32)>> {
    if f.is_zero() {
        return domain("cannot factor the zero polynomial");
    }
    if f.degree() * field.degree() > bound {
        return resource(format!(
            "factoring degree {} over a degree-{} field exceeds the bound {bound}",
            f.degree(),
            field.degree()
        ));
    }
    let mut out = Vec::new();
    for (h, mult) in f.squarefree_decomposition() {
        for g in factor_squarefree(&h, field, bound)? {
            out.push((g, mult));
        }
    }
    out.sort_by_key(|(g, _)| g.degree());
    Ok(out)
}

fn factor_squarefree(h: &Poly, field: &NumberField, bound: usize) -> Result<Vec<ExtPoly>> {
    let (d, e) = (field.degree(), h.degree());
    let as_ext = |p: &Poly| p.coeffs().iter().map(|c| Poly::constant(c.clone())).collect::<Vec<_>>();
    if e <= 1 || d == 1 {
        let fs = factor_over_q_bounded(h, bound)?;
        return Ok(fs.into_iter().map(|(g, _)| ExtPoly { coeffs: as_ext(&g) }).collect());
    }
    let l1 = field.modulus.integral_scale();
    let l2 = h.integral_scale();
    let m_int = field.modulus.integral_monic();
    let h_int = h.integral_monic();
    let tensor = Tensor::new(vec![m_int.clone(), h_int.clone()]);
    let root_bound = |v: &[BigInt]| 1.0 + v.iter().map(|c| c.abs().to_f64().unwrap_or(f64::MAX)).fold(0.0, f64::max);
    let (bm, bh) = (root_bound(&m_int), root_bound(&h_int));
    for s in [1i64, -1, 2, -2, 3, -3, 5, -5, 7, -7, 11, -11] {
        // x̃ + s·ỹ with x̃ = L₂·β, ỹ = L₁·α
        let elem = vec![(BigInt::one(), vec![0, 1]), (BigInt::from(s), vec![1, 0])];
        let bits = ((d * e) as f64 * (1.0 + bh + s.unsigned_abs() as f64 * bm).log2()).ceil() as u64 + 1;
        let norm = tensor.minpoly(&elem, bits)?;
        if norm.len() - 1 != d * e {
            continue;
        }
        let norm = Poly::from_bigints(&norm);
        let h_ext = as_ext(h);
        let mut out = Vec::new();
        // N_i(L₂·x + s·L₁·y) shares exactly one factor with h over K
        let c1 = Poly::constant(BigRational::from_integer(l2.clone()));
        let c0 = Poly::monomial(BigRational::from_integer(&l1 * BigInt::from(s)), 1);
        for (ni, _) in factor_over_q_bounded(&norm, bound)? {
            let shifted = field.compose_linear(&ni, &c1, &c0);
            let g = field.poly_gcd(&h_ext, &shifted);
            out.push(ExtPoly { coeffs: g });
        }
        debug_assert_eq!(out.iter().map(ExtPoly::degree).sum::<usize>(), e);
        return Ok(out);
    }
    resource("no shift made the norm squarefree")
}

/// True if `f` (irreducible over ℚ) splits into linear factors over ℚ[x]/(f).
pub fn is_galois(f: &Poly) -> Result<bool> {
    let field = NumberField::new(f)?;
    let fs = factor_over_extension(f, &field)?;
    Ok(fs.iter().all(|(g, _)| g.degree() == 1))
}

/// Automorphisms of `ℚ(ζ_n, a^{1/n})`, as pairs `(k, j)` acting by
/// `ζ_n ↦ ζ_n^k` and `a^{1/n} ↦ ζ_n^j·a^{1/n}`.
///
/// The field is the splitting field of `x^n − a`, so every conjugate of a
/// primitive element `θ = w₁ζ_n + w₂α` has that shape. The minimal
/// polynomial of θ is evaluated at every candidate image; once exactly
/// `deg θ` candidates remain non-excluded with pairwise disjoint
/// enclosures, those are precisely its roots.
pub fn kummer_automorphisms(a: &BigRational, n: u32, seed: u64) -> Result<Vec<(u64, u64)>> {
    if a.is_zero() {
        return domain("radicand must be nonzero");
    }
    if n == 0 {
        return domain("root index must be positive");
    }
    let n64 = u64::from(n);
    let alpha = Radical::rt(a, n)?;
    let (_, alpha_atom) = super::algebra::split_atom(&alpha);
    let zeta = Radical::zeta(n64, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..8 {
        let prim = primitive_element_of(&[zeta.clone(), alpha_atom.clone()], 64, &mut rng)?;
        let (w1, w2) = (prim.weights[0], prim.weights[1]);
        let d = prim.degree();
        let mut prec = 128;
        'refine: while prec <= super::algebra::MAX_PRECISION {
            let z = |k: u64| Radical::zeta(n64, k as i64).numeric_eval(prec);
            let av = alpha_atom.numeric_eval(prec);
            let mut hits: Vec<((u64, u64), ComplexInterval)> = Vec::new();
            for k in (1..=n64).filter(|&k| gcd_u64(k % n64, n64) == 1 || n64 == 1) {
                for j in 0..n64 {
                    let v = z(k)
                        .scale(&BigRational::from_integer(w1.into()))
                        .add(&z(j).mul(&av).scale(&BigRational::from_integer(w2.into())));
                    if prim.minpoly.coeffs().is_empty() || v.eval_poly(prim.minpoly.coeffs()).contains_zero() {
                        hits.push(((k % n64, j), v));
                    }
                }
            }
            if hits.len() == d {
                let disjoint = hits.iter().enumerate().all(|(i, (_, u))| {
                    hits[i + 1..].iter().all(|(_, v)| separated(u, v))
                });
                if disjoint {
                    return Ok(hits.into_iter().map(|(kj, _)| kj).collect());
                }
            }
            if hits.len() < d {
                break 'refine;
            }
            prec *= 2;
        }
    }
    Err(Error::Resource("automorphisms not separated".into()))
}

fn separated(u: &ComplexInterval, v: &ComplexInterval) -> bool {
    u.re.hi() < v.re.lo() || v.re.hi() < u.re.lo() || u.im.hi() < v.im.lo() || v.im.hi() < u.im.lo()
}

/// True if `ℚ(ζ_n, a^{1/n})/ℚ` is abelian.
pub fn is_abelian(a: &BigRational, n: u32) -> Result<bool> {
    let n64 = u64::from(n);
    let auts = kummer_automorphisms(a, n, super::algebra::DEFAULT_SEED)?;
    let compose = |(k, j): (u64, u64), (k2, j2): (u64, u64)| ((k * k2) % n64.max(1), (j + k * j2) % n64.max(1));
    Ok(auts.iter().all(|&s| auts.iter().all(|&t| compose(s, t) == compose(t, s))))
}
