//! Minimal polynomials of radical expressions and compositum degrees.
//!
//! Every radical is split as a rational times an algebraic-integer atom
//! `ζ^u·∏p^{f_p}` with `0 ≤ f_p < 1`. Atom minimal polynomials come from
//! factoring `x^n − c`; sums and products live in the tensor product of the
//! atom orders, and the factor vanishing at the principal complex value is
//! picked out with certified intervals.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::factor::factor_over_q_bounded;
use super::poly::Poly;
use super::tensor::{Tensor, Term};
use crate::error::{resource, Error, Result};
use crate::radical::numeric::{ComplexInterval, Interval};
use crate::radical::Radical;
use crate::rgroup::RadicalGroup;

/// Precision ceiling for numeric factor selection, in bits.
pub const MAX_PRECISION: u32 = 1 << 14;

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Index of the unique factor vanishing at `value`.
pub(crate) fn select_vanishing<F>(factors: &[Poly], value: F) -> Result<usize>
where
    F: Fn(u32) -> ComplexInterval,
{
    if factors.len() == 1 {
        return Ok(0);
    }
    let mut prec = 128;
    while prec <= MAX_PRECISION {
        let v = value(prec);
        let hits: Vec<usize> =
            (0..factors.len()).filter(|&i| v.eval_poly(factors[i].coeffs()).contains_zero()).collect();
        if hits.len() == 1 {
            return Ok(hits[0]);
        }
        prec *= 2;
    }
    resource(format!("factors not separated at {MAX_PRECISION} bits"))
}

/// `a = q·atom` with `atom = ζ^u·∏p^{f_p}`, `0 ≤ f_p < 1`.
pub fn split_atom(a: &Radical) -> (BigRational, Radical) {
    let mut q = BigRational::one();
    let mut fracs = Vec::new();
    for (&p, e) in a.exponents() {
        let fl = e.floor();
        let k = fl.to_integer().to_i32().expect("exponent fits i32");
        q *= num_traits::pow::Pow::pow(BigRational::from_integer(BigInt::from(p)), k);
        let f = e - fl;
        if !f.is_zero() {
            fracs.push((BigInt::from(p), f));
        }
    }
    let atom = Radical::make(a.torsion().clone(), fracs).expect("primes stay prime");
    (q, atom)
}

/// Upper bound for `|a|` as a float, safe against rounding.
fn magnitude(a: &Radical) -> f64 {
    let mut m = 1.0f64;
    for (&p, e) in a.exponents() {
        m *= (p as f64).powf(e.to_f64().unwrap_or(0.0));
    }
    m * (1.0 + 1e-9)
}

/// Minimal polynomial over ℚ of a single radical.
pub fn radical_minpoly(a: &Radical) -> Result<Poly> {
    let (q, atom) = split_atom(a);
    let g = atom_minpoly(&atom)?;
    // a = q·atom, so minpoly_a(x) ∝ g(x/q)
    Ok(g.scale_var(&q.recip()).monic())
}

/// Monic integer minimal polynomial of an atom.
fn atom_minpoly(atom: &Radical) -> Result<Poly> {
    let n = atom.order_over_q();
    let c = atom.pow(n as i64).as_rational().expect("order makes the power rational");
    let f = Poly::binomial(n as usize, &c);
    let factors: Vec<Poly> = factor_over_q_bounded(&f, usize::MAX)?.into_iter().map(|(g, _)| g).collect();
    let i = select_vanishing(&factors, |b| atom.numeric_eval(b))?;
    Ok(factors[i].clone())
}

fn integer_coeffs(p: &Poly) -> Vec<BigInt> {
    p.coeffs().iter().map(|c| c.to_integer()).collect()
}

/// A formal ℚ-linear combination of radicals.
#[derive(Clone, PartialEq, Eq)]
pub struct Expr {
    terms: BTreeMap<Radical, BigRational>,
}

impl Expr {
    pub fn zero() -> Self {
        Expr { terms: BTreeMap::new() }
    }

    pub fn radical(a: Radical) -> Self {
        Self::zero().plus(&BigRational::one(), &a)
    }

    /// `self + c·a` with like terms merged; a rational multiple of a radical
    /// is kept as a coefficient on its atom.
    pub fn plus(mut self, c: &BigRational, a: &Radical) -> Self {
        let (q, atom) = split_atom(a);
        let (sign, atom) = if atom.torsion() == &BigRational::new(1.into(), 2.into()) && !atom.exponents().is_empty() {
            (-BigRational::one(), atom.negate())
        } else if atom.torsion() == &BigRational::new(1.into(), 2.into()) {
            (-BigRational::one(), Radical::one())
        } else {
            (BigRational::one(), atom)
        };
        let coeff = c * q * sign;
        let entry = self.terms.entry(atom.clone()).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&atom);
        }
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Radical, &BigRational)> {
        self.terms.iter()
    }

    /// Parse `term (('+'|'-') term)*` where each term is a radical product.
    pub fn parse(s: &str) -> Result<Self> {
        let mut out = Expr::zero();
        let bytes = s.as_bytes();
        let mut depth = 0i32;
        let mut start = 0usize;
        let mut sign = BigRational::one();
        let mut prev: Option<u8> = None;
        let flush = |from: usize, to: usize, sign: &BigRational, out: &mut Expr| -> Result<()> {
            let text = &s[from..to];
            if text.trim().is_empty() {
                return Err(Error::Parse { offset: from, message: "empty term".into() });
            }
            let r = crate::radical::parse(text).map_err(|e| shift(e, from))?;
            *out = std::mem::replace(out, Expr::zero()).plus(sign, &r);
            Ok(())
        };
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'+' | b'-' if depth == 0 => {
                    let binary = matches!(prev, Some(c) if !matches!(c, b'*' | b'/' | b'^' | b'+' | b'-'));
                    if binary {
                        flush(start, i, &sign, &mut out)?;
                        sign = if b == b'-' { -BigRational::one() } else { BigRational::one() };
                        start = i + 1;
                    } else if prev.is_none() || matches!(prev, Some(b'+' | b'-')) {
                        if b == b'-' {
                            sign = -sign;
                        }
                        start = i + 1;
                    }
                }
                _ => {}
            }
            if !b.is_ascii_whitespace() {
                prev = Some(b);
            }
        }
        flush(start, s.len(), &sign, &mut out)?;
        Ok(out)
    }

    /// Certified enclosure of the value.
    pub fn numeric_eval(&self, bits: u32) -> ComplexInterval {
        let prec = bits.max(64);
        let mut acc = ComplexInterval::real(Interval::zero(prec));
        for (a, c) in &self.terms {
            acc = acc.add(&a.numeric_eval(prec).scale(c));
        }
        acc
    }
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { offset, message } => Error::Parse { offset: offset + by, message },
        other => other,
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (a, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let m = c.abs();
            match (a.is_one(), m.is_one()) {
                (true, _) => write!(f, "{m}")?,
                (false, true) => write!(f, "{a}")?,
                (false, false) => write!(f, "{m}*{a}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Prime-power atoms `ζ_M` and `p^{1/d_p}` covering every term.
struct AtomBasis {
    torsion: u64,
    roots: Vec<(u64, u64)>,
    tensor: Tensor,
}

impl AtomBasis {
    fn of(expr: &Expr, max_degree: usize) -> Result<Self> {
        let mut torsion = 1u64;
        let mut dens: BTreeMap<u64, u64> = BTreeMap::new();
        for (a, _) in expr.terms() {
            torsion = torsion.lcm(&a.torsion().denom().to_u64().expect("small torsion"));
            for (&p, e) in a.exponents() {
                let d = e.denom().to_u64().expect("small denominator");
                let entry = dens.entry(p).or_insert(1);
                *entry = entry.lcm(&d);
            }
        }
        let mut moduli = Vec::new();
        let mut size = 1usize;
        if torsion > 1 {
            let g = atom_minpoly(&Radical::zeta(torsion, 1))?;
            size *= g.degree();
            moduli.push(integer_coeffs(&g));
        }
        let roots: Vec<(u64, u64)> = dens.into_iter().filter(|&(_, d)| d > 1).collect();
        for &(p, d) in &roots {
            let g = atom_minpoly(&Radical::prime_power(p, BigRational::new(BigInt::one(), BigInt::from(d))))?;
            size = size.saturating_mul(g.degree());
            if size > max_degree {
                return resource(format!("expression algebra exceeds degree bound {max_degree}"));
            }
            moduli.push(integer_coeffs(&g));
        }
        Ok(AtomBasis { torsion, roots, tensor: Tensor::new(moduli) })
    }

    /// Exponent vector of an atom on this basis.
    fn exponents(&self, a: &Radical) -> Vec<u32> {
        let mut v = Vec::new();
        if self.torsion > 1 {
            let k = a.torsion() * BigRational::from_integer(BigInt::from(self.torsion));
            v.push(k.to_integer().to_u32().expect("torsion exponent"));
        }
        for &(p, d) in &self.roots {
            let e = a.exponent(p) * BigRational::from_integer(BigInt::from(d));
            v.push(e.to_integer().to_u32().expect("root exponent"));
        }
        v
    }
}

/// Minimal polynomial over ℚ of a radical expression.
pub fn minpoly(expr: &Expr, max_degree: usize) -> Result<Poly> {
    if expr.terms.is_empty() {
        return Ok(Poly::x());
    }
    let basis = AtomBasis::of(expr, max_degree)?;
    let den = expr.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let scale = BigRational::from_integer(den.clone());
    let mut elem: Vec<Term> = Vec::new();
    let mut bound = 0.0f64;
    for (a, c) in expr.terms() {
        let ci = (c * &scale).to_integer();
        bound += ci.abs().to_f64().unwrap_or(f64::MAX) * magnitude(a);
        elem.push((ci, basis.exponents(a)));
    }
    let bits = bound_bits(basis.tensor.size(), bound);
    let p = basis.tensor.minpoly(&elem, bits)?;
    let factors: Vec<Poly> =
        factor_over_q_bounded(&Poly::from_bigints(&p), max_degree)?.into_iter().map(|(g, _)| g).collect();
    let i = select_vanishing(&factors, |b| expr.numeric_eval(b).scale(&scale))?;
    Ok(factors[i].scale_var(&scale).monic())
}

/// Bits bounding the coefficients of a degree-`d` polynomial whose roots
/// have modulus at most `bound`.
fn bound_bits(d: usize, bound: f64) -> u64 {
    ((d as f64) * (1.0 + bound).log2()).ceil() as u64 + 1
}

/// A certified primitive element of a compositum.
#[derive(Clone, Debug)]
pub struct PrimitiveElement {
    /// Algebraic-integer atoms generating the field.
    pub atoms: Vec<Radical>,
    /// θ = Σ weights[i]·atoms[i].
    pub weights: Vec<i64>,
    /// Minimal polynomial of θ (monic, integral).
    pub minpoly: Poly,
}

impl PrimitiveElement {
    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    pub fn numeric_eval(&self, bits: u32) -> ComplexInterval {
        let prec = bits.max(64);
        let mut acc = ComplexInterval::real(Interval::zero(prec));
        for (a, w) in self.atoms.iter().zip(&self.weights) {
            acc = acc.add(&a.numeric_eval(prec).scale(&BigRational::from_integer(BigInt::from(*w))));
        }
        acc
    }
}

/// Results of [`compositum_degree`] with the two agreeing draws.
#[derive(Clone, Debug)]
pub struct CompositumDegree {
    pub degree: usize,
    pub draws: Vec<PrimitiveElement>,
}

/// Atoms to tensor: the given ones or an invariant basis, whichever is smaller.
fn working_atoms(atoms: &[Radical], max_degree: usize) -> Result<(Vec<Radical>, Vec<Poly>)> {
    let prepare = |list: &[Radical]| -> Result<(Vec<Radical>, Vec<Poly>, usize)> {
        let mut out = Vec::new();
        let mut polys = Vec::new();
        let mut size = 1usize;
        for a in list {
            let (_, atom) = split_atom(a);
            if atom.as_rational().is_some() || out.contains(&atom) {
                continue;
            }
            let g = atom_minpoly(&atom)?;
            if g.degree() == 1 {
                continue;
            }
            size = size.saturating_mul(g.degree());
            out.push(atom);
            polys.push(g);
        }
        Ok((out, polys, size))
    };
    let direct = prepare(atoms)?;
    let reduced = prepare(&RadicalGroup::new(atoms.to_vec()).invariant_generators())?;
    let (a, p, size) = if reduced.2 < direct.2 { reduced } else { direct };
    if size > max_degree {
        return resource(format!("compositum algebra of dimension {size} exceeds bound {max_degree}"));
    }
    Ok((a, p))
}

/// Dimension of the tensor algebra the oracle builds for `atoms`.
pub fn atom_dimension(atoms: &[Radical]) -> Result<usize> {
    let (_, polys) = working_atoms(atoms, usize::MAX)?;
    Ok(polys.iter().map(Poly::degree).product())
}

/// One certified primitive element for the field generated by `atoms`.
pub fn primitive_element(atoms: &[Radical], max_degree: usize, rng: &mut ChaCha8Rng) -> Result<PrimitiveElement> {
    let (atoms, polys) = working_atoms(atoms, max_degree)?;
    certified_draw(atoms, polys, max_degree, rng)
}

/// Like [`primitive_element`] but with θ built on exactly the given atoms
/// (each replaced by its algebraic-integer part).
pub fn primitive_element_of(atoms: &[Radical], max_degree: usize, rng: &mut ChaCha8Rng) -> Result<PrimitiveElement> {
    let mut list = Vec::new();
    let mut polys = Vec::new();
    let mut size = 1usize;
    for a in atoms {
        let (_, atom) = split_atom(a);
        let g = atom_minpoly(&atom)?;
        size = size.saturating_mul(g.degree());
        list.push(atom);
        polys.push(g);
    }
    if size > max_degree {
        return resource(format!("compositum algebra of dimension {size} exceeds bound {max_degree}"));
    }
    certified_draw(list, polys, max_degree, rng)
}

fn certified_draw(atoms: Vec<Radical>, polys: Vec<Poly>, max_degree: usize, rng: &mut ChaCha8Rng) -> Result<PrimitiveElement> {
    if atoms.is_empty() {
        return Ok(PrimitiveElement { atoms, weights: Vec::new(), minpoly: Poly::x() });
    }
    let tensor = Tensor::new(polys.iter().map(integer_coeffs).collect());
    let k = atoms.len();
    for _ in 0..32 {
        let weights: Vec<i64> = (0..k)
            .map(|_| {
                let w = rng.gen_range(1..=9);
                if rng.gen_bool(0.5) {
                    -w
                } else {
                    w
                }
            })
            .collect();
        let mut elem = Vec::with_capacity(k);
        let mut bound = 0.0;
        for (i, w) in weights.iter().enumerate() {
            let mut e = vec![0u32; k];
            e[i] = 1;
            elem.push((BigInt::from(*w), e));
            bound += (*w as f64).abs() * magnitude(&atoms[i]);
        }
        let p = tensor.minpoly(&elem, bound_bits(tensor.size(), bound))?;
        let factors: Vec<Poly> =
            factor_over_q_bounded(&Poly::from_bigints(&p), max_degree)?.into_iter().map(|(g, _)| g).collect();
        let candidate = PrimitiveElement { atoms: atoms.clone(), weights, minpoly: Poly::x() };
        let i = select_vanishing(&factors, |b| candidate.numeric_eval(b))?;
        let f0 = &factors[i];
        // the component cut out by f0(θ) has dimension deg f0 exactly when θ
        // generates the whole field
        if tensor.quotient_dim_upper(&elem, &integer_coeffs(f0)) == f0.degree() {
            return Ok(PrimitiveElement { minpoly: f0.clone(), ..candidate });
        }
    }
    resource("no certified primitive element after 32 draws")
}

/// Degree of ℚ(atoms) over ℚ from two agreeing certified draws.
pub fn compositum_degree(atoms: &[Radical], max_degree: usize, seed: u64) -> Result<CompositumDegree> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let first = primitive_element(atoms, max_degree, &mut rng)?;
    let second = primitive_element(atoms, max_degree, &mut rng)?;
    if first.degree() != second.degree() {
        return Err(Error::Resource(format!(
            "primitive element draws disagree: {} vs {}",
            first.degree(),
            second.degree()
        )));
    }
    let degree = first.degree();
    for a in &first.atoms {
        let d = atom_minpoly(a)?.degree();
        if degree % d != 0 {
            return Err(Error::Resource(format!("atom degree {d} does not divide compositum degree {degree}")));
        }
    }
    Ok(CompositumDegree { degree, draws: vec![first, second] })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Radical {
        s.parse().unwrap()
    }

    fn deg(list: &str) -> usize {
        compositum_degree(&crate::radical::parse_list(list).unwrap(), 64, DEFAULT_SEED).unwrap().degree
    }

    #[test]
    fn radical_minpolys() {
        assert_eq!(radical_minpoly(&r("rt(2,4)")).unwrap(), Poly::from_ints(&[-2, 0, 0, 0, 1]));
        assert_eq!(radical_minpoly(&r("rt(-4,4)")).unwrap(), Poly::from_ints(&[2, -2, 1]));
        assert_eq!(radical_minpoly(&r("zeta(8)^3*rt(2,2)")).unwrap(), Poly::from_ints(&[2, 2, 1]));
        assert_eq!(radical_minpoly(&r("zeta(12)")).unwrap(), Poly::from_ints(&[1, 0, -1, 0, 1]));
        assert_eq!(radical_minpoly(&r("3/2*rt(2,2)")).unwrap(), Poly::from_bigints(&[BigInt::from(-9), 0.into(), 2.into()]).monic());
        assert_eq!(radical_minpoly(&r("-1")).unwrap(), Poly::from_ints(&[1, 1]));
        assert_eq!(radical_minpoly(&r("zeta(3)*rt(2,3)")).unwrap(), Poly::from_ints(&[-2, 0, 0, 1]));
    }

    #[test]
    fn expression_minpolys() {
        let e = Expr::parse("zeta(8) + zeta(8)^7").unwrap();
        assert_eq!(minpoly(&e, 64).unwrap(), Poly::from_ints(&[-2, 0, 1]));
        let e = Expr::parse("1 + zeta(4)").unwrap();
        assert_eq!(minpoly(&e, 64).unwrap(), Poly::from_ints(&[2, -2, 1]));
        let e = Expr::parse("rt(2,2) + rt(3,2)").unwrap();
        assert_eq!(minpoly(&e, 64).unwrap(), Poly::from_ints(&[1, 0, -10, 0, 1]));
        // the Gauss relation for √5 collapses to zero
        let e = Expr::parse("rt(5,2) - zeta(5) + zeta(5)^2 + zeta(5)^3 - zeta(5)^4").unwrap();
        assert_eq!(minpoly(&e, 64).unwrap(), Poly::x());
        let e = Expr::parse("zeta(5) - zeta(5)^2 - zeta(5)^3 + zeta(5)^4").unwrap();
        assert_eq!(minpoly(&e, 64).unwrap(), Poly::from_ints(&[-5, 0, 1]));
        let e = Expr::parse("rt(2,2) - rt(2,2)").unwrap();
        assert_eq!(minpoly(&e, 64).unwrap(), Poly::x());
        let e = Expr::parse("-1/2 + 3*rt(2,3)").unwrap();
        let m = minpoly(&e, 64).unwrap();
        assert_eq!(m.degree(), 3);
    }

    #[test]
    fn parse_expressions() {
        let e = Expr::parse("-zeta(4) + rt(-4,4) - 1").unwrap();
        assert_eq!(e.to_string(), "-1 + zeta(8)*rt(2,2) - zeta(4)");
        assert!(matches!(Expr::parse("rt(2,2) + "), Err(Error::Parse { offset: 9, .. })));
        assert!(matches!(Expr::parse("1 + rt(2,)"), Err(Error::Parse { offset, .. }) if offset > 4));
    }

    #[test]
    fn compositum_examples() {
        assert_eq!(deg("zeta(4), rt(2,4)"), 8);
        assert_eq!(deg("zeta(5), rt(5,2)"), 4);
        assert_eq!(deg("rt(2,2)"), 2);
        assert_eq!(deg("rt(-4,4)"), 2);
        assert_eq!(deg("rt(2,2), rt(3,2), rt(5,2)"), 8);
        assert_eq!(deg("zeta(3), rt(2,3)"), 6);
        assert_eq!(deg("zeta(21), rt(2,3)"), 36);
        assert_eq!(deg("rt(2,3), zeta(7)"), 18);
        assert_eq!(deg("zeta(8), rt(2,2)"), 4);
        assert_eq!(deg("rt(2,3), zeta(3)*rt(2,3)"), 6);
        assert_eq!(deg(""), 1);
    }

    #[test]
    fn compositum_invariances() {
        assert_eq!(deg("rt(3,4), zeta(4)*rt(2,2)"), deg("zeta(4)*rt(2,2), rt(3,4)"));
        assert_eq!(deg("rt(3,4), zeta(4)*rt(2,2)"), deg("1/rt(3,4), zeta(4)^3/rt(2,2)"));
    }
}
