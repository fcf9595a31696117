//! Factorization over ℚ: squarefree decomposition, a modular factorization
//! at a well-chosen prime, multifactor Hensel lifting and Zassenhaus subset
//! recombination.

use num_bigint::BigInt;
use num_integer::Integer;
#[cfg(test)]
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{self, Fp};
use super::poly::{z, Poly};
use crate::error::{domain, resource, Result};

/// Default degree bound for [`factor_over_q`].
pub const DEFAULT_MAX_DEGREE: usize = 64;

/// Number of good primes examined before choosing one.
const PRIMES_TRIED: usize = 8;

/// Upper limit on recombination leaves before giving up.
const LEAF_BUDGET: u64 = 1 << 34;

/// Irreducible monic factors with multiplicities, sorted by degree.
pub fn factor_over_q(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    factor_over_q_bounded(f, DEFAULT_MAX_DEGREE)
}

pub fn factor_over_q_bounded(f: &Poly, max_degree: usize) -> Result<Vec<(Poly, u32)>> {
    if f.is_zero() {
        return domain("cannot factor the zero polynomial");
    }
    if f.degree() > max_degree {
        return resource(format!("degree {} exceeds the factoring bound {max_degree}", f.degree()));
    }
    let mut out = Vec::new();
    for (part, mult) in f.squarefree_decomposition() {
        let (_, prim) = part.integer_primitive();
        for g in factor_squarefree_primitive(&prim)? {
            out.push((Poly::from_bigints(&g).monic(), mult));
        }
    }
    out.sort_by(|a, b| (a.0.degree(), a.0.coeffs()).cmp(&(b.0.degree(), b.0.coeffs())));
    Ok(out)
}

/// True if `f` is irreducible over ℚ.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    if f.degree() == 0 {
        return Ok(false);
    }
    let fs = factor_over_q_bounded(f, usize::MAX)?;
    Ok(fs.len() == 1 && fs[0].1 == 1)
}

fn sym_mod(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn reduce(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    z::trimmed(v.iter().map(|x| x.mod_floor(m)).collect())
}

fn mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    reduce(&z::mul(a, b), m)
}

/// Division by a monic polynomial modulo `m`.
fn div_rem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let db = b.len() - 1;
    let mut r = reduce(a, m);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] = (&r[i + j] - &c * bj).mod_floor(m);
        }
        q[i] = c;
    }
    r.truncate(db);
    (z::trimmed(q), z::trimmed(r))
}

fn add_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    reduce(&(0..n).map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero)).collect::<Vec<_>>(), m)
}

fn sub_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    reduce(&(0..n).map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).collect::<Vec<_>>(), m)
}

fn to_big(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Lift `f ≡ g·h (mod p)` with `h` monic to `f ≡ g*·h* (mod M)`.
fn hensel_pair(f: &[BigInt], g: &Fp, h: &Fp, p: u64, target: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let (one, s0, t0) = modp::xgcd(g, h, p);
    debug_assert_eq!(one, vec![1]);
    let (mut g, mut h) = (to_big(g), to_big(h));
    let (mut s, mut t) = (to_big(&s0), to_big(&t0));
    let mut m = BigInt::from(p);
    while &m < target {
        let m2 = &m * &m;
        let e = sub_mod(f, &z::mul(&g, &h), &m2);
        let (q, r) = div_rem_monic(&mul_mod(&s, &e, &m2), &h, &m2);
        let g_new = add_mod(&add_mod(&g, &mul_mod(&t, &e, &m2), &m2), &mul_mod(&q, &g, &m2), &m2);
        let h_new = add_mod(&h, &r, &m2);
        let b = sub_mod(
            &add_mod(&mul_mod(&s, &g_new, &m2), &mul_mod(&t, &h_new, &m2), &m2),
            &[BigInt::one()],
            &m2,
        );
        let (c, d) = div_rem_monic(&mul_mod(&s, &b, &m2), &h_new, &m2);
        s = sub_mod(&s, &d, &m2);
        t = sub_mod(&sub_mod(&t, &mul_mod(&t, &b, &m2), &m2), &mul_mod(&c, &g_new, &m2), &m2);
        g = g_new;
        h = h_new;
        m = m2;
    }
    (g, h)
}

/// Lift all monic modular factors; returns monic lifts and the modulus.
fn hensel_lift(f: &[BigInt], factors: &[Fp], p: u64, bound: &BigInt) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut m = BigInt::from(p);
    while &m < bound {
        m = &m * &m;
    }
    let lc = f.last().expect("nonzero").clone();
    let mut target = f.to_vec();
    let mut lifted = Vec::with_capacity(factors.len());
    for j in (1..factors.len()).rev() {
        let lc_p = (lc.mod_floor(&BigInt::from(p))).to_u64().expect("residue");
        let mut g: Fp = vec![lc_p];
        for fac in &factors[..j] {
            g = modp::mul(&g, fac, p);
        }
        let (g_star, h_star) = hensel_pair(&target, &g, &factors[j], p, &m);
        lifted.push(reduce(&h_star, &m));
        target = g_star;
    }
    // what remains is lc·f₁; make it monic
    let inv = lc.extended_gcd(&m).x.mod_floor(&m);
    lifted.push(reduce(&target.iter().map(|x| x * &inv).collect::<Vec<_>>(), &m));
    lifted.reverse();
    (lifted, m)
}

/// Power sums `p₁, p₂, p₃` of the roots of a monic polynomial.
fn power_sums(f: &[BigInt], m: &BigInt) -> [BigInt; 3] {
    let n = f.len() - 1;
    let coeff = |k: usize| if k <= n { f[n - k].clone() } else { BigInt::zero() };
    let e1: BigInt = -coeff(1);
    let e2 = coeff(2);
    let e3: BigInt = -coeff(3);
    let p1 = e1.clone();
    let p2: BigInt = &e1 * &p1 - &e2 * 2;
    let p3: BigInt = &e1 * &p2 - &e2 * &p1 + &e3 * 3;
    [p1.mod_floor(m), p2.mod_floor(m), p3.mod_floor(m)]
}

/// `x / m` as a 64-bit fixed-point fraction of the unit interval.
fn fraction(x: &BigInt, m: &BigInt) -> u64 {
    ((x.mod_floor(m) << 64u32) / m).to_u64().unwrap_or(u64::MAX)
}

fn good_prime_data(f: &[BigInt]) -> Vec<(u64, Vec<usize>)> {
    let lc = f.last().expect("nonzero");
    let mut out = Vec::new();
    let mut p = 2u64;
    while out.len() < PRIMES_TRIED && p < 1 << 20 {
        p += 1;
        if !crate::arith::is_prime_u64(p) || (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = modp::from_bigints(f, p);
        if fp.len() != f.len() || !modp::is_squarefree(&fp, p) {
            continue;
        }
        out.push((p, modp::factor_degrees(&fp, p)));
    }
    out
}

fn subset_sums(degrees: &[usize], n: usize) -> Vec<bool> {
    let mut ok = vec![false; n + 1];
    ok[0] = true;
    for &d in degrees {
        for s in (d..=n).rev() {
            if ok[s - d] {
                ok[s] = true;
            }
        }
    }
    ok
}

struct Search<'a> {
    lifted: &'a [Vec<BigInt>],
    degrees: Vec<usize>,
    fracs: Vec<[u64; 3]>,
    tol: [u64; 3],
    allowed: Vec<bool>,
    leaves: u64,
}

impl Search<'_> {
    /// Depth-first search over `size`-subsets of `avail`, returning the first
    /// that passes the cheap filters and `accept`.
    fn find<F: FnMut(&[usize]) -> bool>(&mut self, avail: &[usize], size: usize, force_first: bool, accept: &mut F) -> Result<Option<Vec<usize>>> {
        let mut chosen = Vec::with_capacity(size);
        self.dfs(avail, 0, size, force_first, 0, [0; 3], &mut chosen, accept)
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs<F: FnMut(&[usize]) -> bool>(
        &mut self,
        avail: &[usize],
        start: usize,
        size: usize,
        force_first: bool,
        deg: usize,
        acc: [u64; 3],
        chosen: &mut Vec<usize>,
        accept: &mut F,
    ) -> Result<Option<Vec<usize>>> {
        if chosen.len() == size {
            self.leaves += 1;
            if self.leaves > LEAF_BUDGET {
                return resource("factor recombination exceeded its search budget");
            }
            if !self.allowed[deg] {
                return Ok(None);
            }
            for j in 0..3 {
                let a = acc[j];
                if a.min(a.wrapping_neg()) > self.tol[j] {
                    return Ok(None);
                }
            }
            return Ok(accept(chosen).then(|| chosen.clone()));
        }
        let need = size - chosen.len();
        let end = avail.len() - need;
        let last = if force_first && chosen.is_empty() { 0 } else { end };
        for pos in start..=last.min(end) {
            let i = avail[pos];
            chosen.push(i);
            let f = self.fracs[i];
            let next = [acc[0].wrapping_add(f[0]), acc[1].wrapping_add(f[1]), acc[2].wrapping_add(f[2])];
            let r = self.dfs(avail, pos + 1, size, force_first, deg + self.degrees[i], next, chosen, accept)?;
            chosen.pop();
            if r.is_some() {
                return Ok(r);
            }
        }
        Ok(None)
    }
}

/// Irreducible factors of a squarefree primitive integer polynomial.
pub(crate) fn factor_squarefree_primitive(f: &[BigInt]) -> Result<Vec<Vec<BigInt>>> {
    let n = z::degree(f);
    if n <= 1 {
        return Ok(vec![f.to_vec()]);
    }
    let data = good_prime_data(f);
    if data.is_empty() {
        return resource("no good reduction prime found");
    }
    let mut allowed = vec![true; n + 1];
    for (_, degs) in &data {
        let ss = subset_sums(degs, n);
        for (a, b) in allowed.iter_mut().zip(ss) {
            *a &= b;
        }
    }
    if (1..n).all(|d| !allowed[d]) {
        return Ok(vec![f.to_vec()]);
    }
    let (p, _) = data.iter().min_by_key(|(_, d)| d.len()).expect("nonempty").clone();
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let modular = modp::factor_squarefree(&modp::from_bigints(f, p), p, &mut rng);
    let r = modular.len();

    let lc: BigInt = f.last().expect("nonzero").abs();
    let max_coeff = f.iter().map(|x| x.abs()).max().expect("nonzero");
    let mig: BigInt = (&lc * (BigInt::one() << n) * BigInt::from(n + 1) * &max_coeff) * 2;
    // Cauchy bound on |lc·root| for the power-sum filters
    let root = &max_coeff + &lc;
    let mut ps_bounds = Vec::with_capacity(3);
    let mut pw = BigInt::one();
    for _ in 0..3 {
        pw *= &root;
        ps_bounds.push(&pw * BigInt::from(n));
    }
    let bound = ps_bounds.iter().fold(mig.clone(), |acc, b| acc.max(b.clone())) << 72u32;
    let (lifted, m) = hensel_lift(f, &modular, p, &bound);

    let lcs = f.last().expect("nonzero").clone();
    let mut fracs = Vec::with_capacity(r);
    for g in &lifted {
        let ps = power_sums(g, &m);
        let mut scale = BigInt::one();
        let mut w = [0u64; 3];
        for j in 0..3 {
            scale *= &lcs;
            w[j] = fraction(&(&ps[j] * &scale), &m);
        }
        fracs.push(w);
    }
    let mut tol = [0u64; 3];
    for j in 0..3 {
        tol[j] = fraction(&ps_bounds[j], &m).saturating_add(r as u64 + 2);
    }
    let mut search = Search {
        lifted: &lifted,
        degrees: lifted.iter().map(|g| g.len() - 1).collect(),
        fracs,
        tol,
        allowed,
        leaves: 0,
    };

    let mut rest = f.to_vec();
    let mut avail: Vec<usize> = (0..r).collect();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= avail.len() {
        let force_first = 2 * size == avail.len();
        let mut hit: Option<Vec<BigInt>> = None;
        let rest_ref = rest.clone();
        let lc_rest = rest_ref.last().expect("nonzero").clone();
        let lifted_ref = search.lifted;
        let mut accept = |s: &[usize]| {
            let mut prod = vec![lc_rest.mod_floor(&m)];
            for &i in s {
                prod = mul_mod(&prod, &lifted_ref[i], &m);
            }
            let cand: Vec<BigInt> = prod.iter().map(|x| sym_mod(x, &m)).collect();
            let c = z::content(&cand);
            let cand: Vec<BigInt> = cand.iter().map(|x| x / &c).collect();
            if z::div_exact(&rest_ref, &cand).is_some() {
                hit = Some(cand);
                true
            } else {
                false
            }
        };
        match search.find(&avail, size, force_first, &mut accept)? {
            Some(s) => {
                let g = hit.expect("accepted candidate");
                rest = z::div_exact(&rest, &g).expect("checked");
                avail.retain(|i| !s.contains(i));
                // degrees of the remaining cofactor drop; refresh the sieve
                let remaining = z::degree(&rest);
                search.allowed.truncate(remaining + 1);
                let degs: Vec<usize> = avail.iter().map(|&i| search.degrees[i]).collect();
                let ss = subset_sums(&degs, remaining);
                for (a, b) in search.allowed.iter_mut().zip(ss) {
                    *a &= b;
                }
                found.push(normalize_sign(g));
            }
            None => size += 1,
        }
    }
    if z::degree(&rest) > 0 {
        found.push(normalize_sign(rest));
    }
    Ok(found)
}

fn normalize_sign(g: Vec<BigInt>) -> Vec<BigInt> {
    if g.last().is_some_and(Signed::is_negative) {
        g.into_iter().map(|x| -x).collect()
    } else {
        g
    }
}

/// Rational root search, used as an independent check in tests.
#[cfg(test)]
pub(crate) fn rational_roots(f: &Poly) -> Vec<BigRational> {
    let (_, prim) = f.integer_primitive();
    let a0 = prim[0].abs();
    let an = prim.last().unwrap().abs();
    if a0.is_zero() {
        let mut r = rational_roots(&Poly::from_bigints(&prim[1..]));
        r.push(BigRational::zero());
        return r;
    }
    let divs = |n: &BigInt| -> Vec<BigInt> {
        let n = n.to_u64().unwrap();
        crate::arith::divisors(n).into_iter().map(BigInt::from).collect()
    };
    let mut out = Vec::new();
    for p in divs(&a0) {
        for q in divs(&an) {
            for s in [1i64, -1] {
                let r = BigRational::new(&p * s, q.clone());
                if f.eval(&r).is_zero() && !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    out
}
