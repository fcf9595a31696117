//! Tensor products `ℤ[y₁]/(g₁) ⊗ … ⊗ ℤ[y_k]/(g_k)` of monogenic orders.
//!
//! Elements live on the mixed-radix monomial basis. Minimal polynomials of
//! multiplication operators are found by Krylov iteration modulo several
//! 62-bit primes, combined by CRT under a coefficient bound and then checked
//! exactly over ℤ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{is_prime_u64, mul_mod};
use crate::error::{resource, Result};

/// A term `c · ∏ y_i^{e_i}`; exponents may exceed the factor degrees.
pub(crate) type Term = (BigInt, Vec<u32>);

trait Ring {
    type T: Clone;
    fn zero(&self) -> Self::T;
    fn from_big(&self, x: &BigInt) -> Self::T;
    fn add(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn sub(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn mul(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn is_zero(&self, a: &Self::T) -> bool;
}

struct Zz;

impl Ring for Zz {
    type T = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn from_big(&self, x: &BigInt) -> BigInt {
        x.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
}

struct Zp(u64);

impl Ring for Zp {
    type T = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn from_big(&self, x: &BigInt) -> u64 {
        x.mod_floor(&BigInt::from(self.0)).to_u64().expect("residue")
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.0)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

pub(crate) struct Tensor {
    moduli: Vec<Vec<BigInt>>,
    dims: Vec<usize>,
    strides: Vec<usize>,
    size: usize,
}

impl Tensor {
    /// `moduli` are monic integer polynomials, ascending coefficients.
    pub fn new(moduli: Vec<Vec<BigInt>>) -> Self {
        let dims: Vec<usize> = moduli.iter().map(|g| g.len() - 1).collect();
        let mut strides = Vec::with_capacity(dims.len());
        let mut size = 1;
        for &d in &dims {
            strides.push(size);
            size *= d;
        }
        Tensor { moduli, dims, strides, size }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Multiply by `y_axis` in place.
    fn mul_y<R: Ring>(&self, r: &R, v: &mut [R::T], axis: usize, g: &[R::T]) {
        let d = self.dims[axis];
        let st = self.strides[axis];
        let outer = st * d;
        for block in (0..self.size).step_by(outer) {
            for inner in 0..st {
                let base = block + inner;
                let top = v[base + (d - 1) * st].clone();
                for k in (1..d).rev() {
                    v[base + k * st] = v[base + (k - 1) * st].clone();
                }
                v[base] = r.zero();
                if !r.is_zero(&top) {
                    for (k, gk) in g.iter().enumerate().take(d) {
                        let idx = base + k * st;
                        v[idx] = r.sub(&v[idx], &r.mul(&top, gk));
                    }
                }
            }
        }
    }

    fn reduced_moduli<R: Ring>(&self, r: &R) -> Vec<Vec<R::T>> {
        self.moduli.iter().map(|g| g.iter().map(|c| r.from_big(c)).collect()).collect()
    }

    fn mul_elem<R: Ring>(&self, r: &R, gs: &[Vec<R::T>], elem: &[Term], v: &[R::T]) -> Vec<R::T> {
        let mut acc = vec![r.zero(); self.size];
        for (c, exps) in elem {
            let mut w = v.to_vec();
            for (axis, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    self.mul_y(r, &mut w, axis, &gs[axis]);
                }
            }
            let c = r.from_big(c);
            for (a, x) in acc.iter_mut().zip(&w) {
                *a = r.add(a, &r.mul(&c, x));
            }
        }
        acc
    }

    fn unit<R: Ring>(&self, r: &R) -> Vec<R::T> {
        let mut v = vec![r.zero(); self.size];
        v[0] = r.from_big(&BigInt::one());
        v
    }

    /// `poly(elem)` as a coordinate vector.
    fn eval<R: Ring>(&self, r: &R, gs: &[Vec<R::T>], elem: &[Term], poly: &[BigInt]) -> Vec<R::T> {
        let mut v = vec![r.zero(); self.size];
        for c in poly.iter().rev() {
            v = self.mul_elem(r, gs, elem, &v);
            v[0] = r.add(&v[0], &r.from_big(c));
        }
        v
    }

    /// Exact check that `poly(elem) = 0`.
    pub fn annihilates(&self, elem: &[Term], poly: &[BigInt]) -> bool {
        let gs = self.reduced_moduli(&Zz);
        self.eval(&Zz, &gs, elem, poly).iter().all(Zero::is_zero)
    }

    /// Minimal polynomial of multiplication by `elem` modulo `p`.
    fn minpoly_mod(&self, elem: &[Term], p: u64) -> Vec<u64> {
        let r = Zp(p);
        let gs = self.reduced_moduli(&r);
        // rows: (reduced vector, pivot, combination of Krylov vectors)
        let mut rows: Vec<(Vec<u64>, usize, Vec<u64>)> = Vec::new();
        let mut raw = self.unit(&r);
        for k in 0..=self.size {
            let mut v = raw.clone();
            let mut comb = vec![0u64; k + 1];
            comb[k] = 1;
            for (row, piv, rc) in &rows {
                let f = v[*piv];
                if f == 0 {
                    continue;
                }
                for (a, b) in v.iter_mut().zip(row) {
                    *a = r.sub(a, &r.mul(&f, b));
                }
                for (a, b) in comb.iter_mut().zip(rc) {
                    *a = r.sub(a, &r.mul(&f, b));
                }
            }
            match v.iter().position(|&x| x != 0) {
                None => return comb,
                Some(piv) => {
                    let inv = super::modp::inv_mod(v[piv], p);
                    for a in v.iter_mut() {
                        *a = mul_mod(*a, inv, p);
                    }
                    for a in comb.iter_mut() {
                        *a = mul_mod(*a, inv, p);
                    }
                    rows.push((v, piv, comb));
                }
            }
            raw = self.mul_elem(&r, &gs, elem, &raw);
        }
        unreachable!("Krylov sequence longer than the dimension")
    }

    /// Monic integer minimal polynomial of multiplication by `elem`, whose
    /// coefficients are bounded by `2^bound_bits` in absolute value.
    pub fn minpoly(&self, elem: &[Term], bound_bits: u64) -> Result<Vec<BigInt>> {
        let need = bound_bits + 2;
        for attempt in 0..3u64 {
            let mut primes = big_primes(attempt * 97);
            let mut degree = 0usize;
            let mut residues: Vec<(u64, Vec<u64>)> = Vec::new();
            let mut bits = 0u64;
            while bits < need + 62 * attempt {
                let p = primes.next().expect("enough 62-bit primes");
                let mp = self.minpoly_mod(elem, p);
                let d = mp.len() - 1;
                if d > degree {
                    degree = d;
                    residues.clear();
                    bits = 0;
                }
                if d == degree {
                    residues.push((p, mp));
                    bits += 61;
                }
            }
            let poly = crt(&residues);
            if self.annihilates(elem, &poly) {
                return Ok(poly);
            }
        }
        resource("modular minimal polynomial failed exact verification")
    }

    /// `dim A/(poly(elem)·A)` computed modulo a large prime.
    ///
    /// This is an upper bound for the dimension over ℚ, since ranks can
    /// only drop under reduction.
    pub fn quotient_dim_upper(&self, elem: &[Term], poly: &[BigInt]) -> usize {
        let p = big_primes(7).next().expect("prime");
        let r = Zp(p);
        let gs = self.reduced_moduli(&r);
        let w = self.eval(&r, &gs, elem, poly);
        let mut cols = Vec::with_capacity(self.size);
        for j in 0..self.size {
            let mut v = w.clone();
            let mut rem = j;
            for axis in (0..self.dims.len()).rev() {
                let digit = rem / self.strides[axis];
                rem %= self.strides[axis];
                for _ in 0..digit {
                    self.mul_y(&r, &mut v, axis, &gs[axis]);
                }
            }
            cols.push(v);
        }
        self.size - rank_mod(cols, p)
    }
}

fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let r = Zp(p);
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = super::modp::inv_mod(rows[rank][c], p);
        let pivot_row: Vec<u64> = rows[rank].iter().map(|&x| mul_mod(x, inv, p)).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[c];
            if f != 0 {
                for (a, b) in row.iter_mut().zip(&pivot_row) {
                    *a = r.sub(a, &r.mul(&f, b));
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Primes below 2^62, descending, after skipping `skip` of them.
fn big_primes(skip: u64) -> impl Iterator<Item = u64> {
    let mut n = (1u64 << 62) - 1;
    std::iter::from_fn(move || loop {
        n -= 2;
        if is_prime_u64(n) {
            return Some(n);
        }
    })
    .skip(skip as usize)
}

/// Combine residues into a monic polynomial with symmetric coefficients.
fn crt(residues: &[(u64, Vec<u64>)]) -> Vec<BigInt> {
    let len = residues[0].1.len();
    let mut modulus = BigInt::one();
    let mut acc = vec![BigInt::zero(); len];
    for (p, r) in residues {
        let pb = BigInt::from(*p);
        let inv = (modulus.clone().mod_floor(&pb)).extended_gcd(&pb).x.mod_floor(&pb);
        for (a, ri) in acc.iter_mut().zip(r) {
            // a + modulus·t ≡ ri (mod p)
            let diff = (BigInt::from(*ri) - &*a).mod_floor(&pb);
            let t = (diff * &inv).mod_floor(&pb);
            *a += &modulus * t;
        }
        modulus *= pb;
    }
    let half = &modulus >> 1u32;
    acc.into_iter().map(|a| if a > half { a - &modulus } else { a }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn sum_of_square_roots() {
        // √2 + √3 in ℤ[y]/(y²−2) ⊗ ℤ[z]/(z²−3)
        let t = Tensor::new(vec![z(&[-2, 0, 1]), z(&[-3, 0, 1])]);
        assert_eq!(t.size(), 4);
        let elem = vec![(BigInt::one(), vec![1, 0]), (BigInt::one(), vec![0, 1])];
        let mp = t.minpoly(&elem, 16).unwrap();
        assert_eq!(mp, z(&[1, 0, -10, 0, 1]));
        assert_eq!(t.quotient_dim_upper(&elem, &mp), 4);
        assert_eq!(t.quotient_dim_upper(&elem, &z(&[1])), 0);
        assert_eq!(t.quotient_dim_upper(&elem, &z(&[0])), 4);
    }

    #[test]
    fn non_field_tensor() {
        // y + z in ℤ[y]/(y²−2)^{⊗2}: eigenvalues ±2√2 and 0
        let t = Tensor::new(vec![z(&[-2, 0, 1]), z(&[-2, 0, 1])]);
        let elem = vec![(BigInt::one(), vec![1, 0]), (BigInt::one(), vec![0, 1])];
        let mp = t.minpoly(&elem, 16).unwrap();
        assert_eq!(mp, z(&[0, -8, 0, 1]));
        // the factor x² − 8 cuts out a component of dimension 2
        assert_eq!(t.quotient_dim_upper(&elem, &z(&[-8, 0, 1])), 2);
        assert_eq!(t.quotient_dim_upper(&elem, &z(&[0, 1])), 2);
    }

    #[test]
    fn powers_and_large_exponents() {
        // y³ with y⁴ = 2: minimal polynomial x⁴ − 8
        let t = Tensor::new(vec![z(&[-2, 0, 0, 0, 1])]);
        let elem = vec![(BigInt::one(), vec![3])];
        assert_eq!(t.minpoly(&elem, 8).unwrap(), z(&[-8, 0, 0, 0, 1]));
        // y⁵ = 2y
        let elem = vec![(BigInt::one(), vec![5])];
        assert_eq!(t.minpoly(&elem, 8).unwrap(), z(&[-32, 0, 0, 0, 1]));
    }
}
