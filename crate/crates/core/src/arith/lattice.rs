//! Integer matrices with Hermite and Smith normal forms.
//!
//! HNF convention: row style. `H = U·M` with `U` unimodular; the nonzero rows
//! of `H` come first, their pivot columns strictly increase, pivots are
//! positive, and every entry above a pivot lies in `[0, pivot)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().cloned().map(Into::into));
        }
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Inverse of a unimodular matrix, read off the HNF transform `T·M = I`.
    pub fn unimodular_inverse(&self) -> Option<IntMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let (h, t) = hermite_normal_form(self);
        (h == IntMatrix::identity(self.rows)).then_some(t)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k · row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = k * &self[(src, j)];
            self[(dst, j)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }

    /// Replace rows (a, b) by (x·a + y·b, u·a + v·b) with xv − yu = ±1.
    fn combine_rows(&mut self, a: usize, b: usize, x: &BigInt, y: &BigInt, u: &BigInt, v: &BigInt) {
        for j in 0..self.cols {
            let ra = self[(a, j)].clone();
            let rb = self[(b, j)].clone();
            self[(a, j)] = x * &ra + y * &rb;
            self[(b, j)] = u * &ra + v * &rb;
        }
    }

    fn combine_cols(&mut self, a: usize, b: usize, x: &BigInt, y: &BigInt, u: &BigInt, v: &BigInt) {
        for i in 0..self.rows {
            let ca = self[(i, a)].clone();
            let cb = self[(i, b)].clone();
            self[(i, a)] = x * &ca + y * &cb;
            self[(i, b)] = u * &ca + v * &cb;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }
}

/// Row Hermite normal form `(H, U)` with `H = U·M`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut pivot_row = 0;
    for col in 0..m.cols {
        if pivot_row == m.rows {
            break;
        }
        // gcd-combine every lower row into the pivot row
        for r in pivot_row + 1..m.rows {
            if h[(r, col)].is_zero() {
                continue;
            }
            let a = h[(pivot_row, col)].clone();
            let b = h[(r, col)].clone();
            let eg = a.extended_gcd(&b);
            let (x, y) = (eg.x, eg.y);
            let u2 = -(&b / &eg.gcd);
            let v2 = &a / &eg.gcd;
            h.combine_rows(pivot_row, r, &x, &y, &u2, &v2);
            u.combine_rows(pivot_row, r, &x, &y, &u2, &v2);
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        let p = h[(pivot_row, col)].clone();
        for r in 0..pivot_row {
            let q = h[(r, col)].div_floor(&p);
            let k = -q;
            h.add_row(r, pivot_row, &k);
            u.add_row(r, pivot_row, &k);
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Unimodular 2×2 step `[[x, y], [u, v]]` sending `(a, b)` to `(g, 0)`.
///
/// When `a | b` this is a plain subtraction, so the other entries of the
/// pivot line are not disturbed.
fn elimination(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt, BigInt) {
    if (b % a).is_zero() {
        return (BigInt::one(), BigInt::zero(), -(b / a), BigInt::one());
    }
    let eg = a.extended_gcd(b);
    (eg.x, eg.y, -(b / &eg.gcd), a / &eg.gcd)
}

/// Smith normal form `(D, U, V)` with `D = U·M·V`, `d₁ | d₂ | …`, `dᵢ ≥ 0`.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);
    let mut t = 0;
    while t < n {
        // choose the smallest nonzero entry in the trailing block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m.rows {
            for j in t..m.cols {
                if !d[(i, j)].is_zero()
                    && best.map_or(true, |(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..m.rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let (x, y, u2, v2) = elimination(&d[(t, t)], &d[(i, t)]);
                d.combine_rows(t, i, &x, &y, &u2, &v2);
                u.combine_rows(t, i, &x, &y, &u2, &v2);
                changed = true;
            }
            for j in t + 1..m.cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let (x, y, u2, v2) = elimination(&d[(t, t)], &d[(t, j)]);
                d.combine_cols(t, j, &x, &y, &u2, &v2);
                v.combine_cols(t, j, &x, &y, &u2, &v2);
                changed = true;
            }
            if !changed {
                // enforce divisibility of the rest of the block
                let p = d[(t, t)].clone();
                let bad = (t + 1..m.rows)
                    .flat_map(|i| (t + 1..m.cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&d[(i, j)] % &p).is_zero());
                match bad {
                    Some((i, _)) => {
                        let one = BigInt::one();
                        d.add_row(t, i, &one);
                        u.add_row(t, i, &one);
                    }
                    None => break,
                }
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    (d, u, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn hnf_examples() {
        let id = IntMatrix::identity(2);
        assert_eq!(hermite_normal_form(&id), (id.clone(), id.clone()));
        let d = m(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(hermite_normal_form(&d), (d.clone(), id));
        // a single row already is in HNF; the gcd appears on the column vector
        let single = m(&[vec![4, 6]]);
        assert_eq!(hermite_normal_form(&single).0, single);
        let col = m(&[vec![4], vec![6]]);
        let (h, u) = hermite_normal_form(&col);
        assert_eq!(h, m(&[vec![2], vec![0]]));
        assert_eq!(h, u.mul(&col));
        assert_eq!(u.determinant().abs(), BigInt::one());
    }

    #[test]
    fn snf_examples() {
        let (d, _, _) = smith_normal_form(&m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(d, m(&[vec![1, 0], vec![0, 6]]));
        let z = IntMatrix::zeros(2, 3);
        assert_eq!(smith_normal_form(&z).0, z);
        let src = m(&[vec![2, 4], vec![6, 8]]);
        let (d, u, v) = smith_normal_form(&src);
        assert_eq!(d, m(&[vec![2, 0], vec![0, 4]]));
        assert_eq!(u.mul(&src).mul(&v), d);
        let ui = u.unimodular_inverse().unwrap();
        assert_eq!(ui.mul(&u), IntMatrix::identity(2));
        assert!(src.unimodular_inverse().is_none());
    }

    #[test]
    fn determinant_small() {
        assert_eq!(m(&[vec![2, 4], vec![6, 8]]).determinant(), BigInt::from(-8));
        assert_eq!(m(&[vec![0, 1], vec![1, 0]]).determinant(), BigInt::from(-1));
    }
}
