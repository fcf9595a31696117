//! Subfields of a simple extension from its principal subfields.
//!
//! For each irreducible factor `f_i` of `f` over `K = ℚ[y]/(f)`, the
//! principal subfield `L_i = {h(y) : h(x) ≡ h(y) mod f_i}` is a ℚ-linear
//! kernel. Every subfield is an intersection of principal ones, so closing
//! `{L_i}` under intersection enumerates all of them.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::extension::{factor_over_extension, NumberField};
use super::poly::Poly;
use crate::error::Result;

/// A subfield of `ℚ[y]/(f)`, as the ℚ-span of polynomials in `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subfield {
    pub degree: usize,
    /// Reduced row echelon basis of coefficient vectors on `1, y, …`.
    pub basis: Vec<Vec<BigRational>>,
}

/// Reduced row echelon form, dropping zero rows.
fn rref(mut rows: Vec<Vec<BigRational>>, ncols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Basis of `{v : rows·v = 0}` in canonical echelon form.
fn kernel(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let (red, pivots) = rref(rows.to_vec(), ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (row, &pc) in red.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        basis.push(v);
    }
    rref(basis, ncols).0
}

/// All subfields of `ℚ[y]/(f)` for irreducible `f`, sorted by degree.
pub fn subfields(f: &Poly) -> Result<Vec<Subfield>> {
    let field = NumberField::new(f)?;
    let n = field.degree();
    let mut conditions: Vec<Vec<Vec<BigRational>>> = Vec::new();
    for (fi, _) in factor_over_extension(f, &field)? {
        let r = fi.degree();
        // column k holds (x^k mod f_i) − y^k flattened over x^j·y^t
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(n);
        for k in 0..n {
            let mut mono = vec![Poly::zero(); k + 1];
            mono[k] = Poly::one();
            let mut red = field.poly_rem(&mono, &fi.coeffs);
            red.resize(r.max(1), Poly::zero());
            red[0] = &red[0] - &Poly::monomial(BigRational::one(), k);
            let mut col = Vec::with_capacity(r * n);
            for c in red.iter().take(r.max(1)) {
                for t in 0..n {
                    col.push(c.coeff(t));
                }
            }
            cols.push(col);
        }
        let nrows = cols[0].len();
        conditions.push((0..nrows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect());
    }
    let mut found: Vec<(Vec<Vec<BigRational>>, Vec<Vec<BigRational>>)> = Vec::new();
    for c in conditions {
        let k = kernel(&c, n);
        if !found.iter().any(|(b, _)| *b == k) {
            found.push((k, c));
        }
    }
    let mut i = 0;
    while i < found.len() {
        for j in 0..i {
            let mut stacked = found[i].1.clone();
            stacked.extend(found[j].1.iter().cloned());
            let k = kernel(&stacked, n);
            if !found.iter().any(|(b, _)| *b == k) {
                found.push((k, stacked));
            }
        }
        i += 1;
    }
    let mut out: Vec<Subfield> = found.into_iter().map(|(basis, _)| Subfield { degree: basis.len(), basis }).collect();
    out.sort_by(|a, b| (a.degree, &a.basis).cmp(&(b.degree, &b.basis)));
    Ok(out)
}

/// Degrees of all subfields of `ℚ[y]/(f)`.
pub fn subfield_degrees(f: &Poly) -> Result<Vec<usize>> {
    Ok(subfields(f)?.into_iter().map(|s| s.degree).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn fourth_root_of_two() {
        assert_eq!(subfield_degrees(&p(&[-2, 0, 0, 0, 1])).unwrap(), vec![1, 2, 4]);
    }

    #[test]
    fn biquadratic() {
        assert_eq!(subfield_degrees(&p(&[1, 0, -10, 0, 1])).unwrap(), vec![1, 2, 2, 2, 4]);
    }

    #[test]
    fn prime_degree_and_cyclotomic() {
        assert_eq!(subfield_degrees(&p(&[-2, 0, 0, 1])).unwrap(), vec![1, 3]);
        assert_eq!(subfield_degrees(&p(&[-2, 0, 1])).unwrap(), vec![1, 2]);
        assert_eq!(subfield_degrees(&p(&[0, 1])).unwrap(), vec![1]);
        // ℚ(ζ₇): cyclic of order 6
        assert_eq!(subfield_degrees(&p(&[1, 1, 1, 1, 1, 1, 1])).unwrap(), vec![1, 2, 3, 6]);
        // ℚ(2^{1/3}, ζ₃) has group S₃: six subfields
        let s3 = crate::oracle::compositum_degree(
            &crate::radical::parse_list("zeta(3), rt(2,3)").unwrap(),
            64,
            1,
        )
        .unwrap();
        let g = &s3.draws[0].minpoly;
        assert_eq!(subfield_degrees(g).unwrap(), vec![1, 2, 3, 3, 3, 6]);
    }

    #[test]
    fn subfields_are_closed_under_multiplication() {
        let f = p(&[-2, 0, 0, 0, 1]);
        for s in subfields(&f).unwrap() {
            for a in &s.basis {
                for b in &s.basis {
                    let pa = Poly::new(a.clone());
                    let pb = Poly::new(b.clone());
                    let prod = (&pa * &pb).rem(&f);
                    let mut rows = s.basis.clone();
                    let mut v = prod.coeffs().to_vec();
                    v.resize(4, BigRational::zero());
                    rows.push(v);
                    assert_eq!(rref(rows, 4).0.len(), s.degree);
                }
            }
        }
    }
}
