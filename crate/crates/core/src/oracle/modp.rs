//! Polynomials over 𝔽_p (odd `p < 2^32`) and their factorization.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

pub(crate) type Fp = Vec<u64>;

fn trim(v: &mut Fp) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    crate::arith::pow_mod(a % p, p - 2, p)
}

pub(crate) fn normalize(mut v: Fp, p: u64) -> Fp {
    for x in v.iter_mut() {
        *x %= p;
    }
    trim(&mut v);
    v
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Fp {
    let n = a.len().max(b.len());
    let mut c = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        c.push((x + p - y) % p);
    }
    trim(&mut c);
    c
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + x * y) % p;
        }
    }
    trim(&mut c);
    c
}

pub(crate) fn div_rem(a: &[u64], b: &[u64], p: u64) -> (Fp, Fp) {
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a.to_vec());
    }
    let inv = inv_mod(b[db], p);
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] * inv % p;
        if c == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + p - c * bj % p) % p;
        }
        q[i] = c;
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> Fp {
    div_rem(a, b, p).1
}

pub(crate) fn monic(a: &[u64], p: u64) -> Fp {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = inv_mod(l, p);
            a.iter().map(|&x| x * inv % p).collect()
        }
    }
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Fp {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// `(g, s, t)` with `s·a + t·b = g` monic.
pub(crate) fn xgcd(a: &[u64], b: &[u64], p: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1): (Fp, Fp) = (vec![1], Vec::new());
    let (mut t0, mut t1): (Fp, Fp) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = inv_mod(*r0.last().expect("nonzero gcd"), p);
    let sc = |v: Fp| normalize(v.into_iter().map(|x| x * inv).collect(), p);
    (sc(r0), sc(s0), sc(t0))
}

pub(crate) fn derivative(a: &[u64], p: u64) -> Fp {
    let v = a.iter().enumerate().skip(1).map(|(i, &x)| (i as u64 % p) * x % p).collect();
    normalize(v, p)
}

fn pow_mod_big(base: &[u64], e: &BigUint, f: &[u64], p: u64) -> Fp {
    let mut acc: Fp = vec![1];
    let b = rem(base, f, p);
    for i in (0..e.bits()).rev() {
        acc = rem(&mul(&acc, &acc, p), f, p);
        if e.bit(i) {
            acc = rem(&mul(&acc, &b, p), f, p);
        }
    }
    acc
}

pub(crate) fn is_squarefree(f: &[u64], p: u64) -> bool {
    let d = derivative(f, p);
    !d.is_empty() && gcd(f, &d, p).len() == 1
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn ddf(f: &[u64], p: u64) -> Vec<(Fp, usize)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let x: Fp = vec![0, 1];
    let pb = BigUint::from(p);
    let mut h = x.clone();
    let mut d = 0;
    while f.len() > 1 {
        d += 1;
        if 2 * d > f.len() - 1 {
            let deg = f.len() - 1;
            out.push((f, deg));
            break;
        }
        h = pow_mod_big(&h, &pb, &f, p);
        let g = gcd(&f, &sub(&h, &x, p), p);
        if g.len() > 1 {
            f = div_rem(&f, &g, p).0;
            h = rem(&h, &f, p);
            out.push((g, d));
        }
    }
    out
}

/// Equal-degree splitting (Cantor–Zassenhaus).
fn edf<R: Rng>(f: &[u64], d: usize, p: u64, rng: &mut R) -> Vec<Fp> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.to_vec()];
    }
    let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
    loop {
        let a: Fp = normalize((0..n).map(|_| rng.gen_range(0..p)).collect(), p);
        if a.len() < 2 {
            continue;
        }
        let b = pow_mod_big(&a, &e, f, p);
        let g = gcd(f, &sub(&b, &[1], p), p);
        if g.len() > 1 && g.len() < f.len() {
            let h = div_rem(f, &g, p).0;
            let mut out = edf(&g, d, p, rng);
            out.extend(edf(&monic(&h, p), d, p, rng));
            return out;
        }
    }
}

/// Irreducible monic factors of a squarefree polynomial mod `p`.
pub(crate) fn factor_squarefree<R: Rng>(f: &[u64], p: u64, rng: &mut R) -> Vec<Fp> {
    let f = monic(f, p);
    let mut out = Vec::new();
    for (g, d) in ddf(&f, p) {
        out.extend(edf(&g, d, p, rng));
    }
    debug_assert!(!out.is_empty() || f.len() == 1);
    out.sort();
    out
}

/// Degrees of the irreducible factors, without splitting equal degrees.
pub(crate) fn factor_degrees(f: &[u64], p: u64) -> Vec<usize> {
    let f = monic(f, p);
    let mut out = Vec::new();
    for (g, d) in ddf(&f, p) {
        let k = (g.len() - 1) / d;
        out.extend(std::iter::repeat(d).take(k));
    }
    out
}

pub(crate) fn from_bigints(c: &[num_bigint::BigInt], p: u64) -> Fp {
    use num_traits::ToPrimitive;
    let pb = num_bigint::BigInt::from(p);
    let v = c
        .iter()
        .map(|x| {
            let r = ((x % &pb) + &pb) % &pb;
            r.to_u64().expect("reduced residue")
        })
        .collect();
    normalize(v, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn factors_mod_p() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        // x⁴ + 4 ≡ (x² + 2x + 2)(x² − 2x + 2), over 𝔽₁₃ it splits further
        let f: Fp = vec![4, 0, 0, 0, 1];
        let fs = factor_squarefree(&f, 13, &mut rng);
        assert_eq!(fs.len(), 4);
        let prod = fs.iter().fold(vec![1u64], |acc, g| mul(&acc, g, 13));
        assert_eq!(prod, f);
        // x⁴ + 1 over 𝔽₃ is a product of two quadratics
        let g: Fp = vec![1, 0, 0, 0, 1];
        assert_eq!(factor_degrees(&g, 3), vec![2, 2]);
        assert_eq!(factor_squarefree(&g, 3, &mut rng).len(), 2);
        // x^5 − x − 1 irreducible over 𝔽₅ (Artin–Schreier)
        assert_eq!(factor_degrees(&[4, 4, 0, 0, 0, 1], 5), vec![5]);
    }

    #[test]
    fn xgcd_mod_p() {
        let p = 101;
        let (g, s, t) = xgcd(&[1, 0, 1], &[100, 0, 0, 1], p);
        assert_eq!(g, vec![1]);
        let lhs = normalize(
            {
                let a = mul(&s, &[1, 0, 1], p);
                let b = mul(&t, &[100, 0, 0, 1], p);
                let n = a.len().max(b.len());
                (0..n).map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)).collect()
            },
            p,
        );
        assert_eq!(lhs, vec![1]);
    }
}
