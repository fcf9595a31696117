use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{domain, resource, Result};

const TRIAL_BOUND: u64 = 1_000_000;

/// `sign · ∏ p^e` with primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    pub factors: BTreeMap<BigInt, u32>,
}

impl Factorization {
    pub fn value(&self) -> BigInt {
        let mut acc = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            acc *= num_traits::pow(p.clone(), *e as usize);
        }
        acc
    }
}

/// Complete factorization of a nonzero integer with `|n| < 2^128`.
pub fn factorize(n: &BigInt) -> Result<Factorization> {
    if n.is_zero() {
        return domain("factorize(0)");
    }
    if n.bits() > 128 {
        return resource(format!("{} bits exceeds the 128-bit factoring bound", n.bits()));
    }
    let sign = if n.sign() == Sign::Minus { -1 } else { 1 };
    let mut m = n.magnitude().clone();
    let mut factors = BTreeMap::new();
    let push = |p: BigUint, factors: &mut BTreeMap<BigInt, u32>| {
        *factors.entry(BigInt::from(p)).or_insert(0) += 1;
    };
    for p in [2u64, 3, 5] {
        let bp = BigUint::from(p);
        while (&m % &bp).is_zero() {
            m /= &bp;
            push(bp.clone(), &mut factors);
        }
    }
    // wheel mod 30
    let steps = [4u64, 2, 4, 2, 4, 6, 2, 6];
    let mut d = 7u64;
    let mut i = 0;
    while d <= TRIAL_BOUND {
        if BigUint::from(d) * BigUint::from(d) > m {
            break;
        }
        let bd = BigUint::from(d);
        while (&m % &bd).is_zero() {
            m /= &bd;
            push(bd.clone(), &mut factors);
        }
        d += steps[i];
        i = (i + 1) % steps.len();
    }
    let mut stack = vec![m];
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if is_prime(&c) {
            push(c, &mut factors);
            continue;
        }
        let f = pollard_brent(&c);
        stack.push(&c / &f);
        stack.push(f);
    }
    Ok(Factorization { sign, factors })
}

/// Smallest prime factor of a positive integer > 1 (trial division and rho).
pub(crate) fn smallest_prime_factor(n: &BigInt) -> BigInt {
    let f = factorize(n).expect("bounded input");
    f.factors.keys().next().cloned().expect("n > 1")
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // these bases are deterministic for all n < 2^64
    'bases: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = super::pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = super::mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Miller–Rabin with the first 20 prime bases: deterministic far beyond
/// 2^64 and the accepted desk-scale guarantee up to 2^128.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'bases: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71] {
        let a = BigUint::from(a);
        if (&a % n).is_zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let r = n.sqrt();
    if &r * &r == *n {
        return r;
    }
    let mut c = BigUint::one();
    loop {
        if let Some(f) = brent_attempt(n, &c) {
            if &f != n {
                return f;
            }
        }
        c += 1u32;
    }
}

fn brent_attempt(n: &BigUint, c: &BigUint) -> Option<BigUint> {
    let f = |x: &BigUint| (x * x + c) % n;
    let one = BigUint::one();
    let mut y = BigUint::from(2u32);
    let mut r = 1u64;
    let mut q = BigUint::one();
    let batch = 128u64;
    let mut x;
    let mut ys;
    loop {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        loop {
            ys = y.clone();
            for _ in 0..batch.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            let g = q.gcd(n);
            k += batch;
            if g != one {
                if &g != n {
                    return Some(g);
                }
                // backtrack one step at a time
                loop {
                    ys = f(&ys);
                    let diff = if x > ys { &x - &ys } else { &ys - &x };
                    let g = diff.gcd(n);
                    if g != one {
                        return if &g == n { None } else { Some(g) };
                    }
                }
            }
            if k >= r {
                break;
            }
        }
        r *= 2;
        if r > 1 << 28 {
            return None;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fac(n: i64) -> Factorization {
        factorize(&BigInt::from(n)).unwrap()
    }

    #[test]
    fn examples() {
        let one = fac(1);
        assert_eq!(one.sign, 1);
        assert!(one.factors.is_empty());
        let m4 = fac(-4);
        assert_eq!(m4.sign, -1);
        assert_eq!(m4.factors.get(&BigInt::from(2)), Some(&2));
        let f = fac(360);
        let v: Vec<(i64, u32)> = f.factors.iter().map(|(p, e)| (p.to_i64().unwrap(), *e)).collect();
        assert_eq!(v, vec![(2, 3), (3, 2), (5, 1)]);
        assert!(factorize(&BigInt::zero()).is_err());
    }

    #[test]
    fn reconstructs_up_to_a_bound() {
        for n in (1..=1_000_000i64).step_by(997).chain(999_900..=1_000_000) {
            assert_eq!(fac(n).value(), BigInt::from(n));
            assert_eq!(fac(-n).value(), BigInt::from(-n));
        }
    }

    #[test]
    fn large_semiprime() {
        let p = BigInt::from(1_000_000_007u64);
        let q = BigInt::from(998_244_353u64);
        let f = factorize(&(&p * &q * &p)).unwrap();
        assert_eq!(f.factors.get(&p), Some(&2));
        assert_eq!(f.factors.get(&q), Some(&1));
    }

    #[test]
    fn rejects_oversized() {
        let n = BigInt::one() << 130;
        assert!(matches!(factorize(&n), Err(crate::Error::Resource(_))));
    }
}
