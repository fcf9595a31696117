//! Exact integer and rational number theory.
//!
//! Everything here is arbitrary precision or bounded `u64` arithmetic with
//! overflow-free `u128` intermediates; there is no floating point.

mod factor;
mod lattice;

pub use factor::{factorize, is_prime, is_prime_u64, Factorization};
pub use lattice::{hermite_normal_form, smith_normal_form, IntMatrix};

use crate::error::{domain, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / a.gcd(&b) * b
    }
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// 2-adic style valuation `v_p(n)` for `n > 0`.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n > 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Prime factors of a positive integer with multiplicity.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "factor_u64(0)");
    if n > 1 << 40 {
        let f = factorize(&BigInt::from(n)).expect("nonzero");
        return f
            .factors
            .iter()
            .map(|(p, e)| (p.to_u64().expect("fits"), *e))
            .collect();
    }
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factor_u64(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> Result<u64> {
    if n == 0 {
        return domain("euler_phi of 0");
    }
    let mut phi = n;
    for (p, _) in factor_u64(n) {
        phi = phi / p * (p - 1);
    }
    Ok(phi)
}

pub fn moebius(n: u64) -> i32 {
    let f = factor_u64(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Smallest `k ≥ 1` with `a^k ≡ 1 (mod n)`.
pub fn multiplicative_order(a: i64, n: u64) -> Result<u64> {
    if n < 2 {
        return domain(format!("modulus {n} must be at least 2"));
    }
    let a = a.rem_euclid(n as i64) as u64;
    if gcd_u64(a, n) != 1 {
        return domain(format!("gcd({a}, {n}) != 1"));
    }
    // order divides phi(n): strip prime factors of phi while the power stays 1
    let phi = euler_phi(n)?;
    let mut order = phi;
    for (p, _) in factor_u64(phi) {
        while order % p == 0 && pow_mod(a, order / p, n) == 1 {
            order /= p;
        }
    }
    Ok(order)
}

/// Legendre symbol via Euler's criterion.
pub fn legendre(a: i64, p: u64) -> Result<i32> {
    if p < 3 || !is_prime_u64(p) {
        return domain(format!("{p} is not an odd prime"));
    }
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(a, (p - 1) / 2, p) == 1 { 1 } else { -1 })
}

/// Primes `≤ bound` by a plain sieve.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (0..=n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
}

/// Floor of the `n`-th root of a non-negative integer.
pub fn nth_root_floor(x: &BigInt, n: u32) -> BigInt {
    assert!(!x.is_negative() && n >= 1);
    if x.is_zero() || n == 1 {
        return x.clone();
    }
    x.nth_root(n)
}

/// If `x` (rational, nonzero) is a perfect `n`-th power in ℚ, return a root.
/// For even `n` the positive root is returned.
pub fn rational_nth_root(x: &BigRational, n: u32) -> Option<BigRational> {
    if x.is_zero() {
        return Some(BigRational::zero());
    }
    if x.is_negative() && n % 2 == 0 {
        return None;
    }
    let num = x.numer().abs();
    let den = x.denom().clone();
    let rn = nth_root_floor(&num, n);
    let rd = nth_root_floor(&den, n);
    if num_traits::pow(rn.clone(), n as usize) != num || num_traits::pow(rd.clone(), n as usize) != den {
        return None;
    }
    let r = BigRational::new(rn, rd);
    Some(if x.is_negative() { -r } else { r })
}

/// Value of the `m`-th cyclotomic polynomial at an integer point, computed
/// as `∏_{d | m} (x^d − 1)^{μ(m/d)}`.
pub fn cyclotomic_value(m: u64, x: &BigInt) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for d in divisors(m) {
        let term = num_traits::pow(x.clone(), d as usize) - BigInt::one();
        match moebius(m / d) {
            1 => num *= term,
            -1 => den *= term,
            _ => {}
        }
    }
    num / den
}

/// Outcome of searching for a primitive prime divisor of `p^m − 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZsigmondyWitness {
    Prime(BigInt),
    /// `(p, m) = (2, 6)`: `2^6 − 1 = 63 = 3²·7` has no primitive divisor.
    NoWitness,
}

/// A prime `q ≠ p` with `ord_q(p) = m`, for prime `p`, `m ≥ 3`.
///
/// Every prime factor of `Φ_m(p)` not dividing `m` has order exactly `m`,
/// so it suffices to strip the primes of `m` and pick any remaining factor.
pub fn zsygmondy_witness(p: u64, m: u64) -> Result<ZsigmondyWitness> {
    if !is_prime_u64(p) {
        return domain(format!("{p} is not prime"));
    }
    if m < 3 {
        return domain(format!("exponent {m} must be at least 3"));
    }
    if (p, m) == (2, 6) {
        return Ok(ZsigmondyWitness::NoWitness);
    }
    let mut c = cyclotomic_value(m, &BigInt::from(p));
    for (q, _) in factor_u64(m) {
        let q = BigInt::from(q);
        while (&c % &q).is_zero() {
            c /= &q;
        }
    }
    if c.is_one() {
        return Ok(ZsigmondyWitness::NoWitness);
    }
    let q = factor::smallest_prime_factor(&c);
    debug_assert!(BigInt::from(p).modpow(&BigInt::from(m), &q).is_one());
    Ok(ZsigmondyWitness::Prime(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(8).unwrap(), 4);
        assert_eq!(euler_phi(21).unwrap(), 12);
        assert!(euler_phi(0).is_err());
    }

    #[test]
    fn phi_matches_brute_force() {
        for n in 1..=2000u64 {
            let brute = (1..=n).filter(|&a| gcd_u64(a, n) == 1).count() as u64;
            assert_eq!(euler_phi(n).unwrap(), brute, "n = {n}");
        }
    }

    #[test]
    fn order_examples() {
        assert_eq!(multiplicative_order(2, 7).unwrap(), 3);
        assert_eq!(multiplicative_order(1, 5).unwrap(), 1);
        assert_eq!(multiplicative_order(5, 8).unwrap(), 2);
        assert!(multiplicative_order(2, 4).is_err());
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(1, 5).unwrap(), 1);
        assert_eq!(legendre(2, 5).unwrap(), -1);
        assert_eq!(legendre(5, 5).unwrap(), 0);
        assert!(legendre(3, 2).is_err());
        assert!(legendre(3, 9).is_err());
    }

    #[test]
    fn zsygmondy_examples() {
        let w = |p, m| match zsygmondy_witness(p, m).unwrap() {
            ZsigmondyWitness::Prime(q) => q.to_u64().unwrap(),
            ZsigmondyWitness::NoWitness => 0,
        };
        assert_eq!(w(2, 3), 7);
        assert_eq!(w(2, 4), 5);
        assert_eq!(w(3, 5), 11);
        assert_eq!(zsygmondy_witness(2, 6).unwrap(), ZsigmondyWitness::NoWitness);
    }

    #[test]
    fn rational_roots() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(rational_nth_root(&r(16, 81), 4), Some(r(2, 3)));
        assert_eq!(rational_nth_root(&r(-8, 1), 3), Some(r(-2, 1)));
        assert_eq!(rational_nth_root(&r(-4, 1), 2), None);
        assert_eq!(rational_nth_root(&r(2, 1), 2), None);
    }

    #[test]
    fn cyclotomic_values() {
        assert_eq!(cyclotomic_value(5, &BigInt::from(3)), BigInt::from(121));
        assert_eq!(cyclotomic_value(6, &BigInt::from(2)), BigInt::from(3));
    }
}
