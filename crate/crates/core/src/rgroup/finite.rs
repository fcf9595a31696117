//! Radical groups over 𝔽_p.
//!
//! Every radical over 𝔽_p is a root of unity, and the torsion of 𝔽̄_p× is
//! locally cyclic, so a group `𝔽_p× ⊆ Γ` is determined by its order `e`.

use crate::arith::{factor_u64, gcd_u64, is_prime_u64, lcm_u64, mul_mod, multiplicative_order, valuation};
use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FiniteFieldGroup {
    p: u64,
    e: u64,
}

/// The subgroup of order `e` of `𝔽̄_p×`, which must contain `𝔽_p×`.
pub fn ff_group(p: u64, e: u64) -> Result<FiniteFieldGroup> {
    if !is_prime_u64(p) {
        return domain(format!("{p} is not prime"));
    }
    if p >= 1 << 32 {
        return domain(format!("prime {p} exceeds the supported range"));
    }
    if e == 0 || e % (p - 1) != 0 {
        return domain(format!("order {e} is not a multiple of p-1 = {}", p - 1));
    }
    if e % p == 0 {
        return domain(format!("characteristic {p} divides the order {e}"));
    }
    Ok(FiniteFieldGroup { p, e })
}

/// `[𝔽_p(Γ) : 𝔽_p]`, the least `d` with `e | p^d − 1`.
pub fn ff_degree(g: &FiniteFieldGroup) -> u64 {
    g.degree()
}

/// Multiplicative order of `1 + i` in `𝔽_{p²}` for `p ≡ 3 (mod 4)`.
pub fn order_of_one_plus_i(p: u64) -> Option<u64> {
    if p % 4 != 3 || !is_prime_u64(p) {
        return None;
    }
    // 𝔽_{p²} = 𝔽_p[i]/(i² + 1)
    let mul = |(a, b): (u64, u64), (c, d): (u64, u64)| {
        let re = (mul_mod(a, c, p) + p - mul_mod(b, d, p)) % p;
        let im = (mul_mod(a, d, p) + mul_mod(b, c, p)) % p;
        (re, im)
    };
    let pow = |mut x: (u64, u64), mut k: u64| {
        let mut acc = (1u64, 0u64);
        while k > 0 {
            if k & 1 == 1 {
                acc = mul(acc, x);
            }
            x = mul(x, x);
            k >>= 1;
        }
        acc
    };
    let group = p * p - 1;
    let mut order = group;
    for (q, _) in factor_u64(group) {
        while order % q == 0 && pow((1, 1), order / q) == (1, 0) {
            order /= q;
        }
    }
    Some(order)
}

impl FiniteFieldGroup {
    /// `⟨𝔽_p×, ζ_{m₁}, ζ_{m₂}, …⟩`.
    pub fn from_torsion(p: u64, orders: &[u64]) -> Result<Self> {
        let e = orders.iter().fold(p.saturating_sub(1).max(1), |acc, &m| lcm_u64(acc, m));
        ff_group(p, e)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn order(&self) -> u64 {
        self.e
    }

    /// `|Γ : 𝔽_p×| = e/(p−1)`.
    pub fn index(&self) -> u64 {
        self.e / (self.p - 1)
    }

    pub fn degree(&self) -> u64 {
        if self.e == 1 {
            1
        } else {
            multiplicative_order(self.p as i64, self.e).expect("p is a unit modulo e")
        }
    }

    pub fn torsion_order(&self) -> u64 {
        self.e
    }

    pub fn contains_zeta(&self, m: u64) -> bool {
        self.e % m == 0
    }

    /// Whether `1 ± ζ₄` lies in Γ while `ζ₄ ∉ 𝔽_p`.
    pub fn contains_one_plus_i(&self) -> bool {
        order_of_one_plus_i(self.p).is_some_and(|o| self.e % o == 0)
    }

    /// `Γ_ℓ`, of order `(p−1)·ℓ^{v_ℓ(e) − v_ℓ(p−1)}`.
    pub fn ell_part(&self, ell: u64) -> Result<Self> {
        super::check_ell(super::BaseField::Fp(self.p), ell)?;
        let extra = valuation(self.e, ell) - valuation(self.p - 1, ell);
        ff_group(self.p, (self.p - 1) * ell.pow(extra))
    }

    /// `⟨Γ, ζ_m⟩`.
    pub fn adjoin_zeta(&self, m: u64) -> Result<Self> {
        ff_group(self.p, lcm_u64(self.e, m))
    }

    /// `Γ ∩ Λ`, both groups over the same prime.
    pub fn intersect(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        FiniteFieldGroup { p: self.p, e: gcd_u64(self.e, other.e) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        assert_eq!(ff_degree(&ff_group(5, 4).unwrap()), 1);
        assert_eq!(ff_degree(&ff_group(5, 8).unwrap()), 2);
        assert_eq!(ff_degree(&ff_group(3, 16).unwrap()), 4);
        assert_eq!(ff_degree(&ff_group(2, 1).unwrap()), 1);
        assert_eq!(ff_degree(&ff_group(2, 7).unwrap()), 3);
    }

    #[test]
    fn rejects_bad_orders() {
        assert!(ff_group(5, 6).is_err());
        assert!(ff_group(3, 6).is_err());
        assert!(ff_group(4, 6).is_err());
    }

    #[test]
    fn one_plus_i() {
        // (1+i)² = 2i over 𝔽₃: 2i has order 4, so 1+i has order 8
        assert_eq!(order_of_one_plus_i(3), Some(8));
        assert_eq!(order_of_one_plus_i(5), None);
        for p in [3u64, 7, 11, 19, 23, 31, 43, 47] {
            let o = order_of_one_plus_i(p).unwrap();
            assert_eq!((p * p - 1) % o, 0);
            assert_eq!(o % 8, 0, "p = {p}");
        }
    }

    #[test]
    fn ell_parts() {
        let g = ff_group(7, 6 * 12).unwrap();
        assert_eq!(g.ell_part(2).unwrap().index(), 4);
        assert_eq!(g.ell_part(3).unwrap().index(), 3);
        assert_eq!(g.ell_part(5).unwrap().index(), 1);
        assert!(g.ell_part(7).is_err());
    }

    #[test]
    fn brute_force_degree() {
        for p in crate::arith::primes_up_to(50) {
            for k in 1..=40u64 {
                let e = (p - 1) * k;
                let Ok(g) = ff_group(p, e) else {
                    assert_eq!(e % p, 0);
                    continue;
                };
                let mut d = 1u64;
                let mut pw = p % e;
                while (pw + e - 1) % e != 0 {
                    pw = mul_mod(pw, p, e);
                    d += 1;
                }
                assert_eq!(g.degree(), d, "p={p} e={e}");
            }
        }
    }
}
