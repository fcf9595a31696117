//! Kneser's condition, Lang's irreducibility test and Schinzel's abelian
//! criterion.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{factor_u64, rational_nth_root};
use crate::error::{domain, Error, Result};
use crate::radical::Radical;
use crate::rgroup::{FiniteFieldGroup, RadicalGroup};

/// Obstructions to `[K(Γ):K] = |Γ:K×|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KneserVerdict {
    pub holds: bool,
    /// Odd primes `q` with `ζ_q ∈ Γ` and `ζ_q ∉ K`.
    pub odd_primes: Vec<u64>,
    /// `ζ₄ ∉ K` while `1 + ζ₄` or `1 − ζ₄` lies in Γ.
    pub special_case: bool,
}

impl KneserVerdict {
    fn new(odd_primes: Vec<u64>, special_case: bool) -> Self {
        KneserVerdict { holds: odd_primes.is_empty() && !special_case, odd_primes, special_case }
    }

    pub fn describe(&self) -> String {
        if self.holds {
            return "Kneser condition holds".into();
        }
        let mut parts: Vec<String> = self.odd_primes.iter().map(|q| format!("zeta({q}) in Gamma but not in K")).collect();
        if self.special_case {
            parts.push("1+zeta(4) or 1-zeta(4) in Gamma while zeta(4) not in K".into());
        }
        parts.join("; ")
    }
}

fn odd_primes_of(m: u64) -> impl Iterator<Item = u64> {
    factor_u64(m).into_iter().map(|(q, _)| q).filter(|&q| q != 2)
}

/// Kneser's condition over ℚ.
pub fn kneser_condition(gamma: &RadicalGroup) -> KneserVerdict {
    let odd = odd_primes_of(gamma.torsion_order()).collect();
    let special = gamma.contains(&Radical::one_plus_i()) || gamma.contains(&Radical::one_minus_i());
    KneserVerdict::new(odd, special)
}

/// Kneser's condition over 𝔽_p, where `ζ_q ∈ 𝔽_p` iff `q | p − 1`.
pub fn kneser_condition_ff(gamma: &FiniteFieldGroup) -> KneserVerdict {
    let p = gamma.p();
    let odd = odd_primes_of(gamma.order()).filter(|q| (p - 1) % q != 0).collect();
    KneserVerdict::new(odd, gamma.contains_one_plus_i())
}

/// `|Γ:ℚ×|`, valid when Kneser's condition holds.
pub fn kneser_degree(gamma: &RadicalGroup) -> Result<u64> {
    let v = kneser_condition(gamma);
    if !v.holds {
        return Err(Error::Precondition(v.describe()));
    }
    Ok(gamma.index())
}

/// Whether `xⁿ − a` is irreducible over ℚ.
///
/// Over ℚ the sufficient condition of Lang is also necessary: `a` is not a
/// `q`-th power for any prime `q | n`, and `a ∉ −4ℚ×⁴` when `4 | n`.
pub fn lang_irreducible(a: &BigRational, n: u32) -> Result<bool> {
    if a.is_zero() {
        return domain("x^n - 0 is not separable");
    }
    if n < 2 {
        return domain(format!("root index {n} must be at least 2"));
    }
    for (q, _) in factor_u64(n as u64) {
        if rational_nth_root(a, q as u32).is_some() {
            return Ok(false);
        }
    }
    if n % 4 == 0 && rational_nth_root(&(-a / BigRational::from_integer(BigInt::from(4))), 4).is_some() {
        return Ok(false);
    }
    Ok(true)
}

/// Outcome of Schinzel's criterion for `ℚ(ζ_n, ⁿ√a)/ℚ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchinzelVerdict {
    pub abelian: bool,
    /// `(m, b)` with `a^m = b^n`, `m | n` and `ζ_m ∈ ℚ`.
    pub witness: Option<(u32, BigRational)>,
}

/// Schinzel's criterion over ℚ, where `m` ranges over `{1, 2}`.
pub fn schinzel_abelian(a: &BigRational, n: u32) -> Result<SchinzelVerdict> {
    if a.is_zero() {
        return domain("radicand must be nonzero");
    }
    if n == 0 {
        return domain("root index must be positive");
    }
    let found = |m: u32| rational_nth_root(&num_traits::pow(a.clone(), m as usize), n).map(|b| (m, b));
    let witness = found(1).or_else(|| if n % 2 == 0 { found(2) } else { None });
    Ok(SchinzelVerdict { abelian: witness.is_some(), witness })
}

/// Check a witness exactly.
pub fn schinzel_witness_holds(a: &BigRational, n: u32, witness: &(u32, BigRational)) -> bool {
    let (m, b) = witness;
    n % m == 0 && *m <= 2 && num_traits::pow(a.clone(), *m as usize) == num_traits::pow(b.clone(), n as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rgroup::ff_group;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn g(spec: &str) -> RadicalGroup {
        RadicalGroup::parse(spec).unwrap()
    }

    #[test]
    fn kneser_examples() {
        assert!(kneser_condition(&g("rt(2,4)")).holds);
        let v = kneser_condition(&g("rt(-4,4)"));
        assert!(v.special_case && v.odd_primes.is_empty());
        assert_eq!(kneser_condition(&g("zeta(3)")).odd_primes, vec![3]);
        assert_eq!(kneser_degree(&g("rt(2,4)")).unwrap(), 4);
        assert_eq!(kneser_degree(&g("rt(2,2), rt(3,2), rt(5,2)")).unwrap(), 8);
        assert_eq!(kneser_degree(&g("")).unwrap(), 1);
        assert!(matches!(kneser_degree(&g("zeta(3)")), Err(Error::Precondition(_))));
        assert!(kneser_condition(&g("zeta(8)")).holds);
        assert!(kneser_condition(&g("zeta(8), rt(2,2)")).special_case);
    }

    #[test]
    fn kneser_over_fp() {
        assert!(kneser_condition_ff(&ff_group(7, 6 * 2).unwrap()).holds);
        assert!(kneser_condition_ff(&ff_group(7, 24).unwrap()).special_case);
        assert_eq!(kneser_condition_ff(&ff_group(7, 6 * 5).unwrap()).odd_primes, vec![5]);
        // 1+i has order 8 in 𝔽_9
        assert!(kneser_condition_ff(&ff_group(3, 8).unwrap()).special_case);
        assert!(kneser_condition_ff(&ff_group(3, 4).unwrap()).holds);
    }

    #[test]
    fn lang_examples() {
        assert!(lang_irreducible(&q(2), 4).unwrap());
        assert!(!lang_irreducible(&q(-4), 4).unwrap());
        assert!(!lang_irreducible(&q(16), 4).unwrap());
        assert!(!lang_irreducible(&q(-8), 3).unwrap());
        assert!(lang_irreducible(&q(-4), 2).unwrap());
        assert!(!lang_irreducible(&q(-64), 8).unwrap());
        assert!(lang_irreducible(&q(0), 3).is_err());
    }

    #[test]
    fn schinzel_examples() {
        let v = schinzel_abelian(&q(-4), 4).unwrap();
        assert_eq!(v.witness, Some((2, q(2))));
        assert!(schinzel_witness_holds(&q(-4), 4, v.witness.as_ref().unwrap()));
        assert!(!schinzel_abelian(&q(2), 8).unwrap().abelian);
        assert_eq!(schinzel_abelian(&q(1), 5).unwrap().witness, Some((1, q(1))));
        assert!(schinzel_abelian(&q(-27), 3).unwrap().abelian);
        assert!(schinzel_abelian(&q(0), 3).is_err());
    }
}
