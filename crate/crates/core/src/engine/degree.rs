//! Per-prime degree formulas and their composition into `[K(Γ):K]`.
//!
//! Over ℚ write `W` for the odd primes `q` with `ζ_q ∈ Γ` and `F₀ = ℚ(ζ_q : q ∈ W)`.
//! Over `F₀` the extensions `F₀(Γ_ℓ)` have pairwise coprime ℓ-power degrees, so
//! `[ℚ(Γ):ℚ] = [F₀:ℚ] · ∏_ℓ [F₀(Γ_ℓ):F₀]`, and each factor is read off the
//! formula for `[ℚ(Γ_ℓ, W_ℓ):ℚ]`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::criteria::{kneser_condition, kneser_condition_ff, KneserVerdict};
use super::entangle::{cyclotomic_radicals, entanglement_params, phi, EntanglementParams};
use crate::arith::{factor_u64, is_prime_u64, lcm_u64, multiplicative_order, pow_mod, valuation};
use crate::error::{domain, Error, Result};
use crate::radical::Radical;
use crate::rgroup::{ff_group, BaseField, FiniteFieldGroup, RadicalGroup};

/// Which formula produced a per-prime factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// ℓ odd, `ζ_ℓ ∉ K`, `ζ_ℓ ∉ Γ`.
    ZetaNotInGamma,
    /// ℓ odd, `ζ_ℓ ∉ K`, `ζ_ℓ ∈ Γ` (uses τ and ε).
    ZetaInGamma,
    /// ℓ odd, `ζ_ℓ ∈ K` (over 𝔽_p).
    ZetaInBase,
    /// ℓ = 2 outside the special case.
    NonSpecial,
    /// ℓ = 2, `1 ± ζ₄ ∈ Γ₂`.
    Special,
    /// ℓ = 2, `1 ± ζ₄ ∉ Γ₂` but `1 + ζ₄ ∈ ⟨Γ₂, ℚ(W₂)×⟩`.
    SpecialOverW,
    /// ℓ = 2 over 𝔽_p, degree read from orders directly.
    FiniteField,
}

/// One ℓ-part of a [`DegreeReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PrimeFactor {
    pub ell: u64,
    pub branch: Branch,
    /// `|Γ_ℓ : K×|`.
    pub index: u64,
    /// `|Γ_{ℓ,E} : K×|`, the part of Γ_ℓ inside the cyclotomic field measured against.
    pub entangled_index: u64,
    /// Odd primes of `W_ℓ`.
    pub w: Vec<u64>,
    /// Conductor of the cyclotomic field Γ_ℓ is measured against.
    pub conductor: u64,
    /// `[K(Γ_ℓ, W_ℓ) : K]`.
    pub degree: u64,
    /// `[F₀(Γ_ℓ) : F₀]` (over ℚ).
    pub factor: Option<u64>,
    pub tau: Option<u32>,
    pub epsilon: Option<u32>,
    /// `|⟨Γ₂, K(ζ₄)×⟩ : K(ζ₄)×|` in the special branches.
    pub index_over_q_i: Option<u64>,
    pub params: EntanglementParams,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CyclotomicPart {
    /// Largest `m` with `ζ_m ∈ Γ`.
    pub torsion_order: u64,
    /// Conductor of `K(ζ_m)` over ℚ (over 𝔽_p: `m`).
    pub conductor: u64,
    /// The primes `W` and `[F₀:K]`.
    pub anchor_primes: Vec<u64>,
    pub anchor_degree: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DegreeReport {
    pub base: String,
    pub total: u64,
    pub index: u64,
    pub kneser: bool,
    pub kneser_detail: KneserVerdict,
    pub cyclotomic: CyclotomicPart,
    pub per_prime: BTreeMap<u64, PrimeFactor>,
}

fn check_w(w: &[u64], ell: u64) -> Result<u64> {
    let mut c = 1u64;
    for &q in w {
        if q == 2 || !is_prime_u64(q) {
            return domain(format!("{q} is not an odd prime"));
        }
        if q == ell {
            return domain(format!("W must not contain ℓ = {ell}"));
        }
        if c % q != 0 {
            c *= q;
        }
    }
    Ok(c)
}

fn check_primary(gamma: &RadicalGroup, ell: u64) -> Result<()> {
    let idx = gamma.index();
    if idx / ell.pow(valuation(idx, ell)) != 1 {
        return Err(Error::Precondition(format!("index {idx} of Γ_ℓ is not a power of {ell}")));
    }
    Ok(())
}

fn sorted_primes(c: u64) -> Vec<u64> {
    factor_u64(c).into_iter().map(|(q, _)| q).collect()
}

/// Largest `k` with `ζ_{ℓ^k}` in both groups.
fn shared_level(a: &RadicalGroup, b: &RadicalGroup, ell: u64) -> u32 {
    let mut k = 0;
    loop {
        let z = Radical::zeta(ell.pow(k + 1), 1);
        if !(a.contains(&z) && b.contains(&z)) {
            return k;
        }
        k += 1;
    }
}

/// `[ℚ(Γ_ℓ, W):ℚ]` for an odd prime ℓ and an ℓ-primary group Γ_ℓ.
pub fn degree_odd(gamma_l: &RadicalGroup, w: &[u64], ell: u64) -> Result<PrimeFactor> {
    if ell == 2 || !is_prime_u64(ell) {
        return domain(format!("{ell} is not an odd prime"));
    }
    let c = check_w(w, ell)?;
    check_primary(gamma_l, ell)?;
    let params = entanglement_params(BaseField::Rationals, ell)?;
    let index = gamma_l.index();
    let zeta = Radical::zeta(ell, 1);
    let mut out = PrimeFactor {
        ell,
        branch: Branch::ZetaNotInGamma,
        index,
        entangled_index: 1,
        w: sorted_primes(c),
        conductor: c,
        degree: index * phi(c),
        factor: None,
        tau: None,
        epsilon: None,
        index_over_q_i: None,
        params,
    };
    if gamma_l.contains(&zeta) {
        let n = ell * c;
        let lambda = cyclotomic_radicals(n);
        let tau = shared_level(gamma_l, &lambda, ell);
        let epsilon = shared_level(gamma_l, &cyclotomic_radicals(ell), ell);
        // |Γ_ℓ|·[ℚ(W, ζ_ℓ):ℚ] / (ℓ^ε·[ℚ(ζ_{ℓ^τ}):ℚ(ζ_ℓ)])
        let denom = ell.pow(epsilon) * ell.pow(tau - 1);
        out.branch = Branch::ZetaInGamma;
        out.conductor = n;
        out.tau = Some(tau);
        out.epsilon = Some(epsilon);
        out.entangled_index = gamma_l.intersection_index(&lambda);
        out.degree = index * phi(n) / denom;
    }
    Ok(out)
}

/// `[ℚ(Γ₂, W):ℚ]` for a 2-primary group Γ₂.
///
/// The special formula applies as soon as `1 + ζ₄ ∈ ⟨Γ₂, ℚ(W)×⟩`, which can
/// happen with `1 ± ζ₄ ∉ Γ₂`: for `Γ₂ = ⟨ℚ×, (1+ζ₄)√−3⟩`, `W = {3}` the
/// degree is 4, not `|Γ₂|·[ℚ(ζ₃):ℚ] = 8`.
pub fn degree_two(gamma2: &RadicalGroup, w: &[u64]) -> Result<PrimeFactor> {
    let c = check_w(w, 2)?;
    check_primary(gamma2, 2)?;
    let params = entanglement_params(BaseField::Rationals, 2)?;
    let index = gamma2.index();
    let lambda_c = cyclotomic_radicals(c);
    let eta = Radical::one_plus_i();
    let literal = kneser_condition(gamma2).special_case;
    let over_w = literal || gamma2.adjoin(lambda_c.generators()).contains(&eta);
    let (branch, n, lambda) = if over_w {
        let n = 4 * c;
        (if literal { Branch::Special } else { Branch::SpecialOverW }, n, cyclotomic_radicals(n))
    } else {
        (Branch::NonSpecial, c, lambda_c)
    };
    let entangled = gamma2.intersection_index(&lambda);
    Ok(PrimeFactor {
        ell: 2,
        branch,
        index,
        entangled_index: entangled,
        w: sorted_primes(c),
        conductor: n,
        degree: index * phi(n) / entangled,
        factor: None,
        tau: None,
        epsilon: None,
        index_over_q_i: over_w.then(|| gamma2.index_over_q_i()),
        params,
    })
}

fn conductor_of(m: u64) -> u64 {
    if m % 4 == 2 {
        m / 2
    } else {
        m
    }
}

/// `[ℚ(Γ):ℚ]` with the per-prime breakdown.
pub fn total_degree(gamma: &RadicalGroup) -> Result<DegreeReport> {
    let torsion = gamma.torsion_order();
    let w: Vec<u64> = sorted_primes(torsion).into_iter().filter(|&q| q != 2).collect();
    let anchor = w.iter().map(|q| q - 1).product::<u64>();
    let mut per_prime = BTreeMap::new();
    let mut total = anchor;
    for ell in gamma.index_primes() {
        let part = gamma.ell_part(ell);
        let mut f = if ell == 2 {
            degree_two(&part, &w)?
        } else {
            let others: Vec<u64> = w.iter().copied().filter(|&q| q != ell).collect();
            degree_odd(&part, &others, ell)?
        };
        let factor = f.degree / anchor;
        f.factor = Some(factor);
        total *= factor;
        per_prime.insert(ell, f);
    }
    let kneser_detail = kneser_condition(gamma);
    Ok(DegreeReport {
        base: BaseField::Rationals.to_string(),
        total,
        index: gamma.index(),
        kneser: kneser_detail.holds,
        kneser_detail,
        cyclotomic: CyclotomicPart {
            torsion_order: torsion,
            conductor: conductor_of(torsion),
            anchor_primes: w,
            anchor_degree: anchor,
        },
        per_prime,
    })
}

/// Largest `k ≤ cap` with `ℓ^k | p^d − 1`.
fn level_ff(p: u64, d: u64, ell: u64, cap: u32) -> u32 {
    let mut k = 0;
    while k < cap && pow_mod(p, d, ell.pow(k + 1)) == 1 % ell.pow(k + 1) {
        k += 1;
    }
    k
}

/// `ord_m(p)`, with `ord_1 = 1`.
fn order(p: u64, m: u64) -> u64 {
    if m == 1 {
        1
    } else {
        multiplicative_order(p as i64, m).expect("p is a unit")
    }
}

/// `|Γ_ℓ ∩ 𝔽_{p^d}× : 𝔽_p×|` from orders of cyclic groups.
fn ff_intersection_index(gamma_l: &FiniteFieldGroup, d: u64) -> u64 {
    let p = gamma_l.p();
    let n = gamma_l.order();
    let r = (pow_mod(p, d, n) + n - 1) % n;
    crate::arith::gcd_u64(n, r) / (p - 1)
}

/// Per-prime factor over 𝔽_p for the ℓ-part of `gamma` with
/// `W_ℓ` the odd primes `q ≠ ℓ`, `q | e`.
pub fn degree_prime_ff(gamma: &FiniteFieldGroup, ell: u64) -> Result<PrimeFactor> {
    let p = gamma.p();
    let params = entanglement_params(BaseField::Fp(p), ell)?;
    let part = gamma.ell_part(ell)?;
    let w: Vec<u64> = sorted_primes(gamma.order()).into_iter().filter(|&q| q != 2 && q != ell && q != p).collect();
    let w_order: u64 = w.iter().product();
    let index = part.index();
    let a = valuation(part.order(), ell);
    // [K(W_ℓ):K] = ord_{∏W}(p)
    let d_w = order(p, w_order);
    let mut out = PrimeFactor {
        ell,
        branch: Branch::FiniteField,
        index,
        entangled_index: 1,
        w: w.clone(),
        conductor: w_order,
        degree: 0,
        factor: None,
        tau: None,
        epsilon: None,
        index_over_q_i: None,
        params,
    };
    if ell == 2 {
        out.degree = ff_group(p, lcm_u64(part.order(), lcm_u64(p - 1, w_order)))?.degree();
        return Ok(out);
    }
    if (p - 1) % ell == 0 {
        // |Γ_ℓ|·[K(W_ℓ):K] / |Γ_ℓ ∩ K(W_ℓ)×|
        let e = ff_intersection_index(&part, d_w);
        out.branch = Branch::ZetaInBase;
        out.entangled_index = e;
        out.degree = index * d_w / e;
    } else if a == 0 {
        out.branch = Branch::ZetaNotInGamma;
        out.degree = index * d_w;
    } else {
        let o = order(p, ell);
        let d = lcm_u64(o, d_w);
        let tau = level_ff(p, d, ell, a);
        let epsilon = level_ff(p, o, ell, a);
        // [K(ζ_{ℓ^τ}):K(ζ_ℓ)] = ord_{ℓ^τ}(p) / ord_ℓ(p)
        let lift = order(p, ell.pow(tau)) / o;
        out.branch = Branch::ZetaInGamma;
        out.conductor = w_order * ell;
        out.tau = Some(tau);
        out.epsilon = Some(epsilon);
        out.entangled_index = ff_intersection_index(&part, o);
        out.degree = index * d / (ell.pow(epsilon) * lift);
    }
    Ok(out)
}

/// `[𝔽_p(Γ):𝔽_p]` with per-prime data; the total is the order of `p` mod `e`.
pub fn total_degree_ff(gamma: &FiniteFieldGroup) -> Result<DegreeReport> {
    let p = gamma.p();
    let mut per_prime = BTreeMap::new();
    for (ell, _) in factor_u64(gamma.index()) {
        per_prime.insert(ell, degree_prime_ff(gamma, ell)?);
    }
    let kneser_detail = kneser_condition_ff(gamma);
    let anchor_primes: Vec<u64> = sorted_primes(gamma.order()).into_iter().filter(|&q| q != 2).collect();
    Ok(DegreeReport {
        base: BaseField::Fp(p).to_string(),
        total: gamma.degree(),
        index: gamma.index(),
        kneser: kneser_detail.holds,
        kneser_detail,
        cyclotomic: CyclotomicPart {
            torsion_order: gamma.order(),
            conductor: gamma.order(),
            anchor_degree: order(p, anchor_primes.iter().product()),
            anchor_primes,
        },
        per_prime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(spec: &str) -> RadicalGroup {
        RadicalGroup::parse(spec).unwrap()
    }

    #[test]
    fn odd_examples() {
        assert_eq!(degree_odd(&g("rt(2,3)"), &[7], 3).unwrap().degree, 18);
        let f = degree_odd(&g("zeta(3), rt(2,3)"), &[], 3).unwrap();
        assert_eq!((f.degree, f.tau, f.epsilon, f.branch), (6, Some(1), Some(1), Branch::ZetaInGamma));
        assert_eq!(f.entangled_index, 3);
        assert_eq!(degree_odd(&g("zeta(3), rt(2,3)"), &[7], 3).unwrap().degree, 36);
        assert_eq!(degree_odd(&g("zeta(9)"), &[], 3).unwrap().degree, 6);
        assert!(degree_odd(&g("rt(2,3)"), &[3], 3).is_err());
        assert!(degree_odd(&g("rt(2,2)"), &[], 3).is_err());
        assert!(degree_odd(&g("rt(2,2)"), &[], 2).is_err());
    }

    #[test]
    fn two_examples() {
        let f = degree_two(&g("rt(-4,4)"), &[]).unwrap();
        assert_eq!((f.degree, f.branch, f.index_over_q_i), (2, Branch::Special, Some(1)));
        assert_eq!(degree_two(&g("rt(-4,4), rt(3,4)"), &[]).unwrap().degree, 8);
        let f = degree_two(&g("rt(2,2)"), &[5]).unwrap();
        assert_eq!((f.degree, f.entangled_index), (8, 1));
        let f = degree_two(&g("rt(5,2)"), &[5]).unwrap();
        assert_eq!((f.degree, f.entangled_index), (4, 2));
        let f = degree_two(&g("zeta(8)^3*rt(6,2)"), &[3]).unwrap();
        assert_eq!((f.degree, f.branch), (4, Branch::SpecialOverW));
    }

    #[test]
    fn totals() {
        let total = |s: &str| total_degree(&g(s)).unwrap().total;
        assert_eq!(total("zeta(4), rt(2,4)"), 8);
        assert_eq!(total("rt(-4,4)"), 2);
        assert_eq!(total("rt(5,2), zeta(5)"), 4);
        assert_eq!(total(""), 1);
        assert_eq!(total("zeta(3), rt(2,3)"), 6);
        assert_eq!(total("zeta(21), rt(2,3)"), 36);
        assert_eq!(total("zeta(3), zeta(8)^3*rt(6,2)"), 4);
        assert_eq!(total("zeta(8), rt(2,2)"), 4);
        assert_eq!(total("zeta(12), rt(3,2)"), 4);
        let r = total_degree(&g("zeta(4), rt(2,4)")).unwrap();
        assert!(r.kneser && r.index == 8 && r.per_prime.contains_key(&2));
    }

    #[test]
    fn finite_field_totals() {
        for (p, e) in [(5, 8), (3, 16), (7, 6 * 9), (11, 10 * 25), (13, 12 * 27 * 5)] {
            let gamma = ff_group(p, e).unwrap();
            let r = total_degree_ff(&gamma).unwrap();
            assert_eq!(r.total, gamma.degree());
            for f in r.per_prime.values() {
                let part = gamma.ell_part(f.ell).unwrap();
                let w: u64 = f.w.iter().product();
                let direct = ff_group(p, lcm_u64(part.order(), lcm_u64(p - 1, w))).unwrap().degree();
                assert_eq!(f.degree, direct, "p={p} e={e} ell={}", f.ell);
            }
        }
    }
}
