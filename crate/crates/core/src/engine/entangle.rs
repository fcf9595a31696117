//! Entanglement parameters `t, w, s` and the radicals of ℓ-power order
//! inside `K(ζ_{2𝒫})`, the field generated by ζ₄ and all `ζ_q`, `q` odd prime.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Serialize, Serializer};

use crate::arith::{factor_u64, valuation};
use crate::error::Result;
use crate::radical::Radical;
use crate::rgroup::{BaseField, RadicalGroup};

/// A parameter that is a positive integer or infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Finite(k) => write!(f, "{k}"),
            Level::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Level {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Level::Finite(k) => s.serialize_u32(*k),
            Level::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Which description of `K(ζ_{2𝒫}) ∩ √[ℓ^∞]{K×}` applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParamsBranch {
    /// Odd ℓ: the group is `⟨ζ_{ℓ^t}, K×⟩`.
    Odd,
    /// ℓ = 2: `⟨ζ_{2^t}, 1 + ζ_{2^w}, K(ζ_{2𝒫}) ∩ √K×⟩`.
    Two,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntanglementParams {
    pub ell: u64,
    /// Largest `t` with `ζ_{ℓ^t} ∈ K(ζ_{2𝒫})`.
    pub t: Level,
    /// Largest `w > 0` with `ζ_{ℓ^w} ∈ K` (ℓ odd), or with
    /// `ζ_{2^w} + ζ_{2^w}⁻¹ ∈ K` (ℓ = 2); absent when there is none.
    pub w: Option<Level>,
    /// Equal to `t` over the supported bases.
    pub s: Level,
    pub branch: ParamsBranch,
}

pub fn entanglement_params(base: BaseField, ell: u64) -> Result<EntanglementParams> {
    crate::rgroup::check_ell(base, ell)?;
    let branch = if ell == 2 { ParamsBranch::Two } else { ParamsBranch::Odd };
    let (t, w) = match base {
        BaseField::Rationals if ell == 2 => (Level::Finite(2), Some(Level::Finite(2))),
        BaseField::Rationals => (Level::Finite(1), None),
        BaseField::Fp(p) => {
            // 𝔽_p(ζ_{2𝒫}) already contains every ζ_{ℓ^k}
            let w = if ell == 2 {
                valuation(p - 1, 2).max(valuation(p + 1, 2))
            } else {
                valuation(p - 1, ell)
            };
            (Level::Infinite, (w > 0).then_some(Level::Finite(w)))
        }
    };
    Ok(EntanglementParams { ell, t, w, s: t, branch })
}

/// `K(ζ_{2𝒫}) ∩ √[ℓ^∞]{K×}` as generators plus a membership predicate.
#[derive(Debug, Clone)]
pub struct EntangledGenerators {
    pub base: BaseField,
    pub ell: u64,
    pub params: EntanglementParams,
    /// Explicit generators besides `K×` (and besides the square roots below).
    pub generators: Vec<Radical>,
    /// Whether every `√q` with `q ∈ K×` lies in the group.
    pub square_roots: SquareRoots,
}

/// Which square roots of rationals belong to the group over ℚ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SquareRoots {
    None,
    /// `√d` for odd `d`, and `√−1`; `√2` enters only through `ζ₈√2`.
    OddRadicands,
    /// Every ℓ-power root of unity (over 𝔽_p).
    AllRootsOfUnity,
}

pub fn entangled_generators(base: BaseField, ell: u64) -> Result<EntangledGenerators> {
    let params = entanglement_params(base, ell)?;
    let (generators, square_roots) = match base {
        BaseField::Rationals if ell == 2 => (vec![Radical::zeta(4, 1), Radical::one_plus_i()], SquareRoots::OddRadicands),
        BaseField::Rationals => (vec![Radical::zeta(ell, 1)], SquareRoots::None),
        BaseField::Fp(_) => (Vec::new(), SquareRoots::AllRootsOfUnity),
    };
    Ok(EntangledGenerators { base, ell, params, generators, square_roots })
}

fn is_integral(q: &BigRational) -> bool {
    q.is_integer()
}

fn twice_integral(q: &BigRational) -> bool {
    (q * BigRational::from_integer(BigInt::from(2))).is_integer()
}

impl EntangledGenerators {
    /// Membership of a radical over ℚ.
    ///
    /// ℓ odd: all exponents integral and `2ℓu ∈ ℤ`. ℓ = 2: exponents in `½ℤ`,
    /// `8u ∈ ℤ`, and `8u` odd exactly when `√2` occurs (so ζ₈ travels with √2).
    pub fn contains(&self, a: &Radical) -> bool {
        if self.base != BaseField::Rationals {
            return false;
        }
        let u = a.torsion();
        if self.ell != 2 {
            let scaled = u * BigRational::from_integer(BigInt::from(2 * self.ell));
            return scaled.is_integer() && a.exponents().values().all(is_integral);
        }
        if !a.exponents().values().all(twice_integral) {
            return false;
        }
        let u8 = u * BigRational::from_integer(BigInt::from(8));
        if !u8.is_integer() {
            return false;
        }
        let odd_torsion = u8.numer().is_odd();
        odd_torsion == !is_integral(&a.exponent(2))
    }

    /// Whether `ζ_m` lies in `⟨ζ_{ℓ^∞}, 𝔽_p×⟩`.
    pub fn contains_root_of_unity(&self, m: u64) -> bool {
        match self.base {
            BaseField::Fp(p) => {
                let rest = m / self.ell.pow(valuation(m, self.ell));
                (p - 1) % rest == 0
            }
            BaseField::Rationals => self.contains(&Radical::zeta(m, 1)),
        }
    }

    /// The part of the group inside ℚ(ζ_n), as generators.
    pub fn restricted(&self, n: u64) -> Vec<Radical> {
        let mut out = Vec::new();
        if self.base != BaseField::Rationals {
            return out;
        }
        if self.ell == 2 {
            if n % 4 == 0 {
                out.extend(self.generators.iter().cloned());
            }
            for (q, _) in factor_u64(n) {
                if q != 2 {
                    out.push(sqrt_q_star(q));
                }
            }
        } else if n % self.ell == 0 {
            out.extend(self.generators.iter().cloned());
        }
        out
    }

    pub fn describe(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(Radical::to_string).collect();
        let base = match self.base {
            BaseField::Rationals => "Q*".to_string(),
            BaseField::Fp(p) => format!("F_{p}*"),
        };
        match self.square_roots {
            SquareRoots::None => format!("<{}, {base}>", gens.join(", ")),
            SquareRoots::OddRadicands => format!("<{}, rt(d,2) for odd d, {base}>", gens.join(", ")),
            SquareRoots::AllRootsOfUnity => format!("<zeta({}^k) for all k, {base}>", self.ell),
        }
    }
}

/// `√q*` with `q* = (−1)^{(q−1)/2}·q`, the square root lying in ℚ(ζ_q).
pub fn sqrt_q_star(q: u64) -> Radical {
    let star = if q % 4 == 1 { q as i64 } else { -(q as i64) };
    Radical::rt(&BigRational::from_integer(BigInt::from(star)), 2).expect("nonzero radicand")
}

/// The radicals inside ℚ(ζ_n): `⟨ℚ×, ζ_n⟩` together with the entangled
/// generators of every prime restricted to conductor `n`.
pub fn cyclotomic_radicals(n: u64) -> RadicalGroup {
    let mut gens = vec![Radical::zeta(n.max(1), 1)];
    let mut ells: Vec<u64> = factor_u64(n).into_iter().map(|(q, _)| q).collect();
    if !ells.contains(&2) {
        ells.push(2);
    }
    for ell in ells {
        let e = entangled_generators(BaseField::Rationals, ell).expect("ℓ is prime");
        gens.extend(e.restricted(n));
    }
    RadicalGroup::new(gens)
}

/// `[ℚ(ζ_n):ℚ]`.
pub(crate) fn phi(n: u64) -> u64 {
    crate::arith::euler_phi(n.max(1)).expect("positive")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Radical {
        s.parse().unwrap()
    }

    #[test]
    fn params() {
        let p = entanglement_params(BaseField::Rationals, 3).unwrap();
        assert_eq!((p.t, p.w), (Level::Finite(1), None));
        let p = entanglement_params(BaseField::Rationals, 2).unwrap();
        assert_eq!((p.t, p.w), (Level::Finite(2), Some(Level::Finite(2))));
        let p = entanglement_params(BaseField::Fp(5), 2).unwrap();
        assert_eq!((p.t, p.w), (Level::Infinite, Some(Level::Finite(2))));
        let p = entanglement_params(BaseField::Fp(7), 2).unwrap();
        assert_eq!(p.w, Some(Level::Finite(3)));
        assert_eq!(entanglement_params(BaseField::Fp(7), 3).unwrap().w, Some(Level::Finite(1)));
        assert_eq!(entanglement_params(BaseField::Fp(7), 5).unwrap().w, None);
        assert!(entanglement_params(BaseField::Fp(5), 5).is_err());
        assert!(entanglement_params(BaseField::Rationals, 4).is_err());
    }

    #[test]
    fn membership_over_q() {
        let e3 = entangled_generators(BaseField::Rationals, 3).unwrap();
        assert!(e3.contains(&r("zeta(3)")) && e3.contains(&r("zeta(6)")) && e3.contains(&r("5/7")));
        assert!(!e3.contains(&r("zeta(9)")) && !e3.contains(&r("rt(2,3)")));
        let e5 = entangled_generators(BaseField::Rationals, 5).unwrap();
        assert!(!e5.contains(&r("rt(5,4)")));
        let e2 = entangled_generators(BaseField::Rationals, 2).unwrap();
        for s in ["zeta(4)", "rt(-4,4)", "zeta(8)*rt(2,2)", "rt(3,2)", "rt(-3,2)", "rt(15,2)", "rt(-4,4)", "rt(6,2)*zeta(8)^3"] {
            assert!(e2.contains(&r(s)), "{s}");
        }
        for s in ["rt(2,2)", "zeta(8)", "rt(3,4)", "zeta(16)", "rt(6,2)"] {
            assert!(!e2.contains(&r(s)), "{s}");
        }
        assert!(e2.describe().contains("odd d"));
    }

    #[test]
    fn membership_over_fp() {
        let e = entangled_generators(BaseField::Fp(7), 2).unwrap();
        assert!(e.contains_root_of_unity(64) && e.contains_root_of_unity(6 * 16));
        assert!(!e.contains_root_of_unity(5));
    }

    #[test]
    fn cyclotomic_groups() {
        let l5 = cyclotomic_radicals(5);
        assert!(l5.contains(&r("rt(5,2)")) && !l5.contains(&r("rt(2,2)")));
        let l8 = cyclotomic_radicals(8);
        assert!(l8.contains(&r("rt(2,2)")) && l8.contains(&r("rt(-2,2)")) && !l8.contains(&r("rt(3,2)")));
        let l12 = cyclotomic_radicals(12);
        assert!(l12.contains(&r("rt(3,2)")) && l12.contains(&r("rt(-4,4)")) && !l12.contains(&r("rt(2,2)")));
        let l3 = cyclotomic_radicals(3);
        assert!(l3.contains(&r("rt(-3,2)")) && !l3.contains(&r("zeta(4)")));
        assert_eq!(cyclotomic_radicals(1).index(), 1);
    }
}
