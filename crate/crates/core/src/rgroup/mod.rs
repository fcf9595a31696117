//! Radical groups `K× ⊆ Γ` as integer lattices.
//!
//! Over ℚ a radical `ζ^u·∏ p^{e_p}` is the vector `(N·e_{p₁}, …, N·e_{p_k}, N·u)`
//! for a common denominator `N` (even, so that `−1` has integral torsion
//! coordinate `N/2`). ℚ× is the relation lattice spanned by `N·e_j` and
//! `(0, …, 0, N/2)`; Γ/ℚ× is the quotient of the generator lattice by it.

mod finite;
mod subgroups;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{hermite_normal_form, smith_normal_form, valuation, IntMatrix};
use crate::error::{domain, Result};
use crate::radical::Radical;

pub use finite::{ff_degree, ff_group, order_of_one_plus_i, FiniteFieldGroup};
pub use subgroups::{subgroup_count, DEFAULT_SUBGROUP_BOUND};

/// The base field `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseField {
    Rationals,
    /// The prime field 𝔽_p.
    Fp(u64),
}

impl BaseField {
    pub fn characteristic(&self) -> u64 {
        match self {
            BaseField::Rationals => 0,
            BaseField::Fp(p) => *p,
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rationals => write!(f, "Q"),
            BaseField::Fp(p) => write!(f, "F_{p}"),
        }
    }
}

/// A finitely generated group `ℚ× ⊆ Γ` of radicals, with `Γ/ℚ×` finite.
#[derive(Clone)]
pub struct RadicalGroup {
    generators: Vec<Radical>,
    primes: Vec<u64>,
    scale: BigInt,
    /// Row HNF basis of the lattice of Γ (square, upper triangular).
    basis: IntMatrix,
    /// Invariant factors of Γ/ℚ× greater than 1, with generating classes.
    invariants: Vec<(u64, Radical)>,
}

impl fmt::Debug for RadicalGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(Radical::to_string).collect();
        write!(f, "<Q*, {}>", gens.join(", "))
    }
}

struct Coords {
    primes: Vec<u64>,
    scale: BigInt,
}

impl Coords {
    fn of(gens: &[Radical]) -> Self {
        let mut primes = BTreeSet::new();
        let mut scale = BigInt::from(2);
        for g in gens {
            scale = scale.lcm(&g.denominator());
            for (p, e) in g.exponents() {
                if !e.is_integer() {
                    primes.insert(*p);
                }
            }
        }
        Coords { primes: primes.into_iter().collect(), scale }
    }

    fn dim(&self) -> usize {
        self.primes.len() + 1
    }

    /// Lattice vector of `a`, or `None` if some coordinate is not integral
    /// (then `a` is outside every lattice on these coordinates modulo ℚ×).
    fn vector(&self, a: &Radical) -> Option<Vec<BigInt>> {
        for (p, e) in a.exponents() {
            if !e.is_integer() && self.primes.binary_search(p).is_err() {
                return None;
            }
        }
        let scaled = |q: &BigRational| {
            let v = q * BigRational::from_integer(self.scale.clone());
            v.is_integer().then(|| v.to_integer())
        };
        let mut out = Vec::with_capacity(self.dim());
        for p in &self.primes {
            out.push(scaled(&a.exponent(*p))?);
        }
        out.push(scaled(a.torsion())?);
        Some(out)
    }

    fn radical(&self, v: &[BigInt]) -> Radical {
        let n = &self.scale;
        let exps = self
            .primes
            .iter()
            .zip(v)
            .map(|(p, x)| (BigInt::from(*p), BigRational::new(x.clone(), n.clone())));
        Radical::make(BigRational::new(v[self.primes.len()].clone(), n.clone()), exps)
            .expect("coordinates index primes")
    }

    fn relations(&self) -> IntMatrix {
        let d = self.dim();
        let mut r = IntMatrix::zeros(d, d);
        for i in 0..d - 1 {
            r[(i, i)] = self.scale.clone();
        }
        r[(d - 1, d - 1)] = &self.scale / 2;
        r
    }
}

/// Solve `x·H = v` for upper triangular `H` with nonzero diagonal.
fn triangular_solve(h: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let d = h.rows();
    let mut x: Vec<BigInt> = Vec::with_capacity(d);
    for j in 0..d {
        let mut rest = v[j].clone();
        for (i, xi) in x.iter().enumerate() {
            rest -= xi * &h[(i, j)];
        }
        let (q, r) = rest.div_rem(&h[(j, j)]);
        if !r.is_zero() {
            return None;
        }
        x.push(q);
    }
    Some(x)
}

impl RadicalGroup {
    /// `⟨ℚ×, gens⟩`.
    pub fn new(gens: Vec<Radical>) -> Self {
        let coords = Coords::of(&gens);
        let d = coords.dim();
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(d + gens.len());
        let rel = coords.relations();
        for i in 0..d {
            rows.push(rel.row(i).to_vec());
        }
        for g in &gens {
            rows.push(coords.vector(g).expect("generator coordinates are integral by construction"));
        }
        let (h, _) = hermite_normal_form(&IntMatrix::from_rows(&rows));
        let mut basis = IntMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                basis[(i, j)] = h[(i, j)].clone();
            }
        }
        let invariants = Self::structure(&coords, &basis);
        RadicalGroup { generators: gens, primes: coords.primes, scale: coords.scale, basis, invariants }
    }

    /// Parse a comma-separated generator list.
    pub fn parse(spec: &str) -> Result<Self> {
        Ok(Self::new(crate::radical::parse_list(spec)?))
    }

    /// The trivial group `ℚ×`.
    pub fn base() -> Self {
        Self::new(Vec::new())
    }

    /// Invariant factors of `Γ/ℚ×` via the SNF of the relations written in
    /// the basis of Γ.
    fn structure(coords: &Coords, basis: &IntMatrix) -> Vec<(u64, Radical)> {
        let d = coords.dim();
        let rel = coords.relations();
        let mut c_rows = Vec::with_capacity(d);
        for i in 0..d {
            c_rows.push(triangular_solve(basis, rel.row(i)).expect("relations lie in Γ"));
        }
        // SNF of Cᵀ: D = U·Cᵀ·V gives R = C·H = V⁻ᵀ·D·(U⁻ᵀ·H)
        let c = IntMatrix::from_rows(&c_rows);
        let (dm, u, _) = smith_normal_form(&c.transpose());
        let u_inv_t = u.unimodular_inverse().expect("SNF transforms are unimodular").transpose();
        let b = u_inv_t.mul(basis);
        let mut out = Vec::new();
        for i in 0..d {
            let di = dm[(i, i)].abs();
            if di > BigInt::one() {
                let order = di.to_u64().expect("invariant factor fits u64");
                out.push((order, coords.radical(b.row(i))));
            }
        }
        out
    }

    pub fn base_field(&self) -> BaseField {
        BaseField::Rationals
    }

    pub fn generators(&self) -> &[Radical] {
        &self.generators
    }

    /// Primes carrying non-integral exponents in some generator.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Common denominator `N` of the lattice encoding.
    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    fn coords(&self) -> Coords {
        Coords { primes: self.primes.clone(), scale: self.scale.clone() }
    }

    /// `|Γ : ℚ×| = det(relations) / det(Γ)`.
    pub fn index(&self) -> u64 {
        self.invariants.iter().map(|(d, _)| *d).product()
    }

    /// Invariant factors `d₁ | d₂ | …` of `Γ/ℚ×` (only those above 1).
    pub fn invariant_factors(&self) -> Vec<u64> {
        self.invariants.iter().map(|(d, _)| *d).collect()
    }

    /// Generators matching [`invariant_factors`](Self::invariant_factors).
    pub fn invariant_generators(&self) -> Vec<Radical> {
        self.invariants.iter().map(|(_, g)| g.clone()).collect()
    }

    /// Exponent of `Γ/ℚ×`.
    pub fn exponent(&self) -> u64 {
        self.invariants.last().map_or(1, |(d, _)| *d)
    }

    pub fn contains(&self, a: &Radical) -> bool {
        match self.coords().vector(a) {
            Some(v) => triangular_solve(&self.basis, &v).is_some(),
            None => false,
        }
    }

    /// Largest `m` with `ζ_m ∈ Γ`.
    ///
    /// The torsion-only vectors of Γ are the multiples of the last HNF pivot
    /// `g`, and `ζ_m` has torsion coordinate `N/m`, so `m` is exactly `N/g`.
    pub fn torsion_order(&self) -> u64 {
        let d = self.basis.rows();
        let g = &self.basis[(d - 1, d - 1)];
        (&self.scale / g).to_u64().expect("torsion order fits u64")
    }

    /// `Γ_ℓ`: the preimage of the ℓ-Sylow subgroup of `Γ/ℚ×`.
    pub fn ell_part(&self, ell: u64) -> Self {
        let gens = self
            .generators
            .iter()
            .filter_map(|g| {
                let m = g.order_over_q();
                let v = valuation(m, ell);
                let h = g.pow((m / ell.pow(v)) as i64);
                (v > 0).then_some(h)
            })
            .collect();
        Self::new(gens)
    }

    /// Primes dividing the index.
    pub fn index_primes(&self) -> Vec<u64> {
        crate::arith::factor_u64(self.index()).into_iter().map(|(p, _)| p).collect()
    }

    /// `⟨Γ, extra⟩`.
    pub fn adjoin(&self, extra: &[Radical]) -> Self {
        let mut gens = self.generators.clone();
        gens.extend_from_slice(extra);
        Self::new(gens)
    }

    /// `|Γ ∩ Λ : ℚ×|` via `|Γ|·|Λ| / |ΓΛ|`.
    pub fn intersection_index(&self, other: &Self) -> u64 {
        let joint = self.adjoin(other.generators());
        self.index() * other.index() / joint.index()
    }

    /// `|⟨Γ, ℚ(ζ₄)×⟩ : ℚ(ζ₄)×|`.
    ///
    /// The radicals inside ℚ(ζ₄)× form `⟨ℚ×, ζ₄, 1+ζ₄⟩`, of index 4 over ℚ×.
    pub fn index_over_q_i(&self) -> u64 {
        self.adjoin(&[Radical::zeta(4, 1), Radical::one_plus_i()]).index() / 4
    }

    /// True when every generator is real.
    pub fn is_real(&self) -> bool {
        self.generators.iter().all(Radical::is_real)
    }

    /// Every element of `Γ/ℚ×`, as coset representatives.
    pub fn elements(&self) -> Vec<Radical> {
        let mut out = vec![Radical::one()];
        for (d, g) in &self.invariants {
            let mut next = Vec::with_capacity(out.len() * *d as usize);
            for x in &out {
                let mut y = x.clone();
                for _ in 0..*d {
                    next.push(y.clone());
                    y = y.mul(g);
                }
            }
            out = next;
        }
        out
    }

    /// Same group, compared as lattices.
    pub fn same_as(&self, other: &Self) -> bool {
        self.generators.iter().all(|g| other.contains(g)) && other.generators.iter().all(|g| self.contains(g))
    }

    /// All groups `ℚ× ⊆ Δ ⊆ Γ`, failing past `bound` on the index.
    pub fn subgroups_containing_base(&self, bound: u64) -> Result<Vec<RadicalGroup>> {
        subgroups::enumerate(self, bound)
    }
}

/// ℓ-part guard shared with 𝔽_p groups.
pub(crate) fn check_ell(base: BaseField, ell: u64) -> Result<()> {
    if !crate::arith::is_prime_u64(ell) {
        return domain(format!("{ell} is not prime"));
    }
    if base.characteristic() == ell {
        return domain(format!("ℓ = {ell} equals the characteristic"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(spec: &str) -> RadicalGroup {
        RadicalGroup::parse(spec).unwrap()
    }

    fn r(s: &str) -> Radical {
        s.parse().unwrap()
    }

    #[test]
    fn indices() {
        assert_eq!(g("rt(2,4)").index(), 4);
        assert_eq!(g("").index(), 1);
        assert_eq!(g("zeta(4), rt(2,4)").index(), 8);
        assert_eq!(g("zeta(8)*rt(2,2)").index(), 4);
        assert_eq!(g("zeta(3), rt(2,3)").index(), 9);
        assert_eq!(g("rt(36,4)").index(), 2);
        assert_eq!(g("-1, 5/3").index(), 1);
        assert_eq!(g("rt(2,2), rt(3,2), rt(6,2)").index(), 4);
    }

    #[test]
    fn structure() {
        assert_eq!(g("zeta(4), rt(2,4)").invariant_factors(), vec![2, 4]);
        assert_eq!(g("rt(6,6)").invariant_factors(), vec![6]);
        assert_eq!(g("zeta(12)").invariant_factors(), vec![6]);
        let gamma = g("zeta(3), rt(2,3), rt(5,2)");
        assert_eq!(gamma.invariant_factors(), vec![3, 6]);
        assert_eq!(gamma.elements().len(), 18);
        for x in gamma.elements() {
            assert!(gamma.contains(&x));
        }
    }

    #[test]
    fn invariant_generators_have_their_orders() {
        for spec in ["zeta(8)^3*rt(6,2)", "zeta(4), rt(2,4)", "zeta(3), rt(2,3), rt(5,2)", "rt(12,4), zeta(8)*rt(3,2)", "rt(6,6), zeta(9)"] {
            let gamma = g(spec);
            let gens = gamma.invariant_generators();
            for (d, x) in gamma.invariant_factors().iter().zip(&gens) {
                assert_eq!(x.order_over_q(), *d, "{spec}: {x}");
            }
            assert!(RadicalGroup::new(gens).same_as(&gamma), "{spec}");
        }
    }

    #[test]
    fn ell_parts() {
        let gamma = g("zeta(3), rt(2,4)");
        assert!(gamma.ell_part(2).same_as(&g("rt(2,4)")));
        let p3 = g("rt(6,6)").ell_part(3);
        assert!(p3.same_as(&g("rt(6,3)")));
        assert!(p3.contains(&r("rt(2,3)*rt(3,3)")));
        assert_eq!(g("").ell_part(5).index(), 1);
    }

    #[test]
    fn membership() {
        let gamma = g("zeta(8)*rt(2,2)");
        assert!(gamma.contains(&r("zeta(4)")));
        assert!(!g("rt(2,2)").contains(&r("zeta(4)")));
        assert!(gamma.contains(&Radical::one()));
        assert!(gamma.contains(&r("-7/3")));
        assert!(!gamma.contains(&r("rt(3,2)")));
        assert!(!gamma.contains(&r("zeta(8)")));
    }

    #[test]
    fn torsion() {
        assert_eq!(g("zeta(8)*rt(2,2)").torsion_order(), 4);
        assert_eq!(g("zeta(12)").torsion_order(), 12);
        assert_eq!(g("rt(5,2)").torsion_order(), 2);
        assert_eq!(g("zeta(3)").torsion_order(), 6);
        assert_eq!(g("zeta(8)*rt(2,2), zeta(3)").torsion_order(), 12);
    }

    #[test]
    fn over_q_i() {
        assert_eq!(g("zeta(8)*rt(2,2)").index_over_q_i(), 1);
        assert_eq!(g("zeta(8)*rt(2,2), rt(3,4)").index_over_q_i(), 4);
        assert_eq!(g("").index_over_q_i(), 1);
        assert_eq!(g("rt(2,2)").index_over_q_i(), 2);
        assert_eq!(g("rt(2,4)").index_over_q_i(), 4);
        assert_eq!(g("rt(-1,2), rt(2,2)").index_over_q_i(), 2);
    }

    fn arb_group() -> impl Strategy<Value = RadicalGroup> {
        let prime = prop::sample::select(vec![2i64, 3, 5, 7]);
        let gen = (
            (0i64..24, 1i64..25),
            prop::collection::vec((prime, -8i64..8, 1i64..9), 0..3),
        )
            .prop_map(|(u, e)| {
                let exps = e.into_iter().map(|(p, a, b)| (BigInt::from(p), BigRational::new(a.into(), b.into())));
                Radical::make(BigRational::new(u.0.into(), u.1.into()), exps).unwrap()
            });
        prop::collection::vec(gen, 0..4).prop_map(RadicalGroup::new)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn index_is_product_of_ell_parts(gamma in arb_group()) {
            let prod: u64 = gamma.index_primes().iter().map(|&l| gamma.ell_part(l).index()).product();
            prop_assert_eq!(prod, gamma.index());
        }

        #[test]
        fn index_matches_determinants(gamma in arb_group()) {
            let d = gamma.basis.rows();
            let det_g: BigInt = (0..d).map(|i| gamma.basis[(i, i)].clone()).product();
            let det_r = num_traits::pow(gamma.scale.clone(), d - 1) * (&gamma.scale / 2);
            prop_assert_eq!(BigInt::from(gamma.index()) * det_g, det_r);
        }

        #[test]
        fn membership_closed(gamma in arb_group()) {
            let gens = gamma.generators().to_vec();
            for a in &gens {
                prop_assert!(gamma.contains(a));
                for b in &gens {
                    prop_assert!(gamma.contains(&a.mul(b)));
                    prop_assert!(gamma.contains(&a.div(b)));
                }
            }
        }

        #[test]
        fn torsion_is_maximal(gamma in arb_group()) {
            let t = gamma.torsion_order();
            prop_assert!(gamma.contains(&Radical::zeta(t, 1)));
            for q in crate::arith::primes_up_to(50) {
                prop_assert!(!gamma.contains(&Radical::zeta(t * q, 1)));
            }
            let bound = BigInt::from(2) * gamma.scale() * BigInt::from(gamma.exponent());
            prop_assert!((bound % BigInt::from(t)).is_zero());
        }
    }
}
