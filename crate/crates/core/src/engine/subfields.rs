//! Intermediate fields of ℚ(Γ)/ℚ from subgroups of Γ.

use serde::Serialize;

use super::degree::total_degree;
use crate::error::{resource, Result};
use crate::radical::Radical;
use crate::rgroup::RadicalGroup;

/// Largest index accepted by [`subfields`].
pub const MAX_SUBFIELD_INDEX: u64 = 256;

/// One intermediate field `ℚ(Δ)` with `ℚ× ⊆ Δ ⊆ Γ`.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SubfieldEntry {
    #[serde(skip)]
    pub group: RadicalGroup,
    pub generators: Vec<String>,
    pub index: u64,
    pub degree: u64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "result", rename_all = "camelCase")]
pub enum SubfieldList {
    /// Every intermediate field is conjugate to one of these.
    Complete { fields: Vec<SubfieldEntry> },
    /// The subgroup description could not be certified.
    Inapplicable { reason: String },
}

impl SubfieldList {
    pub fn fields(&self) -> Option<&[SubfieldEntry]> {
        match self {
            SubfieldList::Complete { fields } => Some(fields),
            SubfieldList::Inapplicable { .. } => None,
        }
    }
}

fn degree_of(gens: Vec<Radical>) -> Result<u64> {
    Ok(total_degree(&RadicalGroup::new(gens))?.total)
}

fn contains_i(gens: Vec<Radical>) -> Result<bool> {
    let mut with_i = gens.clone();
    with_i.push(Radical::zeta(4, 1));
    Ok(degree_of(gens)? == degree_of(with_i)?)
}

/// The side condition on `y = γ/(1+ζ₄)`; `None` when it holds.
///
/// If `ζ₄ ∉ ℚ(Γ)` no `y ∈ ℚ(Γ)` has `(1+ζ₄)y ∈ Γ`. Otherwise every coset
/// of Γ yields such a `y`, and each is tested through degrees of `⟨y⟩` and
/// `⟨y, ζ₄⟩`.
fn side_condition(gamma: &RadicalGroup) -> Result<Option<String>> {
    if gamma.index() % 4 != 0 || (gamma.is_real() && gamma.torsion_order() <= 2) {
        return Ok(None);
    }
    if !contains_i(gamma.generators().to_vec())? {
        return Ok(None);
    }
    let unit = Radical::one_plus_i();
    for g in gamma.elements() {
        let y = g.div(&unit);
        let iy = y.mul(&Radical::zeta(4, 1));
        if !contains_i(vec![y.clone()])? && !contains_i(vec![iy])? {
            return Ok(Some(format!("y = {y} has (1+zeta(4))y in Gamma but zeta(4) lies in neither Q(y) nor Q(zeta(4)y)")));
        }
    }
    Ok(None)
}

/// Intermediate fields of ℚ(Γ), one per subgroup `ℚ× ⊆ Δ ⊆ Γ`, when
/// `[ℚ(Γ):ℚ] = |Γ:ℚ×|` and the side condition is certified.
pub fn subfields(gamma: &RadicalGroup) -> Result<SubfieldList> {
    let index = gamma.index();
    if index > MAX_SUBFIELD_INDEX {
        return resource(format!("index {index} exceeds the subfield bound {MAX_SUBFIELD_INDEX}"));
    }
    let total = total_degree(gamma)?.total;
    if total != index {
        return Ok(SubfieldList::Inapplicable { reason: format!("degree {total} differs from index {index}") });
    }
    if let Some(reason) = side_condition(gamma)? {
        return Ok(SubfieldList::Inapplicable { reason });
    }
    let mut fields = Vec::new();
    for group in gamma.subgroups_containing_base(MAX_SUBFIELD_INDEX)? {
        let gens: Vec<Radical> = group.invariant_generators();
        let degree = total_degree(&group)?.total;
        fields.push(SubfieldEntry {
            generators: gens.iter().map(Radical::format).collect(),
            index: group.index(),
            degree,
            group,
        });
    }
    fields.sort_by(|a, b| a.degree.cmp(&b.degree).then_with(|| a.generators.cmp(&b.generators)));
    Ok(SubfieldList::Complete { fields })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degrees(spec: &str) -> Vec<u64> {
        let list = subfields(&RadicalGroup::parse(spec).unwrap()).unwrap();
        list.fields().expect("applicable").iter().map(|f| f.degree).collect()
    }

    #[test]
    fn small_fields() {
        assert_eq!(degrees("rt(2,4)"), vec![1, 2, 4]);
        assert_eq!(degrees("rt(2,2), rt(3,2)"), vec![1, 2, 2, 2, 4]);
        assert_eq!(degrees(""), vec![1]);
        assert_eq!(degrees("rt(2,3)"), vec![1, 3]);
    }

    #[test]
    fn inapplicable_cases() {
        let g = RadicalGroup::parse("rt(-4,4)").unwrap();
        assert!(matches!(subfields(&g).unwrap(), SubfieldList::Inapplicable { .. }));
        let g = RadicalGroup::parse("zeta(3), rt(2,3)").unwrap();
        assert!(subfields(&g).unwrap().fields().is_none());
    }

    #[test]
    fn with_zeta_four() {
        // ℚ(ζ₈) = ℚ(ζ₄, √2): index 4, degree 4
        let list = subfields(&RadicalGroup::parse("zeta(4), rt(2,2)").unwrap()).unwrap();
        match list {
            SubfieldList::Complete { fields } => assert_eq!(fields.len(), 5),
            SubfieldList::Inapplicable { reason } => panic!("{reason}"),
        }
    }
}
