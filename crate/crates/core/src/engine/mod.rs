//! Degree formulas for radical extensions of ℚ and 𝔽_p, and the criteria
//! they rest on.

mod criteria;
mod degree;
mod entangle;
mod gauss;
mod subfields;

pub use criteria::{
    kneser_condition, kneser_condition_ff, kneser_degree, lang_irreducible, schinzel_abelian, schinzel_witness_holds,
    KneserVerdict, SchinzelVerdict,
};
pub use entangle::{
    cyclotomic_radicals, entangled_generators, entanglement_params, sqrt_q_star, EntangledGenerators,
    EntanglementParams, Level, ParamsBranch, SquareRoots,
};
pub use degree::{
    degree_odd, degree_prime_ff, degree_two, total_degree, total_degree_ff, Branch, CyclotomicPart, DegreeReport,
    PrimeFactor,
};
pub use gauss::{cyclotomic_expression, gauss_sum, CyclotomicExpression};
pub use subfields::{subfields, SubfieldEntry, SubfieldList, MAX_SUBFIELD_INDEX};
