//! Exact algebra used to check the engine: polynomials over ℚ, factoring,
//! cyclotomic fields and minimal polynomials of radical expressions.

mod algebra;
mod cyclo;
mod extension;
mod factor;
mod modp;
mod membership;
mod poly;
mod subfields;
mod tensor;

pub use factor::{factor_over_q, factor_over_q_bounded, is_irreducible, DEFAULT_MAX_DEGREE};
pub use poly::{resultant, Poly};
pub use cyclo::{cyclotomic_coefficients, cyclotomic_degree, cyclotomic_polynomial, verify_identity, CycloElement, MAX_CONDUCTOR};
pub use algebra::{
    atom_dimension, compositum_degree, minpoly, primitive_element, radical_minpoly, CompositumDegree, Expr, PrimitiveElement, DEFAULT_SEED,
    MAX_PRECISION,
};
pub use algebra::{primitive_element_of, split_atom};
pub use extension::{
    factor_over_extension, factor_over_extension_bounded, is_abelian, is_galois, kummer_automorphisms, ExtPoly,
    ExtensionElement, NumberField, TRAGER_BOUND,
};
pub use subfields::{subfield_degrees, subfields, Subfield};
pub use membership::{basic_square_roots, quadratic_subfield_count, radical_in_cyclotomic, radical_in_cyclotomic_with, square_classes};
