//! Exact arithmetic with radicals over the rationals and over prime fields.
//!
//! The crate computes degrees `[K(Γ):K]` of radical extensions, detects the
//! additive relations ("entanglement") that make those degrees smaller than
//! the multiplicative index `|Γ:K×|`, and checks every such result against a
//! self-contained exact-algebra oracle that knows nothing about the degree
//! formulas.
//!
//! * [`arith`] integer number theory and lattice normal forms
//! * [`radical`] canonical radicals `ζ^u · ∏ p^{e_p}`
//! * [`rgroup`] finitely generated radical groups as integer lattices
//! * [`engine`] degree formulas, Kneser/Lang/Schinzel criteria, Gauss sums
//! * [`oracle`] polynomials, factorization, minimal polynomials, cyclotomic fields
//! * [`cli`] the `radicals` command line front end

pub mod arith;
pub mod cli;
pub mod engine;
pub mod error;
pub mod oracle;
pub mod radical;
pub mod rgroup;

pub use error::{Error, Result};
pub use radical::Radical;
pub use rgroup::{BaseField, FiniteFieldGroup, RadicalGroup};

pub use num_bigint::BigInt;
pub use num_rational::BigRational as Rational;
