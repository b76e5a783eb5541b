//! Elimination and root counting over finite fields.
//!
//! Prime fields and their small extensions ([`ff`], [`oracle`]), dense and
//! sparse polynomials ([`upoly`], [`mpoly`]), parametric resultants
//! ([`resultant`], [`eliminate`]) and the root-counting pipeline for
//! bivariate `f(t, x)` ([`count`], [`instances`]).
//!
//! The `parallel` feature (on by default) runs independent evaluations on
//! the rayon pool; results do not depend on it.

pub mod count;
pub mod dense;
pub mod eliminate;
mod error;
pub mod exec;
pub mod ff;
pub mod instances;
pub mod mpoly;
pub mod oracle;
pub mod resultant;
pub mod upoly;

pub use error::Error;
pub use ff::{FieldElement, PrimeModulus};
pub use mpoly::{Monomial, MultiPoly};
pub use upoly::UniPoly;
