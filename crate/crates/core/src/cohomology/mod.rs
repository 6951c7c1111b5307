//! Low-degree cohomology relative to a finite prime universe.
//!
//! Degree-1 cocycles (lambda-derivations) are stored by their values at primes and
//! extended multiplicatively with `f(mn) = psi^m f(n) + f(m) psi^n`. All groups are
//! relative to the universe `P` of the Adams family they were computed from.

mod derivation;
mod groups;
mod linear;

pub use derivation::{derivation_cochain, extend_derivation, extend_derivation_along, is_derivation, DerivationSpec};
pub use groups::{
    compare_universes, compute_H0, derivation_basis, compute_H1, solve_coboundary_1, H0Result, H1Result, UniverseRow,
};
pub use linear::{commutator_operator, endbar_lattice, left_mul_operator, right_mul_operator};

use thiserror::Error;

use crate::lambdaring::LambdaRingError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("value at {prime} is not divisible by {prime}")]
    NotDivisible { prime: u64 },
    #[error("values at {p} and {q} violate f(pq) = f(qp)")]
    InconsistentSpec { p: u64, q: u64 },
    #[error("matrix has the wrong size")]
    Shape,
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Ring(#[from] LambdaRingError),
}
