//! Universal polynomials of the lambda-ring axioms and an axiom checker.
//!
//! `P_i` and `P_{i,j}` are produced by expanding the defining symmetric products
//! and rewriting them in elementary symmetric functions; the symbols `s_a`, `t_b`
//! stand for lambda-values.

mod axioms;
mod poly;
mod universal;

pub use axioms::{verify_lambda_axioms, AxiomViolation};
pub use poly::MultiPoly;
pub use universal::{
    composition_rule_expansion, compute_P, compute_P_ij, compute_P_ij_with_alphabet, compute_P_with_alphabet,
    elementary, expand_elementary, product_rule_expansion, reduce_to_elementary, Alphabets, UniversalKind,
    UniversalPolynomial, DEFAULT_PIJ_LIMIT,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymFunError {
    #[error("indices must be at least 1")]
    ZeroIndex,
    #[error("P_{{{i},{j}}} exceeds the configured limit i*j <= {limit}")]
    LimitExceeded { i: usize, j: usize, limit: usize },
    #[error("polynomial is not symmetric: {0}")]
    NotSymmetric(String),
    #[error("alphabet too small: {0}")]
    Unstable(String),
}
