//! Exact integer linear algebra: Smith normal form, integer solving, and
//! presentations of finitely generated abelian groups.

mod group;
mod lattice;
mod matrix;
mod snf;

pub use group::{presentation_with_generators, quotient_presentation, AbelianGroup, Presentation};
pub use lattice::{congruence_lattice, kernel_basis, lattice_basis, solve_linear, LinearSolution};
pub use matrix::IntMatrix;
pub use snf::{hermite_rows, smith_normal_form, SmithDecomposition};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactAlgError {
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("cyclic orders must be positive")]
    BadTorsion,
}
