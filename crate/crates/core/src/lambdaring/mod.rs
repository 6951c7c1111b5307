//! Lambda-rings presented as finite-rank free Z-algebras with explicit Adams operations.
//!
//! Elements are coordinate vectors in a fixed basis and linear endomorphisms are
//! integer matrices. Every prime-quantified condition (Frobenius congruence,
//! membership in the Frobenius-compatible endomorphisms) is checked only over a
//! finite [`PrimeUniverse`], and answers are relative to it.

mod adams;
mod newton;
mod presets;
mod primes;
mod ring;
mod schema;

pub use adams::{endbar_contains, frobenius_map, verify_adams, AdamsFamily, AdamsViolation};
pub use newton::{
    adams_from_lambda, binomial, lambda_from_adams, lambda_from_psi_values, lambda_series,
    psi_from_lambda_values, psi_values, series_mul, LambdaData,
};
pub use presets::{cyclic_adams_family, cyclic_group_ring, cyclic_power_map, Preset};
pub use primes::{is_prime, FactoredInt, PrimeUniverse};
pub use ring::{verify_ring, Element, Endomorphism, RingSpec, RingViolation};
pub use schema::{IntLiteral, RingFile};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LambdaRingError {
    #[error("prime universe is empty")]
    EmptyUniverse,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("primes must be strictly increasing")]
    PrimesNotIncreasing,
    #[error("prime {0} is outside the universe")]
    UnknownPrime(u64),
    #[error("only positive integers have factorizations")]
    NotPositive,
    #[error("no Adams generator given for prime {0}")]
    MissingGenerator(u64),
    #[error("division by {degree} is not exact: the psi-data does not come from a lambda-ring")]
    NonIntegralDivision { degree: usize },
    #[error("no lambda-values stored for {0}")]
    MissingLambdaData(String),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
}
