//! Exact computations with lambda-rings that are free of finite rank over Z.
//!
//! A ring is given by structure constants and one Adams operation per prime in a finite
//! [`lambdaring::PrimeUniverse`]; everything else (cochains, cohomology groups, deformations)
//! is computed relative to the multiplicative monoid those primes generate. All arithmetic is
//! arbitrary precision.
//!
//! ```
//! use lambdacoh::cohomology::compute_H1;
//! use lambdacoh::lambdaring::{Preset, PrimeUniverse};
//!
//! let z = Preset::Z.family(PrimeUniverse::new(vec![2, 3]).unwrap()).unwrap();
//! assert_eq!(compute_H1(&z).unwrap().group.to_string(), "Z^2");
//! ```

pub mod exactalg;
pub mod lambdaring;
pub mod sampling;
pub mod cochain;
pub mod cohomology;
pub mod deformation;
pub mod symfun;
