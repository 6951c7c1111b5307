use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::snf::smith_normal_form;
use super::{ExactAlgError, IntMatrix};

/// Finitely generated abelian group `Z^r (+) Z/d_1 (+) ... (+) Z/d_k`, `d_i | d_{i+1}`, `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// Canonicalizes arbitrary cyclic factors via their Smith form.
    pub fn new(free_rank: usize, cyclic_orders: &[BigInt]) -> Result<Self, ExactAlgError> {
        if cyclic_orders.iter().any(|d| d < &BigInt::one()) {
            return Err(ExactAlgError::BadTorsion);
        }
        let rel = IntMatrix::diagonal(cyclic_orders);
        let g = quotient_presentation(cyclic_orders.len(), &rel)?;
        Ok(AbelianGroup {
            free_rank: free_rank + g.free_rank,
            torsion: g.torsion,
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" (+) "))
        }
    }
}

/// A quotient `Z^r / span(relations)` with representatives for each cyclic summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub group: AbelianGroup,
    /// Representatives in `Z^r`, torsion summands first (matching `group.torsion`), then free.
    pub torsion_generators: Vec<Vec<BigInt>>,
    pub free_generators: Vec<Vec<BigInt>>,
}

/// `Z^generators_rank` modulo the column span of `relations`.
pub fn quotient_presentation(
    generators_rank: usize,
    relations: &IntMatrix,
) -> Result<AbelianGroup, ExactAlgError> {
    Ok(presentation_with_generators(generators_rank, relations)?.group)
}

pub fn presentation_with_generators(
    generators_rank: usize,
    relations: &IntMatrix,
) -> Result<Presentation, ExactAlgError> {
    if relations.rows() != generators_rank {
        return Err(ExactAlgError::ShapeMismatch {
            expected: generators_rank,
            found: relations.rows(),
        });
    }
    let snf = smith_normal_form(relations);
    let factors = snf.invariant_factors();
    let mut torsion = Vec::new();
    let mut torsion_generators = Vec::new();
    for (i, d) in factors.iter().enumerate() {
        if d > &BigInt::one() {
            torsion.push(d.clone());
            torsion_generators.push(snf.u_inv.column(i));
        }
    }
    let free_generators: Vec<_> = (factors.len()..generators_rank)
        .map(|i| snf.u_inv.column(i))
        .collect();
    Ok(Presentation {
        group: AbelianGroup {
            free_rank: free_generators.len(),
            torsion,
        },
        torsion_generators,
        free_generators,
    })
}
