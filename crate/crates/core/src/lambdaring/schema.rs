//! JSON ring-definition files.
//!
//! ```json
//! {
//!   "name": "RC2",
//!   "rank": 2,
//!   "structure_constants": [1, 0, 0, 1, 0, 1, 1, 0],
//!   "unit": [1, 0],
//!   "primes": [2, 3],
//!   "adams": { "2": [1, 1, 0, 0], "3": [1, 0, 0, 1] }
//! }
//! ```
//!
//! `structure_constants[(i*d + j)*d + k]` is the coefficient of `e_k` in `e_i e_j`.
//! Each `adams` entry is a row-major `d x d` matrix whose column `i` is the image of `e_i`.
//! Integers may be written as JSON numbers or as decimal strings (for values beyond 64 bits).

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::adams::AdamsFamily;
use super::primes::PrimeUniverse;
use super::ring::{Endomorphism, RingSpec};
use super::LambdaRingError;

/// A JSON integer that may exceed 64 bits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntLiteral {
    Small(i64),
    Big(String),
}

impl IntLiteral {
    pub fn to_bigint(&self) -> Result<BigInt, LambdaRingError> {
        match self {
            IntLiteral::Small(x) => Ok(BigInt::from(*x)),
            IntLiteral::Big(s) => BigInt::from_str(s.trim())
                .map_err(|_| LambdaRingError::Parse(format!("not an integer: {s:?}"))),
        }
    }
}

impl From<&BigInt> for IntLiteral {
    fn from(x: &BigInt) -> Self {
        match i64::try_from(x) {
            Ok(v) => IntLiteral::Small(v),
            Err(_) => IntLiteral::Big(x.to_string()),
        }
    }
}

fn to_bigints(xs: &[IntLiteral]) -> Result<Vec<BigInt>, LambdaRingError> {
    xs.iter().map(IntLiteral::to_bigint).collect()
}

fn to_literals(xs: &[BigInt]) -> Vec<IntLiteral> {
    xs.iter().map(IntLiteral::from).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub rank: usize,
    pub structure_constants: Vec<IntLiteral>,
    pub unit: Vec<IntLiteral>,
    pub primes: Vec<u64>,
    pub adams: BTreeMap<String, Vec<IntLiteral>>,
}

impl RingFile {
    pub fn from_json(text: &str) -> Result<Self, LambdaRingError> {
        serde_json::from_str(text).map_err(|e| LambdaRingError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ring files always serialize")
    }

    /// Builds the family for the file's own prime list.
    pub fn family(&self) -> Result<AdamsFamily, LambdaRingError> {
        let universe = PrimeUniverse::new(self.primes.clone())?;
        self.family_for(universe)
    }

    /// Builds the family restricted to `universe`, which must be covered by the file's `adams` map.
    pub fn family_for(&self, universe: PrimeUniverse) -> Result<AdamsFamily, LambdaRingError> {
        let ring = RingSpec::new(
            self.rank,
            to_bigints(&self.structure_constants)?,
            to_bigints(&self.unit)?,
        )?;
        let mut generators = BTreeMap::new();
        for (key, entries) in &self.adams {
            let p: u64 = key
                .trim()
                .parse()
                .map_err(|_| LambdaRingError::Parse(format!("bad prime key {key:?}")))?;
            if !universe.contains(p) {
                continue;
            }
            let m = Endomorphism::from_vector(self.rank, &to_bigints(entries)?)?;
            generators.insert(p, m);
        }
        AdamsFamily::new(ring, universe, generators)
    }

    pub fn from_family(family: &AdamsFamily, name: Option<String>) -> Self {
        let ring = family.ring();
        RingFile {
            name,
            rank: ring.rank(),
            structure_constants: to_literals(ring.structure_constants()),
            unit: to_literals(&ring.one()),
            primes: family.universe().primes().to_vec(),
            adams: family
                .generators()
                .iter()
                .map(|(p, a)| (p.to_string(), to_literals(&a.to_vector())))
                .collect(),
        }
    }
}
