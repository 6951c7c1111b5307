//! JSON form of a deformation: its order and, per prime, the row-major matrices `ψ^p_1..ψ^p_N`.
//!
//! ```json
//! { "order": 1, "terms": { "2": [[2, 0, 0, 2]], "3": [[0, 0, 0, 0]] } }
//! ```
//!
//! The ring and its Adams generators `ψ^p_0` come from the accompanying ring file or preset.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::lambdaring::{AdamsFamily, Endomorphism, IntLiteral, LambdaRingError};

use super::{Deformation, DeformationError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationFile {
    pub order: usize,
    pub terms: BTreeMap<String, Vec<Vec<IntLiteral>>>,
}

impl DeformationFile {
    pub fn from_json(text: &str) -> Result<Self, DeformationError> {
        serde_json::from_str(text).map_err(|e| LambdaRingError::Parse(e.to_string()).into())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("deformation files always serialize")
    }

    pub fn from_deformation(d: &Deformation) -> Self {
        let terms = d
            .series()
            .iter()
            .map(|(p, s)| {
                let mats = s.coeffs()[1..]
                    .iter()
                    .map(|m| m.to_vector().iter().map(IntLiteral::from).collect())
                    .collect();
                (p.to_string(), mats)
            })
            .collect();
        DeformationFile { order: d.order(), terms }
    }

    pub fn to_deformation(&self, family: Arc<AdamsFamily>) -> Result<Deformation, DeformationError> {
        let d = family.rank();
        let mut higher = BTreeMap::new();
        for (key, mats) in &self.terms {
            let p: u64 = key
                .trim()
                .parse()
                .map_err(|_| LambdaRingError::Parse(format!("bad prime key {key:?}")))?;
            let list = mats
                .iter()
                .map(|entries| {
                    let v = entries.iter().map(IntLiteral::to_bigint).collect::<Result<Vec<_>, _>>()?;
                    Endomorphism::from_vector(d, &v)
                })
                .collect::<Result<Vec<_>, _>>()?;
            higher.insert(p, list);
        }
        Deformation::new(family, self.order, higher)
    }
}
