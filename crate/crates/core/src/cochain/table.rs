use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::lambdaring::{AdamsFamily, Endomorphism, FactoredInt, IntLiteral};

use super::{make_table_cochain, Cochain, CochainError};

/// One stored value: integer arguments and a row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableEntry {
    pub args: Vec<u64>,
    pub matrix: Vec<IntLiteral>,
}

/// Serialized form of a table cochain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainTable {
    pub dim: usize,
    #[serde(default)]
    pub f1: bool,
    pub entries: Vec<TableEntry>,
}

impl CochainTable {
    pub fn from_cochain(c: &Cochain) -> Option<Self> {
        let table = c.table()?;
        let entries = table
            .iter()
            .map(|(args, m)| TableEntry {
                args: args
                    .iter()
                    .map(|a| u64::try_from(a.value()).expect("table arguments fit in 64 bits"))
                    .collect(),
                matrix: m.to_vector().iter().map(IntLiteral::from).collect(),
            })
            .collect();
        Some(CochainTable {
            dim: c.dim(),
            f1: c.has_f1_flag(),
            entries,
        })
    }

    pub fn to_cochain(&self, family: Arc<AdamsFamily>) -> Result<Cochain, CochainError> {
        let d = family.rank();
        let mut map = BTreeMap::new();
        for e in &self.entries {
            let args: Vec<FactoredInt> = e
                .args
                .iter()
                .map(|&m| FactoredInt::factor(m, family.universe()))
                .collect::<Result<_, _>>()?;
            let values = e.matrix.iter().map(IntLiteral::to_bigint).collect::<Result<Vec<_>, _>>()?;
            map.insert(args, Endomorphism::from_vector(d, &values)?);
        }
        make_table_cochain(family, self.dim, map, self.f1)
    }
}
