//! The JSON report emitted by every command, and its text rendering.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "command": "cohomology h1",
//!   "config": { "preset": "Z", "ring": null, "primes": [2, 3, 5], ... },
//!   "status": "clean",
//!   "results": { "group": { "free_rank": 3, "torsion": [], "text": "Z^3" }, ... },
//!   "seed": 0,
//!   "universe": [2, 3, 5],
//!   "bounds": { "exponent": 3, "samples": 100, "order": null }
//! }
//! ```
//!
//! `status` is `clean`, `violation` or `failure`. Maps are ordered and no field depends on
//! wall-clock time, so identical invocations produce byte-identical reports.

use std::collections::BTreeMap;

use lambdacoh::cohomology::DerivationSpec;
use lambdacoh::exactalg::AbelianGroup;
use lambdacoh::lambdaring::{Endomorphism, IntLiteral};
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Clean,
    /// A mathematical identity or invariant failed.
    Violation,
    /// A search (extension, witness) came back empty.
    Failure,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Clean => 0,
            Status::Violation | Status::Failure => 1,
        }
    }
}

/// What a command hands back before it is wrapped in a [`Report`].
pub struct Outcome {
    pub status: Status,
    pub results: Value,
    pub lines: Vec<String>,
}

impl Outcome {
    pub fn new(status: Status, results: Value, lines: Vec<String>) -> Self {
        Outcome { status, results, lines }
    }

    pub fn clean_if(ok: bool, results: Value, lines: Vec<String>) -> Self {
        let status = if ok { Status::Clean } else { Status::Violation };
        Outcome::new(status, results, lines)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Bounds {
    pub exponent: u32,
    pub samples: usize,
    pub order: Option<usize>,
}

#[derive(Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub config: Value,
    pub status: Status,
    pub results: Value,
    pub seed: u64,
    pub universe: Vec<u64>,
    pub bounds: Bounds,
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn to_text(&self) -> String {
        let primes: Vec<String> = self.universe.iter().map(ToString::to_string).collect();
        let mut out = format!("{} (relative to primes {{{}}})\n", self.command, primes.join(", "));
        for line in &self.lines {
            out.push_str("  ");
            out.push_str(line);
            out.push('\n');
        }
        let status = match self.status {
            Status::Clean => "clean",
            Status::Violation => "VIOLATION",
            Status::Failure => "FAILURE",
        };
        out.push_str(&format!("status: {status}, seed {}\n", self.seed));
        out
    }
}

pub fn matrix_json(e: &Endomorphism) -> Value {
    let d = e.dim();
    let m = e.matrix();
    let rows: Vec<Vec<IntLiteral>> = (0..d).map(|i| (0..d).map(|j| IntLiteral::from(m.get(i, j))).collect()).collect();
    serde_json::to_value(rows).expect("literals serialize")
}

pub fn matrix_text(e: &Endomorphism) -> String {
    let d = e.dim();
    let m = e.matrix();
    let rows: Vec<String> = (0..d)
        .map(|i| {
            let r: Vec<String> = (0..d).map(|j| m.get(i, j).to_string()).collect();
            format!("[{}]", r.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

pub fn group_json(g: &AbelianGroup) -> Value {
    let torsion: Vec<IntLiteral> = g.torsion.iter().map(IntLiteral::from).collect();
    json!({ "free_rank": g.free_rank, "torsion": torsion, "text": g.to_string() })
}

pub fn spec_json(s: &DerivationSpec) -> Value {
    let values: BTreeMap<String, Value> = s.values().iter().map(|(p, v)| (p.to_string(), matrix_json(v))).collect();
    json!(values)
}

pub fn spec_text(s: &DerivationSpec) -> String {
    let parts: Vec<String> = s.values().iter().map(|(p, v)| format!("f({p}) = {}", matrix_text(v))).collect();
    parts.join(", ")
}

pub fn element_text(e: &[num_bigint::BigInt]) -> String {
    let parts: Vec<String> = e.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}
