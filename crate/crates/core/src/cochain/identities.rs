use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::lambdaring::{FactoredInt, PrimeUniverse};

use super::{Cochain, CochainError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    DSquaredZero,
    Cosimplicial,
    Leibniz,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Identity::DSquaredZero => "d-squared",
            Identity::Cosimplicial => "cosimplicial",
            Identity::Leibniz => "leibniz",
        })
    }
}

/// Seeded source of argument tuples: each coordinate has exponent at most
/// `max_exponent` at every prime of the universe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TupleSampler {
    pub seed: u64,
    pub count: usize,
    pub max_exponent: u32,
}

impl TupleSampler {
    pub fn new(seed: u64, count: usize, max_exponent: u32) -> Self {
        TupleSampler {
            seed,
            count,
            max_exponent,
        }
    }

    /// `count` tuples of length `dim`; the same `(seed, dim)` always gives the same list.
    pub fn tuples(&self, universe: &PrimeUniverse, dim: usize) -> Vec<Vec<FactoredInt>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ (dim as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        (0..self.count)
            .map(|_| {
                (0..dim)
                    .map(|_| {
                        FactoredInt::from_exponents(
                            universe
                                .primes()
                                .iter()
                                .map(|&p| (p, rng.gen_range(0..=self.max_exponent))),
                        )
                    })
                    .collect()
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    /// Which instance of the identity failed, e.g. `d^3 d^1 = d^1 d^2`.
    pub case: String,
    pub args: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: Identity,
    pub seed: u64,
    pub cases: usize,
    pub evaluations: usize,
    pub mismatches: Vec<Mismatch>,
}

impl IdentityReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

struct Run<'a> {
    sampler: &'a TupleSampler,
    universe: PrimeUniverse,
    cases: usize,
    evaluations: usize,
    mismatches: Vec<Mismatch>,
}

impl Run<'_> {
    fn compare(&mut self, case: String, lhs: &Cochain, rhs: Option<&Cochain>) -> Result<(), CochainError> {
        self.cases += 1;
        for args in self.sampler.tuples(&self.universe, lhs.dim()) {
            let a = lhs.evaluate(&args)?;
            let equal = match rhs {
                Some(r) => a == r.evaluate(&args)?,
                None => a.is_zero(),
            };
            self.evaluations += 1;
            if !equal {
                self.mismatches.push(Mismatch {
                    case: case.clone(),
                    args: args.iter().map(ToString::to_string).collect(),
                });
            }
        }
        Ok(())
    }
}

/// Evaluates both sides of an identity exactly at sampled tuples.
///
/// * `DSquaredZero`: `d d f = 0` for each input.
/// * `Cosimplicial`: every coface/codegeneracy relation defined for each input's dimension.
/// * `Leibniz`: `d(f ∘ g) = df ∘ g + (-1)^{|f|} f ∘ dg` for the first two inputs.
pub fn check_identity(
    identity: Identity,
    inputs: &[Cochain],
    sampler: &TupleSampler,
) -> Result<IdentityReport, CochainError> {
    let Some(first) = inputs.first() else {
        return Err(CochainError::Arity { expected: 1, found: 0 });
    };
    let mut run = Run {
        sampler,
        universe: first.family().universe().clone(),
        cases: 0,
        evaluations: 0,
        mismatches: Vec::new(),
    };
    match identity {
        Identity::DSquaredZero => {
            for f in inputs {
                let dd = f.differential()?.differential()?;
                run.compare(format!("d^{} d^{} = 0", f.dim() + 1, f.dim()), &dd, None)?;
            }
        }
        Identity::Cosimplicial => {
            for f in inputs {
                cosimplicial(&mut run, f)?;
            }
        }
        Identity::Leibniz => {
            let [f, g, ..] = inputs else {
                return Err(CochainError::Arity {
                    expected: 2,
                    found: inputs.len(),
                });
            };
            let lhs = f.compose(g)?.differential()?;
            let left = f.differential()?.compose(g)?;
            let right = f.compose(&g.differential()?)?;
            let rhs = if f.dim() % 2 == 0 {
                left.add(&right)?
            } else {
                left.sub(&right)?
            };
            run.compare(format!("Leibniz |f| = {}, |g| = {}", f.dim(), g.dim()), &lhs, Some(&rhs))?;
        }
    }
    Ok(IdentityReport {
        identity,
        seed: sampler.seed,
        cases: run.cases,
        evaluations: run.evaluations,
        mismatches: run.mismatches,
    })
}

fn cosimplicial(run: &mut Run<'_>, f: &Cochain) -> Result<(), CochainError> {
    let n = f.dim();
    if n == 0 {
        return Err(CochainError::DimensionTooSmall { min: 1, found: 0 });
    }
    for j in 1..=n + 2 {
        for i in 0..j {
            let lhs = f.coface(i)?.coface(j)?;
            let rhs = f.coface(j - 1)?.coface(i)?;
            run.compare(format!("d^{j} d^{i} = d^{i} d^{}", j - 1), &lhs, Some(&rhs))?;
        }
    }
    for j in 0..=n {
        for i in 0..=n + 1 {
            let lhs = f.coface(i)?.codegeneracy(j)?;
            if i == j || i == j + 1 {
                run.compare(format!("s^{j} d^{i} = id"), &lhs, Some(f))?;
            } else if i < j && n >= 2 {
                let rhs = f.codegeneracy(j - 1)?.coface(i)?;
                run.compare(format!("s^{j} d^{i} = d^{i} s^{}", j - 1), &lhs, Some(&rhs))?;
            } else if i > j + 1 && n >= 2 {
                let rhs = f.codegeneracy(j)?.coface(i - 1)?;
                run.compare(format!("s^{j} d^{i} = d^{} s^{j}", i - 1), &lhs, Some(&rhs))?;
            }
        }
    }
    if n >= 3 {
        for j in 0..=n - 2 {
            for i in 0..=j {
                let lhs = f.codegeneracy(i)?.codegeneracy(j)?;
                let rhs = f.codegeneracy(j + 1)?.codegeneracy(i)?;
                run.compare(format!("s^{j} s^{i} = s^{i} s^{}", j + 1), &lhs, Some(&rhs))?;
            }
        }
    }
    Ok(())
}
