use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;

use crate::lambdaring::{Element, LambdaData};

use super::universal::{compute_P, compute_P_ij, UniversalPolynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    LambdaZero { r: Element },
    LambdaOne { r: Element },
    UnitHigher { i: usize },
    Additive { r: Element, s: Element, i: usize },
    Product { r: Element, s: Element, i: usize },
    Composition { r: Element, i: usize, j: usize },
    /// Some lambda-value needed by a check is not in the data.
    MissingData { element: Element, degree: usize },
}

fn show(e: &[BigInt]) -> String {
    let parts: Vec<String> = e.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::LambdaZero { r } => write!(f, "lambda^0{} != 1", show(r)),
            AxiomViolation::LambdaOne { r } => write!(f, "lambda^1{} != r", show(r)),
            AxiomViolation::UnitHigher { i } => write!(f, "lambda^{i}(1) != 0"),
            AxiomViolation::Additive { r, s, i } => {
                write!(f, "lambda^{i}(r + s) sum rule fails at r = {}, s = {}", show(r), show(s))
            }
            AxiomViolation::Product { r, s, i } => {
                write!(f, "lambda^{i}(rs) != P_{i} at r = {}, s = {}", show(r), show(s))
            }
            AxiomViolation::Composition { r, i, j } => {
                write!(f, "lambda^{i}(lambda^{j}(r)) != P_{{{i},{j}}} at r = {}", show(r))
            }
            AxiomViolation::MissingData { element, degree } => {
                write!(f, "no lambda^{degree} value for {}", show(element))
            }
        }
    }
}

struct Checker<'a> {
    data: &'a LambdaData,
    out: Vec<AxiomViolation>,
}

impl Checker<'_> {
    fn lambda(&mut self, i: usize, r: &Element) -> Option<Element> {
        match self.data.lambda(i, r) {
            Ok(v) => Some(v.clone()),
            Err(_) => {
                let v = AxiomViolation::MissingData {
                    element: r.clone(),
                    degree: i,
                };
                if !self.out.contains(&v) {
                    self.out.push(v);
                }
                None
            }
        }
    }

    /// `λ^1..λ^n` of `r`.
    fn lambdas(&mut self, n: usize, r: &Element) -> Option<Vec<Element>> {
        (1..=n).map(|k| self.lambda(k, r)).collect()
    }
}

/// Checks the six lambda-ring axioms on `samples` up to degree `bound`.
///
/// The product rule is checked on all ordered sample pairs for `i ≤ bound`, and the
/// composition rule for `i, j ≥ 1` with `i * j ≤ bound`. Gaps in the data are
/// reported as [`AxiomViolation::MissingData`] rather than skipped silently.
pub fn verify_lambda_axioms(data: &LambdaData, samples: &[Element], bound: usize) -> Vec<AxiomViolation> {
    let ring = data.ring();
    let mut ck = Checker { data, out: Vec::new() };
    let one = ring.one();

    let mut unary: Vec<Element> = vec![one.clone()];
    unary.extend(samples.iter().cloned());
    for r in &unary {
        if let Some(v) = ck.lambda(0, r) {
            if v != one {
                ck.out.push(AxiomViolation::LambdaZero { r: r.clone() });
            }
        }
        if bound >= 1 {
            if let Some(v) = ck.lambda(1, r) {
                if &v != r {
                    ck.out.push(AxiomViolation::LambdaOne { r: r.clone() });
                }
            }
        }
    }
    for i in 2..=bound {
        if let Some(v) = ck.lambda(i, &one) {
            if v != ring.zero() {
                ck.out.push(AxiomViolation::UnitHigher { i });
            }
        }
    }

    let products: Vec<UniversalPolynomial> = (1..=bound)
        .map(|i| compute_P(i).expect("positive index"))
        .collect();
    let mut compositions: HashMap<(usize, usize), UniversalPolynomial> = HashMap::new();
    for i in 1..=bound {
        for j in 1..=bound / i {
            compositions.insert((i, j), compute_P_ij(i, j, bound).expect("within bound"));
        }
    }

    for r in samples {
        for s in samples {
            let sum = ring.add(r, s);
            let prod = ring.mul(r, s);
            for i in 1..=bound {
                let (Some(lr), Some(ls), Some(lsum)) = (
                    ck.lambdas(i, r),
                    ck.lambdas(i, s),
                    ck.lambda(i, &sum),
                ) else {
                    continue;
                };
                let mut expected = ring.zero();
                for k in 0..=i {
                    let a = if k == 0 { one.clone() } else { lr[k - 1].clone() };
                    let b = if k == i { one.clone() } else { ls[i - k - 1].clone() };
                    expected = ring.add(&expected, &ring.mul(&a, &b));
                }
                if expected != lsum {
                    ck.out.push(AxiomViolation::Additive {
                        r: r.clone(),
                        s: s.clone(),
                        i,
                    });
                }
                if let Some(lprod) = ck.lambda(i, &prod) {
                    let p = &products[i - 1];
                    if p.eval_in_ring(ring, &[&lr, &ls]) != lprod {
                        ck.out.push(AxiomViolation::Product {
                            r: r.clone(),
                            s: s.clone(),
                            i,
                        });
                    }
                }
            }
        }
    }

    let mut keys: Vec<(usize, usize)> = compositions.keys().copied().collect();
    keys.sort_unstable();
    for r in samples {
        for &(i, j) in &keys {
            let (Some(lr), Some(inner)) = (ck.lambdas(i * j, r), ck.lambda(j, r)) else {
                continue;
            };
            let Some(lhs) = ck.lambda(i, &inner) else {
                continue;
            };
            if compositions[&(i, j)].eval_in_ring(ring, &[&lr]) != lhs {
                ck.out.push(AxiomViolation::Composition { r: r.clone(), i, j });
            }
        }
    }
    ck.out
}
