//! Conversion between lambda-operations and Adams operations via the Newton identities.
//!
//! `n λ^n(r) = Σ_{k=1}^{n} (-1)^{k-1} λ^{n-k}(r) ψ^k(r)` with `λ^0(r) = 1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::adams::AdamsFamily;
use super::ring::{Element, RingSpec};
use super::LambdaRingError;

/// Generalized binomial coefficient `n (n-1) ... (n-k+1) / k!`, valid for negative `n`.
pub fn binomial(n: &BigInt, k: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= n - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// `λ^1(r), ..., λ^n(r)` from `ψ^1(r), ..., ψ^n(r)`; every division by `n` must be exact.
pub fn lambda_from_psi_values(
    ring: &RingSpec,
    psi: &[Element],
) -> Result<Vec<Element>, LambdaRingError> {
    let mut lambdas: Vec<Element> = vec![ring.one()];
    for n in 1..=psi.len() {
        let mut acc = ring.zero();
        for k in 1..=n {
            let term = ring.mul(&lambdas[n - k], &psi[k - 1]);
            acc = if k % 2 == 1 {
                ring.add(&acc, &term)
            } else {
                ring.sub(&acc, &term)
            };
        }
        let divisor = BigInt::from(n);
        if acc.iter().any(|x| !x.is_multiple_of(&divisor)) {
            return Err(LambdaRingError::NonIntegralDivision { degree: n });
        }
        lambdas.push(acc.iter().map(|x| x / &divisor).collect());
    }
    lambdas.remove(0);
    Ok(lambdas)
}

/// `λ^1(r), ..., λ^max_degree(r)` from the Adams family.
///
/// Needs `ψ^n` for all `n <= max_degree`, so each such `n` must factor over the universe.
pub fn lambda_from_adams(
    family: &AdamsFamily,
    r: &[BigInt],
    max_degree: usize,
) -> Result<Vec<Element>, LambdaRingError> {
    let psi = psi_values(family, r, max_degree)?;
    lambda_from_psi_values(family.ring(), &psi)
}

pub fn psi_values(
    family: &AdamsFamily,
    r: &[BigInt],
    max_degree: usize,
) -> Result<Vec<Element>, LambdaRingError> {
    (1..=max_degree as u64)
        .map(|n| Ok(family.adams_at_int(n)?.apply(r)))
        .collect()
}

/// `ψ^1(r), ..., ψ^n(r)` from `λ^1(r), ..., λ^n(r)`.
pub fn psi_from_lambda_values(ring: &RingSpec, lambdas: &[Element]) -> Vec<Element> {
    let mut psi: Vec<Element> = Vec::with_capacity(lambdas.len());
    for n in 1..=lambdas.len() {
        let mut acc = ring.zero();
        for k in 1..n {
            let term = ring.mul(&lambdas[k - 1], &psi[n - k - 1]);
            acc = if k % 2 == 1 {
                ring.add(&acc, &term)
            } else {
                ring.sub(&acc, &term)
            };
        }
        let last = ring.scale(&BigInt::from(n), &lambdas[n - 1]);
        acc = if n % 2 == 1 {
            ring.add(&acc, &last)
        } else {
            ring.sub(&acc, &last)
        };
        psi.push(acc);
    }
    psi
}

/// Stored lambda-values `λ^0(r), ..., λ^bound(r)` for a finite set of elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaData {
    ring: RingSpec,
    bound: usize,
    values: BTreeMap<Element, Vec<Element>>,
}

impl LambdaData {
    pub fn new(ring: RingSpec, bound: usize) -> Self {
        LambdaData {
            ring,
            bound,
            values: BTreeMap::new(),
        }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Stores `λ^0(r), ..., λ^bound(r)` as given; nothing is validated here.
    pub fn insert(&mut self, r: Element, values: Vec<Element>) -> Result<(), LambdaRingError> {
        if values.len() != self.bound + 1 {
            return Err(LambdaRingError::Shape(format!(
                "expected {} lambda values, found {}",
                self.bound + 1,
                values.len()
            )));
        }
        self.values.insert(r, values);
        Ok(())
    }

    pub fn get(&self, r: &[BigInt]) -> Option<&[Element]> {
        self.values.get(r).map(Vec::as_slice)
    }

    pub fn lambda(&self, i: usize, r: &[BigInt]) -> Result<&Element, LambdaRingError> {
        self.values
            .get(r)
            .and_then(|v| v.get(i))
            .ok_or_else(|| LambdaRingError::MissingLambdaData(format!("{r:?}")))
    }

    pub fn elements(&self) -> impl Iterator<Item = &Element> {
        self.values.keys()
    }

    /// Fills in every element the axiom checks touch: the samples, 1, pairwise sums and
    /// products, and `λ^j(r)` for each sample `r`.
    pub fn populate<F>(ring: RingSpec, samples: &[Element], bound: usize, oracle: F) -> Result<Self, LambdaRingError>
    where
        F: Fn(&[BigInt]) -> Result<Vec<Element>, LambdaRingError>,
    {
        let mut data = LambdaData::new(ring.clone(), bound);
        let mut wanted: Vec<Element> = vec![ring.one()];
        wanted.extend(samples.iter().cloned());
        for a in samples {
            for b in samples {
                wanted.push(ring.add(a, b));
                wanted.push(ring.mul(a, b));
            }
        }
        for r in &wanted.clone() {
            if data.values.contains_key(r) {
                continue;
            }
            let mut full = vec![ring.one()];
            full.extend(oracle(r)?);
            data.insert(r.clone(), full)?;
        }
        for r in samples {
            let derived: Vec<Element> = data.values[r][1..].to_vec();
            for v in derived {
                if data.values.contains_key(&v) {
                    continue;
                }
                let mut full = vec![ring.one()];
                full.extend(oracle(&v)?);
                data.insert(v, full)?;
            }
        }
        Ok(data)
    }

    /// Binomial lambda-structure on the integers, `λ^i(n) = C(n, i)`.
    pub fn binomial_integers(samples: &[i64], bound: usize) -> Result<Self, LambdaRingError> {
        let ring = RingSpec::from_i64(1, &[1], &[1])?;
        let elems: Vec<Element> = samples.iter().map(|&n| vec![BigInt::from(n)]).collect();
        Self::populate(ring, &elems, bound, |r| {
            Ok((1..=bound).map(|i| vec![binomial(&r[0], i)]).collect())
        })
    }

    /// Lambda-data induced by an Adams family through the Newton identities.
    pub fn from_adams(family: &AdamsFamily, samples: &[Element], bound: usize) -> Result<Self, LambdaRingError> {
        Self::populate(family.ring().clone(), samples, bound, |r| {
            lambda_from_adams(family, r, bound)
        })
    }
}

/// `ψ^1(r), ..., ψ^max_degree(r)` from stored lambda-values.
pub fn adams_from_lambda(
    data: &LambdaData,
    r: &[BigInt],
    max_degree: usize,
) -> Result<Vec<Element>, LambdaRingError> {
    let stored = data
        .get(r)
        .ok_or_else(|| LambdaRingError::MissingLambdaData(format!("{r:?}")))?;
    if stored.len() <= max_degree {
        return Err(LambdaRingError::MissingLambdaData(format!(
            "{r:?} up to degree {max_degree}"
        )));
    }
    Ok(psi_from_lambda_values(data.ring(), &stored[1..=max_degree]))
}

/// Coefficients `λ^0(r), ..., λ^precision(r)` of `λ_t(r)`.
pub fn lambda_series(
    data: &LambdaData,
    r: &[BigInt],
    precision: usize,
) -> Result<Vec<Element>, LambdaRingError> {
    (0..=precision)
        .map(|i| data.lambda(i, r).cloned())
        .collect()
}

/// Product of two truncated power series with coefficients in R, modulo `t^{precision+1}`.
pub fn series_mul(ring: &RingSpec, a: &[Element], b: &[Element], precision: usize) -> Vec<Element> {
    (0..=precision)
        .map(|n| {
            let mut acc = ring.zero();
            for k in 0..=n {
                if let (Some(x), Some(y)) = (a.get(k), b.get(n - k)) {
                    acc = ring.add(&acc, &ring.mul(x, y));
                }
            }
            acc
        })
        .collect()
}
