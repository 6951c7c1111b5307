//! Deformations of the Adams operations as truncated matrix power series.
//!
//! A deformation of order `N` is given by prime data `Ψ^p_t = A_p + ψ^p_1 t + ... + ψ^p_N t^N`;
//! the series at a composite `n` is the product over its prime factors.

mod extend;
mod file;
mod series;

pub use extend::{
    box_pairs, check_equivalent_extensions, extension_space, integrate, normalize, try_extend, ExtensionSpace,
    TraceStep, DEFAULT_EXPONENT_BOUND,
};
pub use file::DeformationFile;
pub use series::MatrixSeries;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::cochain::{Cochain, CochainError};
use crate::cohomology::{CohomologyError, DerivationSpec};
use crate::lambdaring::{endbar_contains, AdamsFamily, Endomorphism, FactoredInt, LambdaRingError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeformationError {
    #[error("term {degree} at prime {prime} is not divisible by {prime}")]
    NotDivisible { prime: u64, degree: usize },
    #[error("automorphism coefficient {degree} does not commute with Frobenius")]
    NotEndbar { degree: usize },
    #[error("deformations or automorphisms over different families or orders")]
    ContextMismatch,
    #[error("extensions differ at prime {prime} in degree {degree}, below the top order")]
    PrefixMismatch { prime: u64, degree: usize },
    #[error("term of degree {level} is not an inner derivation")]
    NotCoboundary { level: usize },
    #[error("term of degree {degree} is nonzero, below the level {level} being normalized")]
    NotNormalized { level: usize, degree: usize },
    #[error("order {order} is outside the allowed range 1..={max}")]
    BadOrder { order: usize, max: usize },
    #[error("matrix has the wrong size")]
    Shape,
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Ring(#[from] LambdaRingError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deformation {
    family: Arc<AdamsFamily>,
    order: usize,
    series: BTreeMap<u64, MatrixSeries>,
}

impl Deformation {
    /// `higher[p]` lists `ψ^p_1..ψ^p_N`; missing primes get zero terms.
    ///
    /// Divisibility by `p` is enforced here; commutation is checked by [`verify_deformation`].
    pub fn new(
        family: Arc<AdamsFamily>,
        order: usize,
        higher: BTreeMap<u64, Vec<Endomorphism>>,
    ) -> Result<Self, DeformationError> {
        if order == 0 {
            return Err(DeformationError::BadOrder { order, max: usize::MAX });
        }
        let d = family.rank();
        if let Some(&p) = higher.keys().find(|&&p| !family.universe().contains(p)) {
            return Err(LambdaRingError::UnknownPrime(p).into());
        }
        let mut series = BTreeMap::new();
        for &p in family.universe().primes() {
            let mut coeffs = vec![family.generator(p)?.clone()];
            match higher.get(&p) {
                Some(terms) => {
                    if terms.len() != order {
                        return Err(DeformationError::BadOrder {
                            order: terms.len(),
                            max: order,
                        });
                    }
                    for (i, t) in terms.iter().enumerate() {
                        if t.dim() != d {
                            return Err(DeformationError::Shape);
                        }
                        if !t.image_divisible_by(&BigInt::from(p)) {
                            return Err(DeformationError::NotDivisible { prime: p, degree: i + 1 });
                        }
                    }
                    coeffs.extend(terms.iter().cloned());
                }
                None => coeffs.extend((0..order).map(|_| Endomorphism::zero(d))),
            }
            series.insert(p, MatrixSeries::new(coeffs));
        }
        Ok(Deformation { family, order, series })
    }

    /// All higher terms zero.
    pub fn trivial(family: Arc<AdamsFamily>, order: usize) -> Result<Self, DeformationError> {
        Self::new(family, order, BTreeMap::new())
    }

    pub fn family(&self) -> &Arc<AdamsFamily> {
        &self.family
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn series(&self) -> &BTreeMap<u64, MatrixSeries> {
        &self.series
    }

    pub fn at_prime(&self, p: u64) -> Result<&MatrixSeries, DeformationError> {
        self.series
            .get(&p)
            .ok_or(DeformationError::Ring(LambdaRingError::UnknownPrime(p)))
    }

    /// `ψ^p_i`.
    pub fn term(&self, p: u64, i: usize) -> Result<&Endomorphism, DeformationError> {
        Ok(self.at_prime(p)?.coeff(i))
    }

    /// The values `p -> ψ^p_i` as a derivation-shaped spec.
    pub fn level(&self, i: usize) -> Result<DerivationSpec, DeformationError> {
        let values = self.series.iter().map(|(&p, s)| (p, s.coeff(i).clone())).collect();
        Ok(DerivationSpec::new(self.family.universe().clone(), self.family.rank(), values)?)
    }

    /// The same prime data cut down to a lower order.
    pub fn truncate(&self, order: usize) -> Result<Deformation, DeformationError> {
        if order == 0 || order > self.order {
            return Err(DeformationError::BadOrder { order, max: self.order });
        }
        Ok(Deformation {
            family: self.family.clone(),
            order,
            series: self.series.iter().map(|(&p, s)| (p, s.truncate(order))).collect(),
        })
    }

    /// Appends `ψ^p_{N+1} = values[p]` for every prime.
    pub fn extend_with(&self, values: &DerivationSpec) -> Result<Deformation, DeformationError> {
        let mut higher: BTreeMap<u64, Vec<Endomorphism>> = BTreeMap::new();
        for (&p, s) in &self.series {
            let mut terms = s.coeffs()[1..].to_vec();
            terms.push(values.value(p).clone());
            higher.insert(p, terms);
        }
        Deformation::new(self.family.clone(), self.order + 1, higher)
    }

    fn same_context(&self, other: &Deformation) -> bool {
        (Arc::ptr_eq(&self.family, &other.family) || self.family == other.family) && self.order == other.order
    }
}

/// `Ψ^n_t` as the product of the prime series over the factorization of `n`, smallest prime first.
pub fn deformation_at(d: &Deformation, n: &FactoredInt) -> Result<MatrixSeries, DeformationError> {
    let mut acc = MatrixSeries::identity(d.family.rank(), d.order);
    for p in n.prime_sequence() {
        acc = acc.mul(d.at_prime(p)?);
    }
    Ok(acc)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DeformationReport {
    /// `(p, i)` with `ψ^p_i` not divisible by `p`.
    pub divisibility: Vec<(u64, usize)>,
    /// `(p, q)` whose series do not commute.
    pub commutation: Vec<(u64, u64)>,
    /// `(m, n)` with `Ψ^{mn} != Ψ^m Ψ^n`.
    pub multiplicativity: Vec<(String, String)>,
    pub pairs_checked: usize,
}

impl DeformationReport {
    pub fn is_clean(&self) -> bool {
        self.divisibility.is_empty() && self.commutation.is_empty() && self.multiplicativity.is_empty()
    }
}

pub fn verify_deformation(
    d: &Deformation,
    pairs: &[(FactoredInt, FactoredInt)],
) -> Result<DeformationReport, DeformationError> {
    let mut report = DeformationReport::default();
    for (&p, s) in &d.series {
        for i in 1..=d.order {
            if !s.coeff(i).image_divisible_by(&BigInt::from(p)) {
                report.divisibility.push((p, i));
            }
        }
    }
    let primes: Vec<u64> = d.series.keys().copied().collect();
    for (a, &p) in primes.iter().enumerate() {
        for &q in &primes[a + 1..] {
            if !d.series[&p].commutes_with(&d.series[&q]) {
                report.commutation.push((p, q));
            }
        }
    }
    for (m, n) in pairs {
        let lhs = deformation_at(d, &m.mul(n))?;
        let rhs = deformation_at(d, m)?.mul(&deformation_at(d, n)?);
        report.pairs_checked += 1;
        if lhs != rhs {
            report.multiplicativity.push((m.to_string(), n.to_string()));
        }
    }
    Ok(report)
}

/// `p -> ψ^p_1`.
pub fn infinitesimal(d: &Deformation) -> Result<DerivationSpec, DeformationError> {
    d.level(1)
}

/// `Φ_t = 1 + φ_1 t + ... + φ_N t^N` with every `φ_i` Frobenius-compatible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalAutomorphism {
    family: Arc<AdamsFamily>,
    coeffs: Vec<Endomorphism>,
}

impl FormalAutomorphism {
    /// `coeffs` lists `φ_1..φ_N`.
    pub fn new(family: Arc<AdamsFamily>, coeffs: Vec<Endomorphism>) -> Result<Self, DeformationError> {
        if coeffs.is_empty() {
            return Err(DeformationError::BadOrder { order: 0, max: usize::MAX });
        }
        for (i, c) in coeffs.iter().enumerate() {
            if c.dim() != family.rank() {
                return Err(DeformationError::Shape);
            }
            if !endbar_contains(c, family.ring(), family.universe()) {
                return Err(DeformationError::NotEndbar { degree: i + 1 });
            }
        }
        Ok(FormalAutomorphism { family, coeffs })
    }

    pub fn identity(family: Arc<AdamsFamily>, order: usize) -> Self {
        let d = family.rank();
        FormalAutomorphism {
            family,
            coeffs: vec![Endomorphism::zero(d); order],
        }
    }

    /// `1 + t^level φ` at the given order.
    pub fn single(
        family: Arc<AdamsFamily>,
        order: usize,
        level: usize,
        phi: Endomorphism,
    ) -> Result<Self, DeformationError> {
        if level == 0 || level > order {
            return Err(DeformationError::BadOrder { order: level, max: order });
        }
        let d = family.rank();
        let mut coeffs = vec![Endomorphism::zero(d); order];
        coeffs[level - 1] = phi;
        Self::new(family, coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Endomorphism] {
        &self.coeffs
    }

    pub fn series(&self) -> MatrixSeries {
        let mut all = vec![Endomorphism::identity(self.family.rank())];
        all.extend(self.coeffs.iter().cloned());
        MatrixSeries::new(all)
    }
}

/// `Φ^{-1} Ψ^p Φ` for every prime.
pub fn apply_automorphism(d: &Deformation, a: &FormalAutomorphism) -> Result<Deformation, DeformationError> {
    if !(Arc::ptr_eq(&d.family, &a.family) || d.family == a.family) || d.order != a.order() {
        return Err(DeformationError::ContextMismatch);
    }
    let phi = a.series();
    let inv = phi.inverse().expect("unit constant term");
    let mut series = BTreeMap::new();
    for (&p, s) in &d.series {
        let conj = inv.mul(s).mul(&phi);
        for i in 1..=d.order {
            if !conj.coeff(i).image_divisible_by(&BigInt::from(p)) {
                return Err(DeformationError::Internal(format!(
                    "conjugated term {i} at {p} is not divisible by {p}"
                )));
            }
        }
        if conj.coeff(0) != s.coeff(0) {
            return Err(DeformationError::Internal("conjugation changed the constant term".into()));
        }
        series.insert(p, conj);
    }
    Ok(Deformation {
        family: d.family.clone(),
        order: d.order,
        series,
    })
}

/// `Obs(m, n) = -Σ_{i=1}^N ψ^m_i ψ^n_{N+1-i}` as a 2-cochain.
pub fn obstruction(d: &Deformation) -> Cochain {
    let def = d.clone();
    let n = d.order;
    Cochain::from_fn(d.family.clone(), 2, false, move |args| {
        let at = |x: &FactoredInt| deformation_at(&def, x).map_err(|e| match e {
            DeformationError::Ring(r) => CochainError::Ring(r),
            other => CochainError::OutsideUniverse(other.to_string()),
        });
        let (sm, sn) = (at(&args[0])?, at(&args[1])?);
        let mut acc = Endomorphism::zero(def.family.rank());
        for i in 1..=n {
            acc = &acc - &sm.coeff(i).compose(sn.coeff(n + 1 - i));
        }
        Ok(acc)
    })
}

impl fmt::Display for Deformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, s) in &self.series {
            writeln!(f, "Psi^{p} = {s}")?;
        }
        Ok(())
    }
}
