use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cochain::{Cochain, CochainError};
use crate::lambdaring::{AdamsFamily, Endomorphism, FactoredInt, LambdaRingError, PrimeUniverse};

use super::CohomologyError;

/// A candidate lambda-derivation given by its values at the primes of a universe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationSpec {
    universe: PrimeUniverse,
    values: BTreeMap<u64, Endomorphism>,
}

impl DerivationSpec {
    /// Missing primes get the zero map. Every `values[p]` must be divisible by `p`.
    pub fn new(
        universe: PrimeUniverse,
        dim: usize,
        mut values: BTreeMap<u64, Endomorphism>,
    ) -> Result<Self, CohomologyError> {
        if let Some(&p) = values.keys().find(|&&p| !universe.contains(p)) {
            return Err(LambdaRingError::UnknownPrime(p).into());
        }
        for &p in universe.primes() {
            let v = values.entry(p).or_insert_with(|| Endomorphism::zero(dim));
            if v.dim() != dim {
                return Err(CohomologyError::Shape);
            }
            if !v.image_divisible_by(&BigInt::from(p)) {
                return Err(CohomologyError::NotDivisible { prime: p });
            }
        }
        Ok(DerivationSpec { universe, values })
    }

    /// `f(p) = p X_p`.
    pub fn from_quotients(
        universe: PrimeUniverse,
        quotients: BTreeMap<u64, Endomorphism>,
    ) -> Result<Self, CohomologyError> {
        let dim = quotients.values().next().map(Endomorphism::dim).unwrap_or(1);
        let values = quotients
            .into_iter()
            .map(|(p, x)| (p, x.scale(&BigInt::from(p))))
            .collect();
        Self::new(universe, dim, values)
    }

    pub fn zero(universe: PrimeUniverse, dim: usize) -> Self {
        Self::new(universe, dim, BTreeMap::new()).expect("zero is divisible")
    }

    pub fn universe(&self) -> &PrimeUniverse {
        &self.universe
    }

    pub fn values(&self) -> &BTreeMap<u64, Endomorphism> {
        &self.values
    }

    pub fn value(&self, p: u64) -> &Endomorphism {
        &self.values[&p]
    }

    pub fn dim(&self) -> usize {
        self.values.values().next().map(Endomorphism::dim).unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(Endomorphism::is_zero)
    }
}

fn check_family(family: &AdamsFamily, spec: &DerivationSpec) -> Result<(), CohomologyError> {
    if !spec.universe.is_subset_of(family.universe()) {
        return Err(CohomologyError::Internal(format!(
            "derivation over {} but family over {}",
            spec.universe,
            family.universe()
        )));
    }
    if spec.dim() != family.rank() {
        return Err(CohomologyError::Shape);
    }
    Ok(())
}

fn first_inconsistency(family: &AdamsFamily, spec: &DerivationSpec) -> Result<Option<(u64, u64)>, CohomologyError> {
    let primes = spec.universe.primes();
    for (a, &p) in primes.iter().enumerate() {
        for &q in &primes[a + 1..] {
            let (ap, aq) = (family.generator(p)?, family.generator(q)?);
            let (fp, fq) = (spec.value(p), spec.value(q));
            let lhs = &ap.compose(fq) + &fp.compose(aq);
            let rhs = &aq.compose(fp) + &fq.compose(ap);
            if lhs != rhs {
                return Ok(Some((p, q)));
            }
        }
    }
    Ok(None)
}

/// Whether the prime values satisfy `A_p f(q) + f(p) A_q = A_q f(p) + f(q) A_p` for all pairs.
pub fn is_derivation(family: &AdamsFamily, spec: &DerivationSpec) -> Result<bool, CohomologyError> {
    check_family(family, spec)?;
    Ok(first_inconsistency(family, spec)?.is_none())
}

/// `f(q_1 q_2 ... q_k)` peeling primes off the left in the given order:
/// `f(q_1 m) = psi^{q_1} f(m) + f(q_1) psi^m`.
///
/// Does not check pairwise consistency; different orders agree only for derivations.
pub fn extend_derivation_along(
    family: &AdamsFamily,
    spec: &DerivationSpec,
    primes: &[u64],
) -> Result<Endomorphism, CohomologyError> {
    let d = family.rank();
    let mut value = Endomorphism::zero(d);
    let mut psi_rest = Endomorphism::identity(d);
    for &q in primes.iter().rev() {
        if !spec.universe.contains(q) {
            return Err(LambdaRingError::UnknownPrime(q).into());
        }
        let aq = family.generator(q)?;
        value = &aq.compose(&value) + &spec.value(q).compose(&psi_rest);
        psi_rest = aq.compose(&psi_rest);
    }
    Ok(value)
}

/// `f(n)` by canonical peeling, smallest prime first.
pub fn extend_derivation(
    family: &AdamsFamily,
    spec: &DerivationSpec,
    n: &FactoredInt,
) -> Result<Endomorphism, CohomologyError> {
    check_family(family, spec)?;
    if let Some((p, q)) = first_inconsistency(family, spec)? {
        return Err(CohomologyError::InconsistentSpec { p, q });
    }
    extend_derivation_along(family, spec, &n.prime_sequence())
}

/// The derivation as a degree-1 cochain.
pub fn derivation_cochain(family: Arc<AdamsFamily>, spec: DerivationSpec) -> Result<Cochain, CohomologyError> {
    check_family(&family, &spec)?;
    if let Some((p, q)) = first_inconsistency(&family, &spec)? {
        return Err(CohomologyError::InconsistentSpec { p, q });
    }
    let fam = family.clone();
    Ok(Cochain::from_fn(family, 1, true, move |m| {
        extend_derivation_along(&fam, &spec, &m[0].prime_sequence()).map_err(|e| match e {
            CohomologyError::Ring(r) => CochainError::Ring(r),
            _ => CochainError::Shape,
        })
    }))
}
