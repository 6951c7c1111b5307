use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::primes::{FactoredInt, PrimeUniverse};
use super::ring::{Endomorphism, RingSpec};
use super::LambdaRingError;
use crate::exactalg::IntMatrix;

/// Adams operations on R, generated multiplicatively by one matrix per prime of the universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdamsFamily {
    ring: RingSpec,
    universe: PrimeUniverse,
    generators: BTreeMap<u64, Endomorphism>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdamsViolation {
    /// `A_p(1) != 1`.
    UnitNotFixed { prime: u64 },
    /// `A_p(e_i e_j) != A_p(e_i) A_p(e_j)`.
    NotMultiplicative { prime: u64, i: usize, j: usize },
    NotCommuting { p: u64, q: u64 },
    /// `A_p` differs from the Frobenius map modulo `p`.
    Frobenius { prime: u64 },
}

impl fmt::Display for AdamsViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdamsViolation::UnitNotFixed { prime } => write!(f, "psi^{prime} does not fix 1"),
            AdamsViolation::NotMultiplicative { prime, i, j } => {
                write!(f, "psi^{prime}(e{i}*e{j}) != psi^{prime}(e{i})*psi^{prime}(e{j})")
            }
            AdamsViolation::NotCommuting { p, q } => write!(f, "psi^{p} and psi^{q} do not commute"),
            AdamsViolation::Frobenius { prime } => {
                write!(f, "psi^{prime} is not congruent to Frobenius mod {prime}")
            }
        }
    }
}

impl AdamsFamily {
    pub fn new(
        ring: RingSpec,
        universe: PrimeUniverse,
        generators: BTreeMap<u64, Endomorphism>,
    ) -> Result<Self, LambdaRingError> {
        for &p in universe.primes() {
            match generators.get(&p) {
                None => return Err(LambdaRingError::MissingGenerator(p)),
                Some(a) if a.dim() != ring.rank() => {
                    return Err(LambdaRingError::Shape(format!(
                        "generator at {p} is {0}x{0}, rank is {1}",
                        a.dim(),
                        ring.rank()
                    )))
                }
                Some(_) => {}
            }
        }
        if let Some(&p) = generators.keys().find(|&&p| !universe.contains(p)) {
            return Err(LambdaRingError::UnknownPrime(p));
        }
        Ok(AdamsFamily {
            ring,
            universe,
            generators,
        })
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn universe(&self) -> &PrimeUniverse {
        &self.universe
    }

    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    pub fn generators(&self) -> &BTreeMap<u64, Endomorphism> {
        &self.generators
    }

    pub fn generator(&self, p: u64) -> Result<&Endomorphism, LambdaRingError> {
        self.generators.get(&p).ok_or(LambdaRingError::UnknownPrime(p))
    }

    /// The same family over a smaller prime universe.
    pub fn restrict(&self, universe: PrimeUniverse) -> Result<AdamsFamily, LambdaRingError> {
        let generators = universe
            .primes()
            .iter()
            .map(|&p| Ok((p, self.generator(p)?.clone())))
            .collect::<Result<_, LambdaRingError>>()?;
        AdamsFamily::new(self.ring.clone(), universe, generators)
    }

    /// `psi^n = prod_p A_p^{e_p}`.
    pub fn adams_at(&self, n: &FactoredInt) -> Result<Endomorphism, LambdaRingError> {
        let mut acc = Endomorphism::identity(self.rank());
        for (&p, &e) in n.exponents() {
            acc = acc.compose(&self.generator(p)?.pow(u64::from(e)));
        }
        Ok(acc)
    }

    /// `psi^n` for a machine integer, factored over the universe.
    pub fn adams_at_int(&self, n: u64) -> Result<Endomorphism, LambdaRingError> {
        self.adams_at(&FactoredInt::factor(n, &self.universe)?)
    }

    pub fn violations(&self) -> Vec<AdamsViolation> {
        let ring = &self.ring;
        let d = ring.rank();
        let mut out = Vec::new();
        for (&p, a) in &self.generators {
            if a.apply(&ring.one()) != ring.one() {
                out.push(AdamsViolation::UnitNotFixed { prime: p });
            }
            let images: Vec<_> = (0..d).map(|i| a.apply(&ring.basis(i))).collect();
            for i in 0..d {
                for j in i..d {
                    let lhs = a.apply(&ring.mul(&ring.basis(i), &ring.basis(j)));
                    let rhs = ring.mul(&images[i], &images[j]);
                    if lhs != rhs {
                        out.push(AdamsViolation::NotMultiplicative { prime: p, i, j });
                    }
                }
            }
        }
        let primes = self.universe.primes();
        for (x, &p) in primes.iter().enumerate() {
            for &q in &primes[x + 1..] {
                let (a, b) = (&self.generators[&p], &self.generators[&q]);
                if a.compose(b) != b.compose(a) {
                    out.push(AdamsViolation::NotCommuting { p, q });
                }
            }
        }
        for (&p, a) in &self.generators {
            let m = BigInt::from(p);
            if a.reduce_mod(&m) != frobenius_map(ring, p) {
                out.push(AdamsViolation::Frobenius { prime: p });
            }
        }
        out
    }
}

/// Checks ring-map, commutation, and Frobenius-congruence conditions on every generator.
pub fn verify_adams(family: &AdamsFamily) -> Vec<AdamsViolation> {
    family.violations()
}

/// The additive map `r -> r^p` on `R/pR`, entries reduced into `[0, p)`.
pub fn frobenius_map(spec: &RingSpec, p: u64) -> Endomorphism {
    let m = BigInt::from(p);
    let d = spec.rank();
    let columns: Vec<_> = (0..d).map(|i| spec.pow_mod(&spec.basis(i), p, &m)).collect();
    Endomorphism::new(IntMatrix::from_columns(d, &columns)).expect("square by construction")
}

/// Whether `f` commutes with Frobenius modulo every prime of `universe`.
///
/// Membership is relative to the universe: primes outside it are not checked.
pub fn endbar_contains(f: &Endomorphism, spec: &RingSpec, universe: &PrimeUniverse) -> bool {
    universe.primes().iter().all(|&p| {
        let frob = frobenius_map(spec, p);
        f.commutator(&frob).reduce_mod(&BigInt::from(p)).is_zero()
    })
}
