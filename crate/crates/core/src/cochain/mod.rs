//! The cochain complex of functions from tuples of positive integers to `End(R)`.
//!
//! A [`Cochain`] is an evaluator rather than a stored tensor: the differential needs
//! values at products `m_{i-1} m_i` that leave any fixed box, so every operation
//! builds a new evaluator and identities are checked pointwise.

mod identities;
mod table;

pub use identities::{check_identity, Identity, IdentityReport, Mismatch, TupleSampler};
pub use table::{CochainTable, TableEntry};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::lambdaring::{endbar_contains, AdamsFamily, Endomorphism, FactoredInt, LambdaRingError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CochainError {
    #[error("f({prime}) is not divisible by {prime}")]
    F1Violation { prime: u64 },
    #[error("degree-0 cochain does not commute with Frobenius")]
    NotEndbar,
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("cochains live over different rings or Adams families")]
    ContextMismatch,
    #[error("expected {expected} arguments, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("operation needs dimension at least {min}, found {found}")]
    DimensionTooSmall { min: usize, found: usize },
    #[error("argument {0} is not supported on the prime universe")]
    OutsideUniverse(String),
    #[error("matrix has the wrong size")]
    Shape,
    #[error(transparent)]
    Ring(#[from] LambdaRingError),
}

pub type Evaluator = Arc<dyn Fn(&[FactoredInt]) -> Result<Endomorphism, CochainError> + Send + Sync>;

#[derive(Clone)]
enum Repr {
    Table(Arc<BTreeMap<Vec<FactoredInt>, Endomorphism>>),
    Endo(Endomorphism),
    Combinator(Evaluator),
}

#[derive(Clone)]
pub struct Cochain {
    dim: usize,
    family: Arc<AdamsFamily>,
    f1: bool,
    repr: Repr,
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.repr {
            Repr::Table(t) => format!("table({} entries)", t.len()),
            Repr::Endo(_) => "endomorphism".to_string(),
            Repr::Combinator(_) => "combinator".to_string(),
        };
        f.debug_struct("Cochain")
            .field("dim", &self.dim)
            .field("f1", &self.f1)
            .field("repr", &kind)
            .finish()
    }
}

fn same_context(a: &Arc<AdamsFamily>, b: &Arc<AdamsFamily>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Table-backed cochain, zero outside the stored tuples.
///
/// With `f1_flag` on a degree-1 cochain every stored `f(p)` at a prime must be divisible by `p`.
pub fn make_table_cochain(
    family: Arc<AdamsFamily>,
    n: usize,
    entries: BTreeMap<Vec<FactoredInt>, Endomorphism>,
    f1_flag: bool,
) -> Result<Cochain, CochainError> {
    let d = family.rank();
    for (args, m) in &entries {
        if args.len() != n {
            return Err(CochainError::Arity {
                expected: n,
                found: args.len(),
            });
        }
        for a in args {
            if !a.supported_on(family.universe()) {
                return Err(CochainError::OutsideUniverse(a.to_string()));
            }
        }
        if m.dim() != d {
            return Err(CochainError::Shape);
        }
    }
    if n == 1 && f1_flag {
        for &p in family.universe().primes() {
            if let Some(m) = entries.get(&vec![FactoredInt::prime(p)]) {
                if !m.image_divisible_by(&BigInt::from(p)) {
                    return Err(CochainError::F1Violation { prime: p });
                }
            }
        }
    }
    let entries = entries.into_iter().filter(|(_, m)| !m.is_zero()).collect();
    Ok(Cochain {
        dim: n,
        family,
        f1: f1_flag && n == 1,
        repr: Repr::Table(Arc::new(entries)),
    })
}

/// Wraps an element of the Frobenius-compatible endomorphisms as a 0-cochain.
pub fn degree_zero(family: Arc<AdamsFamily>, f: Endomorphism) -> Result<Cochain, CochainError> {
    if f.dim() != family.rank() {
        return Err(CochainError::Shape);
    }
    if !endbar_contains(&f, family.ring(), family.universe()) {
        return Err(CochainError::NotEndbar);
    }
    Ok(Cochain {
        dim: 0,
        family,
        f1: false,
        repr: Repr::Endo(f),
    })
}

impl Cochain {
    /// Cochain given by an arbitrary evaluator. The closure must be deterministic.
    pub fn from_fn<F>(family: Arc<AdamsFamily>, dim: usize, f1: bool, f: F) -> Cochain
    where
        F: Fn(&[FactoredInt]) -> Result<Endomorphism, CochainError> + Send + Sync + 'static,
    {
        Cochain {
            dim,
            family,
            f1,
            repr: Repr::Combinator(Arc::new(f)),
        }
    }

    pub fn zero(family: Arc<AdamsFamily>, dim: usize) -> Cochain {
        Cochain {
            dim,
            family,
            f1: dim == 1,
            repr: Repr::Table(Arc::new(BTreeMap::new())),
        }
    }

    /// `Id_R` as a 0-cochain.
    pub fn identity(family: Arc<AdamsFamily>) -> Cochain {
        let d = family.rank();
        Cochain {
            dim: 0,
            family,
            f1: false,
            repr: Repr::Endo(Endomorphism::identity(d)),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn family(&self) -> &Arc<AdamsFamily> {
        &self.family
    }

    pub fn has_f1_flag(&self) -> bool {
        self.f1
    }

    /// The stored entries of a table cochain.
    pub fn table(&self) -> Option<&BTreeMap<Vec<FactoredInt>, Endomorphism>> {
        match &self.repr {
            Repr::Table(t) => Some(t),
            _ => None,
        }
    }

    /// The wrapped endomorphism of a 0-cochain.
    pub fn endomorphism(&self) -> Option<&Endomorphism> {
        match &self.repr {
            Repr::Endo(e) => Some(e),
            _ => None,
        }
    }

    pub fn evaluate(&self, args: &[FactoredInt]) -> Result<Endomorphism, CochainError> {
        if args.len() != self.dim {
            return Err(CochainError::Arity {
                expected: self.dim,
                found: args.len(),
            });
        }
        match &self.repr {
            Repr::Table(t) => Ok(t
                .get(args)
                .cloned()
                .unwrap_or_else(|| Endomorphism::zero(self.family.rank()))),
            Repr::Endo(e) => Ok(e.clone()),
            Repr::Combinator(f) => f(args),
        }
    }

    /// Evaluates at integer arguments, factoring them over the universe.
    pub fn evaluate_ints(&self, args: &[u64]) -> Result<Endomorphism, CochainError> {
        let factored: Vec<FactoredInt> = args
            .iter()
            .map(|&m| FactoredInt::factor(m, self.family.universe()))
            .collect::<Result<_, _>>()?;
        self.evaluate(&factored)
    }

    /// Checks divisibility of `f(p)` by `p` at every prime of the universe.
    pub fn check_f1(&self) -> Result<(), CochainError> {
        if self.dim != 1 {
            return Err(CochainError::Arity {
                expected: 1,
                found: self.dim,
            });
        }
        for &p in self.family.universe().primes() {
            let v = self.evaluate(&[FactoredInt::prime(p)])?;
            if !v.image_divisible_by(&BigInt::from(p)) {
                return Err(CochainError::F1Violation { prime: p });
            }
        }
        Ok(())
    }

    fn check_context(&self, other: &Cochain) -> Result<(), CochainError> {
        if same_context(&self.family, &other.family) {
            Ok(())
        } else {
            Err(CochainError::ContextMismatch)
        }
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain, CochainError> {
        self.check_context(other)?;
        if self.dim != other.dim {
            return Err(CochainError::Arity {
                expected: self.dim,
                found: other.dim,
            });
        }
        let (a, b) = (self.clone(), other.clone());
        Ok(Cochain::from_fn(self.family.clone(), self.dim, self.f1 && other.f1, move |m| {
            Ok(&a.evaluate(m)? + &b.evaluate(m)?)
        }))
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain, CochainError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cochain {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, k: &BigInt) -> Cochain {
        let a = self.clone();
        let k = k.clone();
        Cochain::from_fn(self.family.clone(), self.dim, self.f1, move |m| Ok(a.evaluate(m)?.scale(&k)))
    }

    fn psi(&self, m: &FactoredInt) -> Result<Endomorphism, CochainError> {
        Ok(self.family.adams_at(m)?)
    }

    /// `d^n f`.
    pub fn differential(&self) -> Result<Cochain, CochainError> {
        let n = self.dim;
        if n == 0 {
            let f = match &self.repr {
                Repr::Endo(e) => e.clone(),
                _ => self.evaluate(&[])?,
            };
            if !endbar_contains(&f, self.family.ring(), self.family.universe()) {
                return Err(CochainError::NotEndbar);
            }
            let fam = self.family.clone();
            return Ok(Cochain::from_fn(self.family.clone(), 1, true, move |m| {
                let psi = fam.adams_at(&m[0])?;
                Ok(&psi.compose(&f) - &f.compose(&psi))
            }));
        }
        let f = self.clone();
        Ok(Cochain::from_fn(self.family.clone(), n + 1, false, move |m| {
            let mut acc = f.psi(&m[0])?.compose(&f.evaluate(&m[1..])?);
            for i in 1..=n {
                let v = f.evaluate(&merge(m, i))?;
                acc = if i % 2 == 0 { &acc + &v } else { &acc - &v };
            }
            let last = f.evaluate(&m[..n])?.compose(&f.psi(&m[n])?);
            acc = if (n + 1) % 2 == 0 { &acc + &last } else { &acc - &last };
            Ok(acc)
        }))
    }

    /// The coface `∂^i`, defined for `dim ≥ 1` and `0 ≤ i ≤ dim + 1`.
    pub fn coface(&self, i: usize) -> Result<Cochain, CochainError> {
        let n = self.dim;
        if n == 0 {
            return Err(CochainError::DimensionTooSmall { min: 1, found: 0 });
        }
        if i > n + 1 {
            return Err(CochainError::IndexOutOfRange { index: i, max: n + 1 });
        }
        let f = self.clone();
        Ok(Cochain::from_fn(self.family.clone(), n + 1, false, move |m| {
            if i == 0 {
                Ok(f.psi(&m[0])?.compose(&f.evaluate(&m[1..])?))
            } else if i == n + 1 {
                Ok(f.evaluate(&m[..n])?.compose(&f.psi(&m[n])?))
            } else {
                f.evaluate(&merge(m, i))
            }
        }))
    }

    /// The codegeneracy `σ^i`, inserting `1` after the first `i` arguments.
    ///
    /// Only defined from dimension 2 down to dimension at least 1.
    pub fn codegeneracy(&self, i: usize) -> Result<Cochain, CochainError> {
        if self.dim < 2 {
            return Err(CochainError::DimensionTooSmall { min: 2, found: self.dim });
        }
        let n = self.dim - 1;
        if i > n {
            return Err(CochainError::IndexOutOfRange { index: i, max: n });
        }
        let f = self.clone();
        Ok(Cochain::from_fn(self.family.clone(), n, false, move |m| {
            let mut args = Vec::with_capacity(n + 1);
            args.extend_from_slice(&m[..i]);
            args.push(FactoredInt::one());
            args.extend_from_slice(&m[i..]);
            f.evaluate(&args)
        }))
    }

    /// `(f ∘ g)(m_1..m_{n+k}) = f(m_1..m_n) ∘ g(m_{n+1}..m_{n+k})`.
    pub fn compose(&self, other: &Cochain) -> Result<Cochain, CochainError> {
        self.check_context(other)?;
        let (f, g) = (self.clone(), other.clone());
        let n = self.dim;
        Ok(Cochain::from_fn(self.family.clone(), n + other.dim, false, move |m| {
            Ok(f.evaluate(&m[..n])?.compose(&g.evaluate(&m[n..])?))
        }))
    }
}

/// `(m_0, ..., m_{i-1} m_i, ..., m_n)`.
fn merge(m: &[FactoredInt], i: usize) -> Vec<FactoredInt> {
    let mut out = Vec::with_capacity(m.len() - 1);
    out.extend_from_slice(&m[..i - 1]);
    out.push(m[i - 1].mul(&m[i]));
    out.extend_from_slice(&m[i + 1..]);
    out
}
