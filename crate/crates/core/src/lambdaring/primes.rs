use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::LambdaRingError;

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// The finite set of primes generating the computational submonoid of the positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct PrimeUniverse {
    primes: Vec<u64>,
}

impl PrimeUniverse {
    pub fn new(primes: Vec<u64>) -> Result<Self, LambdaRingError> {
        if primes.is_empty() {
            return Err(LambdaRingError::EmptyUniverse);
        }
        if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(LambdaRingError::NotPrime(p));
        }
        if primes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(LambdaRingError::PrimesNotIncreasing);
        }
        Ok(PrimeUniverse { primes })
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    pub fn is_subset_of(&self, other: &PrimeUniverse) -> bool {
        self.primes.iter().all(|&p| other.contains(p))
    }

    /// Every element `n` of the submonoid with total exponent at most `bound`, in ascending order of `n`.
    pub fn elements_up_to_total_exponent(&self, bound: u32) -> Vec<FactoredInt> {
        let mut out = vec![FactoredInt::one()];
        let mut frontier = vec![FactoredInt::one()];
        for _ in 0..bound {
            let mut next = Vec::new();
            for n in &frontier {
                // Only extend by primes >= the largest present, so each multiset appears once.
                let start = n.largest_prime().unwrap_or(0);
                for &p in self.primes.iter().filter(|&&p| p >= start) {
                    next.push(n.times_prime(p));
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out.sort_by_key(FactoredInt::value);
        out
    }
}

impl TryFrom<Vec<u64>> for PrimeUniverse {
    type Error = LambdaRingError;

    fn try_from(v: Vec<u64>) -> Result<Self, Self::Error> {
        PrimeUniverse::new(v)
    }
}

impl From<PrimeUniverse> for Vec<u64> {
    fn from(u: PrimeUniverse) -> Self {
        u.primes
    }
}

impl fmt::Display for PrimeUniverse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.primes.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", body.join(","))
    }
}

/// A positive integer as its prime factorization. The empty map is 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactoredInt {
    exponents: BTreeMap<u64, u32>,
}

impl FactoredInt {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn prime(p: u64) -> Self {
        Self::prime_power(p, 1)
    }

    pub fn prime_power(p: u64, e: u32) -> Self {
        let mut exponents = BTreeMap::new();
        if e > 0 {
            exponents.insert(p, e);
        }
        FactoredInt { exponents }
    }

    /// Builds from `(prime, exponent)` pairs; zero exponents are dropped.
    pub fn from_exponents<I: IntoIterator<Item = (u64, u32)>>(pairs: I) -> Self {
        let mut exponents = BTreeMap::new();
        for (p, e) in pairs {
            if e > 0 {
                *exponents.entry(p).or_insert(0) += e;
            }
        }
        FactoredInt { exponents }
    }

    /// Factors `n` over the universe; fails if a prime outside it divides `n`.
    pub fn factor(mut n: u64, universe: &PrimeUniverse) -> Result<Self, LambdaRingError> {
        if n == 0 {
            return Err(LambdaRingError::NotPositive);
        }
        let mut exponents = BTreeMap::new();
        for &p in universe.primes() {
            while n % p == 0 {
                *exponents.entry(p).or_insert(0) += 1;
                n /= p;
            }
        }
        if n != 1 {
            let mut q = 2;
            while n % q != 0 {
                q += 1;
            }
            return Err(LambdaRingError::UnknownPrime(q));
        }
        Ok(FactoredInt { exponents })
    }

    pub fn exponents(&self) -> &BTreeMap<u64, u32> {
        &self.exponents
    }

    pub fn exponent(&self, p: u64) -> u32 {
        self.exponents.get(&p).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn total_exponent(&self) -> u32 {
        self.exponents.values().sum()
    }

    pub fn smallest_prime(&self) -> Option<u64> {
        self.exponents.keys().next().copied()
    }

    pub fn largest_prime(&self) -> Option<u64> {
        self.exponents.keys().next_back().copied()
    }

    pub fn times_prime(&self, p: u64) -> Self {
        let mut out = self.clone();
        *out.exponents.entry(p).or_insert(0) += 1;
        out
    }

    /// `self / p`, if `p` divides `self`.
    pub fn div_prime(&self, p: u64) -> Option<Self> {
        let mut out = self.clone();
        let e = out.exponents.get_mut(&p)?;
        *e -= 1;
        if *e == 0 {
            out.exponents.remove(&p);
        }
        Some(out)
    }

    pub fn mul(&self, other: &FactoredInt) -> Self {
        let mut out = self.clone();
        for (&p, &e) in &other.exponents {
            *out.exponents.entry(p).or_insert(0) += e;
        }
        out
    }

    pub fn value(&self) -> BigInt {
        self.exponents
            .iter()
            .fold(BigInt::one(), |acc, (&p, &e)| acc * num_traits::pow(BigInt::from(p), e as usize))
    }

    pub fn supported_on(&self, universe: &PrimeUniverse) -> bool {
        self.exponents.keys().all(|&p| universe.contains(p))
    }

    /// Primes with multiplicity, smallest first.
    pub fn prime_sequence(&self) -> Vec<u64> {
        self.exponents
            .iter()
            .flat_map(|(&p, &e)| std::iter::repeat_n(p, e as usize))
            .collect()
    }
}

impl fmt::Display for FactoredInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}
