use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::adams::AdamsFamily;
use super::primes::PrimeUniverse;
use super::ring::{Endomorphism, RingSpec};
use super::LambdaRingError;
use crate::exactalg::IntMatrix;

/// Rings compiled into the library.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    /// The integers with every Adams operation the identity.
    Z,
    /// Representation ring of the cyclic group of order 2, `Z[x]/(x^2 - 1)`.
    RC2,
    /// Representation ring of the cyclic group of order 3, `Z[x]/(x^3 - 1)`.
    RC3,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Z, Preset::RC2, Preset::RC3];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Z => "Z",
            Preset::RC2 => "RC2",
            Preset::RC3 => "RC3",
        }
    }

    fn order(self) -> usize {
        match self {
            Preset::Z => 1,
            Preset::RC2 => 2,
            Preset::RC3 => 3,
        }
    }

    pub fn ring(self) -> RingSpec {
        cyclic_group_ring(self.order())
    }

    /// Adams family `x -> x^p` for every prime of the universe.
    pub fn family(self, universe: PrimeUniverse) -> Result<AdamsFamily, LambdaRingError> {
        cyclic_adams_family(self.order(), universe)
    }

    pub fn default_universe() -> PrimeUniverse {
        PrimeUniverse::new(vec![2, 3, 5]).expect("2, 3, 5 are increasing primes")
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = LambdaRingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Z" | "z" => Ok(Preset::Z),
            "RC2" | "rc2" => Ok(Preset::RC2),
            "RC3" | "rc3" => Ok(Preset::RC3),
            other => Err(LambdaRingError::UnknownPreset(other.to_string())),
        }
    }
}

/// `Z[C_n] = Z[x]/(x^n - 1)` on the basis `1, x, ..., x^{n-1}`.
pub fn cyclic_group_ring(n: usize) -> RingSpec {
    let mut structure = vec![BigInt::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            structure[(i * n + j) * n + (i + j) % n] = BigInt::one();
        }
    }
    let mut unit = vec![BigInt::zero(); n];
    unit[0] = BigInt::one();
    RingSpec::new(n, structure, unit).expect("consistent shape")
}

/// The permutation `x^i -> x^{ip mod n}`.
pub fn cyclic_power_map(n: usize, p: u64) -> Endomorphism {
    let mut m = IntMatrix::zeros(n, n);
    let pm = (p % n as u64) as usize;
    for i in 0..n {
        m.set((i * pm) % n, i, BigInt::one());
    }
    Endomorphism::new(m).expect("square")
}

pub fn cyclic_adams_family(n: usize, universe: PrimeUniverse) -> Result<AdamsFamily, LambdaRingError> {
    let generators: BTreeMap<u64, Endomorphism> = universe
        .primes()
        .iter()
        .map(|&p| (p, cyclic_power_map(n, p)))
        .collect();
    AdamsFamily::new(cyclic_group_ring(n), universe, generators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambdaring::{verify_adams, verify_ring};

    #[test]
    fn presets_verify() {
        let u = PrimeUniverse::new(vec![2, 3, 5, 7]).unwrap();
        for preset in Preset::ALL {
            assert!(verify_ring(&preset.ring()).is_empty(), "{preset}");
            let fam = preset.family(u.clone()).unwrap();
            assert!(verify_adams(&fam).is_empty(), "{preset}");
        }
    }

    #[test]
    fn rc2_generators() {
        let u = PrimeUniverse::new(vec![2, 3]).unwrap();
        let fam = Preset::RC2.family(u).unwrap();
        assert_eq!(fam.generator(2).unwrap(), &Endomorphism::from_rows(&[[1, 1], [0, 0]]));
        assert_eq!(fam.generator(3).unwrap(), &Endomorphism::identity(2));
    }

    #[test]
    fn rc3_generator_at_two_swaps_x_and_x2() {
        let u = PrimeUniverse::new(vec![2]).unwrap();
        let fam = Preset::RC3.family(u).unwrap();
        assert_eq!(
            fam.generator(2).unwrap(),
            &Endomorphism::from_rows(&[[1, 0, 0], [0, 0, 1], [0, 1, 0]])
        );
    }

    #[test]
    fn parse_names() {
        assert_eq!("RC2".parse::<Preset>().unwrap(), Preset::RC2);
        assert!("RC5".parse::<Preset>().is_err());
    }
}
