//! Seeded random generators for cochains, Frobenius-compatible maps, automorphisms and deformations.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;

use crate::cochain::{make_table_cochain, Cochain, CochainError};
use crate::cohomology::{derivation_basis, endbar_lattice, DerivationSpec};
use crate::deformation::{apply_automorphism, extension_space, Deformation, DeformationError, FormalAutomorphism};
use crate::lambdaring::{AdamsFamily, Endomorphism};

fn small<R: Rng>(rng: &mut R, range: i64) -> BigInt {
    BigInt::from(rng.gen_range(-range..=range))
}

pub fn random_endomorphism<R: Rng>(rng: &mut R, d: usize, range: i64) -> Endomorphism {
    let v: Vec<BigInt> = (0..d * d).map(|_| small(rng, range)).collect();
    Endomorphism::from_vector(d, &v).expect("d^2 entries")
}

/// A table cochain on `entries` random tuples with total exponent at most `bound` per argument.
///
/// With `f1` set on a degree-1 cochain the values at primes are multiplied by the prime.
pub fn random_table_cochain<R: Rng>(
    rng: &mut R,
    family: Arc<AdamsFamily>,
    dim: usize,
    bound: u32,
    entries: usize,
    range: i64,
    f1: bool,
) -> Result<Cochain, CochainError> {
    let elems = family.universe().elements_up_to_total_exponent(bound);
    let d = family.rank();
    let mut table = BTreeMap::new();
    for _ in 0..entries {
        let args: Vec<_> = (0..dim).map(|_| elems[rng.gen_range(0..elems.len())].clone()).collect();
        let mut m = random_endomorphism(rng, d, range);
        if f1 && dim == 1 && args[0].total_exponent() == 1 {
            m = m.scale(&args[0].value());
        }
        table.insert(args, m);
    }
    make_table_cochain(family, dim, table, f1)
}

/// A random integer combination of the Frobenius-compatible lattice basis.
pub fn random_endbar<R: Rng>(rng: &mut R, family: &AdamsFamily, range: i64) -> Endomorphism {
    let basis = endbar_lattice(family);
    let d = family.rank();
    let coeffs: Vec<BigInt> = (0..basis.cols()).map(|_| small(rng, range)).collect();
    Endomorphism::from_vector(d, &basis.mul_vec(&coeffs)).expect("d^2 entries")
}

pub fn random_automorphism<R: Rng>(
    rng: &mut R,
    family: Arc<AdamsFamily>,
    order: usize,
    range: i64,
) -> Result<FormalAutomorphism, DeformationError> {
    let coeffs = (0..order).map(|_| random_endbar(rng, &family, range)).collect();
    FormalAutomorphism::new(family, coeffs)
}

fn combine(specs: &[DerivationSpec], coeffs: &[BigInt], base: &DerivationSpec) -> Result<DerivationSpec, DeformationError> {
    let mut values: BTreeMap<u64, Endomorphism> = base.values().clone();
    for (s, c) in specs.iter().zip(coeffs) {
        for (p, v) in s.values() {
            let entry = values.get_mut(p).expect("same universe");
            *entry = &*entry + &v.scale(c);
        }
    }
    Ok(DerivationSpec::new(base.universe().clone(), base.dim(), values)?)
}

/// A random derivation: an integer combination of the prime-value derivation basis.
pub fn random_derivation<R: Rng>(rng: &mut R, family: &AdamsFamily, range: i64) -> Result<DerivationSpec, DeformationError> {
    let basis = derivation_basis(family)?;
    let coeffs: Vec<BigInt> = basis.iter().map(|_| small(rng, range)).collect();
    combine(&basis, &coeffs, &DerivationSpec::zero(family.universe().clone(), family.rank()))
}

/// A verified deformation of the requested order.
///
/// Starts from a random derivation and extends with a random offset in the solution space at
/// each step; if an attempt gets stuck, it retries, and finally falls back to the trivial
/// deformation. The result is conjugated by a random formal automorphism.
pub fn random_deformation<R: Rng>(
    rng: &mut R,
    family: Arc<AdamsFamily>,
    order: usize,
    bound: u32,
    range: i64,
) -> Result<Deformation, DeformationError> {
    const ATTEMPTS: usize = 6;
    let mut found = None;
    'attempt: for _ in 0..ATTEMPTS {
        let first = random_derivation(rng, &family, range)?;
        let mut def = Deformation::trivial(family.clone(), 1)?;
        let mut higher: BTreeMap<u64, Vec<Endomorphism>> = BTreeMap::new();
        for (&p, v) in first.values() {
            higher.insert(p, vec![v.clone()]);
        }
        def = Deformation::new(def.family().clone(), 1, higher)?;
        while def.order() < order {
            let Some(space) = extension_space(&def, bound)? else {
                continue 'attempt;
            };
            let coeffs: Vec<BigInt> = space.directions.iter().map(|_| small(rng, 1)).collect();
            let top = combine(&space.directions, &coeffs, &space.particular.level(def.order() + 1)?)?;
            def = def.extend_with(&top)?;
        }
        found = Some(def);
        break;
    }
    let def = match found {
        Some(d) => d,
        None => Deformation::trivial(family.clone(), order)?,
    };
    let auto = random_automorphism(rng, family, order, range)?;
    apply_automorphism(&def, &auto)
}
