#![allow(non_snake_case)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::exactalg::{
    congruence_lattice, kernel_basis, presentation_with_generators, solve_linear, AbelianGroup, IntMatrix,
};
use crate::lambdaring::{frobenius_map, AdamsFamily, Endomorphism, PrimeUniverse};

use super::derivation::DerivationSpec;
use super::linear::{commutator_operator, endbar_lattice, endo_from_column, endo_from_slice, left_mul_operator, right_mul_operator};
use super::CohomologyError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H0Result {
    pub universe: PrimeUniverse,
    pub group: AbelianGroup,
    pub basis: Vec<Endomorphism>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H1Result {
    pub universe: PrimeUniverse,
    pub group: AbelianGroup,
    /// Rank of the lattice of derivations determined by prime values.
    pub cocycle_rank: usize,
    /// Rank of the sublattice of inner derivations.
    pub coboundary_rank: usize,
    /// One derivation per torsion summand, in the order of `group.torsion`.
    pub torsion_representatives: Vec<DerivationSpec>,
    pub free_representatives: Vec<DerivationSpec>,
}

fn stack(blocks: Vec<IntMatrix>, cols: usize) -> IntMatrix {
    blocks
        .into_iter()
        .reduce(|a, b| a.vstack(&b))
        .unwrap_or_else(|| IntMatrix::zeros(0, cols))
}

/// Endomorphisms commuting with every Adams generator and with Frobenius mod every prime.
pub fn compute_H0(family: &AdamsFamily) -> H0Result {
    let d = family.rank();
    let n = d * d;
    let exact = stack(
        family.generators().values().map(commutator_operator).collect(),
        n,
    );
    let congruences: Vec<(IntMatrix, BigInt)> = family
        .universe()
        .primes()
        .iter()
        .map(|&p| (commutator_operator(&frobenius_map(family.ring(), p)), BigInt::from(p)))
        .collect();
    let lattice = congruence_lattice(n, Some(&exact), &congruences);
    let basis = (0..lattice.cols()).map(|c| endo_from_column(d, &lattice, c)).collect();
    H0Result {
        universe: family.universe().clone(),
        group: AbelianGroup::free(lattice.cols()),
        basis,
    }
}

/// Lattice of prime-indexed derivations in `(X_p)_p` coordinates, `f(p) = p X_p`,
/// as columns of a `k d^2`-row matrix.
fn cocycle_lattice(family: &AdamsFamily) -> Result<IntMatrix, CohomologyError> {
    let d = family.rank();
    let n = d * d;
    let primes = family.universe().primes();
    let k = primes.len();
    let mut blocks = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let (p, q) = (primes[a], primes[b]);
            let (ap, aq) = (family.generator(p)?, family.generator(q)?);
            // A_p f(q) - f(q) A_p - (A_q f(p) - f(p) A_q) = 0
            let on_q = commutator_operator(ap).scale(&BigInt::from(q));
            let on_p = commutator_operator(aq).scale(&BigInt::from(-(p as i64)));
            let mut row = IntMatrix::zeros(n, k * n);
            for i in 0..n {
                for j in 0..n {
                    row.set(i, b * n + j, on_q.get(i, j).clone());
                    row.set(i, a * n + j, on_p.get(i, j).clone());
                }
            }
            blocks.push(row);
        }
    }
    Ok(kernel_basis(&stack(blocks, k * n)))
}

/// `([A_p, g] / p)_p` for each Endbar basis element `g`, as columns.
fn inner_images(family: &AdamsFamily, endbar: &IntMatrix) -> Result<IntMatrix, CohomologyError> {
    let d = family.rank();
    let n = d * d;
    let primes = family.universe().primes();
    let mut out = IntMatrix::zeros(primes.len() * n, endbar.cols());
    for (a, &p) in primes.iter().enumerate() {
        let op = commutator_operator(family.generator(p)?);
        let image = &op * endbar;
        let pb = BigInt::from(p);
        let image = image.exact_div(&pb).ok_or_else(|| {
            CohomologyError::Internal(format!(
                "inner derivation of a Frobenius-compatible map is not divisible by {p}"
            ))
        })?;
        for i in 0..n {
            for c in 0..endbar.cols() {
                out.set(a * n + i, c, image.get(i, c).clone());
            }
        }
    }
    Ok(out)
}

fn spec_from_coordinates(family: &AdamsFamily, x: &[BigInt]) -> Result<DerivationSpec, CohomologyError> {
    let d = family.rank();
    let n = d * d;
    let quotients: BTreeMap<u64, Endomorphism> = family
        .universe()
        .primes()
        .iter()
        .enumerate()
        .map(|(a, &p)| (p, endo_from_slice(d, &x[a * n..(a + 1) * n])))
        .collect();
    DerivationSpec::from_quotients(family.universe().clone(), quotients)
}

/// A basis of the derivations determined by values at the primes of the universe.
pub fn derivation_basis(family: &AdamsFamily) -> Result<Vec<DerivationSpec>, CohomologyError> {
    let cocycles = cocycle_lattice(family)?;
    (0..cocycles.cols())
        .map(|c| spec_from_coordinates(family, &cocycles.column(c)))
        .collect()
}

/// Prime-indexed derivations modulo inner derivations of Frobenius-compatible maps.
pub fn compute_H1(family: &AdamsFamily) -> Result<H1Result, CohomologyError> {
    let cocycles = cocycle_lattice(family)?;
    let images = inner_images(family, &endbar_lattice(family))?;
    let r = cocycles.cols();
    // coordinates of each inner image in the cocycle basis
    let mut relations = IntMatrix::zeros(r, images.cols());
    for c in 0..images.cols() {
        let v = images.column(c);
        let sol = solve_linear(&cocycles, &v).ok_or_else(|| {
            CohomologyError::Internal("inner derivation outside the cocycle lattice".into())
        })?;
        for (i, x) in sol.particular.iter().enumerate() {
            relations.set(i, c, x.clone());
        }
    }
    let pres = presentation_with_generators(r, &relations)
        .map_err(|e| CohomologyError::Internal(e.to_string()))?;
    let to_spec = |coords: &Vec<BigInt>| spec_from_coordinates(family, &cocycles.mul_vec(coords));
    let torsion_representatives = pres.torsion_generators.iter().map(to_spec).collect::<Result<_, _>>()?;
    let free_representatives = pres.free_generators.iter().map(to_spec).collect::<Result<_, _>>()?;
    let coboundary_rank = crate::exactalg::lattice_basis(&images, images.rows()).cols();
    Ok(H1Result {
        universe: family.universe().clone(),
        group: pres.group,
        cocycle_rank: r,
        coboundary_rank,
        torsion_representatives,
        free_representatives,
    })
}

/// Some Frobenius-compatible `g` with `A_p g - g A_p = target(p)` for every prime, if one exists.
pub fn solve_coboundary_1(family: &AdamsFamily, target: &DerivationSpec) -> Result<Option<Endomorphism>, CohomologyError> {
    let d = family.rank();
    if target.dim() != d {
        return Err(CohomologyError::Shape);
    }
    let endbar = endbar_lattice(family);
    let mut blocks = Vec::new();
    let mut rhs = Vec::new();
    for &p in family.universe().primes() {
        let a = family.generator(p)?;
        let op = &left_mul_operator(a) - &right_mul_operator(a);
        blocks.push(&op * &endbar);
        let value = target
            .values()
            .get(&p)
            .cloned()
            .unwrap_or_else(|| Endomorphism::zero(d));
        rhs.extend(value.to_vector());
    }
    let system = stack(blocks, endbar.cols());
    Ok(solve_linear(&system, &rhs).map(|sol| endo_from_slice(d, &endbar.mul_vec(&sol.particular))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniverseRow {
    pub universe: PrimeUniverse,
    pub h0: AbelianGroup,
    pub h1: AbelianGroup,
}

/// Recomputes `H^0` and `H^1` over each universe, all of which must be covered by `family`.
pub fn compare_universes(family: &AdamsFamily, universes: &[PrimeUniverse]) -> Result<Vec<UniverseRow>, CohomologyError> {
    universes
        .iter()
        .map(|u| {
            let f = family.restrict(u.clone())?;
            Ok(UniverseRow {
                universe: u.clone(),
                h0: compute_H0(&f).group,
                h1: compute_H1(&f)?.group,
            })
        })
        .collect()
}
