//! Endomorphisms as vectors in `Z^{d^2}` (row-major) and the linear operators acting on them.

use num_bigint::BigInt;

use crate::exactalg::{congruence_lattice, IntMatrix};
use crate::lambdaring::{frobenius_map, AdamsFamily, Endomorphism};

/// Matrix of `X -> A X` on row-major vectors.
pub fn left_mul_operator(a: &Endomorphism) -> IntMatrix {
    let d = a.dim();
    let mut out = IntMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                out.set(i * d + j, k * d + j, a.matrix().get(i, k).clone());
            }
        }
    }
    out
}

/// Matrix of `X -> X B` on row-major vectors.
pub fn right_mul_operator(b: &Endomorphism) -> IntMatrix {
    let d = b.dim();
    let mut out = IntMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                out.set(i * d + j, i * d + k, b.matrix().get(k, j).clone());
            }
        }
    }
    out
}

/// Matrix of `X -> A X - X A`.
pub fn commutator_operator(a: &Endomorphism) -> IntMatrix {
    &left_mul_operator(a) - &right_mul_operator(a)
}

pub fn endo_from_column(d: usize, m: &IntMatrix, col: usize) -> Endomorphism {
    Endomorphism::from_vector(d, &m.column(col)).expect("column has d^2 entries")
}

pub fn endo_from_slice(d: usize, v: &[BigInt]) -> Endomorphism {
    Endomorphism::from_vector(d, v).expect("slice has d^2 entries")
}

/// Basis (columns, as row-major vectors) of the endomorphisms commuting with
/// Frobenius modulo every prime of the family's universe.
pub fn endbar_lattice(family: &AdamsFamily) -> IntMatrix {
    let d = family.rank();
    let congruences: Vec<(IntMatrix, BigInt)> = family
        .universe()
        .primes()
        .iter()
        .map(|&p| {
            let frob = frobenius_map(family.ring(), p);
            (commutator_operator(&frob), BigInt::from(p))
        })
        .collect();
    congruence_lattice(d * d, None, &congruences)
}
