//! Integer linear systems and sublattices of `Z^n`.
//!
//! Lattices are passed around as matrices whose *columns* are basis vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::snf::{hermite_rows, smith_normal_form};
use super::IntMatrix;

/// One integer solution of `A x = b` together with a basis of `ker A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub particular: Vec<BigInt>,
    /// Columns span the integer kernel of `A`.
    pub kernel: IntMatrix,
}

/// Solves `A x = b` over the integers.
///
/// Returns `None` when no integer solution exists. The particular solution
/// is deterministic: free coordinates in the Smith basis are set to zero.
pub fn solve_linear(a: &IntMatrix, b: &[BigInt]) -> Option<LinearSolution> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let n = a.cols();
    let augmented = a.hstack(&IntMatrix::column_vector(b.to_vec()));
    let reduced = hermite_rows(&augmented);
    // A pivot in the last column means 0 = nonzero.
    let mut k = 0;
    for i in 0..reduced.rows() {
        if reduced.row(i)[..n].iter().all(Zero::is_zero) {
            return None;
        }
        k = i + 1;
    }
    let a_red = reduced.select_rows(0..k).select_columns(0..n);
    let b_red = reduced.select_rows(0..k).column(n);
    let snf = smith_normal_form(&a_red);
    let c = snf.u.mul_vec(&b_red);
    let factors = snf.invariant_factors();
    let mut y = vec![BigInt::zero(); n];
    for (i, ci) in c.iter().enumerate() {
        match factors.get(i) {
            Some(d) => {
                if !ci.is_multiple_of(d) {
                    return None;
                }
                y[i] = ci / d;
            }
            None => {
                if !ci.is_zero() {
                    return None;
                }
            }
        }
    }
    let particular = snf.v.mul_vec(&y);
    Some(LinearSolution {
        particular,
        kernel: kernel_basis(a),
    })
}

/// Basis (as columns) of the integer kernel `{x : A x = 0}`, in Hermite form.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let n = a.cols();
    let reduced = hermite_rows(a);
    let snf = smith_normal_form(&reduced);
    let rank = snf.rank();
    let raw = snf.v.select_columns(rank..n);
    lattice_basis(&raw, n)
}

/// Canonical basis (columns) of the lattice spanned by the columns of `generators`.
///
/// `dim` is the ambient dimension, needed when there are no generators.
pub fn lattice_basis(generators: &IntMatrix, dim: usize) -> IntMatrix {
    if generators.cols() == 0 {
        return IntMatrix::zeros(dim, 0);
    }
    hermite_rows(&generators.transpose()).transpose()
}

/// Basis of `{x in Z^n : E x = 0 and C_j x = 0 mod m_j for every j}`.
///
/// Each congruence is a matrix `C_j` (rows are linear forms) with modulus `m_j`.
pub fn congruence_lattice(
    n: usize,
    exact: Option<&IntMatrix>,
    congruences: &[(IntMatrix, BigInt)],
) -> IntMatrix {
    let slack: usize = congruences.iter().map(|(c, _)| c.rows()).sum();
    let total = n + slack;
    let mut blocks: Vec<IntMatrix> = Vec::new();
    if let Some(e) = exact {
        assert_eq!(e.cols(), n, "exact constraint width mismatch");
        blocks.push(e.hstack(&IntMatrix::zeros(e.rows(), slack)));
    }
    let mut offset = 0;
    for (c, m) in congruences {
        assert_eq!(c.cols(), n, "congruence width mismatch");
        let mut block = IntMatrix::zeros(c.rows(), total);
        for i in 0..c.rows() {
            for j in 0..n {
                block.set(i, j, c.get(i, j).clone());
            }
            block.set(i, n + offset + i, -m);
        }
        offset += c.rows();
        blocks.push(block);
    }
    let system = blocks
        .into_iter()
        .reduce(|acc, b| acc.vstack(&b))
        .unwrap_or_else(|| IntMatrix::zeros(0, total));
    let kernel = kernel_basis(&system);
    let projected = kernel.select_rows(0..n);
    lattice_basis(&projected, n)
}
