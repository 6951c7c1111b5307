use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal in divisibility order.
///
/// `u_inv` is the inverse of `U`, kept so that quotient generators can be
/// pulled back to the original coordinates without a second inversion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n)
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct SmithState {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl SmithState {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }

    // row[dst] += c * row[src]; the inverse acts on columns of u_inv.
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
        self.u_inv.add_col_multiple(src, dst, &-c);
    }

    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Position of the nonzero entry of least absolute value in the trailing block.
    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(_, b)| ax < *b) {
                    best = Some(((i, j), ax));
                }
            }
        }
        best.map(|(pos, _)| pos)
    }

    /// Smallest nonzero entry in row t / column t beyond the pivot itself.
    fn smallest_in_cross(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        let mut consider = |pos: (usize, usize), x: &BigInt| {
            if x.is_zero() {
                return;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, b)| ax < *b) {
                best = Some((pos, ax));
            }
        };
        for i in t..self.a.rows() {
            consider((i, t), self.a.get(i, t));
        }
        for j in t + 1..self.a.cols() {
            consider((t, j), self.a.get(t, j));
        }
        best.map(|(pos, _)| pos)
    }

    fn run(&mut self) {
        let (m, n) = self.a.shape();
        for t in 0..m.min(n) {
            let Some((i, j)) = self.smallest_in_block(t) else {
                break;
            };
            self.swap_rows(t, i);
            self.swap_cols(t, j);
            loop {
                let pivot = self.a.get(t, t).clone();
                let mut clean = true;
                for i in t + 1..m {
                    let x = self.a.get(i, t);
                    if x.is_zero() {
                        continue;
                    }
                    let q = x.div_floor(&pivot);
                    self.add_row(i, t, &-q);
                    if !self.a.get(i, t).is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..n {
                    let x = self.a.get(t, j);
                    if x.is_zero() {
                        continue;
                    }
                    let q = x.div_floor(&pivot);
                    self.add_col(j, t, &-q);
                    if !self.a.get(t, j).is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    let (i, j) = self
                        .smallest_in_cross(t)
                        .expect("pivot row or column has a nonzero remainder");
                    self.swap_rows(t, i);
                    self.swap_cols(t, j);
                    continue;
                }
                let offending = (t + 1..m).find(|&i| {
                    (t + 1..n).any(|j| !self.a.get(i, j).is_multiple_of(&pivot))
                });
                match offending {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a.get(t, t).is_negative() {
                self.negate_row(t);
            }
        }
    }
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = m.shape();
    let mut state = SmithState {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
    };
    state.run();
    SmithDecomposition {
        u: state.u,
        u_inv: state.u_inv,
        d: state.a,
        v: state.v,
    }
}

/// Row-style Hermite normal form: nonzero rows only, positive pivots, entries
/// above each pivot reduced into `[0, pivot)`. The row space is unchanged.
pub fn hermite_rows(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let best = (r..rows)
                .filter(|&i| !a.get(i, c).is_zero())
                .min_by_key(|&i| a.get(i, c).abs());
            let Some(best) = best else { break };
            a.swap_rows(r, best);
            let pivot = a.get(r, c).clone();
            let mut done = true;
            for i in r + 1..rows {
                let x = a.get(i, c);
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&pivot);
                a.add_row_multiple(i, r, &-q);
                if !a.get(i, c).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a.get(r, c).is_zero() {
            continue;
        }
        if a.get(r, c).is_negative() {
            a.negate_row(r);
        }
        let pivot = a.get(r, c).clone();
        for i in 0..r {
            let q = a.get(i, c).div_floor(&pivot);
            a.add_row_multiple(i, r, &-q);
        }
        r += 1;
    }
    a.select_rows(0..r)
}
