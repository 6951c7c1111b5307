use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::LambdaRingError;
use crate::exactalg::IntMatrix;

/// Coordinate vector of a ring element in the fixed basis `e_0, ..., e_{d-1}`.
pub type Element = Vec<BigInt>;

/// Finite-rank free Z-algebra given by structure constants `e_i e_j = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingSpec {
    rank: usize,
    structure: Vec<BigInt>,
    unit: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingViolation {
    NotCommutative { i: usize, j: usize },
    NotAssociative { i: usize, j: usize, k: usize },
    Unit { basis: usize },
}

impl fmt::Display for RingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingViolation::NotCommutative { i, j } => write!(f, "e{i}*e{j} != e{j}*e{i}"),
            RingViolation::NotAssociative { i, j, k } => {
                write!(f, "(e{i}*e{j})*e{k} != e{i}*(e{j}*e{k})")
            }
            RingViolation::Unit { basis } => write!(f, "unit does not fix e{basis}"),
        }
    }
}

impl RingSpec {
    /// `structure` is flattened as `c[i][j][k]` at index `(i*d + j)*d + k`.
    pub fn new(rank: usize, structure: Vec<BigInt>, unit: Element) -> Result<Self, LambdaRingError> {
        if rank == 0 {
            return Err(LambdaRingError::Shape("rank must be positive".into()));
        }
        if structure.len() != rank * rank * rank {
            return Err(LambdaRingError::Shape(format!(
                "expected {} structure constants, found {}",
                rank * rank * rank,
                structure.len()
            )));
        }
        if unit.len() != rank {
            return Err(LambdaRingError::Shape(format!(
                "unit has {} coordinates, rank is {rank}",
                unit.len()
            )));
        }
        Ok(RingSpec {
            rank,
            structure,
            unit,
        })
    }

    pub fn from_i64(rank: usize, structure: &[i64], unit: &[i64]) -> Result<Self, LambdaRingError> {
        Self::new(
            rank,
            structure.iter().map(|&x| BigInt::from(x)).collect(),
            unit.iter().map(|&x| BigInt::from(x)).collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn structure_constants(&self) -> &[BigInt] {
        &self.structure
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &BigInt {
        &self.structure[(i * self.rank + j) * self.rank + k]
    }

    pub fn one(&self) -> Element {
        self.unit.clone()
    }

    pub fn zero(&self) -> Element {
        vec![BigInt::zero(); self.rank]
    }

    pub fn basis(&self, i: usize) -> Element {
        let mut e = self.zero();
        e[i] = BigInt::one();
        e
    }

    /// Image of an integer under the unit map `Z -> R`.
    pub fn from_integer(&self, n: &BigInt) -> Element {
        self.unit.iter().map(|u| u * n).collect()
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Element {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Element {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(&self, k: &BigInt, a: &[BigInt]) -> Element {
        a.iter().map(|x| x * k).collect()
    }

    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Element {
        let d = self.rank;
        let mut out = self.zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let w = ai * bj;
                for (k, slot) in out.iter_mut().enumerate().take(d) {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *slot += c * &w;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[BigInt], mut e: u64) -> Element {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `a^e` with every intermediate reduced into `[0, m)`.
    pub fn pow_mod(&self, a: &[BigInt], mut e: u64, m: &BigInt) -> Element {
        let reduce = |v: Element| -> Element { v.iter().map(|x| x.mod_floor(m)).collect() };
        let mut base = reduce(a.to_vec());
        let mut acc = reduce(self.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = reduce(self.mul(&acc, &base));
            }
            e >>= 1;
            if e > 0 {
                base = reduce(self.mul(&base, &base));
            }
        }
        acc
    }

    pub fn violations(&self) -> Vec<RingViolation> {
        let d = self.rank;
        let mut out = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                if (0..d).any(|k| self.constant(i, j, k) != self.constant(j, i, k)) {
                    out.push(RingViolation::NotCommutative { i, j });
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                let ij = self.mul(&self.basis(i), &self.basis(j));
                for k in 0..d {
                    let left = self.mul(&ij, &self.basis(k));
                    let jk = self.mul(&self.basis(j), &self.basis(k));
                    let right = self.mul(&self.basis(i), &jk);
                    if left != right {
                        out.push(RingViolation::NotAssociative { i, j, k });
                    }
                }
            }
        }
        for i in 0..d {
            let e = self.basis(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                out.push(RingViolation::Unit { basis: i });
            }
        }
        out
    }
}

/// Lists every failure of commutativity, associativity, or the unit law on basis elements.
pub fn verify_ring(spec: &RingSpec) -> Vec<RingViolation> {
    spec.violations()
}

/// Z-linear endomorphism of R; column `i` holds the coordinates of the image of `e_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Endomorphism(IntMatrix);

impl Endomorphism {
    pub fn new(matrix: IntMatrix) -> Result<Self, LambdaRingError> {
        if !matrix.is_square() {
            return Err(LambdaRingError::Shape(format!(
                "endomorphism matrix is {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Endomorphism(matrix))
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Endomorphism::new(IntMatrix::from_rows(rows)).expect("square rows")
    }

    pub fn identity(d: usize) -> Self {
        Endomorphism(IntMatrix::identity(d))
    }

    pub fn zero(d: usize) -> Self {
        Endomorphism(IntMatrix::zeros(d, d))
    }

    /// Multiplication by `k`.
    pub fn scalar(d: usize, k: &BigInt) -> Self {
        Endomorphism(IntMatrix::identity(d).scale(k))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.0
    }

    pub fn apply(&self, v: &[BigInt]) -> Element {
        self.0.mul_vec(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Endomorphism) -> Endomorphism {
        Endomorphism(&self.0 * &other.0)
    }

    pub fn pow(&self, e: u64) -> Endomorphism {
        Endomorphism(self.0.pow(e))
    }

    pub fn scale(&self, k: &BigInt) -> Endomorphism {
        Endomorphism(self.0.scale(k))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `self(R) ⊆ kR`, i.e. every entry is divisible by `k`.
    pub fn image_divisible_by(&self, k: &BigInt) -> bool {
        self.0.divisible_by(k)
    }

    pub fn exact_div(&self, k: &BigInt) -> Option<Endomorphism> {
        self.0.exact_div(k).map(Endomorphism)
    }

    pub fn reduce_mod(&self, m: &BigInt) -> Endomorphism {
        Endomorphism(self.0.reduce_mod(m))
    }

    /// `self∘other − other∘self`.
    pub fn commutator(&self, other: &Endomorphism) -> Endomorphism {
        &self.compose(other) - &other.compose(self)
    }

    /// Row-major entries, the layout used in ring files and unknown vectors.
    pub fn to_vector(&self) -> Vec<BigInt> {
        self.0.entries().to_vec()
    }

    pub fn from_vector(d: usize, v: &[BigInt]) -> Result<Self, LambdaRingError> {
        let m = IntMatrix::new(d, d, v.to_vec())
            .map_err(|e| LambdaRingError::Shape(e.to_string()))?;
        Ok(Endomorphism(m))
    }
}

impl<'a> Add<&'a Endomorphism> for &'a Endomorphism {
    type Output = Endomorphism;
    fn add(self, rhs: &'a Endomorphism) -> Endomorphism {
        Endomorphism(&self.0 + &rhs.0)
    }
}

impl<'a> Sub<&'a Endomorphism> for &'a Endomorphism {
    type Output = Endomorphism;
    fn sub(self, rhs: &'a Endomorphism) -> Endomorphism {
        Endomorphism(&self.0 - &rhs.0)
    }
}

impl Neg for &Endomorphism {
    type Output = Endomorphism;
    fn neg(self) -> Endomorphism {
        Endomorphism(-&self.0)
    }
}

impl fmt::Display for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
