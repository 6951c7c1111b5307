use std::fmt;

use crate::lambdaring::Endomorphism;

/// `c_0 + c_1 t + ... + c_N t^N` with square integer matrix coefficients, truncated at `t^{N+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixSeries {
    coeffs: Vec<Endomorphism>,
}

impl MatrixSeries {
    /// Coefficients are `c_0..c_N`; there must be at least one and all the same size.
    pub fn new(coeffs: Vec<Endomorphism>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs a constant term");
        let d = coeffs[0].dim();
        assert!(coeffs.iter().all(|c| c.dim() == d), "coefficient sizes differ");
        MatrixSeries { coeffs }
    }

    pub fn constant(c: Endomorphism, order: usize) -> Self {
        let d = c.dim();
        let mut coeffs = vec![c];
        coeffs.extend((0..order).map(|_| Endomorphism::zero(d)));
        MatrixSeries { coeffs }
    }

    pub fn identity(d: usize, order: usize) -> Self {
        Self::constant(Endomorphism::identity(d), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.coeffs[0].dim()
    }

    pub fn coeff(&self, i: usize) -> &Endomorphism {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Endomorphism] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Endomorphism> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot truncate upwards");
        MatrixSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &MatrixSeries) -> MatrixSeries {
        let n = self.order().min(other.order());
        let d = self.dim();
        let coeffs = (0..=n)
            .map(|k| {
                (0..=k).fold(Endomorphism::zero(d), |acc, j| {
                    &acc + &self.coeffs[j].compose(&other.coeffs[k - j])
                })
            })
            .collect();
        MatrixSeries { coeffs }
    }

    /// Inverse of a series with identity constant term, by back-substitution.
    pub fn inverse(&self) -> Option<MatrixSeries> {
        let d = self.dim();
        if self.coeffs[0] != Endomorphism::identity(d) {
            return None;
        }
        let mut inv: Vec<Endomorphism> = vec![Endomorphism::identity(d)];
        for k in 1..=self.order() {
            let s = (1..=k).fold(Endomorphism::zero(d), |acc, j| {
                &acc + &self.coeffs[j].compose(&inv[k - j])
            });
            inv.push(-&s);
        }
        Some(MatrixSeries { coeffs: inv })
    }

    pub fn commutes_with(&self, other: &MatrixSeries) -> bool {
        self.mul(other) == other.mul(self)
    }
}

impl fmt::Display for MatrixSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(i, c)| *i == 0 || !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c} t"),
                _ => format!("{c} t^{i}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(xs: &[i64]) -> MatrixSeries {
        MatrixSeries::new(xs.iter().map(|&x| Endomorphism::from_rows(&[[x]])).collect())
    }

    #[test]
    fn scalar_product() {
        // (1 + 2t)^2 (1 + 3t) = 1 + 7t + 16t^2 + 12t^3
        let a = scalar(&[1, 2, 0, 0]);
        let b = scalar(&[1, 3, 0, 0]);
        assert_eq!(a.mul(&a).mul(&b), scalar(&[1, 7, 16, 12]));
    }

    #[test]
    fn inverse_round_trip() {
        let a = MatrixSeries::new(vec![
            Endomorphism::identity(2),
            Endomorphism::from_rows(&[[1, 2], [0, 1]]),
            Endomorphism::from_rows(&[[0, 0], [3, 0]]),
        ]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), MatrixSeries::identity(2, 2));
        assert_eq!(inv.mul(&a), MatrixSeries::identity(2, 2));
        assert!(scalar(&[2, 1]).inverse().is_none());
    }
}
