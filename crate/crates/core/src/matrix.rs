//! A minimal row-major 2×2 matrix for metric tensors, Hessians and Jacobians.

use std::ops::{Add, Mul, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2(pub [[f64; 2]; 2]);

impl Matrix2 {
    pub const IDENTITY: Matrix2 = Matrix2([[1.0, 0.0], [0.0, 1.0]]);

    pub fn new(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Matrix2([[a11, a12], [a21, a22]])
    }

    pub fn diag(d1: f64, d2: f64) -> Self {
        Matrix2([[d1, 0.0], [0.0, d2]])
    }

    pub fn scaled_identity(c: f64) -> Self {
        Self::diag(c, c)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[i][j]
    }

    pub fn transpose(&self) -> Self {
        let m = self.0;
        Matrix2([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }

    pub fn determinant(&self) -> f64 {
        let m = self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn scale(&self, c: f64) -> Self {
        let m = self.0;
        Matrix2([[c * m[0][0], c * m[0][1]], [c * m[1][0], c * m[1][1]]])
    }

    pub fn apply(&self, v: [f64; 2]) -> [f64; 2] {
        let m = self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }

    /// `Jᵀ · self · J`, the pullback of a bilinear form through a Jacobian.
    pub fn congruence(&self, jac: &Matrix2) -> Self {
        jac.transpose() * *self * *jac
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .fold(0.0f64, |acc, &x| acc.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }

    pub fn is_symmetric(&self) -> bool {
        self.0[0][1] == self.0[1][0]
    }

    /// Positive-definite test via Sylvester's criterion.
    pub fn is_positive_definite(&self) -> bool {
        self.0[0][0] > 0.0 && self.determinant() > 0.0
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;

    fn mul(self, rhs: Matrix2) -> Matrix2 {
        let (a, b) = (self.0, rhs.0);
        let mut out = [[0.0; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Matrix2(out)
    }
}

impl Add for Matrix2 {
    type Output = Matrix2;

    fn add(self, rhs: Matrix2) -> Matrix2 {
        let (a, b) = (self.0, rhs.0);
        Matrix2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for Matrix2 {
    type Output = Matrix2;

    fn sub(self, rhs: Matrix2) -> Matrix2 {
        self + rhs.scale(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_with_inverse_is_identity() {
        let m = Matrix2::new(2.0, 1.0, 1.0, 3.0);
        let det = m.determinant();
        let inv = Matrix2::new(3.0 / det, -1.0 / det, -1.0 / det, 2.0 / det);
        let p = m * inv;
        assert!((p - Matrix2::IDENTITY).max_abs() < 1e-15);
    }

    #[test]
    fn congruence_matches_explicit_product() {
        let g = Matrix2::diag(1.0, 2.0);
        let j = Matrix2::new(1.0, 2.0, 0.0, 1.0);
        let p = g.congruence(&j);
        assert_eq!(p, Matrix2::new(1.0, 2.0, 2.0, 6.0));
        assert!(p.is_symmetric());
        assert!(p.is_positive_definite());
    }
}
