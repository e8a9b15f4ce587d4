//! Dense square complex matrices.

use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("matrix is empty")]
    Empty,
    #[error("matrix is not square ({rows}×{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// A square matrix of `Complex64` with finite entries.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

impl ComplexMatrix {
    pub fn new(inner: DMatrix<Complex64>) -> Result<Self, MatrixError> {
        if inner.is_empty() {
            return Err(MatrixError::Empty);
        }
        if inner.nrows() != inner.ncols() {
            return Err(MatrixError::NotSquare { rows: inner.nrows(), cols: inner.ncols() });
        }
        for col in 0..inner.ncols() {
            for row in 0..inner.nrows() {
                let z = inner[(row, col)];
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(MatrixError::NonFinite { row, col });
                }
            }
        }
        Ok(Self(inner))
    }

    /// Row-major construction.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self, MatrixError> {
        let n = rows.len();
        if n == 0 {
            return Err(MatrixError::Empty);
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(MatrixError::NotSquare { rows: n, cols: bad.len() });
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    /// Real-valued convenience constructor, row-major.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self, MatrixError> {
        let rows: Vec<Vec<Complex64>> = rows.iter().map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect()).collect();
        Self::from_rows(&rows)
    }

    /// Wraps without validation; callers guarantee squareness and finiteness.
    pub(crate) fn from_inner_unchecked(inner: DMatrix<Complex64>) -> Self {
        debug_assert_eq!(inner.nrows(), inner.ncols());
        Self(inner)
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(DMatrix::zeros(dim, dim))
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let n = diag.len();
        Self(DMatrix::from_fn(n, n, |i, j| if i == j { diag[i] } else { Complex64::new(0.0, 0.0) }))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn inner(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.dim()).map(|i| (0..self.dim()).map(|j| self.0[(i, j)]).collect()).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self(self.0.map(|z| z.conj()))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self(self.0.map(|z| z * c))
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |a_ij|` over the leading `k×k` block.
    pub fn leading_block_max_norm(&self, k: usize) -> f64 {
        let k = k.min(self.dim());
        self.0.view((0, 0), (k, k)).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Leading `k×k` block.
    pub fn leading_block(&self, k: usize) -> Self {
        let k = k.min(self.dim());
        Self(self.0.view((0, 0), (k, k)).into_owned())
    }

    /// `(A + A†)/2` together with `max |A − A†|` before symmetrization.
    pub fn hermitize(&self) -> (Self, f64) {
        let adj = self.0.adjoint();
        let asym = (&self.0 - &adj).iter().map(|z| z.norm()).fold(0.0, f64::max);
        (Self((&self.0 + adj) * Complex64::new(0.5, 0.0)), asym)
    }

    pub fn try_inverse(&self) -> Option<Self> {
        self.0.clone().try_inverse().map(Self)
    }

    /// Eigenvalues of the Hermitian part `(A + A†)/2`, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let (h, _) = self.hermitize();
        let mut ev: Vec<f64> = h.0.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// Matrix exponential (Padé scaling and squaring).
    pub fn exp(&self) -> Self {
        Self(self.0.exp())
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        self.0.column(j).iter().copied().collect()
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        let v = nalgebra::DVector::from_column_slice(v);
        (&self.0 * v).iter().copied().collect()
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| i == j || self.0[(i, j)] == Complex64::new(0.0, 0.0)))
    }

    /// Largest `|i − j|` over nonzero entries.
    pub fn bandwidth(&self) -> usize {
        let n = self.dim();
        let mut w = 0;
        for j in 0..n {
            for i in 0..n {
                if self.0[(i, j)] != Complex64::new(0.0, 0.0) {
                    w = w.max(i.abs_diff(j));
                }
            }
        }
        w
    }

    pub fn check_same_dim(&self, other: &Self) -> Result<(), MatrixError> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(MatrixError::DimensionMismatch { expected: self.dim(), found: other.dim() })
        }
    }
}

impl Mul<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl Add<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

/// Shorthand for `Complex64::new(re, im)`.
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
