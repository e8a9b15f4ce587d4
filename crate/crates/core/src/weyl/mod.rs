//! Exact algebra of normal-ordered polynomials in `a†`, `a` with
//! `[a, a†] = 1`.
//!
//! Coefficients live in `ℚ(i, √2)` ([`Coeff`]); canonical form is the sparse
//! normal-ordered term map, so equality of polynomials is structural.

mod fock;
mod number;
mod poly;
mod scalar;
mod xp;

use thiserror::Error;

pub use fock::{fock_column_exact, to_fock_matrix};
pub use number::NumberPolynomial;
pub use poly::{Monomial, WeylPolynomial};
pub use scalar::{rational_from_f64, Coeff, GaussianRational};
pub use xp::{from_xp, momentum, position, Canonical, XpExpression, XpWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("[a†a, X] = Y has no solution: Y has diagonal term a†^{m} a^{n}")]
    DiagonalObstruction { m: u32, n: u32 },
    #[error("operator is not diagonal: term a†^{m} a^{n}")]
    NotDiagonal { m: u32, n: u32 },
    #[error("matrix element ({row}, {col}) is not in Q(i, sqrt 2)")]
    IrrationalMatrixElement { row: usize, col: usize },
}

/// `[a†a, X] = y` solved for `X` with zero diagonal part.
pub fn ad_number_solve(y: &WeylPolynomial) -> Result<WeylPolynomial, AlgebraError> {
    y.ad_number_solve()
}

/// `⟨n|p|n⟩` as an exact polynomial in `n`; `p` must be diagonal.
pub fn diagonal_as_number_polynomial(p: &WeylPolynomial) -> Result<NumberPolynomial, AlgebraError> {
    NumberPolynomial::from_diagonal_operator(p)
}

/// Diagonal operator `e(a†a)` in normal order.
pub fn number_polynomial_to_operator(e: &NumberPolynomial) -> WeylPolynomial {
    e.to_operator()
}
