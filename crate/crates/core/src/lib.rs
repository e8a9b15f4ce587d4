//! Construction and verification of positive metric operators `q` for
//! pseudo-Hermitian Hamiltonians.
//!
//! Three routes are provided:
//!
//! * [`matrix_metric`]: exact construction for finite matrices from a
//!   biorthogonal eigensystem, `q = (R⁻¹)† Π R⁻¹`.
//! * [`models`]: closed-form reference models (harmonic oscillator, the
//!   generalized 2×2 model in both spectral branches, the cubic and shifted
//!   cubic oscillators).
//! * [`perturbation`]: order-by-order generator corrections `R⁽ⁱ⁾` computed
//!   in an exact normal-ordered Weyl algebra ([`weyl`]), with a numeric
//!   Rayleigh–Schrödinger oracle in a truncated Fock space.
//!
//! Every computed metric can be checked for Hermiticity, intertwining
//! (`qH = H†q`), biorthonormality and positivity.

pub mod linalg;
pub mod matrix_metric;
pub mod models;
pub mod perturbation;
pub mod weyl;

mod error;

pub use error::{Error, ErrorClass, ErrorCode};
pub use linalg::ComplexMatrix;
pub use num_complex::Complex64;
