//! Truncated Fock-space realization of normal-ordered polynomials.
//!
//! `⟨m| a†^j a^k |n⟩ = δ_{m, n−k+j} · √(n!/(n−k)!) · √(m!/(n−k)!)`.
//! Normal-ordered monomials have exact matrix elements inside the truncated
//! space; a product of truncated matrices is exact only on the interior block
//! of rows and columns `≤ N − deg P − deg Q`.

use nalgebra::DMatrix;
use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_traits::{One, Zero};

use super::poly::WeylPolynomial;
use super::scalar::Coeff;
use super::AlgebraError;
use crate::linalg::ComplexMatrix;

/// `(N+1)×(N+1)` matrix of `p` in the number basis `|0⟩ … |N⟩`.
pub fn to_fock_matrix(p: &WeylPolynomial, n_max: usize) -> ComplexMatrix {
    let dim = n_max + 1;
    let mut out = DMatrix::<Complex64>::zeros(dim, dim);
    for (&(j, k), c) in p.terms() {
        let (j, k) = (j as usize, k as usize);
        let c = c.to_complex64();
        for n in k..dim {
            let m = n - k + j;
            if m >= dim {
                break;
            }
            out[(m, n)] += c * (falling_f64(n, k) * falling_f64(m, j)).sqrt();
        }
    }
    ComplexMatrix::from_inner_unchecked(out)
}

/// `n!/(n−k)!`; the square root is taken once on the product so that
/// perfect squares such as diagonal elements come out exact.
fn falling_f64(n: usize, k: usize) -> f64 {
    ((n + 1 - k)..=n).map(|l| l as f64).product::<f64>()
}

/// Column `n` of the Fock matrix of `p`, in exact arithmetic, for rows
/// `0..=n_max`.
///
/// Fails with [`AlgebraError::IrrationalMatrixElement`] when a matrix element
/// is not in `ℚ(i, √2)`; diagonal operators always succeed.
pub fn fock_column_exact(p: &WeylPolynomial, n: usize, n_max: usize) -> Result<Vec<Coeff>, AlgebraError> {
    let mut col = vec![Coeff::zero(); n_max + 1];
    for (&(j, k), c) in p.terms() {
        let (j, k) = (j as usize, k as usize);
        if k > n {
            continue;
        }
        let m = n - k + j;
        if m > n_max {
            continue;
        }
        let prod = falling(n, k) * falling(m, j);
        let value = exact_sqrt_in_field(&prod).ok_or(AlgebraError::IrrationalMatrixElement { row: m, col: n })?;
        col[m] += &(c * &value);
    }
    Ok(col)
}

fn falling(n: usize, k: usize) -> BigUint {
    ((n + 1 - k)..=n).fold(BigUint::one(), |acc, l| acc * BigUint::from(l))
}

/// `√v` when it is an integer or an integer multiple of `√2`.
fn exact_sqrt_in_field(v: &BigUint) -> Option<Coeff> {
    if v.is_zero() {
        return Some(Coeff::zero());
    }
    let r = v.sqrt();
    if &(&r * &r) == v {
        return Some(Coeff::from_bigint(BigInt::from(r)));
    }
    let two = BigUint::from(2u32);
    if (v % &two).is_zero() {
        let half = v / &two;
        let r = half.sqrt();
        if r.clone() * &r == half {
            return Some(Coeff::sqrt2().scale_int(&BigInt::from(r)));
        }
    }
    None
}
