//! Harmonic oscillator `H = a†a` with generators `σ_n = (a†)ⁿ/√n!`, partial
//! inverses `σ_n⁻¹ = aⁿ/√n!`, `k_n = H` and `q₀ = 𝟙`.
//!
//! Generators carry irrational scales, so each one is stored as an exact
//! monomial together with its squared scale. Every quantity entering `q`
//! depends only on `|c_n|²`, which keeps the construction exact.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ModelError;
use crate::linalg::ComplexMatrix;
use crate::weyl::{fock_column_exact, to_fock_matrix, Coeff, WeylPolynomial};

/// `σ = c · unscaled` with `|c|² = scale_sq`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledOperator {
    pub unscaled: WeylPolynomial,
    pub scale_sq: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OscillatorBundle {
    pub n_max: usize,
    pub h0: WeylPolynomial,
    pub h0_matrix: ComplexMatrix,
    /// `σ_n = (a†)ⁿ/√n!`
    pub generators: Vec<ScaledOperator>,
    /// `σ_n⁻¹ = aⁿ/√n!`
    pub partial_inverses: Vec<ScaledOperator>,
    /// `q` from the generator sum, column by column in exact arithmetic.
    pub q_exact: Vec<Vec<Coeff>>,
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

pub fn harmonic_oscillator_bundle(n_max: usize) -> Result<OscillatorBundle, ModelError> {
    if n_max < 1 {
        return Err(ModelError::InvalidParameters("truncation N must be at least 1".into()));
    }
    let h0 = WeylPolynomial::number();
    let mut generators = Vec::with_capacity(n_max + 1);
    let mut partial_inverses = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let k = u32::try_from(n).map_err(|_| ModelError::InvalidParameters("truncation too large".into()))?;
        let inv_fact = ratio(BigInt::one(), factorial(n));
        generators.push(ScaledOperator { unscaled: WeylPolynomial::monomial(k, 0, Coeff::one()), scale_sq: inv_fact.clone() });
        partial_inverses.push(ScaledOperator { unscaled: WeylPolynomial::monomial(0, k, Coeff::one()), scale_sq: inv_fact });
    }
    let weights = generator_sum_columns(&partial_inverses, n_max)?;
    Ok(OscillatorBundle { n_max, h0_matrix: to_fock_matrix(&h0, n_max), h0, generators, partial_inverses, q_exact: weights })
}

/// Columns of `Σ_n (σ_n⁻¹)† q₀ σ_n⁻¹ P_n` with `q₀ = 𝟙`, `P_n = |n⟩⟨n|`: column
/// `n` is `|c|² · (σ_n⁻¹)†σ_n⁻¹ |n⟩`.
fn generator_sum_columns(inverses: &[ScaledOperator], n_max: usize) -> Result<Vec<Vec<Coeff>>, ModelError> {
    inverses
        .iter()
        .enumerate()
        .map(|(n, inv)| {
            let op = inv.unscaled.adjoint().multiply(&inv.unscaled);
            let col = fock_column_exact(&op, n, n_max)?;
            let w = Coeff::from(inv.scale_sq.clone());
            Ok(col.iter().map(|c| c * &w).collect())
        })
        .collect()
}

impl OscillatorBundle {
    /// True when the generator-sum metric is exactly the identity.
    pub fn q_is_identity(&self) -> bool {
        self.q_exact.iter().enumerate().all(|(n, col)| col.iter().enumerate().all(|(m, c)| if m == n { c.is_one() } else { c.is_zero() }))
    }

    /// `[H, σ_n] − n σ_n` in exact arithmetic, for every `n`.
    pub fn generator_relation_holds(&self) -> bool {
        self.generators.iter().enumerate().all(|(n, g)| {
            let lhs = self.h0.commutator(&g.unscaled);
            (&lhs - &g.unscaled.scale(&Coeff::from_integer(n as i64))).is_zero()
        })
    }

    /// `k_n|ψ₀⟩ = H|0⟩ = 0`, exactly.
    pub fn k_annihilates_reference(&self) -> bool {
        fock_column_exact(&self.h0, 0, self.n_max).is_ok_and(|c| c.iter().all(Coeff::is_zero))
    }

    /// `σ_n⁻¹ σ_n |0⟩ = |0⟩` for every `n`, exactly. Both scales are positive
    /// reals, so it suffices to compare `|c c'|² ⟨0|σ⁻¹σ|0⟩²` with `1`.
    pub fn partial_inverse_holds(&self) -> bool {
        self.generators.iter().zip(&self.partial_inverses).all(|(g, inv)| {
            let op = inv.unscaled.multiply(&g.unscaled);
            let Ok(col) = fock_column_exact(&op, 0, self.n_max) else { return false };
            let w = Coeff::from(&g.scale_sq * &inv.scale_sq);
            (&(&col[0] * &col[0]) * &w).is_one() && col[1..].iter().all(Coeff::is_zero)
        })
    }

    pub fn q_matrix(&self) -> ComplexMatrix {
        let dim = self.n_max + 1;
        let rows: Vec<Vec<Complex64>> = (0..dim).map(|m| (0..dim).map(|n| self.q_exact[n][m].to_complex64()).collect()).collect();
        ComplexMatrix::from_rows(&rows).expect("finite")
    }
}

/// Diagonal weights `1/(|c_n|² n!)` of `q` for generators `σ_n = c_n (a†)ⁿ`,
/// recomputed through the generator sum with `σ_n⁻¹ = aⁿ/(c_n n!)`.
pub fn generator_scale_weights_exact(c_abs_sq: &[BigRational]) -> Result<Vec<BigRational>, ModelError> {
    let n_max = c_abs_sq.len().saturating_sub(1);
    let mut out = Vec::with_capacity(c_abs_sq.len());
    for (n, c2) in c_abs_sq.iter().enumerate() {
        if c2.is_zero() {
            return Err(ModelError::ZeroScale { index: n });
        }
        let k = n as u32;
        let op = WeylPolynomial::monomial(0, k, Coeff::one()).adjoint().multiply(&WeylPolynomial::monomial(0, k, Coeff::one()));
        let col = fock_column_exact(&op, n, n_max)?;
        let fact = factorial(n);
        // |1/(c_n n!)|² = 1/(|c_n|² n!²)
        let w = BigRational::one() / (c2 * BigRational::from_integer(&fact * &fact));
        let diag = col[n].as_gaussian_rational().expect("diagonal elements are rational").re.clone();
        out.push(diag * w);
    }
    Ok(out)
}

/// Floating-point version of the generator-scale demonstration, returning
/// `q = Σ_n 1/(|c_n|² n!) P_n` as a matrix built from the generator sum.
pub fn generator_scale_demo(c: &[Complex64], n_max: usize) -> Result<ComplexMatrix, ModelError> {
    if c.len() != n_max + 1 {
        return Err(ModelError::InvalidParameters(format!("expected {} scales, got {}", n_max + 1, c.len())));
    }
    let dim = n_max + 1;
    let mut q = ComplexMatrix::zeros(dim);
    let mut fact = 1.0f64;
    for (n, cn) in c.iter().enumerate() {
        if n > 0 {
            fact *= n as f64;
        }
        if *cn == Complex64::new(0.0, 0.0) {
            return Err(ModelError::ZeroScale { index: n });
        }
        let k = n as u32;
        let sigma_inv = to_fock_matrix(&WeylPolynomial::monomial(0, k, Coeff::one()), n_max).scale(1.0 / (cn * fact));
        let mut e = vec![Complex64::new(0.0, 0.0); dim];
        e[n] = Complex64::new(1.0, 0.0);
        let proj = ComplexMatrix::from_diagonal(&e);
        q = &q + &(&(&sigma_inv.adjoint() * &sigma_inv) * &proj);
    }
    Ok(q)
}
