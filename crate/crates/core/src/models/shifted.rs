//! Shifted cubic oscillator `H = ½(p² + x² − 1) + iαx + iεx³`.
//!
//! With `U = e^{−αp}` one has `U⁻¹xU = x − iα` and
//! `U a†a U⁻¹ = a†a + iαx − α²/2`, so
//!
//! ```text
//! U⁻¹ H U = a†a + α²/2 + iε(x − iα)³.
//! ```
//!
//! The right-hand side is treated perturbatively with `V_α = i(x − iα)³`,
//! giving `R̃`. Eigenvectors of `H` are `U R̃|n⟩` and the metric is
//! `q = ((U R̃)⁻¹)† (U R̃)⁻¹ = e^{αp} (R̃⁻¹)† R̃⁻¹ e^{αp}`.
//!
//! Everything is realized on a truncated Fock space; results are meaningful
//! on the leading block of size `N + 1 − INTERIOR_MARGIN`.

use num_complex::Complex64;

use super::cubic::{series_bundle, SeriesBundle};
use super::ModelError;
use crate::linalg::ComplexMatrix;
use crate::weyl::{from_xp, position, rational_from_f64, to_fock_matrix, Coeff, GaussianRational, WeylPolynomial};

/// Rows and columns excluded from the comparison block.
pub const INTERIOR_MARGIN: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShiftedCubicParams {
    pub alpha: f64,
    pub epsilon: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShiftedCubicBundle {
    pub params: ShiftedCubicParams,
    pub n_max: usize,
    pub order: usize,
    /// `a†a`
    pub h0_matrix: ComplexMatrix,
    /// `ix³`
    pub v_matrix: ComplexMatrix,
    pub x_matrix: ComplexMatrix,
    pub p_matrix: ComplexMatrix,
    /// `a†a + iαx + iεx³`
    pub h_matrix: ComplexMatrix,
    pub exp_alpha_p: ComplexMatrix,
    pub exp_minus_alpha_p: ComplexMatrix,
    /// `V_α = i(x − iα)³` with `α` taken exactly from its binary value.
    pub shifted_potential: WeylPolynomial,
    /// `R̃`, `R̃⁻¹`, `(R̃⁻¹)†R̃⁻¹` and energies for `a†a + εV_α`.
    pub series: SeriesBundle,
    /// `q` summed through `order` at the numeric `ε`.
    pub q_numeric: ComplexMatrix,
}

/// `i(x − iα)³`
pub fn shifted_potential(alpha: f64) -> Result<WeylPolynomial, ModelError> {
    let a = rational_from_f64(alpha).ok_or_else(|| ModelError::InvalidParameters(format!("alpha = {alpha}")))?;
    let shift = WeylPolynomial::constant(Coeff::from(GaussianRational::imag(a)));
    let y = &position() - &shift;
    Ok(y.pow(3).scale(&Coeff::i()))
}

pub fn shifted_cubic_bundle(p: ShiftedCubicParams, n_max: usize, order: usize) -> Result<ShiftedCubicBundle, ModelError> {
    if !(p.alpha.is_finite() && p.epsilon.is_finite()) {
        return Err(ModelError::InvalidParameters("alpha and epsilon must be finite".into()));
    }
    if 3 * order + INTERIOR_MARGIN >= n_max {
        return Err(ModelError::GuardBandViolation { states: 1, order, n_max });
    }
    let c = |x: f64| Complex64::new(x, 0.0);
    let number = WeylPolynomial::number();
    let h0_matrix = to_fock_matrix(&number, n_max);
    let v_matrix = to_fock_matrix(&from_xp("i x^3").expect("valid"), n_max);
    let x_matrix = to_fock_matrix(&position(), n_max);
    let p_matrix = to_fock_matrix(&crate::weyl::momentum(), n_max);
    let h_matrix = &(&h0_matrix + &x_matrix.scale(Complex64::new(0.0, p.alpha))) + &v_matrix.scale(c(p.epsilon));
    let exp_alpha_p = p_matrix.scale(c(p.alpha)).exp();
    let exp_minus_alpha_p = p_matrix.scale(c(-p.alpha)).exp();

    let shifted_potential = shifted_potential(p.alpha)?;
    let series = series_bundle(shifted_potential.clone(), order)?;
    let q_tilde = series.q.fock_matrix(p.epsilon, n_max);
    let q_numeric = &(&exp_alpha_p * &q_tilde) * &exp_alpha_p;
    Ok(ShiftedCubicBundle {
        params: p,
        n_max,
        order,
        h0_matrix,
        v_matrix,
        x_matrix,
        p_matrix,
        h_matrix,
        exp_alpha_p,
        exp_minus_alpha_p,
        shifted_potential,
        series,
        q_numeric,
    })
}

impl ShiftedCubicBundle {
    pub fn interior(&self) -> usize {
        self.n_max + 1 - INTERIOR_MARGIN
    }

    fn similarity_residual_with(&self, half_power: f64, constant: f64) -> f64 {
        let a = self.params.alpha * half_power;
        let left = self.p_matrix.scale(Complex64::new(-a, 0.0)).exp();
        let right = self.p_matrix.scale(Complex64::new(a, 0.0)).exp();
        let lhs = &(&left * &self.h0_matrix) * &right;
        let id = ComplexMatrix::identity(self.n_max + 1);
        let rhs =
            &(&self.h0_matrix + &self.x_matrix.scale(Complex64::new(0.0, self.params.alpha))) - &id.scale(Complex64::new(constant, 0.0));
        (&lhs - &rhs).leading_block_max_norm(self.interior())
    }

    /// `‖e^{−αp/2} a†a e^{αp/2} − (a†a + iαx − α²/4)‖` on the interior block.
    pub fn similarity_residual_published(&self) -> f64 {
        let a = self.params.alpha;
        self.similarity_residual_with(0.5, a * a / 4.0)
    }

    /// `‖e^{−αp} a†a e^{αp} − (a†a + iαx − α²/2)‖` on the interior block.
    pub fn similarity_residual(&self) -> f64 {
        let a = self.params.alpha;
        self.similarity_residual_with(1.0, a * a / 2.0)
    }

    /// Columns `U R̃⁽ᵏ⁾|n⟩` for `k ≤ order`.
    fn eigenvector_orders(&self) -> Vec<ComplexMatrix> {
        self.series.r.coeffs().iter().map(|r| &self.exp_minus_alpha_p * &to_fock_matrix(r, self.n_max)).collect()
    }

    /// `U R̃(ε)|n⟩` summed through `order`, as columns.
    pub fn eigenvectors(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.n_max + 1);
        let mut power = 1.0;
        for m in self.eigenvector_orders() {
            out = &out + &m.scale(Complex64::new(power, 0.0));
            power *= self.params.epsilon;
        }
        out
    }

    fn check_states(&self, states: usize) -> Result<(), ModelError> {
        if states == 0 || states + 3 * self.order + INTERIOR_MARGIN > self.n_max {
            return Err(ModelError::GuardBandViolation { states, order: self.order, n_max: self.n_max });
        }
        Ok(())
    }

    /// `‖G − 𝟙‖` over the first `states` eigenvectors, where
    /// `G = Σ_{k ≤ order} εᵏ Σ_{a+b+c=k} ψ⁽ᵃ⁾† q⁽ᵇ⁾ ψ⁽ᶜ⁾` keeps exactly the
    /// orders the truncated series determine.
    pub fn gram_residual(&self, states: usize) -> Result<f64, ModelError> {
        self.check_states(states)?;
        let psi = self.eigenvector_orders();
        let q: Vec<ComplexMatrix> =
            self.series.q.coeffs().iter().map(|qk| &(&self.exp_alpha_p * &to_fock_matrix(qk, self.n_max)) * &self.exp_alpha_p).collect();
        let mut g = ComplexMatrix::zeros(self.n_max + 1);
        let mut power = 1.0;
        for k in 0..=self.order {
            for a in 0..=k {
                for (b, qb) in q.iter().enumerate().take(k - a + 1) {
                    let term = &(&psi[a].adjoint() * qb) * &psi[k - a - b];
                    g = &g + &term.scale(Complex64::new(power, 0.0));
                }
            }
            power *= self.params.epsilon;
        }
        let g = g.leading_block(states);
        Ok((&g - &ComplexMatrix::identity(states)).max_norm())
    }

    /// `‖ψ†qψ − 𝟙‖` with fully summed `ψ` and `q`; differs from
    /// [`gram_residual`](Self::gram_residual) by terms of order `ε^{order+1}`.
    pub fn gram_residual_unprojected(&self, states: usize) -> Result<f64, ModelError> {
        self.check_states(states)?;
        let psi = self.eigenvectors();
        let g = (&(&psi.adjoint() * &self.q_numeric) * &psi).leading_block(states);
        Ok((&g - &ComplexMatrix::identity(states)).max_norm())
    }

    /// `‖qH − H†q‖` on the interior block; of order `ε^{order+1}`.
    pub fn intertwining_residual(&self) -> f64 {
        let d = &(&self.q_numeric * &self.h_matrix) - &(&self.h_matrix.adjoint() * &self.q_numeric);
        d.leading_block_max_norm(self.interior() - 3 * self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_alpha_potential_is_cubic() {
        assert_eq!(shifted_potential(0.0).unwrap(), from_xp("i x^3").unwrap());
    }

    #[test]
    fn zero_epsilon_metric_is_exponential() {
        let b = shifted_cubic_bundle(ShiftedCubicParams { alpha: 0.1, epsilon: 0.0 }, 50, 1).unwrap();
        let target = b.p_matrix.scale(Complex64::new(0.2, 0.0)).exp();
        assert!((&b.q_numeric - &target).leading_block_max_norm(b.interior()) < 1e-12);
        assert!(b.gram_residual(8).unwrap() < 1e-12);
    }

    #[test]
    fn guard_band() {
        assert!(matches!(
            shifted_cubic_bundle(ShiftedCubicParams { alpha: 0.1, epsilon: 0.1 }, 25, 2),
            Err(ModelError::GuardBandViolation { .. })
        ));
    }
}
