//! The generalized 2×2 model
//!
//! ```text
//! H = [[r e^{iθ}, s e^{iφ}], [t e^{−iφ}, r e^{−iθ}]],   E_± = r cosθ ± √(st − r² sin²θ)
//! ```
//!
//! with closed-form eigenvectors, projectors, generators and metric in both
//! the real (`st > r² sin²θ`) and the complex (`st < r² sin²θ`) branch.

use num_complex::Complex64;

use super::ModelError;
use crate::linalg::{c64, ComplexMatrix};
use crate::matrix_metric::{classify_spectrum, verify_pseudo_hermiticity, MetricError, SpectralData};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoByTwoParams {
    pub r: f64,
    pub s: f64,
    pub t: f64,
    pub theta: f64,
    pub phi: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Real,
    Complex,
}

impl TwoByTwoParams {
    /// `st − r² sin²θ`
    pub fn discriminant(&self) -> f64 {
        let rs = self.r * self.theta.sin();
        self.s * self.t - rs * rs
    }

    pub fn validate(&self) -> Result<Branch, ModelError> {
        let TwoByTwoParams { r, s, t, theta, phi } = *self;
        if ![r, s, t, theta, phi].iter().all(|v| v.is_finite()) {
            return Err(ModelError::InvalidParameters("parameters must be finite".into()));
        }
        if !(s > 0.0 && t > 0.0) {
            return Err(ModelError::InvalidParameters(format!("s and t must be positive (s = {s}, t = {t})")));
        }
        let rs2 = (r * theta.sin()).powi(2);
        let d = self.discriminant();
        if d.abs() <= 1e-10 * (s * t).abs().max(rs2) {
            return Err(ModelError::DegenerateParameters { discriminant: d });
        }
        Ok(if d > 0.0 { Branch::Real } else { Branch::Complex })
    }
}

/// Closed-form data for one parameter point. Index order of every pair is
/// `[E₊, E₋]` in the real branch and `[E, Ē]` with `Im E < 0` in the
/// complex branch.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoByTwoBundle {
    pub params: TwoByTwoParams,
    pub branch: Branch,
    pub h: ComplexMatrix,
    pub s: ComplexMatrix,
    pub p_tilde: ComplexMatrix,
    pub eigenvalues: [Complex64; 2],
    /// Columns are the conventionally normalized eigenvectors.
    pub eigenvectors: ComplexMatrix,
    pub projectors: [ComplexMatrix; 2],
    pub generators: [ComplexMatrix; 2],
    pub k: [ComplexMatrix; 2],
    /// Index of the reference state `|ψ⟩` (`E₋`, resp. `E`).
    pub reference: usize,
    pub q0: ComplexMatrix,
    pub q_closed_form: ComplexMatrix,
}

fn m2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> ComplexMatrix {
    ComplexMatrix::from_rows(&[vec![a, b], vec![c, d]]).expect("2×2 closed forms are finite")
}

fn cis(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, x)
}

pub fn two_by_two_bundle(p: TwoByTwoParams) -> Result<TwoByTwoBundle, ModelError> {
    let branch = p.validate()?;
    let TwoByTwoParams { r, s, t, theta, phi } = p;
    let zero = c64(0.0, 0.0);
    let i = c64(0.0, 1.0);
    let rsin = r * theta.sin();
    let (eph, emph) = (cis(phi), cis(-phi));
    let (eph2, emph2) = (cis(phi / 2.0), cis(-phi / 2.0));

    let h = m2(r * cis(theta), s * eph, t * emph, r * cis(-theta));
    let s_mat = m2(zero, eph, emph, zero);
    let p_tilde = m2(zero, c64((s / t).sqrt(), 0.0), c64((t / s).sqrt(), 0.0), zero);

    let bundle = match branch {
        Branch::Real => {
            let q = p.discriminant().sqrt();
            let eigenvalues = [c64(r * theta.cos() + q, 0.0), c64(r * theta.cos() - q, 0.0)];
            let norm = 1.0 / (s + t).sqrt();
            let (f, g) = ((s / t).powf(0.25), (t / s).powf(0.25));
            let sp = c64(q, rsin).sqrt();
            let sm = c64(q, -rsin).sqrt();
            let psi_p = [norm * f * sp * eph2, norm * g * sm * emph2];
            let psi_m = [i * norm * f * sm * eph2, -i * norm * g * sp * emph2];
            let eigenvectors = m2(psi_p[0], psi_m[0], psi_p[1], psi_m[1]);

            let w = 1.0 / (2.0 * q);
            let p_plus = m2(c64(q, rsin), s * eph, t * emph, c64(q, -rsin)).scale(c64(w, 0.0));
            let p_minus = m2(c64(q, -rsin), -s * eph, -t * emph, c64(q, rsin)).scale(c64(w, 0.0));

            let sigma_plus = m2(zero, i * (s / t).sqrt() * eph, -i * (t / s).sqrt() * emph, zero);
            let k_minus = p_plus.scale(c64(2.0 * q, 0.0));
            let k_plus = k_minus.scale(c64(-1.0, 0.0));

            let q0 = s_mat.scale(c64(-(s + t) / (2.0 * q), 0.0));
            let pre = (s + t) / (2.0 * q * q);
            let q_closed = m2(c64(t, 0.0), -i * rsin * eph, i * rsin * emph, c64(s, 0.0)).scale(c64(pre, 0.0));
            TwoByTwoBundle {
                params: p,
                branch,
                h,
                s: s_mat,
                p_tilde,
                eigenvalues,
                eigenvectors,
                projectors: [p_plus, p_minus],
                generators: [sigma_plus, ComplexMatrix::identity(2)],
                k: [k_plus, k_minus],
                reference: 1,
                q0,
                q_closed_form: q_closed,
            }
        }
        Branch::Complex => {
            let qt = (-p.discriminant()).sqrt();
            let eigenvalues = [c64(r * theta.cos(), -qt), c64(r * theta.cos(), qt)];
            let anchor = (s + t) * rsin + (s - t) * qt;
            let norm = c64(anchor, 0.0).sqrt().inv();
            let a_minus = c64(s * (rsin - qt), 0.0).sqrt();
            let a_plus = c64(s * (rsin + qt), 0.0).sqrt();
            let b_minus = c64(t * (rsin - qt), 0.0).sqrt();
            let b_plus = c64(t * (rsin + qt), 0.0).sqrt();
            let psi_e = [-i * norm * i * a_minus * eph2, -i * norm * b_plus * emph2];
            let psi_eb = [i * norm * a_plus * eph2, i * norm * (-i) * b_minus * emph2];
            let eigenvectors = m2(psi_e[0], psi_eb[0], psi_e[1], psi_eb[1]);

            let w = c64(1.0 / (2.0 * qt), 0.0);
            let p_e = m2(c64(-(rsin - qt), 0.0), i * s * eph, i * t * emph, c64(rsin + qt, 0.0)).scale(w);
            let p_eb = m2(c64(rsin + qt, 0.0), -i * s * eph, -i * t * emph, c64(-(rsin - qt), 0.0)).scale(w);

            let sigma_eb = m2(zero, -(s / t).sqrt() * eph, (t / s).sqrt() * emph, zero);
            let k_e = p_eb.scale(c64(0.0, 2.0 * qt));
            let k_eb = k_e.scale(c64(-1.0, 0.0));

            let pre = -anchor / (2.0 * (s * t).sqrt() * qt);
            let q0 = m2(c64((t / s).sqrt(), 0.0), zero, zero, c64(-(s / t).sqrt(), 0.0)).scale(c64(pre, 0.0));
            let q_closed = s_mat.scale(c64(pre, 0.0));
            TwoByTwoBundle {
                params: p,
                branch,
                h,
                s: s_mat,
                p_tilde,
                eigenvalues,
                eigenvectors,
                projectors: [p_e, p_eb],
                generators: [ComplexMatrix::identity(2), sigma_eb],
                k: [k_e, k_eb],
                reference: 0,
                q0,
                q_closed_form: q_closed,
            }
        }
    };
    Ok(bundle)
}

fn vec_diff_norm(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn vec_norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// Residuals of the closed-form generator construction.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct TwoByTwoInvariants {
    /// `|⟨ψ|q₀|ψ⟩ − 1|`
    pub q0_normalization: f64,
    /// `max_E ‖k_E|ψ⟩‖`
    pub k_annihilation: f64,
    /// `max_E ‖k_E†|φ⟩‖`
    pub k_dagger_annihilation: f64,
    /// `max_E ‖Hσ_E − Eσ_E − σ_E k_E‖`
    pub generator_relation: f64,
    /// `max_E ‖σ_E|ψ⟩ − |ψ_E⟩‖`
    pub generated_states: f64,
    /// `max ‖H|ψ_E⟩ − E|ψ_E⟩‖`
    pub eigen: f64,
    /// `max ‖P_E|ψ_E'⟩ − δ_EE'|ψ_E⟩‖` and `‖P₁ + P₂ − 𝟙‖`
    pub projectors: f64,
}

/// Residuals of the symmetry statements about `H`, `P̃` and `S`. `T` acts as
/// entrywise complex conjugation.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct TwoByTwoSymmetry {
    /// `‖P̃² − 𝟙‖`
    pub p_tilde_involution: f64,
    /// `‖P̃ − P̃†‖`, zero exactly when `s = t`.
    pub p_tilde_hermiticity_defect: f64,
    /// `‖P̃ H* P̃ − H‖`, the `P̃T` symmetry of `H`.
    pub pt_symmetry: f64,
    /// `‖P̃ H P̃ − H*‖`
    pub p_tilde_conjugation: f64,
    /// `‖H* − H†‖`, nonzero unless `φ = 0`.
    pub conjugate_vs_adjoint: f64,
    /// `‖S H S⁻¹ − H†‖`
    pub pseudo_hermiticity: f64,
    /// `‖S − S†‖ + ‖S² − 𝟙‖`
    pub s_unitary_involution: f64,
    /// Real branch: `max ‖P̃T|ψ_E±⟩ − |ψ_E±⟩‖`.
    /// Complex branch: `max(‖P̃T|ψ_E⟩ − |ψ_Ē⟩‖, ‖P̃T|ψ_Ē⟩ − |ψ_E⟩‖)`.
    pub pt_action: f64,
}

impl TwoByTwoBundle {
    /// Index of the eigenvalue conjugate to `i`.
    pub fn partner(&self, i: usize) -> usize {
        match self.branch {
            Branch::Real => i,
            Branch::Complex => 1 - i,
        }
    }

    pub fn eigenvector(&self, i: usize) -> Vec<Complex64> {
        self.eigenvectors.column(i)
    }

    /// `|φ⟩ = q₀|ψ⟩`
    pub fn phi(&self) -> Vec<Complex64> {
        self.q0.mul_vec(&self.eigenvector(self.reference))
    }

    /// Eigensystem in closed-form normalization, classified.
    pub fn spectral_data(&self, tol: f64) -> Result<SpectralData, MetricError> {
        let sd = SpectralData::from_basis(self.h.clone(), self.eigenvalues.to_vec(), self.eigenvectors.clone(), tol)?;
        classify_spectrum(sd, tol)
    }

    /// `q = Σ_E (σ_Ē†)⁻¹ q₀ σ_E⁻¹ P_E`
    pub fn q_from_generators(&self) -> ComplexMatrix {
        let inv = |m: &ComplexMatrix| m.try_inverse().expect("2×2 generators are invertible");
        (0..2)
            .map(|e| {
                let left = inv(&self.generators[self.partner(e)]).adjoint();
                &(&(&left * &self.q0) * &inv(&self.generators[e])) * &self.projectors[e]
            })
            .fold(ComplexMatrix::zeros(2), |acc, m| &acc + &m)
    }

    pub fn invariants(&self) -> TwoByTwoInvariants {
        let psi = self.eigenvector(self.reference);
        let phi = self.phi();
        let q0_normalization = (psi.iter().zip(&phi).map(|(a, b)| a.conj() * b).sum::<Complex64>() - 1.0).norm();
        let mut out = TwoByTwoInvariants { q0_normalization, ..Default::default() };
        for e in 0..2 {
            let ev = self.eigenvalues[e];
            let psi_e = self.eigenvector(e);
            out.k_annihilation = out.k_annihilation.max(vec_norm(&self.k[e].mul_vec(&psi)));
            out.k_dagger_annihilation = out.k_dagger_annihilation.max(vec_norm(&self.k[e].adjoint().mul_vec(&phi)));
            let sigma = &self.generators[e];
            let rel = &(&(&self.h * sigma) - &sigma.scale(ev)) - &(sigma * &self.k[e]);
            out.generator_relation = out.generator_relation.max(rel.max_norm());
            out.generated_states = out.generated_states.max(vec_diff_norm(&sigma.mul_vec(&psi), &psi_e));
            let hpsi = self.h.mul_vec(&psi_e);
            let epsi: Vec<Complex64> = psi_e.iter().map(|z| ev * z).collect();
            out.eigen = out.eigen.max(vec_diff_norm(&hpsi, &epsi));
            for f in 0..2 {
                let target: Vec<Complex64> = if e == f { self.eigenvector(f) } else { vec![c64(0.0, 0.0); 2] };
                let got = self.projectors[e].mul_vec(&self.eigenvector(f));
                out.projectors = out.projectors.max(vec_diff_norm(&got, &target));
            }
        }
        let closure = &(&self.projectors[0] + &self.projectors[1]) - &ComplexMatrix::identity(2);
        out.projectors = out.projectors.max(closure.max_norm());
        out
    }

    pub fn symmetry_checks(&self) -> TwoByTwoSymmetry {
        let id = ComplexMatrix::identity(2);
        let pt = &self.p_tilde;
        let h = &self.h;
        let pt_action = (0..2)
            .map(|e| {
                let image = pt.mul_vec(&self.eigenvector(e).iter().map(|z| z.conj()).collect::<Vec<_>>());
                vec_diff_norm(&image, &self.eigenvector(self.partner(e)))
            })
            .fold(0.0, f64::max);
        TwoByTwoSymmetry {
            p_tilde_involution: (&(pt * pt) - &id).max_norm(),
            p_tilde_hermiticity_defect: (pt - &pt.adjoint()).max_norm(),
            pt_symmetry: (&(&(pt * &h.conj()) * pt) - h).max_norm(),
            p_tilde_conjugation: (&(&(pt * h) * pt) - &h.conj()).max_norm(),
            conjugate_vs_adjoint: (&h.conj() - &h.adjoint()).max_norm(),
            pseudo_hermiticity: verify_pseudo_hermiticity(h, &self.s).unwrap_or(f64::INFINITY),
            s_unitary_involution: (&self.s - &self.s.adjoint()).max_norm() + (&(&self.s * &self.s) - &id).max_norm(),
            pt_action,
        }
    }
}

/// Symmetry residuals for a parameter point.
pub fn two_by_two_symmetry_checks(p: TwoByTwoParams) -> Result<TwoByTwoSymmetry, ModelError> {
    Ok(two_by_two_bundle(p)?.symmetry_checks())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn params(r: f64, s: f64, t: f64, theta: f64, phi: f64) -> TwoByTwoParams {
        TwoByTwoParams { r, s, t, theta, phi }
    }

    #[test]
    fn real_branch_example() {
        let b = two_by_two_bundle(params(1.0, 1.0, 1.0, PI / 6.0, 0.0)).unwrap();
        assert_eq!(b.branch, Branch::Real);
        assert!((b.eigenvalues[0].re - 3f64.sqrt()).abs() < 1e-15);
        assert!(b.eigenvalues[1].re.abs() < 1e-15);
        let expected = m2(c64(4.0 / 3.0, 0.0), c64(0.0, -2.0 / 3.0), c64(0.0, 2.0 / 3.0), c64(4.0 / 3.0, 0.0));
        assert!((&b.q_closed_form - &expected).max_norm() < 1e-15);
    }

    #[test]
    fn complex_branch_example() {
        let b = two_by_two_bundle(params(1.0, 0.5, 0.5, PI / 2.0, 0.0)).unwrap();
        assert_eq!(b.branch, Branch::Complex);
        assert!((b.eigenvalues[0] - c64(0.0, -3f64.sqrt() / 2.0)).norm() < 1e-15);
        let expected = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap().scale(c64(-2.0 / 3f64.sqrt(), 0.0));
        assert!((&b.q_closed_form - &expected).max_norm() < 1e-15);
    }

    #[test]
    fn hermitian_limit() {
        for r in [0.3, 1.0, 2.5] {
            let b = two_by_two_bundle(params(r, 0.7, 0.7, 0.0, 0.0)).unwrap();
            assert!((&b.q_closed_form - &ComplexMatrix::identity(2)).max_norm() < 1e-14);
        }
    }

    #[test]
    fn invalid_and_degenerate() {
        assert!(matches!(two_by_two_bundle(params(1.0, -1.0, 1.0, 0.5, 0.0)), Err(ModelError::InvalidParameters(_))));
        assert!(matches!(two_by_two_bundle(params(f64::NAN, 1.0, 1.0, 0.5, 0.0)), Err(ModelError::InvalidParameters(_))));
        // st = r² sin²θ: r = 2, θ = π/6, s = t = 1
        assert!(matches!(two_by_two_bundle(params(2.0, 1.0, 1.0, PI / 6.0, 0.0)), Err(ModelError::DegenerateParameters { .. })));
    }

    #[test]
    fn generator_sum_matches_closed_form() {
        for p in [params(1.0, 1.3, 0.6, 0.4, 0.7), params(2.0, 0.4, 0.9, 1.2, -0.3)] {
            let b = two_by_two_bundle(p).unwrap();
            assert!((&b.q_from_generators() - &b.q_closed_form).max_norm() < 1e-12, "{p:?}");
            let inv = b.invariants();
            assert!(inv.q0_normalization < 1e-12 && inv.k_dagger_annihilation < 1e-12, "{inv:?}");
        }
    }

    #[test]
    fn symmetry_residuals() {
        let sym = two_by_two_symmetry_checks(params(1.0, 1.0, 1.0, 0.4, 0.0)).unwrap();
        assert!(sym.p_tilde_hermiticity_defect < 1e-15);
        let sym = two_by_two_symmetry_checks(params(1.0, 2.0, 0.5, 0.4, 0.3)).unwrap();
        assert!(sym.p_tilde_hermiticity_defect > 0.1);
        assert!(sym.p_tilde_involution < 1e-14 && sym.pt_symmetry < 1e-14 && sym.pseudo_hermiticity < 1e-14);
    }
}
