//! Metric operators for finite, diagonalizable pseudo-Hermitian matrices.
//!
//! With `R` the matrix of right eigenvectors (columns) and `Π` the pairing
//! permutation (identity on real eigenvalues, transposition on each
//! conjugate pair `E, Ē`), the metric is
//!
//! ```text
//! q = (R⁻¹)† Π R⁻¹,     R† q R = Π,     q H = H† q.
//! ```
//!
//! `q` is defined relative to the eigenvector scale carried by `R`; the
//! Gram contract `R†qR = Π` is basis-relative and is the normative check.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{ComplexMatrix, MatrixError};

/// Largest accepted `‖RR⁻¹ − 𝟙‖_max` before the eigenbasis counts as singular.
pub const BASIS_INVERSE_LIMIT: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("tolerance must be finite and positive, got {0}")]
    InvalidTolerance(f64),
    #[error("degenerate spectrum: eigenvalues #{i} and #{j} differ by {gap:e}")]
    DegenerateSpectrum { i: usize, j: usize, gap: f64 },
    #[error("eigen-solver failed: {0}")]
    NumericalFailure(String),
    #[error("complex eigenvalue {index} ({value}) has no conjugate partner")]
    UnpairedComplexEigenvalue { index: usize, value: Complex64 },
    #[error("spectrum has not been classified")]
    Unclassified,
    #[error("eigenbasis is singular (‖RR⁻¹ − 1‖ = {residual:e})")]
    SingularBasis { residual: f64 },
    #[error("S is not invertible")]
    SingularS,
    #[error("operation requires an all-real spectrum")]
    ComplexSpectrum,
}

/// Spectral role of one eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pairing {
    RealSimple,
    /// Index of the eigenvalue `≈ conj(E_i)`.
    PairedWith(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct SpectralResiduals {
    /// `‖HR − R diag(E)‖_max`
    pub eigen: f64,
    /// `‖RR⁻¹ − 𝟙‖_max`
    pub inverse: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralData {
    pub hamiltonian: ComplexMatrix,
    pub eigenvalues: Vec<Complex64>,
    /// `None` until [`classify_spectrum`] has run.
    pub classification: Option<Vec<Pairing>>,
    /// Column `i` is the right eigenvector for `eigenvalues[i]`.
    pub eigenbasis: ComplexMatrix,
    pub eigenbasis_inverse: ComplexMatrix,
    pub tolerance: f64,
    pub residuals: SpectralResiduals,
}

impl SpectralData {
    /// Wraps a caller-supplied eigensystem (e.g. closed-form eigenvectors),
    /// keeping its order and normalization. Residuals are recomputed.
    pub fn from_basis(
        hamiltonian: ComplexMatrix,
        eigenvalues: Vec<Complex64>,
        eigenbasis: ComplexMatrix,
        tolerance: f64,
    ) -> Result<Self, MetricError> {
        check_tolerance(tolerance)?;
        hamiltonian.check_same_dim(&eigenbasis)?;
        if eigenvalues.len() != hamiltonian.dim() {
            return Err(MatrixError::DimensionMismatch { expected: hamiltonian.dim(), found: eigenvalues.len() }.into());
        }
        let inverse = eigenbasis.try_inverse().ok_or(MetricError::SingularBasis { residual: f64::INFINITY })?;
        let residuals = spectral_residuals(&hamiltonian, &eigenvalues, &eigenbasis, &inverse);
        Ok(Self { hamiltonian, eigenvalues, classification: None, eigenbasis, eigenbasis_inverse: inverse, tolerance, residuals })
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_all_real(&self) -> Option<bool> {
        self.classification.as_ref().map(|c| c.iter().all(|p| *p == Pairing::RealSimple))
    }

    /// `P_i = R|v_i⟩⟨v_i|R⁻¹`
    pub fn projector(&self, i: usize) -> ComplexMatrix {
        let r = self.eigenbasis.inner();
        let rinv = self.eigenbasis_inverse.inner();
        ComplexMatrix::from_inner_unchecked(r.column(i) * rinv.row(i))
    }
}

fn check_tolerance(tol: f64) -> Result<(), MetricError> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(MetricError::InvalidTolerance(tol))
    }
}

fn spectral_residuals(h: &ComplexMatrix, e: &[Complex64], r: &ComplexMatrix, rinv: &ComplexMatrix) -> SpectralResiduals {
    let d = ComplexMatrix::from_diagonal(e);
    let eigen = (&(h * r) - &(r * &d)).max_norm();
    let inverse = (&(r * rinv) - &ComplexMatrix::identity(e.len())).max_norm();
    SpectralResiduals { eigen, inverse }
}

/// Classification tolerance `1e−8 · ‖H‖_max` (floored at `1e−300`).
pub fn default_tolerance(h: &ComplexMatrix) -> f64 {
    (1e-8 * h.max_norm()).max(1e-300)
}

/// Right eigensystem of `H` via complex Schur decomposition, eigenvalues
/// sorted by `(Re, Im)` (real parts within `tol` count as equal) and
/// eigenvectors normalized to unit length.
pub fn eigendecompose(h: &ComplexMatrix, tol: f64) -> Result<SpectralData, MetricError> {
    check_tolerance(tol)?;
    let n = h.dim();
    let schur = nalgebra::Schur::try_new(h.inner().clone(), f64::EPSILON, 1000 * n.max(10))
        .ok_or_else(|| MetricError::NumericalFailure("Schur iteration did not converge".into()))?;
    let (q, t) = schur.unpack();
    let values: Vec<Complex64> = (0..n).map(|k| t[(k, k)]).collect();

    for i in 0..n {
        for j in (i + 1)..n {
            let gap = (values[i] - values[j]).norm();
            if gap < tol {
                return Err(MetricError::DegenerateSpectrum { i, j, gap });
            }
        }
    }

    // Eigenvectors of the triangular factor by back substitution.
    let mut y = DMatrix::<Complex64>::zeros(n, n);
    for k in 0..n {
        y[(k, k)] = Complex64::new(1.0, 0.0);
        for i in (0..k).rev() {
            let s: Complex64 = ((i + 1)..=k).map(|l| t[(i, l)] * y[(l, k)]).sum();
            y[(i, k)] = -s / (t[(i, i)] - values[k]);
        }
    }
    let mut vecs = q * y;
    for mut col in vecs.column_iter_mut() {
        let norm = col.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(MetricError::NumericalFailure("eigenvector normalization failed".into()));
        }
        col /= Complex64::new(norm, 0.0);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        let (x, y) = (values[a], values[b]);
        if (x.re - y.re).abs() <= tol {
            x.im.total_cmp(&y.im)
        } else {
            x.re.total_cmp(&y.re)
        }
    });
    let eigenvalues: Vec<Complex64> = order.iter().map(|&k| values[k]).collect();
    let basis = DMatrix::from_fn(n, n, |i, j| vecs[(i, order[j])]);
    let basis = ComplexMatrix::new(basis).map_err(|e| MetricError::NumericalFailure(format!("eigenbasis: {e}")))?;
    SpectralData::from_basis(h.clone(), eigenvalues, basis, tol)
}

/// Tags each eigenvalue as real (`|Im E| < tol`) or pairs it with the unique
/// eigenvalue within `tol` of its conjugate.
pub fn classify_spectrum(mut sd: SpectralData, tol: f64) -> Result<SpectralData, MetricError> {
    check_tolerance(tol)?;
    let e = &sd.eigenvalues;
    let n = e.len();
    let mut tags = Vec::with_capacity(n);
    for i in 0..n {
        if e[i].im.abs() < tol {
            tags.push(Pairing::RealSimple);
            continue;
        }
        let target = e[i].conj();
        let candidates: Vec<usize> = (0..n).filter(|&j| j != i && (e[j] - target).norm() < tol).collect();
        match candidates.as_slice() {
            [] => return Err(MetricError::UnpairedComplexEigenvalue { index: i, value: e[i] }),
            [j] => tags.push(Pairing::PairedWith(*j)),
            [j, k, ..] => {
                return Err(MetricError::DegenerateSpectrum { i: *j, j: *k, gap: (e[*j] - e[*k]).norm() });
            }
        }
    }
    for (i, tag) in tags.iter().enumerate() {
        if let Pairing::PairedWith(j) = *tag {
            if tags[j] != Pairing::PairedWith(i) {
                return Err(MetricError::DegenerateSpectrum { i, j, gap: (e[i] - e[j].conj()).norm() });
            }
        }
    }
    sd.classification = Some(tags);
    sd.tolerance = tol;
    Ok(sd)
}

/// `Π`: identity on real indices, transposition on conjugate pairs.
pub fn pairing_matrix(sd: &SpectralData) -> Result<ComplexMatrix, MetricError> {
    let tags = sd.classification.as_ref().ok_or(MetricError::Unclassified)?;
    let n = tags.len();
    let one = Complex64::new(1.0, 0.0);
    let mut p = DMatrix::<Complex64>::zeros(n, n);
    for (i, tag) in tags.iter().enumerate() {
        match *tag {
            Pairing::RealSimple => p[(i, i)] = one,
            Pairing::PairedWith(j) => p[(i, j)] = one,
        }
    }
    Ok(ComplexMatrix::from_inner_unchecked(p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MetricCharacter {
    /// All eigenvalues real: `q > 0`.
    PositiveDefinite,
    /// Conjugate pairs present: `q` is Hermitian but indefinite.
    IndefinitePairing,
}

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct MetricResiduals {
    /// `‖q − q†‖_max` before hermitization.
    pub asymmetry: f64,
    /// `‖q − q†‖_max` of the returned matrix.
    pub hermiticity: f64,
    /// `‖qH − H†q‖_max`
    pub intertwining: f64,
    /// `‖R†qR − Π‖_max`
    pub gram: f64,
    /// Smallest eigenvalue of `q`.
    pub min_eigenvalue: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricResult {
    pub q: ComplexMatrix,
    pub character: MetricCharacter,
    pub residuals: MetricResiduals,
}

/// `q = (R⁻¹)† Π R⁻¹`, hermitized, with every residual recorded.
pub fn metric_from_eigenbasis(sd: &SpectralData) -> Result<MetricResult, MetricError> {
    let pi = pairing_matrix(sd)?;
    if sd.residuals.inverse.is_nan() || sd.residuals.inverse > BASIS_INVERSE_LIMIT {
        return Err(MetricError::SingularBasis { residual: sd.residuals.inverse });
    }
    let rinv = &sd.eigenbasis_inverse;
    let raw = &(&rinv.adjoint() * &pi) * rinv;
    let (q, asymmetry) = raw.hermitize();
    let hermiticity = (&q - &q.adjoint()).max_norm();
    let intertwining = verify_intertwining(&sd.hamiltonian, &q)?;
    let gram = (&gram_matrix(sd, &q) - &pi).max_norm();
    let min_eigenvalue = q.hermitian_eigenvalues().first().copied().unwrap_or(f64::NAN);
    let character = if sd.is_all_real() == Some(true) { MetricCharacter::PositiveDefinite } else { MetricCharacter::IndefinitePairing };
    Ok(MetricResult { q, character, residuals: MetricResiduals { asymmetry, hermiticity, intertwining, gram, min_eigenvalue } })
}

/// Eigendecompose, classify and build the metric in one call, using
/// [`default_tolerance`] when `tol` is `None`.
pub fn metric_for_matrix(h: &ComplexMatrix, tol: Option<f64>) -> Result<(SpectralData, MetricResult), MetricError> {
    let tol = tol.unwrap_or_else(|| default_tolerance(h));
    let sd = classify_spectrum(eigendecompose(h, tol)?, tol)?;
    let metric = metric_from_eigenbasis(&sd)?;
    Ok((sd, metric))
}

/// `‖S H S⁻¹ − H†‖_max`, zero iff `H = S⁻¹H†S`.
pub fn verify_pseudo_hermiticity(h: &ComplexMatrix, s: &ComplexMatrix) -> Result<f64, MetricError> {
    h.check_same_dim(s)?;
    let sinv = s.try_inverse().ok_or(MetricError::SingularS)?;
    if (&(s * &sinv) - &ComplexMatrix::identity(s.dim())).max_norm() > BASIS_INVERSE_LIMIT {
        return Err(MetricError::SingularS);
    }
    Ok((&(&(s * h) * &sinv) - &h.adjoint()).max_norm())
}

/// `‖qH − H†q‖_max`
pub fn verify_intertwining(h: &ComplexMatrix, q: &ComplexMatrix) -> Result<f64, MetricError> {
    h.check_same_dim(q)?;
    Ok((&(q * h) - &(&h.adjoint() * q)).max_norm())
}

/// `G = R† q R`, the matrix of q-inner products of the eigenvectors.
pub fn gram_matrix(sd: &SpectralData, q: &ComplexMatrix) -> ComplexMatrix {
    let r = &sd.eigenbasis;
    &(&r.adjoint() * q) * r
}

/// Cyclic shift `t`: ones on the superdiagonal and in the lower-left corner,
/// so `t e_{k+1} = e_k`, `t e_0 = e_{n−1}` and `t† = t⁻¹`.
pub fn cyclic_shift(n: usize) -> ComplexMatrix {
    let mut t = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n.saturating_sub(1) {
        t[(i, i + 1)] = Complex64::new(1.0, 0.0);
    }
    t[(n - 1, 0)] += Complex64::new(1.0, 0.0);
    ComplexMatrix::from_inner_unchecked(t)
}

/// Reference-state data for the generator construction: the reference is the
/// last eigenvector `|ψ⟩ = R e_{n−1}`, its dual `|φ⟩ = (R⁻¹)† e_{n−1}`
/// satisfies `⟨φ|ψ⟩ = 1`, and `q₀ = |φ⟩⟨φ|` maps `|ψ⟩ ↦ |φ⟩`.
fn reference_metric(sd: &SpectralData) -> ComplexMatrix {
    let phi = sd.eigenbasis_inverse.inner().row(sd.dim() - 1).adjoint();
    ComplexMatrix::from_inner_unchecked(&phi * phi.adjoint())
}

/// Rebuilds `q` as `Σ_k (σ^{−k})† q₀ σ^{−k} P_{j(k)}` with the generator
/// `σ = R t R⁻¹` (so `σ^k` maps the reference eigenvector to eigenvector
/// `j(k)`) and returns `‖Σ − (R⁻¹)†R⁻¹‖_max`.
pub fn cyclic_generator_check(sd: &SpectralData) -> Result<f64, MetricError> {
    match sd.is_all_real() {
        None => return Err(MetricError::Unclassified),
        Some(false) => return Err(MetricError::ComplexSpectrum),
        Some(true) => {}
    }
    let n = sd.dim();
    let r = &sd.eigenbasis;
    let rinv = &sd.eigenbasis_inverse;
    let t = cyclic_shift(n);
    let sigma_inv = &(r * &t.adjoint()) * rinv;
    let q0 = reference_metric(sd);

    let mut sum = ComplexMatrix::zeros(n);
    let mut sigma_inv_pow = ComplexMatrix::identity(n);
    for k in 1..=n {
        sigma_inv_pow = &sigma_inv_pow * &sigma_inv;
        // t^k e_{n−1} = e_{(n−1−k) mod n}
        let j = (n - 1 + n * k - k) % n;
        let term = &(&(&sigma_inv_pow.adjoint() * &q0) * &sigma_inv_pow) * &sd.projector(j);
        sum = &sum + &term;
    }
    let direct = &rinv.adjoint() * rinv;
    Ok((&sum - &direct).max_norm())
}

/// `‖q₀P_ref − qP_ref‖_max` for the reference eigenvector (the last one).
pub fn reference_state_consistency(sd: &SpectralData, q: &ComplexMatrix) -> Result<f64, MetricError> {
    sd.hamiltonian.check_same_dim(q)?;
    let p = sd.projector(sd.dim() - 1);
    let q0 = reference_metric(sd);
    Ok((&(&q0 * &p) - &(q * &p)).max_norm())
}
