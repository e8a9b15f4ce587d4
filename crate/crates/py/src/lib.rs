use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use qmetric::matrix_metric::{metric_for_matrix as metric_core, MetricCharacter};
use qmetric::models::{
    cubic_potential, harmonic_oscillator_bundle, series_bundle, two_by_two_bundle, Branch, SeriesBundle, TwoByTwoParams,
};
use qmetric::perturbation::cross_validate as cross_validate_core;
use qmetric::weyl::{from_xp, to_fock_matrix};
use qmetric::{Complex64, ComplexMatrix, Error, ErrorClass};

fn to_py_err(e: impl Into<Error>) -> PyErr {
    let e: Error = e.into();
    let code = e.code();
    let msg = format!("{}: {e}", code.name);
    match code.class {
        ErrorClass::Input => PyValueError::new_err(msg),
        ErrorClass::Numerical => PyArithmeticError::new_err(msg),
    }
}

fn matrix_from(rows: Vec<Vec<Complex64>>) -> PyResult<ComplexMatrix> {
    ComplexMatrix::from_rows(&rows).map_err(to_py_err)
}

fn rows_of(m: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    m.rows()
}

/// Metric operator with its verification residuals.
#[pyclass(frozen, skip_from_py_object)]
pub struct Metric {
    #[pyo3(get)]
    q: Vec<Vec<Complex64>>,
    #[pyo3(get)]
    eigenvalues: Vec<Complex64>,
    #[pyo3(get)]
    positive_definite: bool,
    #[pyo3(get)]
    gram: f64,
    #[pyo3(get)]
    intertwining: f64,
    #[pyo3(get)]
    hermiticity: f64,
    #[pyo3(get)]
    min_eigenvalue: f64,
}

#[pymethods]
impl Metric {
    fn __repr__(&self) -> String {
        format!(
            "Metric(dim={}, positive_definite={}, gram={:.3e}, intertwining={:.3e})",
            self.q.len(),
            self.positive_definite,
            self.gram,
            self.intertwining
        )
    }
}

/// `q` for a diagonalizable matrix given as nested lists of complex numbers.
#[pyfunction]
#[pyo3(signature = (rows, tol=None))]
fn metric_for_matrix(rows: Vec<Vec<Complex64>>, tol: Option<f64>) -> PyResult<Metric> {
    let h = matrix_from(rows)?;
    let (sd, m) = metric_core(&h, tol).map_err(to_py_err)?;
    Ok(Metric {
        q: rows_of(&m.q),
        eigenvalues: sd.eigenvalues.clone(),
        positive_definite: m.character == MetricCharacter::PositiveDefinite,
        gram: m.residuals.gram,
        intertwining: m.residuals.intertwining,
        hermiticity: m.residuals.asymmetry,
        min_eigenvalue: m.residuals.min_eigenvalue,
    })
}

/// Closed-form 2×2 model.
#[pyclass(frozen, skip_from_py_object)]
pub struct TwoByTwo {
    #[pyo3(get)]
    branch: String,
    #[pyo3(get)]
    h: Vec<Vec<Complex64>>,
    #[pyo3(get)]
    q: Vec<Vec<Complex64>>,
    #[pyo3(get)]
    eigenvalues: Vec<Complex64>,
}

#[pyfunction]
fn two_by_two(r: f64, s: f64, t: f64, theta: f64, phi: f64) -> PyResult<TwoByTwo> {
    let b = two_by_two_bundle(TwoByTwoParams { r, s, t, theta, phi }).map_err(to_py_err)?;
    Ok(TwoByTwo {
        branch: if b.branch == Branch::Real { "real" } else { "complex" }.to_string(),
        h: rows_of(&b.h),
        q: rows_of(&b.q_closed_form),
        eigenvalues: b.eigenvalues.to_vec(),
    })
}

/// True iff the generator-sum metric of the truncated oscillator is exactly 𝟙.
#[pyfunction]
fn oscillator_metric_is_identity(n_max: usize) -> PyResult<bool> {
    Ok(harmonic_oscillator_bundle(n_max).map_err(to_py_err)?.q_is_identity())
}

/// Exact perturbative series for `H = a†a + εV`.
#[pyclass(frozen, skip_from_py_object)]
pub struct Series {
    inner: SeriesBundle,
}

#[pymethods]
impl Series {
    #[getter]
    fn order(&self) -> usize {
        self.inner.r.max_order()
    }

    #[getter]
    fn r(&self) -> Vec<String> {
        self.inner.r.coeffs().iter().map(|c| c.to_string()).collect()
    }

    #[getter]
    fn q(&self) -> Vec<String> {
        self.inner.q.coeffs().iter().map(|c| c.to_string()).collect()
    }

    #[getter]
    fn energies(&self) -> Vec<String> {
        self.inner.energies.per_order().iter().map(|e| e.to_string()).collect()
    }

    /// `Σ_k εᵏ q⁽ᵏ⁾` on Fock levels `0..=n_max`.
    fn q_matrix(&self, epsilon: f64, n_max: usize) -> Vec<Vec<Complex64>> {
        rows_of(&self.inner.q.fock_matrix(epsilon, n_max))
    }

    fn energy(&self, n: usize, epsilon: f64) -> Complex64 {
        self.inner.energies.eval_f64(n as f64, epsilon)
    }

    /// Largest deviation between the symbolic corrections and numeric
    /// Rayleigh-Schrödinger vectors for levels `0..=n_states`.
    fn cross_validate(&self, n_max: usize, n_states: usize) -> PyResult<f64> {
        let order = self.inner.r.max_order();
        let h0 = to_fock_matrix(&qmetric::weyl::WeylPolynomial::number(), n_max);
        let v = to_fock_matrix(&self.inner.potential, n_max);
        cross_validate_core(&self.inner.r, &h0, &v, n_states, order).map_err(to_py_err)
    }
}

/// Series for the potential written in `x`, `p` (default `i x^3`).
#[pyfunction]
#[pyo3(signature = (order, potential=None))]
fn perturbative_series(order: usize, potential: Option<&str>) -> PyResult<Series> {
    let v = match potential {
        Some(expr) => from_xp(expr).map_err(to_py_err)?,
        None => cubic_potential(),
    };
    Ok(Series { inner: series_bundle(v, order).map_err(to_py_err)? })
}

/// Runs a JSON job and returns the JSON report.
#[pyfunction]
fn run_job(job_json: &str) -> PyResult<String> {
    let job = qmetric_cli::parse_job_str(job_json).map_err(|e| PyValueError::new_err(format!("{}: {e}", e.code())))?;
    Ok(qmetric_cli::run(&job).to_json())
}

#[pymodule]
pub fn pyqmetric(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Metric>()?;
    m.add_class::<TwoByTwo>()?;
    m.add_class::<Series>()?;
    m.add_function(wrap_pyfunction!(metric_for_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(two_by_two, m)?)?;
    m.add_function(wrap_pyfunction!(oscillator_metric_is_identity, m)?)?;
    m.add_function(wrap_pyfunction!(perturbative_series, m)?)?;
    m.add_function(wrap_pyfunction!(run_job, m)?)?;
    Ok(())
}
