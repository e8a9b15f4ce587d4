use std::time::Instant;

use qmetric::matrix_metric::{
    cyclic_generator_check, default_tolerance, metric_for_matrix, metric_from_eigenbasis, reference_state_consistency, verify_intertwining,
    MetricCharacter, MetricResult, SpectralData,
};
use qmetric::models::cubic::{cubic_potential, metric_q, published_r};
use qmetric::models::{
    harmonic_oscillator_bundle, series_bundle, shifted_cubic_bundle, two_by_two_bundle, Branch, SeriesBundle, ShiftedCubicParams,
    TwoByTwoParams,
};
use qmetric::perturbation::{cross_validate, series_intertwining_defect, OperatorSeries};
use qmetric::weyl::{from_xp, to_fock_matrix, WeylPolynomial};
use qmetric::{Complex64, ComplexMatrix, Error, ErrorClass};
use serde_json::{json, Value};

use crate::job::{JobSpec, Mode, ModelRef};
use crate::report::{Check, MatrixEntries, MetricReport, ReportError, SeriesText};

/// Default residual threshold for floating-point checks.
pub const DEFAULT_CHECK: f64 = 1e-9;
/// Default threshold for the numeric-symbolic cross-validation.
pub const DEFAULT_CROSS_VALIDATION: f64 = 1e-8;
pub const DEFAULT_CROSS_VALIDATION_STATES: usize = 10;
pub const DEFAULT_PERTURB_FOCK_DIM: usize = 60;
pub const DEFAULT_OSCILLATOR_FOCK_DIM: usize = 10;
pub const DEFAULT_SHIFTED_FOCK_DIM: usize = 80;
pub const DEFAULT_SHIFTED_ORDER: usize = 2;
pub const DEFAULT_SHIFTED_STATES: usize = 8;
pub const SHIFTED_SIMILARITY: f64 = 1e-10;
pub const SHIFTED_GRAM: f64 = 1e-6;

struct Ctx<'a> {
    job: &'a JobSpec,
    report: MetricReport,
}

impl Ctx<'_> {
    fn threshold(&self, default: f64) -> f64 {
        self.job.tolerances.check.unwrap_or(default)
    }

    fn check(&mut self, name: &str, value: f64, default: f64) {
        let t = self.threshold(default);
        self.report.checks.push(Check::at_most(name, value, t));
    }

    /// Structural positivity: passes iff `value > 0`, independent of `--tol-check`.
    fn positive(&mut self, name: &str, value: f64) {
        self.report.checks.push(Check::above(name, value, 0.0));
    }

    fn diag(&mut self, key: &str, v: Value) {
        self.report.diagnostics.insert(key.to_string(), v);
    }
}

fn complex_list(z: &[Complex64]) -> Value {
    json!(z.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
}

/// Runs the job and always returns a report; module errors land in `report.error`.
pub fn run(job: &JobSpec) -> MetricReport {
    let start = Instant::now();
    let mut ctx = Ctx { job, report: MetricReport::new(job.clone()) };
    let outcome = match job.mode {
        Mode::Exact => run_exact(&mut ctx),
        Mode::Model => run_model(&mut ctx),
        Mode::Perturb => run_perturb(&mut ctx),
    };
    if let Err(e) = outcome {
        ctx.report.error = Some(e);
    }
    ctx.report.finalize();
    ctx.report.timings.insert("runMs".into(), start.elapsed().as_secs_f64() * 1e3);
    ctx.report
}

fn core_error(e: impl Into<Error>) -> ReportError {
    let e: Error = e.into();
    let code = e.code();
    ReportError::new(code.name, code.class, e.to_string())
}

fn input_error(message: impl Into<String>) -> ReportError {
    ReportError::new("ValidationError", ErrorClass::Input, message.into())
}

type Outcome = Result<(), ReportError>;

fn metric_checks(ctx: &mut Ctx, sd: &SpectralData, m: &MetricResult) -> Outcome {
    let h_norm = sd.hamiltonian.max_norm().max(f64::MIN_POSITIVE);
    let q_norm = m.q.max_norm().max(f64::MIN_POSITIVE);
    ctx.check("gram", m.residuals.gram, DEFAULT_CHECK);
    ctx.check("intertwining", m.residuals.intertwining / (h_norm * q_norm), DEFAULT_CHECK);
    ctx.check("hermiticity", m.residuals.asymmetry / q_norm, DEFAULT_CHECK);
    match m.character {
        MetricCharacter::PositiveDefinite => {
            ctx.positive("positivity", m.residuals.min_eigenvalue / q_norm);
            let cyc = cyclic_generator_check(sd).map_err(core_error)?;
            ctx.check("cyclic_generator", cyc / q_norm, DEFAULT_CHECK);
            let refc = reference_state_consistency(sd, &m.q).map_err(core_error)?;
            ctx.check("reference_state", refc / q_norm, DEFAULT_CHECK);
        }
        MetricCharacter::IndefinitePairing => {}
    }
    let character = match m.character {
        MetricCharacter::PositiveDefinite => "positive_definite",
        MetricCharacter::IndefinitePairing => "indefinite_pairing",
    };
    ctx.diag("character", json!(character));
    ctx.diag("dim", json!(sd.dim()));
    ctx.diag("eigenvalues", complex_list(&sd.eigenvalues));
    ctx.diag("classificationTolerance", json!(sd.tolerance));
    ctx.diag("eigenResidual", json!(sd.residuals.eigen));
    ctx.diag("inverseResidual", json!(sd.residuals.inverse));
    ctx.diag("minEigenvalue", json!(m.residuals.min_eigenvalue));
    ctx.report.q = Some(MatrixEntries::from_matrix(&m.q));
    Ok(())
}

fn run_exact(ctx: &mut Ctx) -> Outcome {
    let rows = ctx.job.matrix.as_ref().ok_or_else(|| input_error("matrix is required in exact mode"))?;
    let rows: Vec<Vec<Complex64>> = rows.iter().map(|r| r.iter().map(|[re, im]| Complex64::new(*re, *im)).collect()).collect();
    let h = ComplexMatrix::from_rows(&rows).map_err(core_error)?;
    let (sd, m) = metric_for_matrix(&h, ctx.job.tolerances.classification).map_err(core_error)?;
    metric_checks(ctx, &sd, &m)
}

fn param(model: &ModelRef, key: &str) -> Result<f64, ReportError> {
    model.param(key).ok_or_else(|| input_error(format!("model.params.{key} is required")))
}

fn run_model(ctx: &mut Ctx) -> Outcome {
    let model = ctx.job.model.clone().ok_or_else(|| input_error("model is required in model mode"))?;
    match model.name() {
        "two_by_two" => run_two_by_two(ctx, &model),
        "harmonic_oscillator" => run_oscillator(ctx, &model),
        "shifted_cubic" => run_shifted(ctx, &model),
        "cubic" => run_perturb(ctx),
        other => Err(input_error(format!("unknown model `{other}`"))),
    }
}

fn run_two_by_two(ctx: &mut Ctx, model: &ModelRef) -> Outcome {
    let p = TwoByTwoParams {
        r: param(model, "r")?,
        s: param(model, "s")?,
        t: param(model, "t")?,
        theta: param(model, "theta")?,
        phi: param(model, "phi")?,
    };
    let b = two_by_two_bundle(p).map_err(core_error)?;
    let tol = ctx.job.tolerances.classification.unwrap_or_else(|| default_tolerance(&b.h));
    let sd = b.spectral_data(tol).map_err(core_error)?;
    let m = metric_from_eigenbasis(&sd).map_err(core_error)?;
    let q_norm = m.q.max_norm().max(f64::MIN_POSITIVE);
    ctx.check("closed_form", (&m.q - &b.q_closed_form).max_norm() / q_norm, DEFAULT_CHECK);
    let sym = b.symmetry_checks();
    ctx.check("pseudo_hermiticity", sym.pseudo_hermiticity / b.h.max_norm(), DEFAULT_CHECK);
    let inv = b.invariants();
    let generator = [inv.q0_normalization, inv.k_annihilation, inv.k_dagger_annihilation, inv.generator_relation, inv.generated_states]
        .into_iter()
        .fold(0.0, f64::max);
    ctx.check("generator_invariants", generator, DEFAULT_CHECK);
    metric_checks(ctx, &sd, &m)?;
    ctx.diag("branch", json!(if b.branch == Branch::Real { "real" } else { "complex" }));
    ctx.diag("discriminant", json!(p.discriminant()));
    Ok(())
}

fn run_oscillator(ctx: &mut Ctx, model: &ModelRef) -> Outcome {
    let n_max = match model.param("nMax") {
        Some(n) if n.fract() == 0.0 && n >= 1.0 => n as usize,
        Some(_) => return Err(input_error("model.params.nMax must be a positive integer")),
        None => ctx.job.fock_dim.unwrap_or(DEFAULT_OSCILLATOR_FOCK_DIM),
    };
    let b = harmonic_oscillator_bundle(n_max).map_err(core_error)?;
    let flag = |ok: bool| if ok { 0.0 } else { 1.0 };
    ctx.check("exact_identity", flag(b.q_is_identity()), 0.0);
    ctx.check("generator_relation", flag(b.generator_relation_holds()), 0.0);
    ctx.check("k_annihilation", flag(b.k_annihilates_reference()), 0.0);
    ctx.check("partial_inverse", flag(b.partial_inverse_holds()), 0.0);
    let q = b.q_matrix();
    let inter = verify_intertwining(&b.h0_matrix, &q).map_err(core_error)?;
    ctx.check("intertwining", inter, DEFAULT_CHECK);
    ctx.check("hermiticity", (&q - &q.adjoint()).max_norm(), DEFAULT_CHECK);
    ctx.positive("positivity", q.hermitian_eigenvalues()[0]);
    ctx.diag("nMax", json!(n_max));
    ctx.report.q = Some(MatrixEntries::from_matrix(&q));
    Ok(())
}

fn run_shifted(ctx: &mut Ctx, model: &ModelRef) -> Outcome {
    let p = ShiftedCubicParams { alpha: param(model, "alpha")?, epsilon: param(model, "epsilon")? };
    let n_max = ctx.job.fock_dim.unwrap_or(DEFAULT_SHIFTED_FOCK_DIM);
    let order = ctx.job.order.unwrap_or(DEFAULT_SHIFTED_ORDER);
    let states = match model.param("states") {
        Some(n) if n.fract() == 0.0 && n >= 1.0 => n as usize,
        Some(_) => return Err(input_error("model.params.states must be a positive integer")),
        None => DEFAULT_SHIFTED_STATES,
    };
    let b = shifted_cubic_bundle(p, n_max, order).map_err(core_error)?;
    ctx.check("similarity", b.similarity_residual(), SHIFTED_SIMILARITY);
    ctx.check("gram", b.gram_residual(states).map_err(core_error)?, SHIFTED_GRAM);
    let defect = (0..=order).filter(|&k| !series_intertwining_defect(&b.series.q, &b.shifted_potential, k).is_zero()).count();
    ctx.check("series_intertwining", defect as f64, 0.0);
    let q = &b.q_numeric;
    let q_norm = q.max_norm();
    ctx.check("hermiticity", (q - &q.adjoint()).max_norm() / q_norm, DEFAULT_CHECK);
    let k = b.interior();
    ctx.positive("positivity", q.leading_block(k).hermitian_eigenvalues()[0] / q_norm);
    ctx.diag("interior", json!(k));
    ctx.diag("similarityResidualHalfShift", json!(b.similarity_residual_published()));
    ctx.diag("gramUnprojected", json!(b.gram_residual_unprojected(states).map_err(core_error)?));
    ctx.diag("intertwiningResidual", json!(b.intertwining_residual()));
    ctx.diag("states", json!(states));
    ctx.report.q = Some(MatrixEntries::from_matrix(q));
    ctx.report.series = Some(series_text(&b.series));
    Ok(())
}

fn series_text(b: &SeriesBundle) -> SeriesText {
    SeriesText {
        r: b.r.coeffs().iter().map(|c| c.to_string()).collect(),
        q: b.q.coeffs().iter().map(|c| c.to_string()).collect(),
        energies: b.energies.per_order().iter().map(|e| e.to_string()).collect(),
    }
}

fn mismatched_orders(series: &OperatorSeries, reference: &[WeylPolynomial]) -> usize {
    reference.iter().enumerate().filter(|(k, want)| *k < series.max_order() && series.coeff(k + 1) != *want).count()
}

fn run_perturb(ctx: &mut Ctx) -> Outcome {
    let job = ctx.job;
    let (v, is_cubic) = match (&job.potential, &job.model) {
        (Some(expr), _) => {
            let v = from_xp(expr).map_err(core_error)?;
            let cubic = v == cubic_potential();
            (v, cubic)
        }
        (None, Some(m)) if m.name() == "cubic" => (cubic_potential(), true),
        _ => return Err(input_error("perturb mode needs `potential` or model `cubic`")),
    };
    let order = job.order.ok_or_else(|| input_error("order is required in perturb mode"))?;
    let n_max = job.fock_dim.unwrap_or(DEFAULT_PERTURB_FOCK_DIM);
    let b = series_bundle(v.clone(), order).map_err(core_error)?;

    let orders = |f: &dyn Fn(usize) -> bool| (0..=order).filter(|&k| !f(k)).count() as f64;
    ctx.check("series_inverse", if b.r.multiply(&b.r_inverse) == OperatorSeries::identity(order) { 0.0 } else { 1.0 }, 0.0);
    ctx.check("series_gauge", orders(&|k| k == 0 || b.r.coeff(k).diagonal_part().is_zero()), 0.0);
    ctx.check("series_hermiticity", orders(&|k| b.q.coeff(k).adjoint() == *b.q.coeff(k)), 0.0);
    ctx.check("series_intertwining", orders(&|k| series_intertwining_defect(&b.q, &v, k).is_zero()), 0.0);
    if is_cubic {
        ctx.check("reference_r", mismatched_orders(&b.r, &published_r()) as f64, 0.0);
        ctx.check("reference_q", mismatched_orders(&b.q, &metric_q()) as f64, 0.0);
    }

    let bandwidth = v.bandwidth() as usize;
    if bandwidth * order >= n_max {
        return Err(core_error(qmetric::perturbation::PerturbationError::GuardBandViolation { state: 0, order, bandwidth, n_max }));
    }
    let states = DEFAULT_CROSS_VALIDATION_STATES.min(n_max - bandwidth * order);
    let h0 = to_fock_matrix(&WeylPolynomial::number(), n_max);
    let vm = to_fock_matrix(&v, n_max);
    let cv = cross_validate(&b.r, &h0, &vm, states, order).map_err(core_error)?;
    ctx.check("cross_validation", cv, DEFAULT_CROSS_VALIDATION);
    ctx.diag("crossValidationStates", json!(states));
    ctx.diag("fockDim", json!(n_max));
    ctx.diag("potential", json!(v.to_string()));

    if let Some(eps) = job.epsilon {
        let q = b.q.fock_matrix(eps, n_max);
        let q_norm = q.max_norm();
        ctx.check("hermiticity", (&q - &q.adjoint()).max_norm() / q_norm, DEFAULT_CHECK);
        let energies: Vec<Complex64> = (0..=states).map(|n| b.energies.eval_f64(n as f64, eps)).collect();
        ctx.diag("energies", complex_list(&energies));
        let interior = n_max + 1 - bandwidth * order;
        ctx.diag("minEigenvalueInterior", json!(q.leading_block(interior).hermitian_eigenvalues()[0]));
        if !job.epsilon_symbolic {
            ctx.report.q = Some(MatrixEntries::from_matrix(&q));
        }
    }
    ctx.report.series = Some(series_text(&b));
    Ok(())
}
