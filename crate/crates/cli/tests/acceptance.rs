//! Acceptance suite: one line per criterion, tolerances fixed below.
//!
//! Lines marked `known` are comparisons against printed values that the
//! computation contradicts; they are reported as FAIL but do not fail the run.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use qmetric::linalg::c64;
use qmetric::matrix_metric::{
    cyclic_generator_check, gram_matrix, metric_for_matrix, metric_from_eigenbasis, reference_state_consistency, MetricCharacter,
};
use qmetric::models::cubic::{cubic_potential, metric_q, published_q, published_r};
use qmetric::models::oscillator::{generator_scale_demo, generator_scale_weights_exact};
use qmetric::models::{
    cubic_series, harmonic_oscillator_bundle, shifted_cubic_bundle, two_by_two_bundle, Branch, ShiftedCubicParams, TwoByTwoParams,
};
use qmetric::perturbation::{cross_validate, numeric_rs, series_intertwining_defect, OperatorSeries};
use qmetric::weyl::{to_fock_matrix, Coeff, NumberPolynomial, WeylPolynomial};
use qmetric::{Complex64, ComplexMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TWO_BY_TWO_TOL: f64 = 1e-12;
const TWO_BY_TWO_DRAWS: usize = 100;
const DRAW_MARGIN: f64 = 0.1;
const ENERGY_ORACLE_TOL: f64 = 1e-9;
const CROSS_VALIDATION_TOL: f64 = 1e-8;
const FAULT_SIZE: f64 = 1e-3;
const FAULT_DETECT: f64 = 1e-4;
const GRAM_TOL: f64 = 1e-10;
const INTERTWINING_TOL: f64 = 1e-9;
const CYCLIC_TOL: f64 = 1e-10;
const REFERENCE_TOL: f64 = 1e-10;
const SIMILARITY_TOL: f64 = 1e-10;
const SHIFTED_GRAM_TOL: f64 = 1e-6;
const REDUCTION_TOL: f64 = 1e-10;

struct Outcome {
    pass: bool,
    detail: String,
}

struct Line {
    id: &'static str,
    title: &'static str,
    known: bool,
    budget: Duration,
}

#[derive(Default)]
struct Tally {
    passed: usize,
    failed: usize,
    known_failed: usize,
}

impl Tally {
    fn run(&mut self, line: Line, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let out = f();
        let elapsed = start.elapsed();
        let in_time = elapsed <= line.budget;
        let pass = out.pass && in_time;
        let tag = match (pass, line.known) {
            (true, _) => "PASS",
            (false, false) => "FAIL",
            (false, true) => "FAIL (known)",
        };
        let timing = format!("{:.3}s / {:.0}s", elapsed.as_secs_f64(), line.budget.as_secs_f64());
        let over = if in_time { "" } else { " over budget" };
        println!("[{tag}] {:<4} {}: {} [{timing}{over}]", line.id, line.title, out.detail);
        match (pass, line.known) {
            (true, _) => self.passed += 1,
            (false, false) => self.failed += 1,
            (false, true) => self.known_failed += 1,
        }
    }
}

fn line(id: &'static str, title: &'static str, budget_s: u64) -> Line {
    Line { id, title, known: false, budget: Duration::from_secs(budget_s) }
}

fn known(id: &'static str, title: &'static str, budget_s: u64) -> Line {
    Line { id, title, known: true, budget: Duration::from_secs(budget_s) }
}

fn draw(rng: &mut ChaCha8Rng, branch: Branch) -> TwoByTwoParams {
    loop {
        let p = TwoByTwoParams {
            r: rng.random_range(0.1..3.0),
            s: rng.random_range(0.1..3.0),
            t: rng.random_range(0.1..3.0),
            theta: rng.random_range(0.1..PI - 0.1),
            phi: rng.random_range(-PI..PI),
        };
        let d = p.discriminant();
        match branch {
            Branch::Real if d >= DRAW_MARGIN => return p,
            Branch::Complex if d <= -DRAW_MARGIN => return p,
            _ => {}
        }
    }
}

fn two_by_two(branch: Branch, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut closed, mut gram, mut extra) = (0.0f64, 0.0f64, 0.0f64);
    let target = match branch {
        Branch::Real => ComplexMatrix::identity(2),
        Branch::Complex => ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap(),
    };
    for _ in 0..TWO_BY_TWO_DRAWS {
        let b = two_by_two_bundle(draw(&mut rng, branch)).unwrap();
        let sd = b.spectral_data(1e-10).unwrap();
        let m = metric_from_eigenbasis(&sd).unwrap();
        closed = closed.max((&m.q - &b.q_closed_form).max_norm());
        let g = gram_matrix(&sd, &m.q);
        gram = gram.max((&g - &target).max_norm());
        extra = extra.max(match branch {
            Branch::Real => m.residuals.intertwining,
            Branch::Complex => g.get(0, 0).norm().max(g.get(1, 1).norm()),
        });
    }
    let extra_name = if branch == Branch::Real { "intertwining" } else { "zero q-norms" };
    Outcome {
        pass: closed <= TWO_BY_TWO_TOL && gram <= TWO_BY_TWO_TOL && extra <= TWO_BY_TWO_TOL,
        detail: format!("max |q − closed form| {closed:.2e}, Gram {gram:.2e}, {extra_name} {extra:.2e} (≤ {TWO_BY_TWO_TOL:.0e})"),
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |a, k| a * BigInt::from(k))
}

fn oscillator() -> Outcome {
    let identity_upto = (1..=40).take_while(|&n| harmonic_oscillator_bundle(n).unwrap().q_is_identity()).last().unwrap_or(0);

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let c_sq: Vec<BigRational> =
        (0..12).map(|_| BigRational::new(rng.random_range(1..50i64).into(), rng.random_range(1..50i64).into())).collect();
    let weights = generator_scale_weights_exact(&c_sq).unwrap();
    let exact = weights
        .iter()
        .enumerate()
        .all(|(n, w)| *w == BigRational::from_integer(1.into()) / (&c_sq[n] * BigRational::from_integer(factorial(n))));

    let c: Vec<Complex64> = (0..8).map(|_| c64(rng.random_range(0.5..2.0), rng.random_range(-1.0..1.0))).collect();
    let q = generator_scale_demo(&c, 7).unwrap();
    let mut fact = 1.0;
    let mut demo = 0.0f64;
    for (n, cn) in c.iter().enumerate() {
        if n > 0 {
            fact *= n as f64;
        }
        let want = 1.0 / (cn.norm_sqr() * fact);
        demo = demo.max((q.get(n, n).re - want).abs() / want);
    }
    demo = demo.max((&q - &ComplexMatrix::from_diagonal(&(0..8).map(|n| q.get(n, n)).collect::<Vec<_>>())).max_norm());
    Outcome {
        pass: identity_upto == 40 && exact && demo <= 1e-14,
        detail: format!("q = 𝟙 exactly for N = 1..{identity_upto}; scaled weights exact: {exact}; float demo rel. error {demo:.1e}"),
    }
}

fn mismatches(series: &OperatorSeries, reference: &[WeylPolynomial]) -> Vec<usize> {
    reference.iter().enumerate().filter(|(k, want)| series.coeff(k + 1) != *want).map(|(k, _)| k + 1).collect()
}

fn cubic_r() -> Outcome {
    let b = cubic_series(3).unwrap();
    let bad = mismatches(&b.r, &published_r());
    Outcome { pass: bad.is_empty(), detail: format!("R⁽¹⁾..R⁽³⁾ mismatched orders {bad:?}") }
}

fn cubic_q_printed() -> Outcome {
    let b = cubic_series(3).unwrap();
    let bad = mismatches(&b.q, &published_q());
    let terms: usize = bad.iter().map(|&k| (b.q.coeff(k) - &published_q()[k - 1]).len()).sum();
    Outcome {
        pass: bad.is_empty(), detail: format!("printed q⁽¹⁾..q⁽³⁾ mismatched orders {bad:?} ({terms} ladder coefficients differ)")
    }
}

fn cubic_q_consistent() -> Outcome {
    let b = cubic_series(4).unwrap();
    let bad = mismatches(&b.q.truncated(3), &metric_q());
    let v = cubic_potential();
    let defect: Vec<usize> = (0..=4).filter(|&k| !series_intertwining_defect(&b.q, &v, k).is_zero()).collect();
    let mut printed = vec![WeylPolynomial::one()];
    printed.extend(published_q());
    let printed = OperatorSeries::new(printed).unwrap();
    let printed_defect: Vec<usize> = (1..=3).filter(|&k| !series_intertwining_defect(&printed, &v, k).is_zero()).collect();
    Outcome {
        pass: bad.is_empty() && defect.is_empty() && !printed_defect.is_empty(),
        detail: format!(
            "q vs Hermitian-word table mismatches {bad:?}; qH = H†q defect orders {defect:?}; printed q defect orders {printed_defect:?}"
        ),
    }
}

fn energies() -> Outcome {
    let b = cubic_series(5).unwrap();
    let odd_zero = [1, 3, 5].iter().all(|&i| b.energies.order(i).is_zero());
    let even_real = [2, 4].iter().all(|&i| b.energies.order(i).has_real_rational_coefficients());
    let expected = NumberPolynomial::new(vec![Coeff::from_ratio(11, 8), Coeff::from_ratio(30, 8), Coeff::from_ratio(30, 8)]);
    let closed = *b.energies.order(2) == expected;

    let n_max = 30;
    let h0 = to_fock_matrix(&WeylPolynomial::number(), n_max);
    let v = to_fock_matrix(&cubic_potential(), n_max);
    let mut oracle = 0.0f64;
    for n in 0..=5 {
        let num = numeric_rs(&h0, &v, n, 2).unwrap();
        let nf = n as f64;
        oracle = oracle.max((num.energies[2] - c64((30.0 * nf * nf + 30.0 * nf + 11.0) / 8.0, 0.0)).norm());
    }
    // x³|0⟩ = (3|1⟩ + √6|3⟩)/2^{3/2}, so E₀⁽²⁾ = (9/8)/1 + (6/8)/3
    let hand: f64 = 9.0 / 8.0 / 1.0 + 6.0 / 8.0 / 3.0;
    let e0 = b.energies.order(2).eval(0) == Coeff::from_ratio(11, 8) && (hand - 11.0 / 8.0).abs() < 1e-15;
    Outcome {
        pass: odd_zero && even_real && closed && oracle <= ENERGY_ORACLE_TOL && e0,
        detail: format!(
            "E⁽¹,³,⁵⁾ = 0: {odd_zero}; E⁽²,⁴⁾ real: {even_real}; E⁽²⁾ = (30n²+30n+11)/8: {closed}; numeric n ≤ 5 {oracle:.1e}; E₀⁽²⁾ = 11/8: {e0}"
        ),
    }
}

fn cross_validation() -> Outcome {
    let b = cubic_series(3).unwrap();
    let n_max = 60;
    let h0 = to_fock_matrix(&WeylPolynomial::number(), n_max);
    let v = to_fock_matrix(&cubic_potential(), n_max);
    let err = cross_validate(&b.r, &h0, &v, 10, 3).unwrap();

    let mut coeffs = b.r.coeffs().to_vec();
    let fault = Coeff::from_ratio(1, (1.0 / FAULT_SIZE) as i64);
    coeffs[1].add_term(3, 0, fault);
    let faulty = OperatorSeries::new(coeffs).unwrap();
    let injected = cross_validate(&faulty, &h0, &v, 10, 3).unwrap();
    Outcome {
        pass: err <= CROSS_VALIDATION_TOL && injected >= FAULT_DETECT,
        detail: format!("N = 60, n ≤ 10, order 3: {err:.2e} (≤ {CROSS_VALIDATION_TOL:.0e}); with a {FAULT_SIZE:.0e} fault in R⁽¹⁾: {injected:.2e} (≥ {FAULT_DETECT:.0e})"),
    }
}

fn property_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut gram, mut inter, mut cyc, mut refc) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut positive = true;
    for _ in 0..50 {
        let n = rng.random_range(3..=8usize);
        let s = 0.5 / (n as f64).sqrt();
        let rows: Vec<Vec<Complex64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)) * s
                            + if i == j { c64(1.0, 0.0) } else { c64(0.0, 0.0) }
                    })
                    .collect()
            })
            .collect();
        let r = ComplexMatrix::from_rows(&rows).unwrap();
        let mut e = -2.0;
        let d: Vec<Complex64> = (0..n)
            .map(|_| {
                e += rng.random_range(0.5..1.5);
                c64(e, 0.0)
            })
            .collect();
        let h = &(&r * &ComplexMatrix::from_diagonal(&d)) * &r.try_inverse().unwrap();
        let (sd, m) = metric_for_matrix(&h, None).unwrap();
        gram = gram.max(m.residuals.gram);
        inter = inter.max(m.residuals.intertwining);
        positive &= m.character == MetricCharacter::PositiveDefinite && m.residuals.min_eigenvalue > 0.0;
        cyc = cyc.max(cyclic_generator_check(&sd).unwrap());
        refc = refc.max(reference_state_consistency(&sd, &m.q).unwrap());
    }
    Outcome {
        pass: gram <= GRAM_TOL && inter <= INTERTWINING_TOL && positive && cyc <= CYCLIC_TOL && refc <= REFERENCE_TOL,
        detail: format!("50 instances: Gram {gram:.1e}, intertwining {inter:.1e}, positive {positive}, cyclic {cyc:.1e}, q₀P {refc:.1e}"),
    }
}

fn shifted_printed_identity() -> Outcome {
    let b = shifted_cubic_bundle(ShiftedCubicParams { alpha: 0.1, epsilon: 0.0 }, 80, 1).unwrap();
    let res = b.similarity_residual_published();
    Outcome {
        pass: res <= SIMILARITY_TOL,
        detail: format!("e^(−αp/2) a†a e^(αp/2) = a†a + iαx − α²/4, N = 80: {res:.2e} (≤ {SIMILARITY_TOL:.0e})"),
    }
}

fn shifted_corrected_identity() -> Outcome {
    let b = shifted_cubic_bundle(ShiftedCubicParams { alpha: 0.1, epsilon: 0.0 }, 80, 1).unwrap();
    let res = b.similarity_residual();
    Outcome {
        pass: res <= SIMILARITY_TOL,
        detail: format!("e^(−αp) a†a e^(αp) = a†a + iαx − α²/2, N = 80: {res:.2e} (≤ {SIMILARITY_TOL:.0e})"),
    }
}

fn shifted_gram_and_reduction() -> Outcome {
    let b = shifted_cubic_bundle(ShiftedCubicParams { alpha: 0.1, epsilon: 0.05 }, 80, 2).unwrap();
    let gram = b.gram_residual(8).unwrap();
    let b0 = shifted_cubic_bundle(ShiftedCubicParams { alpha: 0.0, epsilon: 0.05 }, 80, 2).unwrap();
    let cubic = cubic_series(2).unwrap().q.fock_matrix(0.05, 80);
    let k = b0.interior();
    let diff = (&b0.q_numeric - &cubic).leading_block_max_norm(k);
    Outcome {
        pass: gram <= SHIFTED_GRAM_TOL && diff <= REDUCTION_TOL,
        detail: format!(
            "Gram of 8 states {gram:.2e} (≤ {SHIFTED_GRAM_TOL:.0e}); α = 0 vs cubic metric, interior max-norm {diff:.2e} (≤ {REDUCTION_TOL:.0e})"
        ),
    }
}

fn strip_timings(report: &str) -> String {
    let mut v: serde_json::Value = serde_json::from_str(report).unwrap();
    v.as_object_mut().unwrap().remove("timings");
    v.to_string()
}

fn end_to_end() -> Outcome {
    let jobs = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../jobs");
    let exe = env!("CARGO_BIN_EXE_qmetric");
    let mut notes = Vec::new();
    let mut pass = true;
    for name in ["exact_two_by_two.json", "model_two_by_two.json", "perturb_cubic.json"] {
        let runs: Vec<_> = (0..2).map(|_| Command::new(exe).arg(jobs.join(name)).output().unwrap()).collect();
        let codes: Vec<i32> = runs.iter().map(|o| o.status.code().unwrap_or(-1)).collect();
        let same = strip_timings(&String::from_utf8_lossy(&runs[0].stdout)) == strip_timings(&String::from_utf8_lossy(&runs[1].stdout));
        pass &= codes == [0, 0] && same;
        notes.push(format!("{name} exit {} deterministic {same}", codes[0]));
    }
    let out = Command::new(exe).arg(jobs.join("defective.json")).output().unwrap();
    let code = out.status.code().unwrap_or(-1);
    let named = String::from_utf8_lossy(&out.stdout).contains("\"DegenerateSpectrum\"");
    pass &= (code == 2 || code == 3) && named;
    notes.push(format!("defective.json exit {code} DegenerateSpectrum {named}"));
    Outcome { pass, detail: notes.join("; ") }
}

fn main() {
    let mut t = Tally::default();
    t.run(line("1", "2×2 real branch", 1), || two_by_two(Branch::Real, 101));
    t.run(line("2", "2×2 complex branch", 1), || two_by_two(Branch::Complex, 202));
    t.run(line("3", "harmonic oscillator", 1), oscillator);
    t.run(line("4a", "cubic model R series", 10), cubic_r);
    t.run(known("4b", "cubic model q series vs printed table", 10), cubic_q_printed);
    t.run(line("4c", "cubic model q series, Hermitian-word table and intertwining", 10), cubic_q_consistent);
    t.run(line("5", "energy structure", 30), energies);
    t.run(line("6", "numeric/symbolic cross-validation", 30), cross_validation);
    t.run(line("7", "n×n property suite", 5), property_suite);
    t.run(known("8a", "shifted model, printed similarity identity", 60), shifted_printed_identity);
    t.run(line("8a'", "shifted model, corrected similarity identity", 60), shifted_corrected_identity);
    t.run(line("8b", "shifted model Gram and α = 0 reduction", 60), shifted_gram_and_reduction);
    t.run(line("9", "end-to-end CLI", 60), end_to_end);
    println!("acceptance: {} passed, {} failed, {} known failures", t.passed, t.failed, t.known_failed);
    if t.failed > 0 {
        std::process::exit(1);
    }
}
