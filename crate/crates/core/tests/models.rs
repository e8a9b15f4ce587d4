use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use qmetric::linalg::c64;
use qmetric::matrix_metric::{eigendecompose, metric_from_eigenbasis};
use qmetric::models::cubic_series;
use qmetric::models::oscillator::{generator_scale_demo, generator_scale_weights_exact, harmonic_oscillator_bundle};
use qmetric::models::shifted::{shifted_cubic_bundle, ShiftedCubicParams};
use qmetric::models::two_by_two::{two_by_two_bundle, Branch, TwoByTwoParams};
use qmetric::{Complex64, ComplexMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

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
            Branch::Real if d >= 0.1 => return p,
            Branch::Complex if d <= -0.1 => return p,
            _ => {}
        }
    }
}

#[test]
fn closed_form_eigenvalues_match_solver() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for branch in [Branch::Real, Branch::Complex] {
        for _ in 0..100 {
            let b = two_by_two_bundle(draw(&mut rng, branch)).unwrap();
            let sd = eigendecompose(&b.h, 1e-10).unwrap();
            for x in &b.eigenvalues {
                let nearest = sd.eigenvalues.iter().map(|y| (x - y).norm()).fold(f64::INFINITY, f64::min);
                assert!(nearest < 1e-12, "{x} vs {:?}", sd.eigenvalues);
            }
        }
    }
}

#[test]
fn closed_form_invariants_both_branches() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for branch in [Branch::Real, Branch::Complex] {
        for _ in 0..50 {
            let p = draw(&mut rng, branch);
            let b = two_by_two_bundle(p).unwrap();
            let inv = b.invariants();
            assert!(inv.q0_normalization < 1e-12, "{p:?} {inv:?}");
            assert!(inv.k_dagger_annihilation < 1e-12, "{p:?} {inv:?}");
            assert!(inv.k_annihilation < 1e-12, "{p:?} {inv:?}");
            assert!(inv.generator_relation < 1e-12, "{p:?} {inv:?}");
            assert!(inv.eigen < 1e-12 && inv.projectors < 1e-12 && inv.generated_states < 1e-12, "{p:?} {inv:?}");
            assert!((&b.q_from_generators() - &b.q_closed_form).max_norm() < 1e-11, "{p:?}");
            let sym = b.symmetry_checks();
            assert!(
                sym.pt_action < 1e-12 && sym.p_tilde_conjugation < 1e-12 && sym.pt_symmetry < 1e-12 && sym.pseudo_hermiticity < 1e-12,
                "{p:?} {sym:?}"
            );
        }
    }
}

#[test]
fn complex_branch_gram_is_swap() {
    let b = two_by_two_bundle(TwoByTwoParams { r: 1.5, s: 0.4, t: 0.8, theta: 1.1, phi: 0.6 }).unwrap();
    assert_eq!(b.branch, Branch::Complex);
    let sd = b.spectral_data(1e-10).unwrap();
    let m = metric_from_eigenbasis(&sd).unwrap();
    let swap = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
    assert!((&qmetric::matrix_metric::gram_matrix(&sd, &m.q) - &swap).max_norm() < 1e-12);
    assert!(m.residuals.min_eigenvalue < 0.0);
}

#[test]
fn oscillator_metric_is_identity_up_to_forty() {
    for n in [1, 5, 17, 40] {
        assert!(harmonic_oscillator_bundle(n).unwrap().q_is_identity(), "N = {n}");
    }
}

#[test]
fn generator_scale_weights() {
    let fact = |n: usize| (1..=n).fold(BigInt::from(1), |a, k| a * BigInt::from(k));
    let inv_fact: Vec<BigRational> = (0..8).map(|n| BigRational::new(1.into(), fact(n))).collect();
    let w = generator_scale_weights_exact(&inv_fact).unwrap();
    assert!(w.iter().all(|x| *x == BigRational::from_integer(1.into())));

    let quarter: Vec<BigRational> = inv_fact.iter().map(|x| x * BigRational::from_integer(4.into())).collect();
    let w = generator_scale_weights_exact(&quarter).unwrap();
    assert!(w.iter().all(|x| *x == BigRational::new(1.into(), 4.into())));

    let c: Vec<Complex64> = (0..6).map(|_| c64(1.0, 0.0)).collect();
    let q = generator_scale_demo(&c, 5).unwrap();
    let mut f = 1.0;
    for n in 0..6 {
        if n > 0 {
            f *= n as f64;
        }
        assert!((q.get(n, n).re - 1.0 / f).abs() < 1e-15);
    }
}

#[test]
fn shifted_model_corrected_similarity() {
    let b = shifted_cubic_bundle(ShiftedCubicParams { alpha: 0.1, epsilon: 0.0 }, 80, 1).unwrap();
    assert!(b.similarity_residual() < 1e-10, "{}", b.similarity_residual());
    assert!(b.similarity_residual_published() > 1e-3);
}

#[test]
fn shifted_model_gram_and_reduction() {
    let b = shifted_cubic_bundle(ShiftedCubicParams { alpha: 0.1, epsilon: 0.05 }, 80, 2).unwrap();
    assert!(b.gram_residual(8).unwrap() < 1e-6, "{}", b.gram_residual(8).unwrap());

    let b0 = shifted_cubic_bundle(ShiftedCubicParams { alpha: 0.0, epsilon: 0.05 }, 80, 2).unwrap();
    let cubic = cubic_series(2).unwrap().q.fock_matrix(0.05, 80);
    let k = b0.interior();
    let diff = (&b0.q_numeric - &cubic).leading_block_max_norm(k);
    assert!(diff < 1e-10, "{diff}");
}
