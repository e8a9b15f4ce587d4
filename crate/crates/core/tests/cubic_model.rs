use qmetric::models::cubic::{cubic_potential, cubic_series, metric_q, published_q, published_r};
use qmetric::perturbation::series_intertwining_defect;
use qmetric::weyl::{Coeff, NumberPolynomial, WeylPolynomial};

#[test]
fn generator_corrections_match_published_table() {
    let b = cubic_series(3).unwrap();
    for (k, expected) in published_r().iter().enumerate() {
        assert_eq!(b.r.coeff(k + 1), expected, "R^({})", k + 1);
    }
}

#[test]
fn metric_series_matches_hermitian_word_form() {
    let b = cubic_series(3).unwrap();
    for (k, expected) in metric_q().iter().enumerate() {
        assert_eq!(b.q.coeff(k + 1), expected, "q^({})", k + 1);
    }
}

#[test]
fn metric_series_intertwines_order_by_order() {
    let b = cubic_series(4).unwrap();
    let v = cubic_potential();
    for k in 0..=4 {
        assert!(series_intertwining_defect(&b.q, &v, k).is_zero(), "order {k}");
    }
}

#[test]
fn printed_first_order_metric_fails_intertwining() {
    let v = cubic_potential();
    let mut coeffs = vec![WeylPolynomial::one()];
    coeffs.extend(published_q());
    let printed = qmetric::perturbation::OperatorSeries::new(coeffs).unwrap();
    assert!(!series_intertwining_defect(&printed, &v, 1).is_zero());
}

#[test]
fn second_order_energy_polynomial() {
    let b = cubic_series(2).unwrap();
    let expected = NumberPolynomial::new(vec![Coeff::from_ratio(11, 8), Coeff::from_ratio(15, 4), Coeff::from_ratio(15, 4)]);
    assert_eq!(b.energies.order(2), &expected);
}
