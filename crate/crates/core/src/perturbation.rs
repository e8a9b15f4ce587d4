//! Perturbative generator corrections for `H = a†a + εV`.
//!
//! The eigenvector map `R = Σ εⁱ R⁽ⁱ⁾` sends `|n⟩` to the perturbed eigenvector
//! `|ψ_n⟩ = R|n⟩`. Order by order it solves
//!
//! ```text
//! [a†a, R⁽ⁱ⁾] = −V R⁽ⁱ⁻¹⁾ + Σ_{j=1}^{i} R⁽ⁱ⁻ʲ⁾ ℰ⁽ʲ⁾
//! ```
//!
//! where `ℰ⁽ʲ⁾ = E⁽ʲ⁾(a†a)` is the diagonal energy counterterm. `R⁽ⁱ⁾` is
//! chosen with zero diagonal part, which is the gauge `⟨n|R⁽ⁱ⁾|n⟩ = 0`.
//! The metric is the series `q = (R⁻¹)† R⁻¹`.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{ComplexMatrix, MatrixError};
use crate::weyl::{to_fock_matrix, AlgebraError, NumberPolynomial, WeylPolynomial};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PerturbationError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("series must start with the identity")]
    NotUnitLeading,
    #[error("series is empty")]
    EmptySeries,
    #[error("series lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("order {requested} requested but only {available} available")]
    OrderOutOfRange { requested: usize, available: usize },
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("state {state} at order {order} with bandwidth {bandwidth} reaches past the truncation N = {n_max}")]
    GuardBandViolation { state: usize, order: usize, bandwidth: usize, n_max: usize },
    #[error("unperturbed matrix must be diagonal")]
    NonDiagonalH0,
    #[error("unperturbed levels {0} and {1} coincide")]
    DegenerateH0(usize, usize),
}

/// Power series `Σ εⁱ coeffs[i]` with operator coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSeries {
    coeffs: Vec<WeylPolynomial>,
}

impl OperatorSeries {
    pub fn new(coeffs: Vec<WeylPolynomial>) -> Result<Self, PerturbationError> {
        if coeffs.is_empty() {
            return Err(PerturbationError::EmptySeries);
        }
        Ok(Self { coeffs })
    }

    /// `𝟙 + 0·ε + … + 0·ε^max_order`
    pub fn identity(max_order: usize) -> Self {
        let mut coeffs = vec![WeylPolynomial::zero(); max_order + 1];
        coeffs[0] = WeylPolynomial::one();
        Self { coeffs }
    }

    pub fn max_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[WeylPolynomial] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &WeylPolynomial {
        &self.coeffs[i]
    }

    pub fn truncated(&self, max_order: usize) -> Self {
        Self { coeffs: self.coeffs[..=max_order.min(self.max_order())].to_vec() }
    }

    /// Cauchy product truncated at the shorter length.
    pub fn multiply(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().min(rhs.coeffs.len());
        let coeffs = (0..len).map(|k| (0..=k).map(|i| self.coeffs[i].multiply(&rhs.coeffs[k - i])).sum()).collect();
        Self { coeffs }
    }

    pub fn adjoint(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(WeylPolynomial::adjoint).collect() }
    }

    /// Truncated Fock matrix of the sum `Σ εⁱ coeffs[i]` at a numeric `ε`.
    pub fn fock_matrix(&self, epsilon: f64, n_max: usize) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(n_max + 1);
        let mut power = 1.0;
        for c in &self.coeffs {
            out = &out + &to_fock_matrix(c, n_max).scale(Complex64::new(power, 0.0));
            power *= epsilon;
        }
        out
    }
}

impl fmt::Display for OperatorSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "order {i}: {c}")?;
        }
        Ok(())
    }
}

/// Energy corrections `E⁽ⁱ⁾(n)` as exact polynomials in the level `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnergySeries {
    per_order: Vec<NumberPolynomial>,
}

impl EnergySeries {
    /// `E⁽⁰⁾(n) = n`
    pub fn oscillator() -> Self {
        Self { per_order: vec![NumberPolynomial::n()] }
    }

    pub fn max_order(&self) -> usize {
        self.per_order.len() - 1
    }

    pub fn per_order(&self) -> &[NumberPolynomial] {
        &self.per_order
    }

    pub fn order(&self, i: usize) -> &NumberPolynomial {
        &self.per_order[i]
    }

    /// `Σ_i εⁱ E⁽ⁱ⁾(n)`
    pub fn eval_f64(&self, n: f64, epsilon: f64) -> Complex64 {
        self.per_order.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, e| acc * epsilon + e.eval_f64(n))
    }
}

impl fmt::Display for EnergySeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.per_order.iter().enumerate() {
            writeln!(f, "order {i}: {e}")?;
        }
        Ok(())
    }
}

/// Computes `(R⁽ⁱ⁾, E⁽ⁱ⁾)` from the orders below `i`.
pub fn solve_order(
    v: &WeylPolynomial,
    series: &OperatorSeries,
    energies: &EnergySeries,
    i: usize,
) -> Result<(WeylPolynomial, NumberPolynomial), PerturbationError> {
    if i == 0 {
        return Err(PerturbationError::ZeroOrder);
    }
    if !series.coeffs[0].is_one() {
        return Err(PerturbationError::NotUnitLeading);
    }
    let available = series.max_order().min(energies.max_order());
    if available + 1 < i {
        return Err(PerturbationError::OrderOutOfRange { requested: i - 1, available });
    }
    let mut y = -&v.multiply(series.coeff(i - 1));
    for j in 1..i {
        let e_op = energies.order(j).to_operator();
        y = &y + &series.coeff(i - j).multiply(&e_op);
    }
    let e_i = NumberPolynomial::from_diagonal_operator(&y.diagonal_part())?.neg();
    let rhs = &y + &e_i.to_operator();
    let r_i = rhs.ad_number_solve()?;
    Ok((r_i, e_i))
}

/// `R` and `E` through `max_order` for `H = a†a + εV`.
pub fn solve_series(v: &WeylPolynomial, max_order: usize) -> Result<(OperatorSeries, EnergySeries), PerturbationError> {
    let mut r = OperatorSeries::identity(0);
    let mut e = EnergySeries::oscillator();
    for i in 1..=max_order {
        let (r_i, e_i) = solve_order(v, &r, &e, i)?;
        r.coeffs.push(r_i);
        e.per_order.push(e_i);
    }
    Ok((r, e))
}

/// Neumann inverse: `(R⁻¹)⁽ᵏ⁾ = −Σ_{j=1}^{k} R⁽ʲ⁾ (R⁻¹)⁽ᵏ⁻ʲ⁾`.
pub fn invert_series(r: &OperatorSeries) -> Result<OperatorSeries, PerturbationError> {
    if !r.coeffs[0].is_one() {
        return Err(PerturbationError::NotUnitLeading);
    }
    let mut inv: Vec<WeylPolynomial> = vec![WeylPolynomial::one()];
    for k in 1..=r.max_order() {
        let s: WeylPolynomial = (1..=k).map(|j| r.coeffs[j].multiply(&inv[k - j])).sum();
        inv.push(-&s);
    }
    Ok(OperatorSeries { coeffs: inv })
}

/// `q⁽ᵏ⁾ = Σ_{i+j=k} ((R⁻¹)⁽ⁱ⁾)† (R⁻¹)⁽ʲ⁾`
pub fn metric_series(rinv: &OperatorSeries) -> OperatorSeries {
    rinv.adjoint().multiply(rinv)
}

/// Order-`k` coefficient of `q H − H† q` for `H = a†a + εV`:
/// `q⁽ᵏ⁾a†a − a†a q⁽ᵏ⁾ + q⁽ᵏ⁻¹⁾V − V†q⁽ᵏ⁻¹⁾`.
pub fn series_intertwining_defect(q: &OperatorSeries, v: &WeylPolynomial, k: usize) -> WeylPolynomial {
    let h0 = WeylPolynomial::number();
    let mut d = q.coeff(k).commutator(&h0);
    if k > 0 {
        let prev = q.coeff(k - 1);
        d = &(&d + &prev.multiply(v)) - &v.adjoint().multiply(prev);
    }
    d
}

/// Rayleigh–Schrödinger corrections for one level of a truncated problem.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericPerturbation {
    pub n_max: usize,
    pub state: usize,
    pub order: usize,
    /// `corrections[i]` is `|ψ_n⁽ⁱ⁾⟩`, `corrections[0] = |n⟩`.
    pub corrections: Vec<Vec<Complex64>>,
    /// `energies[i]` is `E_n⁽ⁱ⁾`.
    pub energies: Vec<Complex64>,
}

fn check_unperturbed(h0: &ComplexMatrix) -> Result<Vec<Complex64>, PerturbationError> {
    if !h0.is_diagonal() {
        return Err(PerturbationError::NonDiagonalH0);
    }
    let d: Vec<Complex64> = (0..h0.dim()).map(|k| h0.get(k, k)).collect();
    for i in 0..d.len() {
        for j in (i + 1)..d.len() {
            if d[i] == d[j] {
                return Err(PerturbationError::DegenerateH0(i, j));
            }
        }
    }
    Ok(d)
}

fn check_guard_band(state: usize, order: usize, bandwidth: usize, n_max: usize) -> Result<(), PerturbationError> {
    if state + bandwidth * order > n_max {
        Err(PerturbationError::GuardBandViolation { state, order, bandwidth, n_max })
    } else {
        Ok(())
    }
}

/// State-space recursion with the sum restricted to `E' ≠ E`:
///
/// ```text
/// ψ⁽ⁱ⁾_m = (⟨m|V|ψ⁽ⁱ⁻¹⁾⟩ − Σ_{j=1}^{i} E⁽ʲ⁾ ψ⁽ⁱ⁻ʲ⁾_m) / (E⁽⁰⁾_n − E⁽⁰⁾_m),   m ≠ n
/// E⁽ⁱ⁾ = ⟨n|V|ψ⁽ⁱ⁻¹⁾⟩
/// ```
pub fn numeric_rs(h0: &ComplexMatrix, v: &ComplexMatrix, state: usize, order: usize) -> Result<NumericPerturbation, PerturbationError> {
    h0.check_same_dim(v)?;
    let levels = check_unperturbed(h0)?;
    let dim = h0.dim();
    let n_max = dim - 1;
    if state > n_max {
        return Err(PerturbationError::GuardBandViolation { state, order, bandwidth: 0, n_max });
    }
    check_guard_band(state, order, v.bandwidth(), n_max)?;

    let zero = Complex64::new(0.0, 0.0);
    let mut psi0 = vec![zero; dim];
    psi0[state] = Complex64::new(1.0, 0.0);
    let mut corrections = vec![psi0];
    let mut energies = vec![levels[state]];
    for i in 1..=order {
        let vpsi = v.mul_vec(&corrections[i - 1]);
        let e_i = vpsi[state];
        energies.push(e_i);
        let mut next = vec![zero; dim];
        for m in (0..dim).filter(|&m| m != state) {
            let shift: Complex64 = (1..=i).map(|j| energies[j] * corrections[i - j][m]).sum();
            next[m] = (vpsi[m] - shift) / (levels[state] - levels[m]);
        }
        corrections.push(next);
    }
    Ok(NumericPerturbation { n_max, state, order, corrections, energies })
}

/// `max_{n ≤ n_states, i ≤ order} ‖R⁽ⁱ⁾|n⟩ − |ψ_n⁽ⁱ⁾⟩‖_∞` with `R⁽ⁱ⁾` realized
/// on the same truncation as `h0`, `v`.
pub fn cross_validate(
    symbolic: &OperatorSeries,
    h0: &ComplexMatrix,
    v: &ComplexMatrix,
    n_states: usize,
    order: usize,
) -> Result<f64, PerturbationError> {
    if order > symbolic.max_order() {
        return Err(PerturbationError::OrderOutOfRange { requested: order, available: symbolic.max_order() });
    }
    h0.check_same_dim(v)?;
    let n_max = h0.dim() - 1;
    let bandwidth = v.bandwidth();
    for n in 0..=n_states {
        check_guard_band(n, order, bandwidth, n_max)?;
    }
    let mats: Vec<ComplexMatrix> = (0..=order).map(|i| to_fock_matrix(symbolic.coeff(i), n_max)).collect();
    let mut worst: f64 = 0.0;
    for n in 0..=n_states {
        let num = numeric_rs(h0, v, n, order)?;
        for (i, m) in mats.iter().enumerate() {
            let col = m.column(n);
            let diff = col.iter().zip(&num.corrections[i]).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            worst = worst.max(diff);
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{from_xp, Coeff};

    fn cubic() -> WeylPolynomial {
        from_xp("i x^3").unwrap()
    }

    #[test]
    fn first_order_cubic() {
        let (r, e) = solve_series(&cubic(), 1).unwrap();
        assert_eq!(r.coeff(1), &from_xp("-2/3 p^3 - x^2 p + i x").unwrap());
        assert!(e.order(1).is_zero());
    }

    #[test]
    fn second_order_energy() {
        let (_, e) = solve_series(&cubic(), 2).unwrap();
        let expected = NumberPolynomial::new(vec![Coeff::from_ratio(11, 8), Coeff::from_ratio(30, 8), Coeff::from_ratio(30, 8)]);
        assert_eq!(e.order(2), &expected);
    }

    #[test]
    fn identity_inverse_and_metric() {
        let id = OperatorSeries::identity(3);
        assert_eq!(invert_series(&id).unwrap(), id);
        assert_eq!(metric_series(&id), id);
    }

    #[test]
    fn first_order_inverse_is_negation() {
        let r1 = cubic();
        let r = OperatorSeries::new(vec![WeylPolynomial::one(), r1.clone()]).unwrap();
        assert_eq!(invert_series(&r).unwrap().coeff(1), &-&r1);
    }

    #[test]
    fn non_unit_leading_is_rejected() {
        let r = OperatorSeries::new(vec![WeylPolynomial::number()]).unwrap();
        assert_eq!(invert_series(&r), Err(PerturbationError::NotUnitLeading));
        assert_eq!(OperatorSeries::new(vec![]), Err(PerturbationError::EmptySeries));
    }

    #[test]
    fn zero_potential_numeric() {
        let h0 = to_fock_matrix(&WeylPolynomial::number(), 10);
        let v = ComplexMatrix::zeros(11);
        let num = numeric_rs(&h0, &v, 2, 3).unwrap();
        assert_eq!(num.energies[0], Complex64::new(2.0, 0.0));
        assert!(num.energies[1..].iter().all(|e| e.norm() == 0.0));
        assert!(num.corrections[1..].iter().flatten().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn guard_band() {
        let h0 = to_fock_matrix(&WeylPolynomial::number(), 10);
        let v = to_fock_matrix(&cubic(), 10);
        assert!(matches!(numeric_rs(&h0, &v, 5, 2), Err(PerturbationError::GuardBandViolation { .. })));
        assert!(numeric_rs(&h0, &v, 4, 2).is_ok());
    }

    #[test]
    fn rejects_bad_unperturbed() {
        let v = ComplexMatrix::zeros(3);
        let nondiag = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0, 0.0], vec![0.0; 3], vec![0.0; 3]]).unwrap();
        assert_eq!(numeric_rs(&nondiag, &v, 0, 1), Err(PerturbationError::NonDiagonalH0));
        let degen = ComplexMatrix::from_real_rows(&[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 2.0]]).unwrap();
        assert_eq!(numeric_rs(&degen, &v, 0, 1), Err(PerturbationError::DegenerateH0(0, 1)));
    }

    #[test]
    fn cross_validate_order_zero() {
        let h0 = to_fock_matrix(&WeylPolynomial::number(), 20);
        let v = to_fock_matrix(&cubic(), 20);
        let (r, _) = solve_series(&cubic(), 1).unwrap();
        assert_eq!(cross_validate(&r, &h0, &v, 5, 0).unwrap(), 0.0);
    }
}
