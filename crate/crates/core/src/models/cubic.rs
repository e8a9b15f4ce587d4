//! Cubic oscillator `H = a†a + iεx³` and its published series data.

use super::ModelError;
use crate::perturbation::{invert_series, metric_series, solve_series, EnergySeries, OperatorSeries};
use crate::weyl::{from_xp, WeylPolynomial};

/// `V = ix³`
pub fn cubic_potential() -> WeylPolynomial {
    from_xp("i x^3").expect("valid expression")
}

/// `R⁽¹⁾…R⁽³⁾` as printed, with the printed word order.
pub const PUBLISHED_R: [&str; 3] = [
    "-2/3 p^3 - x^2 p + i x",
    "23/288 p^6 + 23/96 x^2 p^4 - 1/48 i x p^3 + 7/96 x^4 p^2 - 1/16 p^2 + 13/48 i x^3 p + 11/8 x^2 - 41/288 x^6",
    "59/1296 p^9 + 59/288 x^2 p^7 - 593/288 i x p^6 - 163/120 p^5 + 109/288 x^4 p^5 - 1591/288 i x^3 p^4 \
     - 769/48 x^2 p^3 + 307/864 x^6 p^3 + 649/48 i x p^2 - 443/96 i x^5 p^2 - 17/12 p - 13 x^4 p \
     + 41/288 x^8 p + 685/72 i x^3 - 287/288 i x^7",
];

/// `q⁽¹⁾…q⁽³⁾` as printed.
pub const PUBLISHED_Q: [&str; 3] = [
    "-4/3 p^3 - 2 x p x",
    "169/144 p^6 + 169/48 x p^4 x + 137/48 p x^4 p + 41/144 x^6 - 177/8 x^2",
    "-181/3 p - 41/36 x^4 p x^4 + 457/24 x^2 p x^2 - 523/108 x^3 p^3 x^3 + 3463/60 p^5 + 5669/72 x p^3 x \
     - 253/36 x^2 p^5 x^2 - 155/36 x p^7 x - 155/162 p^9",
];

/// `q⁽¹⁾…q⁽³⁾` of `(R⁻¹)†R⁻¹` for the published `R`, written in Hermitian
/// words. These are the values that satisfy `qH = H†q` order by order.
pub const METRIC_Q: [&str; 3] = [
    "4/3 p^3 + 2 x p x",
    "169/144 p^6 + 169/48 x p^4 x + 137/48 p x^4 p + 41/144 x^6 - 113/16 x^2 - 241/16 p^2",
    "613/6 p + 41/72 x^4 p x^4 - 503/24 x^2 p x^2 + 739/216 x^3 p^3 x^3 - 3587/60 p^5 - 6241/72 x p^3 x \
     + 397/72 x^2 p^5 x^2 + 251/72 x p^7 x + 251/324 p^9",
];

fn parse_all(src: &[&str]) -> Vec<WeylPolynomial> {
    src.iter().map(|s| from_xp(s).expect("valid expression")).collect()
}

pub fn published_r() -> Vec<WeylPolynomial> {
    parse_all(&PUBLISHED_R)
}

pub fn published_q() -> Vec<WeylPolynomial> {
    parse_all(&PUBLISHED_Q)
}

pub fn metric_q() -> Vec<WeylPolynomial> {
    parse_all(&METRIC_Q)
}

/// Perturbative data for `a†a + εV` through a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesBundle {
    pub potential: WeylPolynomial,
    pub r: OperatorSeries,
    pub r_inverse: OperatorSeries,
    pub q: OperatorSeries,
    pub energies: EnergySeries,
}

pub fn series_bundle(potential: WeylPolynomial, order: usize) -> Result<SeriesBundle, ModelError> {
    let (r, energies) = solve_series(&potential, order)?;
    let r_inverse = invert_series(&r)?;
    let q = metric_series(&r_inverse);
    Ok(SeriesBundle { potential, r, r_inverse, q, energies })
}

pub fn cubic_series(order: usize) -> Result<SeriesBundle, ModelError> {
    series_bundle(cubic_potential(), order)
}
