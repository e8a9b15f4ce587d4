//! Reference models with closed-form or exactly computable metrics.

pub mod cubic;
pub mod oscillator;
pub mod shifted;
pub mod two_by_two;

use thiserror::Error;

use crate::matrix_metric::MetricError;
use crate::perturbation::PerturbationError;
use crate::weyl::AlgebraError;

pub use cubic::{cubic_potential, cubic_series, series_bundle, SeriesBundle};
pub use oscillator::{generator_scale_demo, generator_scale_weights_exact, harmonic_oscillator_bundle, OscillatorBundle};
pub use shifted::{shifted_cubic_bundle, ShiftedCubicBundle, ShiftedCubicParams};
pub use two_by_two::{two_by_two_bundle, two_by_two_symmetry_checks, Branch, TwoByTwoBundle, TwoByTwoParams};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("parameters at the exceptional point (st − r² sin²θ = {discriminant:e})")]
    DegenerateParameters { discriminant: f64 },
    #[error("generator scale c_{index} is zero")]
    ZeroScale { index: usize },
    #[error("{states} states at order {order} do not fit the truncation N = {n_max}")]
    GuardBandViolation { states: usize, order: usize, n_max: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Perturbation(#[from] PerturbationError),
    #[error(transparent)]
    Metric(#[from] MetricError),
}
