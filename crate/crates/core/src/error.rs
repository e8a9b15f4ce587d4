use thiserror::Error;

use crate::linalg::MatrixError;
use crate::matrix_metric::MetricError;
use crate::models::ModelError;
use crate::perturbation::PerturbationError;
use crate::weyl::AlgebraError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Perturbation(#[from] PerturbationError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Broad failure class, used for process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed or out-of-contract input.
    Input,
    /// The input was valid but the computation could not proceed.
    Numerical,
}

/// Machine-readable identity of an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ErrorCode {
    pub name: &'static str,
    pub class: ErrorClass,
}

impl ErrorCode {
    const fn input(name: &'static str) -> Self {
        Self { name, class: ErrorClass::Input }
    }

    const fn numerical(name: &'static str) -> Self {
        Self { name, class: ErrorClass::Numerical }
    }
}

fn matrix_code(e: &MatrixError) -> ErrorCode {
    match e {
        MatrixError::Empty => ErrorCode::input("EmptyMatrix"),
        MatrixError::NotSquare { .. } => ErrorCode::input("NotSquare"),
        MatrixError::NonFinite { .. } => ErrorCode::input("NonFinite"),
        MatrixError::DimensionMismatch { .. } => ErrorCode::input("DimensionMismatch"),
    }
}

fn algebra_code(e: &AlgebraError) -> ErrorCode {
    match e {
        AlgebraError::Parse { .. } => ErrorCode::input("ParseError"),
        AlgebraError::DiagonalObstruction { .. } => ErrorCode::numerical("DiagonalObstruction"),
        AlgebraError::NotDiagonal { .. } => ErrorCode::numerical("NotDiagonal"),
        AlgebraError::IrrationalMatrixElement { .. } => ErrorCode::numerical("IrrationalMatrixElement"),
    }
}

fn metric_code(e: &MetricError) -> ErrorCode {
    match e {
        MetricError::Matrix(m) => matrix_code(m),
        MetricError::InvalidTolerance(_) => ErrorCode::input("InvalidTolerance"),
        MetricError::DegenerateSpectrum { .. } => ErrorCode::numerical("DegenerateSpectrum"),
        MetricError::NumericalFailure(_) => ErrorCode::numerical("NumericalFailure"),
        MetricError::UnpairedComplexEigenvalue { .. } => ErrorCode::numerical("UnpairedComplexEigenvalue"),
        MetricError::Unclassified => ErrorCode::numerical("Unclassified"),
        MetricError::SingularBasis { .. } => ErrorCode::numerical("SingularBasis"),
        MetricError::SingularS => ErrorCode::input("SingularS"),
        MetricError::ComplexSpectrum => ErrorCode::input("ComplexSpectrum"),
    }
}

fn perturbation_code(e: &PerturbationError) -> ErrorCode {
    match e {
        PerturbationError::Algebra(a) => algebra_code(a),
        PerturbationError::Matrix(m) => matrix_code(m),
        PerturbationError::NotUnitLeading => ErrorCode::input("NotUnitLeading"),
        PerturbationError::EmptySeries => ErrorCode::input("EmptySeries"),
        PerturbationError::LengthMismatch(..) => ErrorCode::input("LengthMismatch"),
        PerturbationError::OrderOutOfRange { .. } => ErrorCode::input("OrderOutOfRange"),
        PerturbationError::ZeroOrder => ErrorCode::input("ZeroOrder"),
        PerturbationError::GuardBandViolation { .. } => ErrorCode::input("GuardBandViolation"),
        PerturbationError::NonDiagonalH0 => ErrorCode::input("NonDiagonalH0"),
        PerturbationError::DegenerateH0(..) => ErrorCode::input("DegenerateH0"),
    }
}

fn model_code(e: &ModelError) -> ErrorCode {
    match e {
        ModelError::InvalidParameters(_) => ErrorCode::input("InvalidParameters"),
        ModelError::DegenerateParameters { .. } => ErrorCode::numerical("DegenerateParameters"),
        ModelError::ZeroScale { .. } => ErrorCode::input("ZeroScale"),
        ModelError::GuardBandViolation { .. } => ErrorCode::input("GuardBandViolation"),
        ModelError::Algebra(a) => algebra_code(a),
        ModelError::Perturbation(p) => perturbation_code(p),
        ModelError::Metric(m) => metric_code(m),
    }
}

impl Error {
    pub fn code(&self) -> ErrorCode {
        match self {
            Error::Matrix(e) => matrix_code(e),
            Error::Algebra(e) => algebra_code(e),
            Error::Metric(e) => metric_code(e),
            Error::Perturbation(e) => perturbation_code(e),
            Error::Model(e) => model_code(e),
        }
    }
}
