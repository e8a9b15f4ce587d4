//! Job files: a versioned JSON document naming a construction route and its input.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum JobError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid job field `{field}`: {message}")]
    Validation { field: String, message: String },
}

impl JobError {
    pub fn code(&self) -> &'static str {
        match self {
            JobError::Io { .. } => "IoError",
            JobError::Parse { .. } => "ParseError",
            JobError::Validation { .. } => "ValidationError",
        }
    }

    fn invalid(field: &str, message: impl Into<String>) -> Self {
        JobError::Validation { field: field.to_string(), message: message.into() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    Model,
    Perturb,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

/// A model given either by bare name or as `{name, params}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModelRef {
    Name(String),
    Spec {
        name: String,
        #[serde(default)]
        params: BTreeMap<String, f64>,
    },
}

impl ModelRef {
    pub fn name(&self) -> &str {
        match self {
            ModelRef::Name(n) => n,
            ModelRef::Spec { name, .. } => name,
        }
    }

    pub fn param(&self, key: &str) -> Option<f64> {
        match self {
            ModelRef::Name(_) => None,
            ModelRef::Spec { params, .. } => params.get(key).copied(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Eigenvalue clustering and real/complex classification.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification: Option<f64>,
    /// Replaces every check threshold when set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct JobSpec {
    pub schema: u32,
    pub mode: Mode,
    /// Row-major matrix, each entry `[re, im]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelRef>,
    /// Perturbation `x`/`p` expression, e.g. `i x^3`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub potential: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    /// Fock truncation `N` (levels `0..=N`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fock_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default)]
    pub epsilon_symbolic: bool,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub output_format: OutputFormat,
}

pub fn parse_job(path: impl AsRef<Path>) -> Result<JobSpec, JobError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| JobError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_job_str(&text)
}

pub fn parse_job_str(text: &str) -> Result<JobSpec, JobError> {
    let job: JobSpec =
        serde_json::from_str(text).map_err(|e| JobError::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
    job.validate()?;
    Ok(job)
}

pub const MODEL_NAMES: [&str; 4] = ["two_by_two", "harmonic_oscillator", "shifted_cubic", "cubic"];

impl JobSpec {
    pub fn validate(&self) -> Result<(), JobError> {
        if self.schema != SCHEMA_VERSION {
            return Err(JobError::invalid("schema", format!("unsupported version {}, expected {SCHEMA_VERSION}", self.schema)));
        }
        if self.order == Some(0) {
            return Err(JobError::invalid("order", "must be positive"));
        }
        if self.fock_dim == Some(0) {
            return Err(JobError::invalid("fockDim", "must be positive"));
        }
        for (name, v) in [("tolerances.classification", self.tolerances.classification), ("tolerances.check", self.tolerances.check)] {
            if let Some(v) = v {
                if !(v.is_finite() && v >= 0.0) {
                    return Err(JobError::invalid(name, "must be finite and non-negative"));
                }
            }
        }
        if let Some(e) = self.epsilon {
            if !e.is_finite() {
                return Err(JobError::invalid("epsilon", "must be finite"));
            }
        }
        if let Some(m) = &self.model {
            if !MODEL_NAMES.contains(&m.name()) {
                return Err(JobError::invalid("model.name", format!("unknown model `{}`, expected one of {MODEL_NAMES:?}", m.name())));
            }
            if let ModelRef::Spec { params, .. } = m {
                if let Some((k, _)) = params.iter().find(|(_, v)| !v.is_finite()) {
                    return Err(JobError::invalid(&format!("model.params.{k}"), "must be finite"));
                }
            }
        }
        match self.mode {
            Mode::Exact => {
                let m = self.matrix.as_ref().ok_or_else(|| JobError::invalid("matrix", "required in exact mode"))?;
                if m.is_empty() {
                    return Err(JobError::invalid("matrix", "must have at least one row"));
                }
                if let Some(i) = m.iter().position(|row| row.len() != m.len()) {
                    return Err(JobError::invalid(&format!("matrix[{i}]"), format!("has {} entries, expected {}", m[i].len(), m.len())));
                }
            }
            Mode::Model => {
                let m = self.model.as_ref().ok_or_else(|| JobError::invalid("model", "required in model mode"))?;
                let required: &[&str] = match m.name() {
                    "two_by_two" => &["r", "s", "t", "theta", "phi"],
                    "shifted_cubic" => &["alpha", "epsilon"],
                    _ => &[],
                };
                if m.name() == "cubic" && self.order.is_none() {
                    return Err(JobError::invalid("order", "required by `cubic`"));
                }
                for key in required {
                    if m.param(key).is_none() {
                        return Err(JobError::invalid(&format!("model.params.{key}"), format!("required by `{}`", m.name())));
                    }
                }
            }
            Mode::Perturb => {
                match (&self.model, &self.potential) {
                    (Some(m), None) if m.name() != "cubic" => {
                        return Err(JobError::invalid("model", "perturb mode accepts only `cubic` or an explicit potential"));
                    }
                    (None, None) => return Err(JobError::invalid("potential", "perturb mode needs `potential` or `model`")),
                    _ => {}
                }
                if self.order.is_none() {
                    return Err(JobError::invalid("order", "required in perturb mode"));
                }
                if !self.epsilon_symbolic && self.epsilon.is_none() {
                    return Err(JobError::invalid("epsilon", "required when epsilonSymbolic is false"));
                }
            }
        }
        Ok(())
    }
}
