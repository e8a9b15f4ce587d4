use std::collections::BTreeMap;
use std::fmt::Write as _;

use qmetric::{Complex64, ComplexMatrix, ErrorClass};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::job::{JobSpec, SCHEMA_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    /// `"<="` for residuals, `">"` for strict positivity.
    pub relation: String,
    pub pass: bool,
}

impl Check {
    /// Passes iff `value ≤ threshold`; NaN fails.
    pub fn at_most(name: &str, value: f64, threshold: f64) -> Self {
        Self { name: name.to_string(), value, threshold, relation: "<=".into(), pass: value <= threshold }
    }

    /// Passes iff `value > threshold`.
    pub fn above(name: &str, value: f64, threshold: f64) -> Self {
        Self { name: name.to_string(), value, threshold, relation: ">".into(), pass: value > threshold }
    }
}

/// Matrix entries as `[re, im]` pairs, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixEntries {
    pub dim: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl MatrixEntries {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self { dim: m.dim(), entries: m.rows().iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect() }
    }

    pub fn to_matrix(&self) -> Option<ComplexMatrix> {
        let rows: Vec<Vec<Complex64>> = self.entries.iter().map(|r| r.iter().map(|[re, im]| Complex64::new(*re, *im)).collect()).collect();
        ComplexMatrix::from_rows(&rows).ok()
    }
}

/// Exact series, one string per order, coefficients as fractions.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SeriesText {
    pub r: Vec<String>,
    pub q: Vec<String>,
    pub energies: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportError {
    pub code: String,
    pub class: String,
    pub message: String,
}

impl ReportError {
    pub fn new(code: &str, class: ErrorClass, message: String) -> Self {
        let class = match class {
            ErrorClass::Input => "input",
            ErrorClass::Numerical => "numerical",
        };
        Self { code: code.to_string(), class: class.to_string(), message }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MetricReport {
    pub schema: u32,
    pub job: JobSpec,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<MatrixEntries>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesText>,
    pub checks: Vec<Check>,
    pub diagnostics: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ReportError>,
    pub timings: BTreeMap<String, f64>,
}

impl MetricReport {
    pub fn new(job: JobSpec) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            job,
            status: Status::Pass,
            q: None,
            series: None,
            checks: Vec::new(),
            diagnostics: BTreeMap::new(),
            error: None,
            timings: BTreeMap::new(),
        }
    }

    pub fn finalize(&mut self) {
        self.status = if self.error.is_some() {
            Status::Error
        } else if self.checks.iter().all(|c| c.pass) {
            Status::Pass
        } else {
            Status::Fail
        };
    }

    /// 0 pass, 1 check failure, 2 input error, 3 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match (&self.status, &self.error) {
            (Status::Pass, _) => 0,
            (Status::Fail, _) => 1,
            (Status::Error, Some(e)) if e.class == "numerical" => 3,
            (Status::Error, _) => 2,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is always serializable")
    }

    /// The same report without timings, for determinism comparisons.
    pub fn without_timings(&self) -> Self {
        Self { timings: BTreeMap::new(), ..self.clone() }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        let _ = writeln!(s, "status: {status}");
        if let Some(e) = &self.error {
            let _ = writeln!(s, "error [{}] ({}): {}", e.code, e.class, e.message);
        }
        for c in &self.checks {
            let _ = writeln!(
                s,
                "  [{}] {:<32} {:>12.3e} {} {:.1e}",
                if c.pass { "ok" } else { "FAIL" },
                c.name,
                c.value,
                c.relation,
                c.threshold
            );
        }
        for (k, v) in &self.diagnostics {
            let _ = writeln!(s, "  {k}: {v}");
        }
        if let Some(series) = &self.series {
            for (label, lines) in [("R", &series.r), ("q", &series.q), ("E", &series.energies)] {
                let _ = writeln!(s, "{label}:");
                for (k, line) in lines.iter().enumerate() {
                    let _ = writeln!(s, "  order {k}: {line}");
                }
            }
        }
        if let Some(q) = &self.q {
            let _ = writeln!(s, "q ({}×{}):", q.dim, q.dim);
            for row in &q.entries {
                let cells: Vec<String> = row.iter().map(|[re, im]| format!("{re:+.6e}{im:+.6e}i")).collect();
                let _ = writeln!(s, "  {}", cells.join("  "));
            }
        }
        for (k, v) in &self.timings {
            let _ = writeln!(s, "time {k}: {v:.3} ms");
        }
        s
    }
}
