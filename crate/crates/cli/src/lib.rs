//! JSON job files in, metric reports out.

pub mod job;
pub mod report;
pub mod run;

pub use job::{parse_job, parse_job_str, JobError, JobSpec, Mode, ModelRef, OutputFormat, Tolerances};
pub use report::{Check, MatrixEntries, MetricReport, ReportError, SeriesText, Status};
pub use run::run;
