use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use qmetric_cli::{parse_job, run, JobError, Mode, OutputFormat};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Model,
    Perturb,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

/// Build and verify the metric operator for a pseudo-Hermitian Hamiltonian.
#[derive(Debug, Parser)]
#[command(name = "qmetric", version)]
struct Args {
    /// JSON job file.
    job: PathBuf,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Perturbative order.
    #[arg(long)]
    order: Option<usize>,
    /// Fock truncation N.
    #[arg(long = "fock-dim")]
    fock_dim: Option<usize>,
    /// Eigenvalue classification tolerance.
    #[arg(long = "tol-class")]
    tol_class: Option<f64>,
    /// Threshold applied to every residual check.
    #[arg(long = "tol-check")]
    tol_check: Option<f64>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn fail_input(e: &JobError) -> ExitCode {
    let body =
        serde_json::json!({ "schema": 1, "status": "error", "error": { "code": e.code(), "class": "input", "message": e.to_string() } });
    eprintln!("{}", serde_json::to_string_pretty(&body).unwrap_or_default());
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let start = Instant::now();
    let mut job = match parse_job(&args.job) {
        Ok(job) => job,
        Err(e) => return fail_input(&e),
    };
    if let Some(m) = args.mode {
        job.mode = match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Model => Mode::Model,
            ModeArg::Perturb => Mode::Perturb,
        };
    }
    job.order = args.order.or(job.order);
    job.fock_dim = args.fock_dim.or(job.fock_dim);
    job.tolerances.classification = args.tol_class.or(job.tolerances.classification);
    job.tolerances.check = args.tol_check.or(job.tolerances.check);
    if let Some(f) = args.format {
        job.output_format = match f {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Text => OutputFormat::Text,
        };
    }
    if let Err(e) = job.validate() {
        return fail_input(&e);
    }
    let parse_ms = start.elapsed().as_secs_f64() * 1e3;

    let mut report = run(&job);
    report.timings.insert("parseMs".into(), parse_ms);
    let rendered = match job.output_format {
        OutputFormat::Json => report.to_json() + "\n",
        OutputFormat::Text => report.to_text(),
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    if let Some(e) = &report.error {
        eprintln!("error [{}]: {}", e.code, e.message);
    }
    ExitCode::from(report.exit_code() as u8)
}
