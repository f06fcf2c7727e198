//! Command-line front end: `derive`, `verify` and `matrix`.

mod derive;
mod matrix;
mod verify;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bgg::family::{alt_diagram, alt_row};
use crate::bgg::{Bgg, ComplexSpec};
use crate::proxies::{named_bgg, proxy_row, NamedError, NAMED};

pub use verify::{golden, run_suite, Case, GoldenEntry, GoldenFile, Suite, VerifyReport, GOLDEN_JSON};

/// Exit code for a passing run.
pub const EXIT_OK: i32 = 0;
/// Exit code when a verification check fails.
pub const EXIT_FAILED: i32 = 1;
/// Exit code for usage and validation errors.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "bggc", version, about = "Derive complexes from linked pairs of complexes and verify them exactly")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an output complex and write its spaces, operators and cohomology.
    Derive(DeriveArgs),
    /// Run a verification suite and write a JSON report.
    Verify(VerifyArgs),
    /// Export one operator matrix in the bases of its spaces.
    Matrix(MatrixArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Rows `J` and `J+1` of the `Alt^{i,J}`-valued de Rham diagram.
    Altij,
    /// The polynomial de Rham complex alone.
    Derham,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, env = "BGGC_JOBS")]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct Target {
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(NAMED), conflicts_with = "family")]
    pub named: Option<String>,
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    /// Ambient dimension for `--family`.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Value degree of the top row for `--family altij`.
    #[arg(long = "J")]
    pub j: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct DeriveArgs {
    #[command(flatten)]
    pub target: Target,
    /// Polynomial degree cap of the first space of the top row.
    #[arg(long)]
    pub degree: Option<i64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[command(flatten)]
    pub target: Target,
    /// Use every valid named diagram (the default when no target is given).
    #[arg(long)]
    pub all_named: bool,
    #[arg(long, default_value_t = 8)]
    pub degree: i64,
    /// Largest ambient dimension for the exhaustive algebraic suites.
    #[arg(long, default_value_t = 5)]
    pub max_dim: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args)]
pub struct MatrixArgs {
    #[command(flatten)]
    pub target: Target,
    /// Index of the operator in the output complex.
    #[arg(long)]
    pub index: usize,
    /// Polynomial degree cap of the operator's domain.
    #[arg(long)]
    pub degree: i64,
    #[command(flatten)]
    pub output: Output,
}

/// A usage or validation error, reported with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl From<NamedError> for UsageError {
    fn from(e: NamedError) -> Self {
        match e {
            NamedError::Invalid(b) => UsageError(format!("{}: {b}", b.kind())),
            other => UsageError(other.to_string()),
        }
    }
}

/// What a target resolves to.
pub enum Built {
    Diagram(Box<Bgg>),
    Complex(ComplexSpec),
}

impl Built {
    /// The output complex of a diagram, or the complex itself.
    pub fn complex(&self) -> &ComplexSpec {
        match self {
            Built::Diagram(b) => b.output_complex(),
            Built::Complex(c) => c,
        }
    }
}

impl Target {
    pub fn named(name: &str) -> Self {
        Target {
            named: Some(name.to_string()),
            family: None,
            dim: None,
            j: None,
        }
    }

    pub fn altij(n: usize, j: usize) -> Self {
        Target {
            named: None,
            family: Some(Family::Altij),
            dim: Some(n),
            j: Some(j),
        }
    }

    pub fn derham(n: usize) -> Self {
        Target {
            named: None,
            family: Some(Family::Derham),
            dim: Some(n),
            j: None,
        }
    }

    pub(crate) fn default_degree(&self) -> i64 {
        match (&self.named, self.dim) {
            (Some(name), _) if name.ends_with("2d") || name.ends_with("2d_fail") => 6,
            (Some(_), _) => 8,
            (None, Some(n)) => 2 * n as i64 + 2,
            (None, None) => 8,
        }
    }

    /// Name used in reports and in the golden tables.
    pub fn label(&self) -> String {
        match (&self.named, self.family) {
            (Some(n), _) => n.clone(),
            (None, Some(Family::Altij)) => format!("altij n={} J={}", self.dim.unwrap_or(0), self.j.unwrap_or(0)),
            (None, Some(Family::Derham)) => format!("derham n={}", self.dim.unwrap_or(0)),
            (None, None) => String::new(),
        }
    }

    pub fn build(&self, degree: i64) -> Result<Built, UsageError> {
        if degree < 0 {
            return Err(UsageError(format!("degree must be nonnegative, got {degree}")));
        }
        if let Some(name) = &self.named {
            return Ok(Built::Diagram(Box::new(named_bgg(name, degree)?)));
        }
        let n = self.dim.ok_or_else(|| UsageError("--dim is required with --family".into()))?;
        match self.family {
            Some(Family::Altij) => {
                let j = self.j.ok_or_else(|| UsageError("--J is required with --family altij".into()))?;
                if !(1..=6).contains(&n) || j >= n {
                    return Err(UsageError(format!("need 1 <= dim <= 6 and J < dim, got dim {n}, J {j}")));
                }
                let bgg = alt_diagram(n, j, degree)
                    .validate()
                    .map_err(|e| UsageError(format!("{}: {e}", e.kind())))?;
                Ok(Built::Diagram(Box::new(bgg)))
            }
            Some(Family::Derham) => {
                if !(1..=6).contains(&n) {
                    return Err(UsageError(format!("need 1 <= dim <= 6, got {n}")));
                }
                let row = if n == 2 || n == 3 {
                    proxy_row(n, 0, degree).expect("proxy dimension")
                } else {
                    alt_row(n, 0, degree)
                };
                Ok(Built::Complex(row))
            }
            None => Err(UsageError("one of --named or --family is required".into())),
        }
    }
}

fn init_jobs(jobs: Option<usize>) {
    if let Some(j) = jobs {
        // Ignoring the error: the pool can only be configured once per process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
}

fn emit(output: &Output, bytes: &[u8]) -> Result<(), UsageError> {
    match &output.out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| UsageError(format!("writing {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| UsageError(format!("writing output: {e}"))),
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match &cli.command {
        Command::Derive(a) => {
            init_jobs(a.output.jobs);
            derive::run(a)
        }
        Command::Verify(a) => {
            init_jobs(a.output.jobs);
            verify::run(a)
        }
        Command::Matrix(a) => {
            init_jobs(a.output.jobs);
            matrix::run(a)
        }
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}
