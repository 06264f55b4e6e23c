//! Command-line front end: file formats, command dispatch and JSON reports.

pub mod commands;
mod error;
pub mod format;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use error::CliError;
pub use report::{RunReport, Status};

/// Environment variable consulted when neither the files nor `--field` fix the field.
pub const FIELD_ENV: &str = "COTSTRUCT_FIELD";

#[derive(Debug, Parser)]
#[command(
    name = "cotstruct",
    version,
    about = "Co-t-structures generated by compact objects"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Coefficient field: a supported prime or "rational".
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Include wall-clock time in the report (makes it non-deterministic).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension of Hom(X, Σ^n Y) in the homotopy category.
    Hom(HomArgs),
    /// Decomposition triangle A → X → B → ΣA with all runtime checks.
    Decompose(DecomposeArgs),
    /// Runs every checker on a corpus of complexes.
    Verify(VerifyArgs),
    /// Writes seeded pseudo-random complexes.
    Random(RandomArgs),
}

#[derive(Debug, Args)]
pub struct HomArgs {
    pub x: PathBuf,
    pub y: PathBuf,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub shift: i32,
    /// Print one representative chain map per basis class.
    #[arg(long)]
    pub show_reps: bool,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    pub x: PathBuf,
    /// Generator complex; repeat for several.
    #[arg(long = "gen", required = true)]
    pub gens: Vec<PathBuf>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// Declare that the shifts of the generators generate.
    #[arg(long)]
    pub generating: bool,
    /// Extra objects of B used by the approximation checks.
    #[arg(long = "sample")]
    pub samples: Vec<PathBuf>,
    /// Number of random objects whose B parts join the sample set.
    #[arg(long, default_value_t = 10)]
    pub random_samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Directory for the A and B files; defaults to the directory of X.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Generator complex; repeat for several.
    #[arg(long = "gen", required = true)]
    pub gens: Vec<PathBuf>,
    /// Directory of complex files; every `*.toml` is a test object.
    #[arg(long)]
    pub corpus: PathBuf,
    /// Additional objects for the generation diagnostic.
    #[arg(long = "probe")]
    pub probes: Vec<PathBuf>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    #[arg(long)]
    pub generating: bool,
    /// Number of corpus objects whose B parts serve as samples.
    #[arg(long, default_value_t = 10)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    #[arg(long)]
    pub algebra: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 7)]
    pub degree_span: usize,
    #[arg(long, default_value_t = 3)]
    pub max_rank: usize,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long)]
    pub out_dir: PathBuf,
    /// Output files are named `<prefix>-NNNN.toml`.
    #[arg(long, default_value = "random")]
    pub prefix: String,
    /// Refer to the algebra by this path instead of writing it inline.
    #[arg(long)]
    pub algebra_ref: Option<String>,
}

/// Runs a parsed command line and returns its report.
pub fn run(cli: &Cli) -> RunReport {
    let start = std::time::Instant::now();
    let mut report = commands::dispatch(cli);
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    report
}
