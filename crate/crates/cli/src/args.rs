//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "rszeta",
    version,
    about = "Rankin–Selberg zeta function of a Hecke eigenform"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build or ingest a coefficient table and write it to disk.
    Coeffs(CoeffsArgs),
    /// Evaluate Z(σ + it) by one of the three methods.
    Eval(EvalArgs),
    /// Tabulate the real Hardy-type function and optionally bracket its zeros.
    Hardy(HardyArgs),
    /// Run a numerical experiment.
    #[command(subcommand)]
    Experiment(Experiment),
    /// Fit the correction constants against the direct series.
    Calibrate(CalibrateArgs),
}

/// Where the coefficient table comes from. `RSZETA_TABLE` takes precedence
/// over `--table`; without either the built-in Δ table is generated.
#[derive(Debug, Clone, Args, Serialize)]
pub struct TableArgs {
    /// Cache file written by `rszeta coeffs`.
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Length of the built-in table when no file is given.
    #[arg(long, default_value_t = 100_000)]
    pub builtin_n: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CoeffsArgs {
    /// Table length; defaults to the whole file with --coeff-file.
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long, default_value_t = 12)]
    pub weight: u32,
    /// Whitespace-separated `n a(n)` lines of an external eigenform.
    #[arg(long)]
    pub coeff_file: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
    /// Write CSV instead of the checksummed cache format.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Sharp,
    Smoothed,
    Direct,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EvalArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub t: f64,
    #[arg(long, default_value_t = 0.5)]
    pub sigma: f64,
    #[arg(long, value_enum, default_value_t = Method::Sharp)]
    pub method: Method,
    /// Length of the first sum (the second is τ(t)/x).
    #[arg(long, conflicts_with = "split_ratio")]
    pub x: Option<f64>,
    /// Sets x = r·y under xy = τ(t).
    #[arg(long)]
    pub split_ratio: Option<f64>,
    /// Use C1 = C2 = 0 instead of the calibrated constants.
    #[arg(long)]
    pub uncalibrated: bool,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub table: TableArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct HardyArgs {
    #[arg(long)]
    pub t_min: f64,
    #[arg(long)]
    pub t_max: f64,
    #[arg(long, default_value_t = 0.01)]
    pub step: f64,
    #[arg(long)]
    pub scan_zeros: bool,
    /// Use the calibrated constants instead of C1 = C2 = 0.
    #[arg(long)]
    pub calibrated: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub table: TableArgs,
}

#[derive(Debug, Subcommand)]
pub enum Experiment {
    /// Δ(x) = Σ_{n<=x} c_n - Ĉx against x^{3/5}.
    Delta(DeltaArgs),
    /// ∫_0^X |𝒵(t)| dt against X^{5/4}.
    Meanvalue(MeanValueArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DeltaArgs {
    /// Explicit comma-separated abscissae; default is twenty points per decade up to N.
    #[arg(long, value_delimiter = ',')]
    pub x_grid: Option<Vec<f64>>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub table: TableArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MeanValueArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [100.0, 200.0, 400.0])]
    pub x_grid: Vec<f64>,
    /// Quadrature step in t.
    #[arg(long, default_value_t = 0.05)]
    pub step: f64,
    #[arg(long)]
    pub calibrated: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub table: TableArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CalibrateArgs {
    #[arg(long, default_value_t = 0.9)]
    pub sigma: f64,
    #[arg(long, value_delimiter = ',', default_values_t = [10.0, 15.0, 20.0, 25.0, 30.0])]
    pub t_grid: Vec<f64>,
    /// Fit C1 and C2 separately.
    #[arg(long)]
    pub free_constants: bool,
    /// Defaults to the table's sidecar, or stdout for the built-in table.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub table: TableArgs,
}
