use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Environment variable naming the directory reports go to when `--out` is absent.
pub const OUT_DIR_ENV: &str = "BOROSMOLL_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "borosmoll", version, about = "Exact verification sweeps over Boros-Moll coefficients")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Output file. Defaults to `$BOROSMOLL_OUT_DIR/<command>.<ext>`, else stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0, global = true)]
    pub jobs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "jsonl",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rows from three engines, compared entrywise, plus recurrence residuals.
    Coeffs(CoeffsArgs),
    /// Theorem, identity and sign-claim checks.
    Verify(VerifyArgs),
    /// Sturm-count real-rootedness of the Q, R or P family.
    Roots(RootsArgs),
    /// k-log-concavity depth of rows or of a given sequence.
    Depth(DepthArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Coeffs(_) => "coeffs",
            Command::Verify(_) => "verify",
            Command::Roots(_) => "roots",
            Command::Depth(_) => "depth",
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct CoeffsArgs {
    #[arg(long, default_value_t = 0)]
    pub m_min: u64,
    #[arg(long)]
    pub m_max: u64,
    /// Adds 1 to the recurrence engine's entry `d_I(M)` before comparing.
    #[arg(long, hide = true, value_name = "M:I")]
    pub perturb: Option<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// Comma-separated identifiers; `list` prints them.
    #[arg(long, value_delimiter = ',', required = true)]
    pub theorems: Vec<String>,
    #[arg(long, default_value_t = 2)]
    pub m_min: u64,
    #[arg(long, default_value_t = 40)]
    pub m_max: u64,
    /// Upper end of the identity grids.
    #[arg(long)]
    pub grid: Option<i64>,
    /// Explicit `m` values, overriding the range.
    #[arg(long, value_delimiter = ',')]
    pub sample_ms: Option<Vec<i64>>,
    /// Check every k-th `i` of a region.
    #[arg(long, default_value_t = 1)]
    pub i_stride: u64,
    /// Rows are compared against the single sum every this many `m`.
    #[arg(long, default_value_t = borosmoll_core::coefficients::DEFAULT_CROSS_CHECK_PERIOD)]
    pub cross_check_every: u64,
    /// Polynomial data file to use instead of the built-in one.
    #[arg(long)]
    pub poly_table: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct RootsArgs {
    #[arg(long, value_parser = ["Q", "R", "P", "q", "r", "p"])]
    pub which: String,
    #[arg(long, default_value_t = 1)]
    pub m_min: u64,
    #[arg(long)]
    pub m_max: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct DepthArgs {
    #[arg(long, default_value_t = 0)]
    pub m_min: u64,
    #[arg(long, conflicts_with = "sequence")]
    pub m_max: Option<u64>,
    #[arg(long, default_value_t = 2)]
    pub max_k: u32,
    /// Comma-separated rationals (`p` or `p/q`) instead of rows.
    #[arg(long, value_delimiter = ',')]
    pub sequence: Option<Vec<String>>,
}
