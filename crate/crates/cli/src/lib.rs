//! `cecp` command-line tool: sliding-window complexity-entropy analysis of
//! panel files, bound curves for the plane, and synthetic test signals.
//!
//! Exit codes: 0 success, 2 usage or parameter error, 3 unreadable or
//! malformed input, 4 insufficient data, 5 output not writable.

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use cecp_core::ingest::{Layout, MissingPolicy};
use cecp_core::ordinal::TieRule;

pub mod commands;
pub mod format;
pub mod manifest;

#[derive(Debug, Parser)]
#[command(
    name = "cecp",
    version,
    about = "Permutation entropy and statistical complexity of time series"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sliding-window entropy, complexity and inefficiency of every series in a panel.
    Analyze(AnalyzeArgs),
    /// Minimum- and maximum-complexity curves of the plane.
    Bounds(BoundsArgs),
    /// Write a synthetic series as a wide panel file.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LayoutArg {
    Wide,
    Long,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    Drop,
    Ffill,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TiesArg {
    /// Equal values: the later observation ranks lower.
    LaterBelow,
    /// Equal values: the earlier observation ranks lower.
    EarlierBelow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    WhiteNoise,
    RandomWalk,
    LogisticMap,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Panel file (header row required).
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "wide")]
    pub layout: LayoutArg,
    /// chrono format string of the date column.
    #[arg(long, default_value = cecp_core::ingest::DEFAULT_DATE_FORMAT)]
    pub date_format: String,
    /// Single-byte field delimiter.
    #[arg(long, default_value = ",", value_parser = parse_delimiter)]
    pub delimiter: u8,
    /// Missing-value handling.
    #[arg(long, value_enum, default_value = "drop")]
    pub policy: PolicyArg,
    /// Analyze first differences instead of levels.
    #[arg(long)]
    pub diff: bool,
    /// Embedding dimension D (patterns of D values, D! states).
    #[arg(long, default_value_t = 4)]
    pub dimension: usize,
    /// Embedding delay τ.
    #[arg(long, default_value_t = 1)]
    pub delay: usize,
    /// Datapoints per window.
    #[arg(long, default_value_t = 300)]
    pub window_length: usize,
    /// Datapoints between consecutive window starts.
    #[arg(long, default_value_t = 20)]
    pub step: usize,
    /// Windows per period; a shorter remainder joins the last period.
    #[arg(long, default_value_t = 16)]
    pub period_size: usize,
    /// Keep only the first N windows of each series.
    #[arg(long)]
    pub max_windows: Option<usize>,
    #[arg(long, value_enum, default_value = "later-below")]
    pub ties: TiesArg,
    /// Add seeded uniform noise in [-A, A) before symbolization.
    #[arg(long, value_name = "A")]
    pub jitter: Option<f64>,
    /// Seed of the jitter noise.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "csv")]
    pub output: OutputFormat,
    /// Write windows, periods and manifest files here instead of stdout.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Evaluate series and windows on one thread.
    #[arg(long)]
    pub serial: bool,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Alphabet size M.
    #[arg(long, conflicts_with = "dimension")]
    pub alphabet: Option<usize>,
    /// Embedding dimension D; M = D!.
    #[arg(long)]
    pub dimension: Option<usize>,
    /// Samples per curve family.
    #[arg(long, default_value_t = cecp_core::bounds::DEFAULT_RESOLUTION)]
    pub resolution: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub output: OutputFormat,
    /// Output file (stdout when omitted).
    #[arg(long, short = 'o')]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long)]
    pub length: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of series; series k uses seed + k.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Logistic map parameter r.
    #[arg(long, default_value_t = 4.0)]
    pub r: f64,
    /// Logistic map initial condition.
    #[arg(long, default_value_t = 0.3)]
    pub x0: f64,
    /// Logistic map iterations discarded before recording.
    #[arg(long, default_value_t = cecp_core::synth::DEFAULT_TRANSIENT)]
    pub transient: usize,
    /// Column label (default: the generator name).
    #[arg(long)]
    pub label: Option<String>,
    /// Date of the first observation; one observation per calendar day.
    #[arg(long, default_value = "2001-01-02")]
    pub start_date: chrono::NaiveDate,
    /// Destination file.
    #[arg(long, short = 'o')]
    pub out: PathBuf,
}

fn parse_delimiter(s: &str) -> Result<u8, String> {
    match s.as_bytes() {
        [b] => Ok(*b),
        _ if s == "\\t" => Ok(b'\t'),
        _ => Err(format!("delimiter must be a single byte, got '{s}'")),
    }
}

impl From<LayoutArg> for Layout {
    fn from(v: LayoutArg) -> Self {
        match v {
            LayoutArg::Wide => Layout::Wide,
            LayoutArg::Long => Layout::Long,
        }
    }
}

impl From<PolicyArg> for MissingPolicy {
    fn from(v: PolicyArg) -> Self {
        match v {
            PolicyArg::Drop => MissingPolicy::Drop,
            PolicyArg::Ffill => MissingPolicy::ForwardFill,
        }
    }
}

impl From<TiesArg> for TieRule {
    fn from(v: TiesArg) -> Self {
        match v {
            TiesArg::LaterBelow => TieRule::LaterBelow,
            TiesArg::EarlierBelow => TieRule::EarlierBelow,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Usage = 2,
    Input = 3,
    InsufficientData = 4,
    Output = 5,
}

#[derive(Debug)]
pub struct CliError {
    pub code: ExitCode,
    pub message: String,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: ExitCode::Usage,
            message: message.into(),
        }
    }

    pub fn output(path: &Path, err: impl fmt::Display) -> Self {
        Self {
            code: ExitCode::Output,
            message: format!("cannot write {}: {err}", path.display()),
        }
    }

    /// Classifies a library error raised while reading or analysing input.
    pub fn from_core(err: cecp_core::Error) -> Self {
        use cecp_core::Error as E;
        let code = match &err {
            E::InsufficientData { .. } => ExitCode::InsufficientData,
            E::Parse { .. }
            | E::DuplicateDate { .. }
            | E::DuplicateLabel(_)
            | E::MissingLeadingValue(_)
            | E::Io(_) => ExitCode::Input,
            E::InvalidInput(_)
            | E::DimensionMismatch { .. }
            | E::UnsupportedDimension(_)
            | E::InvalidDistribution(_)
            | E::InvalidAlphabet(_) => ExitCode::Usage,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze(args) => commands::analyze(&args),
        Command::Bounds(args) => commands::bounds(&args),
        Command::Generate(args) => commands::generate(&args),
    }
}
