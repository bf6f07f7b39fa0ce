//! `fracinv`: detect invariant curves of planar polynomial systems, simulate
//! their Caputo fractional versions and audit which invariances survive.
//!
//! Exit codes: 0 success, 2 input error, 3 numerical blow-up, 1 any other
//! failure (I/O, uncertifiable evaluation).

mod commands;
mod output;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "fracinv", version, about = "Invariant curves of planar polynomial systems under classical and Caputo flows")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every applicable detector and report invariant lines and curves.
    Analyze(AnalyzeArgs),
    /// Integrate the system (FAM for alpha < 1, RK4 for alpha = 1).
    Simulate(SimulateArgs),
    /// Run an invariance audit preset: semigroup, subspace, curve or cong.
    Audit(AuditArgs),
    /// Evaluate the Mittag-Leffler function E_{alpha,beta}(z).
    Ml(MlArgs),
    /// Sample the vector field on a grid, optionally overlaying detected curves.
    Field(FieldArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Output directory; without it the primary result goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Comma-separated output formats.
    #[arg(long, value_delimiter = ',')]
    pub format: Vec<Format>,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    /// System JSON file, or the name of a bundled corpus system.
    #[arg(long)]
    pub system: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[arg(long)]
    pub system: String,
    /// Caputo order in (0, 1].
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Step size.
    #[arg(long, allow_negative_numbers = true)]
    pub h: f64,
    /// Horizon.
    #[arg(long = "T", allow_negative_numbers = true)]
    pub horizon: f64,
    /// Initial point `x,y`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    pub x0: Vec<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    Semigroup,
    Subspace,
    Curve,
    Cong,
}

#[derive(Args, Debug)]
pub struct AuditArgs {
    #[arg(long)]
    pub preset: Preset,
    /// System file or corpus name; each preset has a default.
    #[arg(long)]
    pub system: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub h: Option<f64>,
    #[arg(long = "T", allow_negative_numbers = true)]
    pub horizon: Option<f64>,
    /// Restart time for the semigroup preset.
    #[arg(long, allow_negative_numbers = true)]
    pub tstar: Option<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    pub x0: Vec<f64>,
    /// Slope m of the line y = m x (subspace preset).
    #[arg(long, allow_negative_numbers = true)]
    pub line: Option<f64>,
    /// Curve g(x, y) = 0 as a JSON coefficient map `{"i,j": coeff}` (curve preset).
    #[arg(long)]
    pub curve: Option<String>,
    /// Run the subspace check even when X0 is off the line.
    #[arg(long)]
    pub force: bool,
    /// Stable-manifold parameter (cong preset).
    #[arg(long, allow_negative_numbers = true)]
    pub c2: Option<f64>,
    /// Sample count for the exact solution (cong preset).
    #[arg(long)]
    pub nodes: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct MlArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub beta: f64,
    /// Argument `re` or `re,im`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    pub z: Vec<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct FieldArgs {
    #[arg(long)]
    pub system: String,
    /// `xmin,xmax,ymin,ymax,steps`.
    #[arg(long, default_value = "-2,2,-2,2,21", allow_hyphen_values = true)]
    pub grid: String,
    /// Overlay detected invariant curves on the SVG.
    #[arg(long)]
    pub overlay: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    BlowUp(String),
    #[error("{0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::BlowUp(_) => 3,
            CliError::Numerical(_) | CliError::Io(_) => 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Analyze(a) => commands::analyze(a),
        Command::Simulate(a) => commands::simulate(a),
        Command::Audit(a) => commands::audit(a),
        Command::Ml(a) => commands::ml(a),
        Command::Field(a) => commands::field(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fracinv: {e}");
            ExitCode::from(e.code())
        }
    }
}
