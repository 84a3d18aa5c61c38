mod commands;
mod matrix_file;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Usage(_) | CliError::Runtime(_) => 1,
        }
    }
}

impl From<states::StateError> for CliError {
    fn from(e: states::StateError) -> Self {
        match e {
            states::StateError::Invalid(v) => CliError::Validation(v.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<metrics::MetricsError> for CliError {
    fn from(e: metrics::MetricsError) -> Self {
        match e {
            metrics::MetricsError::State(s) => s.into(),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<sweep::SweepError> for CliError {
    fn from(e: sweep::SweepError) -> Self {
        match e {
            sweep::SweepError::InvalidConfig(m) => CliError::Usage(m),
            sweep::SweepError::State(s) => s.into(),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Pretty,
    Json,
    Csv,
}

/// Entanglement, teleportation and Bell-CHSH metrics for two-qubit state families.
#[derive(Debug, Parser)]
#[command(name = "nmems", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// A family member or a matrix file.
#[derive(Debug, Args)]
pub struct StateArgs {
    /// Family selector `<family>[:<bell>]`, e.g. `rho1:phi-` or `werner`
    pub family: Option<String>,
    /// Family parameter in [0, 1]
    #[arg(long = "p", alias = "param", allow_negative_numbers = true)]
    pub p: Option<f64>,
    /// 4x4 density matrix file: four lines of four `re,im` pairs
    #[arg(long, conflicts_with = "family")]
    pub matrix: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OutArgs {
    /// Directory for CSV/JSON outputs
    #[arg(long, env = "NMEMS_OUT_DIR", default_value = "nmems-out")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Metrics of one state, with any printed closed forms compared alongside
    Metrics {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Grid sweep over families; writes sweep.csv and sweep.json
    Sweep {
        /// Comma-separated selectors (default: every family and flavour)
        #[arg(long, value_delimiter = ',')]
        families: Vec<String>,
        #[arg(long, default_value_t = 0.0)]
        start: f64,
        #[arg(long, default_value_t = 1.0)]
        stop: f64,
        #[arg(long, default_value_t = 0.001)]
        step: f64,
        /// Comma-separated metrics out of C, f, N, L, M
        #[arg(long, value_delimiter = ',')]
        metrics: Vec<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Threshold search: the catalogue of printed range claims, or one custom search
    Thresholds {
        /// Family for a custom search; omit to run the claim catalogue
        #[arg(long, requires_all = ["metric", "above", "bracket"])]
        family: Option<String>,
        #[arg(long)]
        metric: Option<String>,
        /// Predicate `metric > above`
        #[arg(long, allow_negative_numbers = true)]
        above: Option<f64>,
        /// `lo,hi`
        #[arg(long, value_delimiter = ',', num_args = 1)]
        bracket: Vec<f64>,
        #[arg(long, default_value_t = sweep::DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Table of teleportation fidelities at p = 0.0, 0.1, ..., 1.0
    Table1 {
        #[command(flatten)]
        out: OutArgs,
    },
    /// Fidelity curves behind figures 1 to 4, with the figure claims checked
    Figures {
        /// Only this figure
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        id: Option<u8>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Monte Carlo teleportation through a state used as the channel
    Simulate {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Rotate the channel locally so a singlet becomes phi+
        #[arg(long)]
        align_singlet: bool,
    },
    /// Density-matrix checks for a matrix file, one family member, or every family
    Validate {
        #[command(flatten)]
        state: StateArgs,
        /// Every family at this many grid points
        #[arg(long, num_args = 0..=1, default_missing_value = "101")]
        all: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nmems: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
