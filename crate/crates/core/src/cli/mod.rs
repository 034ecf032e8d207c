//! Command-line front end. Exit codes: 0 success, 1 verification failure,
//! 2 input error.

mod commands;
pub mod config;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;

#[derive(Debug, Parser)]
#[command(name = "ultrametrica", version, about = "Exact arithmetic over perfectoid generalized power series fields")]
pub struct Cli {
    /// JSON configuration file.
    #[arg(long, global = true, env = "ULTRAMETRICA_CONFIG")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Gauss norm of an element.
    Norm {
        file: PathBuf,
        /// Report the norm of `f − 1` instead.
        #[arg(long)]
        minus_one: bool,
    },
    /// Inverse of an element to a target floor `|t|^a`.
    Invert {
        file: PathBuf,
        #[arg(long)]
        floor: String,
    },
    /// Product of two elements.
    Mul { a: PathBuf, b: PathBuf },
    /// Type of a Berkovich point.
    Classify { file: PathBuf },
    /// Abhyankar invariants of a coordinate tower and the variable-count bound.
    Abhyankar {
        file: Option<PathBuf>,
        #[arg(long)]
        n_vars: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
    },
    /// Gleason element schedules.
    Gleason {
        #[command(subcommand)]
        action: GleasonCommand,
    },
    /// Preimage reconstruction through the standard surjection on random targets.
    SurjectVerify {
        /// Residual-vs-step table; defaults to the report path with a `.tsv` extension.
        #[arg(long)]
        tsv: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GleasonCommand {
    Build {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, value_enum)]
        kind: Option<GleasonKind>,
        /// `c = t^{c}` for the `minus` and `lattice` kinds.
        #[arg(long)]
        c: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GleasonKind {
    /// `J = ℤ[1/p]_{≥0}`, `V = x`; one radius.
    Plus,
    /// `V = x_1, …, x_n`.
    Cone,
    /// `V = c x^{-1}`; one radius.
    Minus,
    /// `V = (x_1, …, x_n, c x_1^{-1}⋯x_n^{-1})`, `J = ℤ[1/p]^n`.
    Lattice,
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Verification(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::CertificateFailed { .. } | Error::Oracle { .. } | Error::FloorExhausted { .. } => CliError::Verification(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
