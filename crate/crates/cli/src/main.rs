//! `mws`: construct, verify and bound MWS codes from the command line.
//!
//! Every command prints a human-readable report followed by one line of
//! JSON. Exit codes: 0 success, 2 bad input, 3 infeasible request,
//! 4 verification failed.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "mws", version, about = "Maximum weight spectrum codes over GF(q)")]
pub struct Cli {
    /// Print per-step details.
    #[arg(long, global = true)]
    pub verbose: bool,
    /// Accepted for script compatibility; every algorithm is deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a code or projective system and verify it.
    Construct(ConstructArgs),
    /// Check a matrix or system file.
    Verify(VerifyArgs),
    /// Print every length bound for (q, k).
    Bounds(BoundsArgs),
    /// Print the weight distribution of a code.
    Spectrum(SpectrumArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Geometric,
    K2,
    Fano,
    Pg23,
    Triangle,
    Lift,
    Algebraic,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Matrix,
    System,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Codewords,
    Characters,
    Both,
}

#[derive(clap::Args, Debug)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub method: Method,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Exponent for `lift`; defaults to the smallest `t` with `n < q^t`.
    #[arg(long)]
    pub t: Option<u32>,
    /// Input system for `lift`. Without it the chain starts from the
    /// smallest dimension-3 system for `q`.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Output file; the file is written to stdout and the report to stderr
    /// when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Repetition vector for one dimension of `algebraic`, as `K=R1,R2,...`.
    #[arg(long = "override", value_name = "K=R")]
    pub overrides: Vec<String>,
    /// Build the last dimension of `algebraic` with the shorter extension.
    #[arg(long)]
    pub shorten: bool,
}

#[derive(clap::Args, Debug)]
pub struct VerifyArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Defaults to both engines when both are feasible.
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
}

#[derive(clap::Args, Debug)]
pub struct BoundsArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub k: usize,
}

#[derive(clap::Args, Debug)]
pub struct SpectrumArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
