//! `sieve`: build, verify, transform and simulate proposition systems from the shell.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sieve_core::{BasisKey, SieveError, Tolerance};

#[derive(Parser, Debug)]
#[command(
    name = "sieve",
    version,
    about = "Minimal proposition systems that single out one of 2^n states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Numerical tolerance (defaults to 1e-10).
    #[arg(long, global = true, env = "SIEVE_TOL")]
    tol: Option<f64>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Emit {
    Projectors,
    Partitions,
    Basis,
    Unitary,
    Codes,
}

/// Where a system comes from: a JSON file, or the standard system of `n`
/// particles (optionally rearranged) expressed in a catalog basis.
#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Number of particles.
    #[arg(long, required_unless_present = "system")]
    pub n: Option<usize>,

    /// Catalog basis.
    #[arg(long, default_value = "standard", value_parser = parse_basis)]
    pub basis: BasisKey,

    /// Column rearrangement as 1-based targets, e.g. `2,1,3,4`.
    #[arg(long, value_delimiter = ',')]
    pub perm: Option<Vec<usize>>,

    /// Proposition system JSON file.
    #[arg(long)]
    pub system: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct the system for a catalog basis.
    Build {
        #[command(flatten)]
        source: Source,
        /// Items to emit.
        #[arg(long, value_enum, value_delimiter = ',', default_value = "projectors")]
        emit: Vec<Emit>,
    },
    /// Check the separation requirements; exits 1 when one fails.
    Verify {
        #[command(flatten)]
        source: Source,
    },
    /// Conjugate a system (file or standard) with a catalog unitary.
    Transform {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "projectors")]
        emit: Vec<Emit>,
    },
    /// Stream the column rearrangements of the standard system.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Stop after this many systems.
        #[arg(long)]
        limit: Option<usize>,
        /// Print only the number of systems.
        #[arg(long)]
        count_only: bool,
        /// Allow a full enumeration beyond n = 3.
        #[arg(long)]
        force: bool,
    },
    /// Eigenvalue partitions of the basis and their meet.
    Partition {
        #[command(flatten)]
        source: Source,
    },
    /// Detector distribution for a basis state or a state file.
    Simulate {
        #[command(flatten)]
        source: Source,
        /// 1-based basis state to send through the sieve.
        #[arg(long, conflicts_with = "state")]
        index: Option<usize>,
        /// State vector JSON file.
        #[arg(long)]
        state: Option<PathBuf>,
        /// Draw this many sequential shots instead of the exact distribution.
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Allow n above 10.
        #[arg(long)]
        force: bool,
    },
    /// Question counts of the naive and sieve strategies.
    Stats {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Do not count the final, forced naive question.
        #[arg(long)]
        infer_last: bool,
        /// Allow n above 10.
        #[arg(long)]
        force: bool,
    },
    /// Propositions ½(1 + σ⊗…⊗σ) for comma-separated axis strings.
    Pauli {
        /// Axis strings over x, y, z, e.g. `xyy,yxy,yyx`.
        #[arg(long, value_delimiter = ',', required = true)]
        axes: Vec<String>,
        /// Basis for the partitions item.
        #[arg(long, default_value = "standard", value_parser = parse_basis)]
        basis: BasisKey,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "projectors")]
        emit: Vec<Emit>,
    },
}

fn parse_basis(s: &str) -> Result<BasisKey, String> {
    s.parse().map_err(|e: SieveError| e.to_string())
}

/// Outcome of a command that did not succeed.
pub enum Failure {
    /// Bad input: exit 3.
    Invalid { kind: String, message: String },
    /// A checked property does not hold: exit 1, report still printed.
    Violation(Value),
}

impl From<SieveError> for Failure {
    fn from(e: SieveError) -> Self {
        let debug = format!("{e:?}");
        let kind = debug.split([' ', '(', '{']).next().unwrap_or("Error").to_string();
        Failure::Invalid {
            kind,
            message: e.to_string(),
        }
    }
}

impl Failure {
    pub fn invalid(kind: &str, message: impl Into<String>) -> Self {
        Failure::Invalid {
            kind: kind.to_string(),
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let result = Tolerance::new(cli.tol.unwrap_or(Tolerance::DEFAULT_EPS))
        .map_err(Failure::from)
        .and_then(|tol| run(cli.command, tol));
    match result {
        Ok(value) => {
            print!("{}", render::render(&value, format));
            ExitCode::SUCCESS
        }
        Err(Failure::Violation(report)) => {
            print!("{}", render::render(&report, format));
            eprintln!("sieve: a checked property does not hold");
            ExitCode::from(1)
        }
        Err(Failure::Invalid { kind, message }) => {
            let err = json!({ "error": { "kind": kind, "message": message } });
            print!("{}", render::render(&err, format));
            eprintln!("sieve: {message}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command, tol: Tolerance) -> Result<Value, Failure> {
    match command {
        Command::Build { source, emit } => commands::build(&source, &emit, tol),
        Command::Verify { source } => commands::verify(&source, tol),
        Command::Transform { source, emit } => commands::transform(&source, &emit, tol),
        Command::Enumerate {
            n,
            limit,
            count_only,
            force,
        } => commands::enumerate(n, limit, count_only, force, tol),
        Command::Partition { source } => commands::partition(&source, tol),
        Command::Simulate {
            source,
            index,
            state,
            sample,
            seed,
            force,
        } => commands::simulate(&source, index, state.as_deref(), sample, seed, force, tol),
        Command::Stats {
            n,
            trials,
            seed,
            infer_last,
            force,
        } => commands::stats(n, trials, seed, infer_last, force),
        Command::Pauli { axes, basis, emit } => commands::pauli(&axes, basis, &emit, tol),
    }
}
