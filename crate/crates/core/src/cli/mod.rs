//! Command-line front end: instance files in, key-sorted JSON out.
//!
//! Exit codes are 0 on success, 2 on a validation error, 3 when the oracle
//! disagrees with the constructed family and 4 when a theorem suite fails.

mod commands;
pub mod instance_file;
pub mod verify;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::equations::EquationKind;

pub use commands::{chars, compare_with_oracle, constructed_family, solve, validate, SolveOptions, Status, Verdict};
pub use instance_file::{load, AtomSpec, InstanceSpec, LoadedInstance};

/// Environment variable capping the worker threads (0 = one per core).
pub const THREADS_ENV: &str = "FEQLAB_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Validation = 2,
    Mismatch = 3,
    TheoremFailure = 4,
}

impl Exit {
    pub fn code(self) -> u8 {
        self as u8
    }
}

/// A command's result: JSON for stdout, a message for stderr, and the exit
/// status.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub exit: Exit,
    pub stdout: Option<String>,
    pub stderr: Option<String>,
}

impl Outcome {
    pub fn validation(msg: String) -> Self {
        Outcome {
            exit: Exit::Validation,
            stdout: None,
            stderr: Some(format!("error: {msg}")),
        }
    }

    fn json(exit: Exit, value: &impl Serialize, stderr: Option<String>) -> Self {
        Outcome {
            exit,
            stdout: Some(to_json(value)),
            stderr,
        }
    }
}

/// Pretty JSON with sorted object keys.
pub fn to_json(value: &impl Serialize) -> String {
    // `Value` objects are B-tree maps, so the round trip sorts every key
    let v = serde_json::to_value(value).expect("reports serialize");
    serde_json::to_string_pretty(&v).expect("values serialize")
}

#[derive(Debug, Parser)]
#[command(name = "feqlab", version, about = "Solve and verify integral functional equations on finite semigroups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Vanvleck,
    Kannappan,
    Dalembert,
}

impl From<KindArg> for EquationKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Vanvleck => EquationKind::VanVleck,
            KindArg::Kannappan => EquationKind::Kannappan,
            KindArg::Dalembert => EquationKind::Dalembert,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check an instance file and summarize its structure
    Validate { spec_file: PathBuf },
    /// List the nonzero multiplicative functions with their integrals
    Chars { spec_file: PathBuf },
    /// Construct a solution family, optionally checked against the oracle
    Solve {
        #[arg(value_enum)]
        kind: KindArg,
        spec_file: PathBuf,
        /// Also run the numeric oracle and compare the two sets
        #[arg(long)]
        oracle: bool,
        /// Oracle RNG seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Set distance used to match constructed and oracle solutions
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Append the zero function to each reported set
        #[arg(long)]
        include_zero: bool,
    },
    /// Run every identity suite on the constructed and oracle solutions
    VerifyTheorems {
        spec_file: PathBuf,
        /// Oracle RNG seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Validate { spec_file } => validate(spec_file),
        Command::Chars { spec_file } => chars(spec_file),
        Command::Solve {
            kind,
            spec_file,
            oracle,
            seed,
            tol,
            include_zero,
        } => solve(
            (*kind).into(),
            spec_file,
            &commands::SolveOptions {
                oracle: *oracle,
                seed: *seed,
                tol: *tol,
                include_zero: *include_zero,
            },
        ),
        Command::VerifyTheorems { spec_file, seed } => match load(spec_file) {
            Ok(loaded) => {
                let report = verify::verify_theorems(&loaded.instance, *seed);
                let stderr = report.first_failure.as_ref().map(|f| {
                    format!(
                        "theorem suite failed: {} / {} on {} solution {} at {:?} (instance {})",
                        f.suite,
                        f.check,
                        f.provenance,
                        f.solution,
                        f.argmax,
                        spec_file.display()
                    )
                });
                let exit = if report.passed { Exit::Ok } else { Exit::TheoremFailure };
                Outcome::json(exit, &report, stderr)
            }
            Err(msg) => Outcome::validation(msg),
        },
    }
}

/// Reads the thread cap from [`THREADS_ENV`]; unset means automatic.
pub fn thread_cap() -> Result<usize, String> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| format!("{THREADS_ENV} must be a non-negative integer, got {v:?}")),
        Err(std::env::VarError::NotPresent) => Ok(0),
        Err(e) => Err(format!("{THREADS_ENV}: {e}")),
    }
}
