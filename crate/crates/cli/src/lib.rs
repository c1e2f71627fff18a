//! `mckay` command-line front end.

pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use mckay_core::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "mckay", version, about = "Age grading and McKay correspondence data for finite subgroups of SL(n, C)")]
pub struct Cli {
    /// Largest group order to close before giving up.
    #[arg(long, global = true, default_value_t = mckay_core::matgroup::DEFAULT_CAP)]
    pub max_order: usize,

    /// Which primitive root identifies the group with its dual; `inverse`
    /// replaces every generator by its inverse.
    #[arg(long, global = true, value_enum, default_value_t = Choice::Canonical)]
    pub choice: Choice,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Choice {
    Canonical,
    Inverse,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, exponent, SL membership and class count.
    Info { file: PathBuf },
    /// Conjugacy classes with eigenvalue exponents and ages.
    Classes { file: PathBuf },
    /// Predicted Betti numbers of a crepant resolution (dimension 3).
    Betti { file: PathBuf },
    /// Toric computations for diagonal groups.
    Toric {
        #[arg(value_enum)]
        action: ToricAction,
        /// Reading of "positive integral combination" in condition (i).
        #[arg(long, value_enum, default_value_t = Variant::Positive)]
        variant: Variant,
        file: PathBuf,
    },
    /// Folded resolution graph (dimension 2).
    Diagram {
        #[arg(long, value_enum, default_value_t = DiagramFormat::Dot)]
        format: DiagramFormat,
        file: PathBuf,
    },
    /// Stabilizer and ramification groups of the valuation of a class.
    Ram {
        /// Class index as listed by `classes`.
        #[arg(long = "class")]
        class: usize,
        /// Evaluate on invariant monomials up to this degree (diagonal groups).
        #[arg(long)]
        probe: Option<u32>,
        file: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ToricAction {
    Juniors,
    Box,
    Resolve,
    Check,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Positive,
    Nonnegative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DiagramFormat {
    Dot,
    Json,
}

pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 2;
    pub const REQUIREMENT: i32 = 3;
    pub const CAP: i32 = 4;
    pub const INVARIANT: i32 = 5;
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } | Error::Input(_) | Error::FieldMismatch { .. } | Error::DivisionByZero => {
            exit::INPUT
        }
        Error::Requirement(_) => exit::REQUIREMENT,
        Error::CapExceeded { .. } => exit::CAP,
        Error::Invariant(_) => exit::INVARIANT,
    }
}

/// Result of one invocation: exit code and the text for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::INPUT } else { exit::OK };
            let text = e.render().to_string();
            return if code == exit::OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match report::execute(&cli) {
        Ok(stdout) => Outcome {
            code: exit::OK,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
