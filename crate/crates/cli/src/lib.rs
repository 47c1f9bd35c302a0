//! Command line front end: input files, command dispatch and output.

pub mod commands;
pub mod input;
pub mod render;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use commands::{run, Outcome};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}{}{}: {message}", line.map(|l| format!(":{l}")).unwrap_or_default(), field.as_ref().map(|f| format!(" ({f})")).unwrap_or_default())]
    Parse {
        path: String,
        line: Option<usize>,
        field: Option<String>,
        message: String,
    },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Validation(#[from] groupoidal::Error),
}

/// Exit code for input and validation errors.
pub const EXIT_INVALID: i32 = 2;
/// Exit code for a verification that ran and failed.
pub const EXIT_FAILED_CHECK: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Homology,
    Cohomology,
}

#[derive(Debug, Parser)]
#[command(
    name = "groupoidal",
    version,
    about = "Homology and cohomology of finite groupoids and their limits"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integral homology, or homology with coefficients Z/m.
    Homology {
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// `Z` or `Z/m`.
        #[arg(long, default_value = "Z")]
        coefficients: String,
    },
    /// Cocycle cohomology with coefficients in a module (default: constant Z).
    Cohomology {
        input: PathBuf,
        #[arg(long)]
        module: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Checks that the comparison maps between the Hom-side and cocycle
    /// cochains are mutually inverse chain maps.
    VerifyTheta {
        /// Groupoid file; omit and pass --seed to sample one.
        input: Option<PathBuf>,
        #[arg(long, conflicts_with = "input")]
        seed: Option<u64>,
        #[arg(long, conflicts_with = "seed")]
        module: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// Long exact sequence of a skew-product window and its shift.
    SkewLes {
        input: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
        /// Window radius K: levels -K ..= K.
        #[arg(long)]
        window: usize,
        #[arg(long)]
        guard: usize,
        #[arg(long, value_enum, default_value_t = Mode::Homology)]
        mode: Mode,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        /// Coefficient module for cohomology mode (default: constant Z).
        #[arg(long)]
        module: Option<PathBuf>,
    },
    /// Dimension group of a Bratteli diagram and equality/divisibility queries.
    DimensionGroup {
        input: PathBuf,
        /// Levels of the tower to use (default: all levels in the file).
        #[arg(long)]
        levels: Option<usize>,
        #[arg(long)]
        queries: Option<PathBuf>,
    },
    /// Truncated cohomology towers of a one-vertex stationary diagram.
    AfCohomology {
        input: PathBuf,
        /// Number of stages N.
        #[arg(long, default_value_t = 3)]
        levels: usize,
        /// Cylinder depth D.
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Homology of the p-adic odometer through its cylinder actions.
    Odometer {
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 6)]
        max_depth: usize,
    },
    /// Homology and cohomology of Z acting on a finite set by a permutation.
    ZAction {
        /// Images of 0, 1, ..., comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        perm: Vec<usize>,
    },
}
