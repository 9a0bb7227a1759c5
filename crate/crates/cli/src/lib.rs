//! Library half of the `boundary` command line: run configurations, the
//! commands themselves, and table rendering. The binary only parses flags,
//! picks an exit code and writes the result.

pub mod commands;
pub mod config;
pub mod table;

pub use config::{Command, Format, HeisMetric, LineSense, RunConfig, Window};
pub use table::{Cell, Table};

/// Exit code on success.
pub const EXIT_OK: i32 = 0;
/// A check ran and failed.
pub const EXIT_FAILED: i32 = 1;
/// The configuration could not be parsed or is invalid.
pub const EXIT_CONFIG: i32 = 2;
/// A resource budget (BFS table memory) was exceeded.
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("resource budget: {0}")]
    Budget(String),
    #[error("{0}")]
    Run(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Budget(_) => EXIT_BUDGET,
            CliError::Run(_) | CliError::Io(_) => EXIT_FAILED,
        }
    }
}

/// What a command produced: the table, whether any check failed, and
/// human-readable notes for stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub table: Table,
    pub failed: bool,
    pub notes: Vec<String>,
}

/// Normalize and run a configuration.
pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let cfg = cfg.normalized()?;
    match &cfg.command {
        Command::Verify { suite } => Ok(commands::verify::run(suite.as_deref())),
        Command::Dist { space, a, b, sense, window } => commands::dist::run(space, a, b, *sense, window),
        Command::Scan { directions, radius, budget, window, theta, metric } => {
            commands::scan::run(directions, *radius, *budget, window, *theta, *metric)
        }
        Command::Walk(w) => commands::walk::run(w),
        Command::LieCheck { path } => commands::lie::run(path),
    }
}
