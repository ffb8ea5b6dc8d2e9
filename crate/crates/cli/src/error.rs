use std::path::PathBuf;

use thiserror::Error;

/// Exit codes. Clap itself exits with 2 on malformed flags.
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;
pub const EXIT_CONFIG: u8 = 4;
pub const EXIT_INPUT: u8 = 5;
pub const EXIT_COMPUTE: u8 = 6;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}:{line}: {msg}", path.display())]
    Config { path: PathBuf, line: usize, msg: String },
    #[error(transparent)]
    Library(#[from] primint::Error),
    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use primint::Error as E;
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } | CliError::Output(_) => EXIT_IO,
            CliError::Config { .. } => EXIT_CONFIG,
            CliError::Library(e) => match e {
                E::Io(_) => EXIT_IO,
                E::ZeroTable { .. } | E::Cache(_) | E::Csv(_) => EXIT_INPUT,
                E::UnknownBound(_) | E::UnknownIdentity(_) | E::RangeExceeded { .. } | E::Unsorted { .. } => EXIT_USAGE,
                _ => EXIT_COMPUTE,
            },
        }
    }
}
