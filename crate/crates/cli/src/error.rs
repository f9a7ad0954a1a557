use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const FAILURE: u8 = 1;
    pub const IO: u8 = 2;
    pub const DIMENSIONS: u8 = 3;
    pub const UNKNOWN_ID: u8 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] qdel::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {message}", path.display())]
    Config { path: PathBuf, message: String },
    #[error("{failed} of {total} experiments failed")]
    ExperimentsFailed { failed: usize, total: usize },
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e {
                qdel::Error::Io { .. } | qdel::Error::Decode { .. } | qdel::Error::UnsupportedFormat { .. } => exit::IO,
                qdel::Error::DimensionMismatch { .. } => exit::DIMENSIONS,
                qdel::Error::UnknownId { .. } => exit::UNKNOWN_ID,
                _ => exit::FAILURE,
            },
            CliError::Io { .. } | CliError::Config { .. } => exit::IO,
            CliError::ExperimentsFailed { .. } => exit::FAILURE,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
