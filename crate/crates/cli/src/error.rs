use std::process::ExitCode;

use clashfree_core::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Param(String),
    #[error("{0}")]
    Resource(String),
    #[error("{0}")]
    Internal(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for bad parameters or input, 3 for size caps.
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Resource(_) => ExitCode::from(3),
            CliError::Internal(_) => ExitCode::from(4),
            CliError::Param(_) | CliError::Io { .. } => ExitCode::from(2),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) => CliError::Param(e.to_string()),
            Error::ResourceLimit(_) => CliError::Resource(e.to_string()),
            Error::Construction(_) => CliError::Internal(e.to_string()),
        }
    }
}
