use foliation_algebra::ParseError;
use foliation_core::CoreError;
use foliation_nevanlinna::NevanlinnaError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Nevanlinna(#[from] NevanlinnaError),
    #[error("cannot read input: {0}")]
    Io(String),
    #[error("serialization failed: {0}")]
    Serialization(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Serialization(_) => crate::EXIT_SERIALIZATION,
            _ => crate::EXIT_ERROR,
        }
    }
}
