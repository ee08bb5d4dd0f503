use std::path::PathBuf;

use thiserror::Error;

/// Failures surfaced to the user, each with a fixed exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("parse error at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("invalid document: {0}")]
    Invalid(String),
    #[error("{0}")]
    NotALattice(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Json { .. } | CliError::Invalid(_) => 2,
            CliError::NotALattice(_) => 3,
            CliError::Verification(_) => 4,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        let (line, column) = (e.line(), e.column());
        let full = e.to_string();
        let message = full.strip_suffix(&format!(" at line {line} column {column}")).unwrap_or(&full).to_string();
        CliError::Json { line, column, message }
    }
}

impl From<princ_core::Error> for CliError {
    fn from(e: princ_core::Error) -> Self {
        use princ_core::Error as E;
        match e {
            E::NotALattice(..) => CliError::NotALattice(e.to_string()),
            E::EmptyOrder
            | E::TrivialOrder
            | E::CycleDetected(..)
            | E::NoBounds(_)
            | E::DuplicateElement(_)
            | E::UnknownElement(_)
            | E::NotIsotone(..)
            | E::NotBoundsPreserving(_)
            | E::NotTotal(_)
            | E::Catalog(_)
            | E::NameCollision(_) => CliError::Invalid(e.to_string()),
            _ => CliError::Verification(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
