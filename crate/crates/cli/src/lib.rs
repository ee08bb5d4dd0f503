//! Documents, DOT output and batch verification behind the `princ` binary.

pub mod corpus;
pub mod doc;
pub mod dot;
pub mod error;

pub use error::{CliError, CliResult};
