//! Configuration, dispatch and reporting for the `enclose` binary.

pub mod config;
pub mod decimal;
pub mod edges;
pub mod expr;
pub mod presets;
pub mod report;
pub mod run;

pub use config::{Problem, RunConfig};
pub use presets::{preset, PRESETS};
pub use report::{emit_results, parse_csv, Format, ReportRow, RunReport};
pub use run::{run, Outcome, Overrides, Status};

use thiserror::Error;

use crate::graphenclose::GraphError;
use crate::slenclose::SlError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{field}: {message}")]
    Config { field: String, message: String },
    #[error("unknown preset '{0}'")]
    UnknownPreset(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Solve(String),
}

impl CliError {
    pub fn config(field: &str, message: impl Into<String>) -> Self {
        CliError::Config { field: field.into(), message: message.into() }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Solve(e.to_string())
    }
}

impl From<SlError> for CliError {
    fn from(e: SlError) -> Self {
        CliError::Solve(e.to_string())
    }
}
