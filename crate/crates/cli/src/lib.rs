//! Experiment harness for the `kronecker` crate: configuration, seeded
//! trials, prediction-vs-measurement reports and their serialization.
//!
//! Every trial draws from substream `seed.child(trial)`, and trials are
//! collected in order, so a report depends only on its configuration.

pub mod certify;
pub mod config;
pub mod experiment;
pub mod report;

pub use certify::{certify, CertifyReport};
pub use config::{ExperimentConfig, ExperimentKind, GeneratorChoice, OutputPaths};
pub use experiment::{generate, measure, predict, run};
pub use report::{emit, Format, ValidationReport};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] kronecker::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Process exit code: every error is a usage or configuration problem.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
