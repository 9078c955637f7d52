// SPDX-License-Identifier: Apache-2.0

//! Scenario files, the verification report and its emitters.

mod checks;
pub mod config;
pub mod emit;
pub mod hull;
pub mod oracle;
pub mod sweep;

use std::path::PathBuf;

use thiserror::Error;

pub use checks::{execute, run_scenario, CheckRecord, CheckStatus, CurveStats, VerificationReport};
pub use config::{CheckToggles, OracleConfig, OutputConfig, Scenario, ScenarioConfig, Tolerances};
pub use hull::{hull_fit, hull_membership, HullFit};
pub use oracle::{geodesic_oracle_2d, OracleError, OracleResult};

use crate::builder::BuildError;
use crate::sets::SetError;
use crate::space::SpaceError;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("scenario JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("CSV output: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("invalid scenario: {0}")]
    Config(String),
}

impl HarnessError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io { path: path.into(), source }
    }
}
