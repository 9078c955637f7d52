// SPDX-License-Identifier: Apache-2.0

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::builder::BuildParams;
use crate::sets::{ProximalSet, SetConfig};
use crate::slicer::SlicerParams;
use crate::space::{SpaceModel, Vector};

use super::oracle::DEFAULT_GRID_N;

/// Which checks `run_scenario` evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CheckToggles {
    pub membership: bool,
    pub delta_decay: bool,
    pub length: bool,
    pub inclusion: bool,
    pub cylinder: bool,
    pub g2: bool,
    pub waist: bool,
    pub midpoint: bool,
    /// Grid oracle comparison; 2D only and comparatively slow.
    pub geodesic: bool,
}

impl Default for CheckToggles {
    fn default() -> Self {
        Self {
            membership: true,
            delta_decay: true,
            length: true,
            inclusion: true,
            cylinder: true,
            g2: true,
            waist: true,
            midpoint: true,
            geodesic: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Absolute slack for every bound comparison.
    pub bound_slack: f64,
    /// Relative slack for the Δ-decay check.
    pub decay_rel_slack: f64,
    /// Number of interior chord positions for the midpoint check.
    pub midpoint_samples: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { bound_slack: 1e-8, decay_rel_slack: 1e-12, midpoint_samples: 9 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OracleConfig {
    pub grid_n: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { grid_n: DEFAULT_GRID_N }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: Option<String>,
    pub vertices: String,
    pub levels: String,
    pub report: String,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self { dir: None, vertices: "vertices.csv".into(), levels: "levels.jsonl".into(), report: "report.json".into() }
    }
}

/// Scenario file contents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default)]
    pub name: String,
    pub space: SpaceModel,
    pub set: SetConfig,
    pub x0: Vec<f64>,
    pub x1: Vec<f64>,
    #[serde(default)]
    pub builder: BuildParams,
    #[serde(default)]
    pub slicer: SlicerParams,
    #[serde(default)]
    pub checks: CheckToggles,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub oracle: OracleConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

/// A validated scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub config: ScenarioConfig,
    pub space: SpaceModel,
    pub set: ProximalSet,
    pub x0: Vector,
    pub x1: Vector,
}

impl Scenario {
    pub fn from_config(config: ScenarioConfig) -> Result<Self, HarnessError> {
        let space = config.space.clone();
        let set = ProximalSet::from_config(&config.set, &space)?;
        let x0 = space.vector(config.x0.clone())?;
        let x1 = space.vector(config.x1.clone())?;
        let tol = config.slicer.membership_tol;
        if !(tol > 0.0) {
            return Err(HarnessError::Config(format!("membership_tol must be positive, got {tol}")));
        }
        for (name, x) in [("x0", &x0), ("x1", &x1)] {
            let dist = set.distance(&space, x)?;
            if dist > tol {
                return Err(HarnessError::Config(format!("{name} is at distance {dist} from the set")));
            }
        }
        Ok(Self { config, space, set, x0, x1 })
    }

    pub fn from_json(text: &str) -> Result<Self, HarnessError> {
        Self::from_config(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, HarnessError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn build_params(&self) -> BuildParams {
        BuildParams { slicer: self.config.slicer, ..self.config.builder }
    }
}
