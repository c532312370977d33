use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::analysis::{AxisGrid, PhaseChoice, SweepAxis, SweepSpec};
use crate::model::{ModelError, SystemParams};
use crate::scattering::{Direction, Regime};
use crate::verify::{VerifyConfig, DEFAULT_DETUNINGS, DEFAULT_SAMPLES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// A grid given either as explicit values or as `start`, `stop`, `points`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisConfig {
    pub axis: SweepAxis,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stop: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
}

impl AxisConfig {
    pub fn linspace(axis: SweepAxis, start: f64, stop: f64, points: usize) -> Self {
        Self {
            axis,
            values: None,
            start: Some(start),
            stop: Some(stop),
            points: Some(points),
        }
    }

    pub fn values(axis: SweepAxis, values: Vec<f64>) -> Self {
        Self {
            axis,
            values: Some(values),
            start: None,
            stop: None,
            points: None,
        }
    }

    pub fn resolve(&self) -> Result<AxisGrid, String> {
        match (&self.values, self.start, self.stop, self.points) {
            (Some(values), None, None, None) => Ok(AxisGrid {
                axis: self.axis,
                values: values.clone(),
            }),
            (None, Some(start), Some(stop), Some(points)) => {
                if points == 0 {
                    return Err("grid has zero points".into());
                }
                Ok(AxisGrid::linspace(self.axis, start, stop, points))
            }
            _ => Err("give either `values` or all of `start`, `stop`, `points`".into()),
        }
    }
}

fn physical() -> PhaseChoice {
    PhaseChoice::Physical
}

fn both_directions() -> Vec<Direction> {
    vec![Direction::Left, Direction::Right]
}

fn default_samples() -> usize {
    DEFAULT_SAMPLES
}

fn default_detunings() -> usize {
    DEFAULT_DETUNINGS
}

/// Everything a run needs. Serialized into every output table; `out` and
/// `threads` only affect where and how fast, so they are left out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub params: SystemParams,
    #[serde(default = "physical")]
    pub phases: PhaseChoice,
    pub regime: Regime,
    /// Detuning used when no axis sweeps it.
    #[serde(default)]
    pub delta: f64,
    pub axis1: AxisConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis2: Option<AxisConfig>,
    #[serde(default = "both_directions")]
    pub directions: Vec<Direction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(default, skip_serializing)]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing)]
    pub threads: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_detunings")]
    pub detunings: usize,
    #[serde(default)]
    pub strict: bool,
}

/// Validation failure, with the offending key when it can be named.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigIssue {
    pub key: Option<&'static str>,
    pub message: String,
}

impl ConfigIssue {
    fn new(key: Option<&'static str>, message: impl Into<String>) -> Self {
        Self {
            key,
            message: message.into(),
        }
    }
}

impl RunConfig {
    /// A Markov Δ line through the first resonant subspace.
    pub fn baseline() -> Self {
        Self {
            description: None,
            params: SystemParams::resonant_symmetric(1000.0, 5.0, 0.1, 0.0, 1),
            phases: PhaseChoice::Physical,
            regime: Regime::Markov,
            delta: 0.0,
            axis1: AxisConfig::linspace(SweepAxis::Delta, -5.0, 5.0, 201),
            axis2: None,
            directions: both_directions(),
            format: None,
            out: None,
            threads: None,
            seed: 0,
            samples: DEFAULT_SAMPLES,
            detunings: DEFAULT_DETUNINGS,
            strict: false,
        }
    }

    pub fn sweep_spec(&self) -> Result<SweepSpec, ConfigIssue> {
        let axis1 = self
            .axis1
            .resolve()
            .map_err(|m| ConfigIssue::new(Some("axis1"), format!("axis1: {m}")))?;
        let axis2 = self
            .axis2
            .as_ref()
            .map(|a| a.resolve())
            .transpose()
            .map_err(|m| ConfigIssue::new(Some("axis2"), format!("axis2: {m}")))?;
        let spec = SweepSpec {
            params: self.params,
            phases: self.phases,
            regime: self.regime,
            delta: self.delta,
            axis1,
            axis2,
            directions: self.directions.clone(),
        };
        spec.validate().map_err(|e| {
            let key = match &e {
                crate::analysis::AnalysisError::Model(ModelError::InvalidParameter { name, .. }) => {
                    Some(*name)
                }
                crate::analysis::AnalysisError::Model(_) => Some("params"),
                _ => None,
            };
            ConfigIssue::new(key, e.to_string())
        })?;
        Ok(spec)
    }

    pub fn verify_config(&self) -> Result<VerifyConfig, ConfigIssue> {
        if self.samples == 0 {
            return Err(ConfigIssue::new(Some("samples"), "samples must be at least 1"));
        }
        if self.detunings == 0 {
            return Err(ConfigIssue::new(Some("detunings"), "detunings must be at least 1"));
        }
        Ok(VerifyConfig {
            seed: self.seed,
            samples: self.samples,
            detunings: self.detunings,
        })
    }
}

/// 1-based line of the first occurrence of `"key"` in a JSON document.
pub fn locate_key(source: &str, key: &str) -> Option<usize> {
    let quoted = format!("\"{key}\"");
    source
        .lines()
        .position(|line| line.contains(&quoted))
        .map(|i| i + 1)
}
