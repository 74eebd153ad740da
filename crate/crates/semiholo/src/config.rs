//! Experiment configuration files.
//!
//! ```json
//! {
//!   "params": { "p": 16, "y": 4, "d": 8 },
//!   "seed": 7,
//!   "capacity": { "gammas": [1, 2, 20] },
//!   "mc": { "vocab": [8, 64, 256], "trials": 10000, "gamma": 2 },
//!   "copu": { "l": 8, "y": 1, "d": 8, "script": "ops.txt" },
//!   "out": "report.json"
//! }
//! ```
//!
//! Every field is optional. Command-line flags take precedence.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::report::ParamsDoc;

/// Capacity sweep.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapacityWorkload {
    /// Binding depths to tabulate.
    pub gammas: Vec<u32>,
}

/// Monte-Carlo workload.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McWorkload {
    /// Vocabulary sizes to probe.
    #[serde(default)]
    pub vocab: Vec<usize>,
    /// Trials per vocabulary size.
    pub trials: Option<u64>,
    /// Binding depth of each derived item.
    pub gamma: Option<u32>,
}

/// Simulator workload.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CopuWorkload {
    /// Bits per element.
    pub l: Option<u32>,
    /// Elements per item.
    pub y: Option<usize>,
    /// Items per operand.
    pub d: Option<usize>,
    /// Command script, relative to the config file.
    pub script: Option<PathBuf>,
}

/// A reproducible experiment: parameters, seed, workloads and output path.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// System parameters.
    pub params: Option<ParamsDoc>,
    /// RNG seed.
    pub seed: Option<u64>,
    /// Capacity sweep.
    pub capacity: Option<CapacityWorkload>,
    /// Monte-Carlo workload.
    pub mc: Option<McWorkload>,
    /// Simulator workload.
    pub copu: Option<CopuWorkload>,
    /// Report destination, relative to the config file.
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    /// Parses a config document.
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    /// Reads a config file, resolving relative paths against its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut cfg = Self::parse(&text)?;
        let base = path.parent().unwrap_or(Path::new(""));
        let resolve = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        if let Some(out) = cfg.out.as_mut() {
            resolve(out);
        }
        if let Some(script) = cfg.copu.as_mut().and_then(|c| c.script.as_mut()) {
            resolve(script);
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_document() {
        let cfg = ExperimentConfig::parse(
            r#"{"params":{"p":16,"y":4,"d":8},"seed":7,"capacity":{"gammas":[1,20]},
                "mc":{"vocab":[8],"trials":10,"gamma":2},"copu":{"l":8,"script":"ops.txt"},"out":"r.json"}"#,
        )
        .unwrap();
        assert_eq!(cfg.seed, Some(7));
        assert_eq!(cfg.capacity.unwrap().gammas, [1, 20]);
        assert_eq!(cfg.copu.unwrap().l, Some(8));
        assert_eq!(ExperimentConfig::parse("{}").unwrap(), ExperimentConfig::default());
    }

    #[test]
    fn rejects_unknown_fields() {
        assert!(matches!(ExperimentConfig::parse(r#"{"sede":1}"#), Err(CliError::Config(_))));
    }
}
