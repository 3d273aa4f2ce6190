use std::path::{Path, PathBuf};

use gppt::lcpcone::DEFAULT_SIZE_CAP;
use gppt::verify::DEFAULT_TRIALS;
use gppt::ToleranceConfig;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Settings shared by every subcommand. A `--config` file holds the same
/// fields in JSON; command-line flags take precedence over it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub tolerances: ToleranceConfig,
    pub seed: u64,
    pub trials: usize,
    pub size_cap: usize,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            tolerances: ToleranceConfig::default(),
            seed: 0,
            trials: DEFAULT_TRIALS,
            size_cap: DEFAULT_SIZE_CAP,
            output: None,
        }
    }
}

/// Values given on the command line (or through `GPPT_SEED`).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub rank_tol: Option<f64>,
    pub eq_tol: Option<f64>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub size_cap: Option<usize>,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
    }

    pub fn resolve(file: Option<&Path>, o: Overrides) -> Result<Self, CliError> {
        let mut cfg = match file {
            Some(p) => Self::load(p)?,
            None => Self::default(),
        };
        if let Some(v) = o.rank_tol {
            cfg.tolerances.rank_tol_rel = v;
        }
        if let Some(v) = o.eq_tol {
            cfg.tolerances.eq_tol = v;
        }
        if let Some(v) = o.seed {
            cfg.seed = v;
        }
        if let Some(v) = o.trials {
            cfg.trials = v;
        }
        if let Some(v) = o.size_cap {
            cfg.size_cap = v;
        }
        if o.output.is_some() {
            cfg.output = o.output;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let t = &self.tolerances;
        if !(t.rank_tol_rel.is_finite() && t.rank_tol_rel > 0.0 && t.eq_tol.is_finite() && t.eq_tol > 0.0) {
            return Err(CliError::Usage("tolerances must be positive and finite".into()));
        }
        if self.trials == 0 {
            return Err(CliError::Usage("trials must be at least 1".into()));
        }
        if self.size_cap == 0 {
            return Err(CliError::Usage("size cap must be at least 1".into()));
        }
        Ok(())
    }
}
