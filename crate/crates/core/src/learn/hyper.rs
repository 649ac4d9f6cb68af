use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Which momentum rule `apply_update` uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UpdateRule {
    /// `change = eta * grad + alpha * prev`
    Classical,
    /// `change = eta * grad + alpha * prev + beta * prev2`
    Modified,
}

impl UpdateRule {
    pub const ALL: [UpdateRule; 2] = [UpdateRule::Classical, UpdateRule::Modified];

    pub fn name(self) -> &'static str {
        match self {
            UpdateRule::Classical => "classical",
            UpdateRule::Modified => "modified",
        }
    }
}

impl fmt::Display for UpdateRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for UpdateRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical" => Ok(UpdateRule::Classical),
            "modified" => Ok(UpdateRule::Modified),
            other => Err(Error::Config(format!("unknown update rule `{other}`"))),
        }
    }
}

/// Learning parameters. Defaults: eta 0.01, alpha 0.9, beta 0.05, goal 0.001, 2000 epochs, modified rule.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperParams {
    pub eta: f64,
    pub alpha: f64,
    pub beta: f64,
    /// Training stops once the per-pattern, per-output MSE reaches this.
    pub mse_goal: f64,
    pub max_epochs: usize,
    pub update_rule: UpdateRule,
}

impl Default for HyperParams {
    fn default() -> Self {
        Self {
            eta: 0.01,
            alpha: 0.90,
            beta: 0.05,
            mse_goal: 0.001,
            max_epochs: 2000,
            update_rule: UpdateRule::Modified,
        }
    }
}

impl HyperParams {
    pub fn with_rule(self, update_rule: UpdateRule) -> Self {
        Self { update_rule, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.eta, self.alpha, self.beta, self.mse_goal]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::Config("hyperparameters must be finite".into()));
        }
        if self.eta <= 0.0 {
            return Err(Error::Config(format!("eta must be > 0, got {}", self.eta)));
        }
        if self.alpha < 0.0 || self.beta < 0.0 {
            return Err(Error::Config(format!(
                "alpha and beta must be >= 0, got {} and {}",
                self.alpha, self.beta
            )));
        }
        if self.mse_goal <= 0.0 {
            return Err(Error::Config(format!("mse_goal must be > 0, got {}", self.mse_goal)));
        }
        if self.max_epochs == 0 {
            return Err(Error::Config("max_epochs must be >= 1".into()));
        }
        Ok(())
    }
}
