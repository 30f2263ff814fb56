//! Scenario files.
//!
//! A scenario is a TOML document:
//!
//! ```toml
//! [game]
//! l = 8
//! v = 5
//! x = 2
//! f = 2
//! c = 3
//! y = 2
//!
//! [attack]            # optional
//! q1 = "3/5"
//! q2 = "0.45"
//!
//! [attacker]          # optional
//! sigma = 3
//! eps_alliance = 1
//! eps_infight = 1
//!
//! [options]           # optional
//! backoff_delta = "1/1000"
//! margin = "0"
//! resolution = 101
//! ```
//!
//! Numbers are integers or quoted decimals/fractions; bare TOML floats are
//! rejected because they are not exact. Unknown keys are errors.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::attacker::{default_backoff_delta, AttackerError, AttackerParameters};
use crate::game::{validate_parameters, AttackLevels, GameError, GameParameters};
use crate::scalar::Scalar;

pub const DEFAULT_RESOLUTION: usize = 101;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("scenario syntax: {0}")]
    Syntax(String),
    #[error("invalid game: {0}")]
    Game(#[from] GameError),
    #[error("invalid attacker: {0}")]
    Attacker(#[from] AttackerError),
    #[error("invalid option: {0}")]
    Option(String),
    #[error("scenario has no [{0}] section, which this command requires")]
    MissingSection(&'static str),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub backoff_delta: Option<Scalar>,
    pub margin: Option<Scalar>,
    pub resolution: Option<usize>,
}

/// A parsed and validated scenario.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub game: GameParameters,
    #[serde(default)]
    pub attack: Option<AttackLevels>,
    #[serde(default)]
    pub attacker: Option<AttackerParameters>,
    #[serde(default)]
    pub options: Options,
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario, ScenarioError> {
        let raw: Scenario = toml::from_str(text).map_err(|e| ScenarioError::Syntax(e.message().to_string()))?;
        raw.validated()
    }

    pub fn validated(self) -> Result<Scenario, ScenarioError> {
        let game = validate_parameters(self.game)?;
        let attack = self.attack.map(AttackLevels::validated).transpose()?;
        let attacker = self.attacker.map(AttackerParameters::validated).transpose()?;
        if let Some(delta) = &self.options.backoff_delta {
            check_delta(delta)?;
        }
        if let Some(margin) = &self.options.margin {
            check_margin(margin)?;
        }
        if let Some(res) = self.options.resolution {
            check_resolution(res)?;
        }
        Ok(Scenario { game, attack, attacker, options: self.options })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario serializes")
    }

    pub fn require_attack(&self) -> Result<&AttackLevels, ScenarioError> {
        self.attack.as_ref().ok_or(ScenarioError::MissingSection("attack"))
    }

    pub fn require_attacker(&self) -> Result<&AttackerParameters, ScenarioError> {
        self.attacker.as_ref().ok_or(ScenarioError::MissingSection("attacker"))
    }

    pub fn backoff_delta(&self) -> Scalar {
        self.options.backoff_delta.clone().unwrap_or_else(default_backoff_delta)
    }

    pub fn margin(&self) -> Scalar {
        self.options.margin.clone().unwrap_or_else(Scalar::zero)
    }

    pub fn resolution(&self) -> usize {
        self.options.resolution.unwrap_or(DEFAULT_RESOLUTION)
    }
}

pub fn check_delta(delta: &Scalar) -> Result<(), ScenarioError> {
    if delta.is_positive() && delta < &Scalar::one() {
        Ok(())
    } else {
        Err(ScenarioError::Option(format!("backoff_delta must satisfy 0 < delta < 1 (got {delta})")))
    }
}

pub fn check_margin(margin: &Scalar) -> Result<(), ScenarioError> {
    if margin.is_negative() {
        Err(ScenarioError::Option(format!("margin must be >= 0 (got {margin})")))
    } else {
        Ok(())
    }
}

pub fn check_resolution(resolution: usize) -> Result<(), ScenarioError> {
    if resolution < 2 {
        Err(ScenarioError::Option(format!("resolution must be >= 2 (got {resolution})")))
    } else {
        Ok(())
    }
}
