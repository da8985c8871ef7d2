//! TOML configuration. Every key is optional; unknown keys are rejected.

use std::path::Path;

use serde::Deserialize;

use super::CliError;
use crate::metrics::{CohesionThresholds, MetricsConfig, RuleOf30Limits};
use crate::ordering::KindPrecedence;
use crate::planner::GaConfig;
use crate::remod::SuggestConfig;
use crate::smells::{generate_rules, DetectionRule, SmellKind, ThresholdConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub format: Format,
    pub emit_graph: bool,
    pub emit_feature_graph: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrecedenceConfig {
    /// `[before, after]` kind pairs replacing the default matrix.
    pub before: Vec<[SmellKind; 2]>,
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Config {
    pub thresholds: ThresholdConfig,
    /// Replaces the rule table generated from `thresholds` when present.
    pub rules: Option<Vec<DetectionRule>>,
    pub rule_of_30: RuleOf30Limits,
    pub cohesion: CohesionThresholds,
    pub ga: GaConfig,
    pub remod: SuggestConfig,
    pub output: OutputConfig,
    pub precedence: Option<PrecedenceConfig>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: Config = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.detection_rules()?;
        self.precedence()?;
        self.ga.validate().map_err(|e| CliError::Config(e.to_string()))?;
        let c = &self.cohesion;
        if !(0.0..=1.0).contains(&c.high_max) || !(0.0..=1.0).contains(&c.medium_max) || c.high_max > c.medium_max {
            return Err(CliError::Config(
                "cohesion cut points must satisfy 0 <= high_max <= medium_max <= 1".into(),
            ));
        }
        Ok(())
    }

    /// The active rule table: explicit `[[rules]]` or the one generated from `[thresholds]`.
    pub fn detection_rules(&self) -> Result<Vec<DetectionRule>, CliError> {
        let rules = match &self.rules {
            Some(rules) => rules.clone(),
            None => generate_rules(&self.thresholds).map_err(|e| CliError::Config(e.to_string()))?,
        };
        for r in &rules {
            r.validate().map_err(|e| CliError::Config(e.to_string()))?;
        }
        Ok(rules)
    }

    pub fn precedence(&self) -> Result<KindPrecedence, CliError> {
        match &self.precedence {
            Some(p) => KindPrecedence::from_pairs(p.before.iter().map(|[a, b]| (*a, *b))).map_err(|e| CliError::Config(e.to_string())),
            None => Ok(KindPrecedence::default()),
        }
    }

    pub fn metrics(&self) -> MetricsConfig {
        MetricsConfig {
            cohesion: self.cohesion,
            rule_of_30: self.rule_of_30,
        }
    }
}
