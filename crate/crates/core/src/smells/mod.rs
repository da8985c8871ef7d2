//! Rule-based smell detection.
//!
//! A [`DetectionRule`] is a conjunction of metric/threshold clauses; a smell kind
//! fires on an entity when any of its rules holds. Duplicate-code rules are
//! evaluated over method pairs, every other kind over single methods.

mod duplicates;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code_model::{CodeModel, MethodDecl, MethodRef, Visibility};
use crate::metrics::{MethodMetrics, MetricsReport};

pub use duplicates::{duplicate_spans, Span};

/// Smell kinds, declared in resolution rank order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SmellKind {
    DeadCode,
    DuplicateCode,
    LongParameterList,
    LongMethod,
    FeatureEnvy,
}

impl SmellKind {
    pub const ALL: [SmellKind; 5] = [
        SmellKind::DeadCode,
        SmellKind::DuplicateCode,
        SmellKind::LongParameterList,
        SmellKind::LongMethod,
        SmellKind::FeatureEnvy,
    ];

    /// Metrics always recorded as evidence for this kind.
    fn core_metrics(self) -> &'static [Metric] {
        match self {
            SmellKind::DeadCode => &[Metric::IncomingRefs],
            SmellKind::DuplicateCode => &[Metric::DuplicateSpan],
            SmellKind::LongParameterList => &[Metric::ParamCount],
            SmellKind::LongMethod => &[Metric::Sloc, Metric::Mccabe],
            SmellKind::FeatureEnvy => &[Metric::ForeignAccesses, Metric::OwnAccesses, Metric::EnvyMargin],
        }
    }
}

impl fmt::Display for SmellKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Sloc,
    Mccabe,
    ParamCount,
    /// Distinct callers of the method, excluding itself.
    IncomingRefs,
    /// 1 for public methods, else 0.
    IsPublic,
    /// 1 for `public static void main(String[])`, else 0.
    IsEntryPoint,
    /// Member accesses to the single most-accessed foreign class.
    ForeignAccesses,
    /// Member accesses through the method's own class.
    OwnAccesses,
    /// `foreign_accesses - own_accesses`.
    EnvyMargin,
    /// Longest shared normalized-token run between two method bodies.
    DuplicateSpan,
}

impl Metric {
    pub fn id(self) -> &'static str {
        match self {
            Metric::Sloc => "sloc",
            Metric::Mccabe => "mccabe",
            Metric::ParamCount => "param_count",
            Metric::IncomingRefs => "incoming_refs",
            Metric::IsPublic => "is_public",
            Metric::IsEntryPoint => "is_entry_point",
            Metric::ForeignAccesses => "foreign_accesses",
            Metric::OwnAccesses => "own_accesses",
            Metric::EnvyMargin => "envy_margin",
            Metric::DuplicateSpan => "duplicate_span",
        }
    }

    fn is_pairwise(self) -> bool {
        self == Metric::DuplicateSpan
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Comparator {
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

impl Comparator {
    pub fn holds(self, observed: f64, threshold: f64) -> bool {
        match self {
            Comparator::Gt => observed > threshold,
            Comparator::Ge => observed >= threshold,
            Comparator::Lt => observed < threshold,
            Comparator::Le => observed <= threshold,
            Comparator::Eq => observed == threshold,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Comparator::Gt => ">",
            Comparator::Ge => ">=",
            Comparator::Lt => "<",
            Comparator::Le => "<=",
            Comparator::Eq => "=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Clause {
    pub metric: Metric,
    pub comparator: Comparator,
    pub threshold: f64,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.metric.id(), self.comparator.symbol(), self.threshold)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetectionRule {
    pub id: String,
    pub kind: SmellKind,
    /// All clauses must hold for the rule to fire.
    pub clauses: Vec<Clause>,
}

impl DetectionRule {
    pub fn new(id: impl Into<String>, kind: SmellKind, clauses: Vec<Clause>) -> Self {
        Self {
            id: id.into(),
            kind,
            clauses,
        }
    }

    pub fn validate(&self) -> Result<(), SmellError> {
        if self.clauses.is_empty() {
            return Err(SmellError::InvalidRule {
                rule: self.id.clone(),
                reason: "rule has no clauses".into(),
            });
        }
        for c in &self.clauses {
            if !c.threshold.is_finite() || c.threshold < 0.0 && c.metric != Metric::EnvyMargin {
                return Err(SmellError::InvalidThreshold {
                    rule: self.id.clone(),
                    value: c.threshold,
                });
            }
            if c.metric.is_pairwise() != (self.kind == SmellKind::DuplicateCode) {
                return Err(SmellError::InvalidRule {
                    rule: self.id.clone(),
                    reason: format!("metric {} is not applicable to {}", c.metric.id(), self.kind),
                });
            }
        }
        Ok(())
    }

    fn holds(&self, values: &BTreeMap<Metric, i64>) -> bool {
        self.clauses
            .iter()
            .all(|c| c.comparator.holds(values[&c.metric] as f64, c.threshold))
    }

    /// `sloc > 30 and mccabe > 10` style rendering.
    pub fn condition(&self) -> String {
        let parts: Vec<String> = self.clauses.iter().map(ToString::to_string).collect();
        parts.join(" and ")
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SmellError {
    #[error("rule {rule}: invalid threshold {value}")]
    InvalidThreshold { rule: String, value: f64 },
    #[error("rule {rule}: {reason}")]
    InvalidRule { rule: String, reason: String },
}

/// The threshold table from which the default rule set is generated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ThresholdConfig {
    /// Long method when sloc exceeds this.
    pub long_method_sloc: i64,
    /// Long method when McCabe complexity exceeds this.
    pub long_method_mccabe: i64,
    /// Long parameter list when the parameter count exceeds this.
    pub long_parameter_list: i64,
    /// Minimum shared token run reported as duplicate code.
    pub duplicate_min_tokens: i64,
    /// Minimum accesses to a single foreign class for feature envy.
    pub feature_envy_min_foreign: i64,
}

impl Default for ThresholdConfig {
    fn default() -> Self {
        Self {
            long_method_sloc: 30,
            long_method_mccabe: 10,
            long_parameter_list: 4,
            duplicate_min_tokens: 25,
            feature_envy_min_foreign: 3,
        }
    }
}

fn clause(metric: Metric, comparator: Comparator, threshold: f64) -> Clause {
    Clause {
        metric,
        comparator,
        threshold,
    }
}

/// Build the default rule set from a threshold table.
pub fn generate_rules(cfg: &ThresholdConfig) -> Result<Vec<DetectionRule>, SmellError> {
    use Comparator::*;
    let checks = [
        ("long_method_sloc", cfg.long_method_sloc),
        ("long_method_mccabe", cfg.long_method_mccabe),
        ("long_parameter_list", cfg.long_parameter_list),
        ("duplicate_min_tokens", cfg.duplicate_min_tokens),
        ("feature_envy_min_foreign", cfg.feature_envy_min_foreign),
    ];
    for (key, value) in checks {
        if value < 0 || (key == "duplicate_min_tokens" && value == 0) {
            return Err(SmellError::InvalidThreshold {
                rule: key.to_string(),
                value: value as f64,
            });
        }
    }
    let rules = vec![
        DetectionRule::new(
            "dead-code",
            SmellKind::DeadCode,
            vec![
                clause(Metric::IncomingRefs, Eq, 0.0),
                clause(Metric::IsPublic, Eq, 0.0),
                clause(Metric::IsEntryPoint, Eq, 0.0),
            ],
        ),
        DetectionRule::new(
            "duplicate-code",
            SmellKind::DuplicateCode,
            vec![clause(Metric::DuplicateSpan, Ge, cfg.duplicate_min_tokens as f64)],
        ),
        DetectionRule::new(
            "long-parameter-list",
            SmellKind::LongParameterList,
            vec![clause(Metric::ParamCount, Gt, cfg.long_parameter_list as f64)],
        ),
        DetectionRule::new(
            "long-method-sloc",
            SmellKind::LongMethod,
            vec![clause(Metric::Sloc, Gt, cfg.long_method_sloc as f64)],
        ),
        DetectionRule::new(
            "long-method-mccabe",
            SmellKind::LongMethod,
            vec![clause(Metric::Mccabe, Gt, cfg.long_method_mccabe as f64)],
        ),
        DetectionRule::new(
            "feature-envy",
            SmellKind::FeatureEnvy,
            vec![
                clause(Metric::ForeignAccesses, Ge, cfg.feature_envy_min_foreign as f64),
                clause(Metric::EnvyMargin, Gt, 0.0),
            ],
        ),
    ];
    Ok(rules)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmellInstance {
    pub kind: SmellKind,
    pub location: MethodRef,
    /// The other endpoint of a duplicate pair.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub location2: Option<MethodRef>,
    pub evidence: BTreeMap<Metric, i64>,
    pub rule: String,
    /// The envied class, for feature envy.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target_class: Option<String>,
}

impl SmellInstance {
    /// Sort key: kind rank, then location text.
    pub fn sort_key(&self) -> (SmellKind, String, String) {
        (
            self.kind,
            self.location.to_string(),
            self.location2.as_ref().map(ToString::to_string).unwrap_or_default(),
        )
    }

    pub fn locations(&self) -> impl Iterator<Item = &MethodRef> {
        std::iter::once(&self.location).chain(self.location2.iter())
    }
}

impl fmt::Display for SmellInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.kind, self.location)?;
        if let Some(other) = &self.location2 {
            write!(f, " and {other}")?;
        }
        Ok(())
    }
}

/// Per-method metric values used by the single-method rules.
fn method_values(
    m: &MethodDecl,
    metrics: &MethodMetrics,
    incoming: &BTreeMap<MethodRef, usize>,
    model: &CodeModel,
) -> (BTreeMap<Metric, i64>, Option<String>) {
    let counts = m.foreign_access_counts();
    // Most-accessed foreign class; ties go to the smallest class id.
    let envied = counts
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then_with(|| b.0.to_string().cmp(&a.0.to_string())));
    let foreign = envied.map_or(0, |(_, n)| *n) as i64;
    let own = m.own_member_accesses as i64;
    let values = BTreeMap::from([
        (Metric::Sloc, metrics.sloc as i64),
        (Metric::Mccabe, metrics.mccabe as i64),
        (Metric::ParamCount, metrics.param_count as i64),
        (Metric::IncomingRefs, incoming.get(&m.id).copied().unwrap_or(0) as i64),
        (Metric::IsPublic, i64::from(m.visibility == Visibility::Public)),
        (Metric::IsEntryPoint, i64::from(model.is_entry_point(&m.id))),
        (Metric::ForeignAccesses, foreign),
        (Metric::OwnAccesses, own),
        (Metric::EnvyMargin, foreign - own),
    ]);
    (values, envied.map(|(c, _)| c.to_string()))
}

fn evidence(kind: SmellKind, rule: &DetectionRule, values: &BTreeMap<Metric, i64>) -> BTreeMap<Metric, i64> {
    kind.core_metrics()
        .iter()
        .chain(rule.clauses.iter().map(|c| &c.metric))
        .map(|m| (*m, values[m]))
        .collect()
}

/// Smallest span length that can satisfy one duplicate clause, when the clause
/// bounds the span from below.
fn span_floor(c: &Clause) -> Option<usize> {
    let t = c.threshold;
    match c.comparator {
        Comparator::Ge | Comparator::Eq => Some(t.ceil() as usize),
        Comparator::Gt => Some(t.floor() as usize + 1),
        Comparator::Lt | Comparator::Le => None,
    }
}

/// Evaluate every rule over every applicable entity.
///
/// Output is sorted by (kind, location) and holds each (kind, location pair) once;
/// when several rules of a kind fire, the first in rule order is reported.
pub fn detect_smells(model: &CodeModel, report: &MetricsReport, rules: &[DetectionRule]) -> Vec<SmellInstance> {
    let by_name: HashMap<&str, &MethodMetrics> =
        report.methods.iter().map(|m| (m.qualified_name.as_str(), m)).collect();
    let incoming = model.incoming_references();
    let methods: Vec<&MethodDecl> = model.methods().map(|(_, m)| m).collect();
    let (pair_rules, method_rules): (Vec<&DetectionRule>, Vec<&DetectionRule>) =
        rules.iter().partition(|r| r.kind == SmellKind::DuplicateCode);

    let mut smells: Vec<SmellInstance> = methods
        .par_iter()
        .flat_map_iter(|m| {
            let own_metrics;
            let metrics = match by_name.get(m.qualified_name().as_str()) {
                Some(mm) => *mm,
                None => {
                    own_metrics = MethodMetrics {
                        qualified_name: m.qualified_name(),
                        mccabe: crate::metrics::cyclomatic_complexity(m),
                        sloc: m.sloc,
                        param_count: m.params.len(),
                    };
                    &own_metrics
                }
            };
            let (values, envied) = method_values(m, metrics, &incoming, model);
            let mut found: Vec<SmellInstance> = Vec::new();
            for rule in &method_rules {
                if rule.kind == SmellKind::DeadCode && m.is_constructor {
                    continue;
                }
                if found.iter().any(|s| s.kind == rule.kind) || !rule.holds(&values) {
                    continue;
                }
                found.push(SmellInstance {
                    kind: rule.kind,
                    location: m.id.clone(),
                    location2: None,
                    evidence: evidence(rule.kind, rule, &values),
                    rule: rule.id.clone(),
                    target_class: if rule.kind == SmellKind::FeatureEnvy { envied.clone() } else { None },
                });
            }
            found
        })
        .collect();

    if !pair_rules.is_empty() {
        smells.extend(detect_duplicates(&methods, &pair_rules));
    }
    smells.sort_by_cached_key(SmellInstance::sort_key);
    smells
}

fn detect_duplicates(methods: &[&MethodDecl], rules: &[&DetectionRule]) -> Vec<SmellInstance> {
    // A shared k-gram is necessary for a span of length k, so when every rule
    // bounds the span from below the pair scan can be restricted to candidates.
    let floors: Option<Vec<usize>> = rules
        .iter()
        .map(|r| {
            r.clauses
                .iter()
                .filter_map(span_floor)
                .max()
        })
        .collect();
    let pairs = match floors.and_then(|f| f.into_iter().min()) {
        Some(k) if k > 0 => duplicates::candidate_pairs(methods, k),
        _ => (0..methods.len())
            .flat_map(|i| (i + 1..methods.len()).map(move |j| (i, j)))
            .collect(),
    };
    pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let (a, b) = if methods[i].qualified_name() <= methods[j].qualified_name() {
                (methods[i], methods[j])
            } else {
                (methods[j], methods[i])
            };
            let longest = duplicates::longest_run(&a.body_tokens, &b.body_tokens) as i64;
            let values = BTreeMap::from([(Metric::DuplicateSpan, longest)]);
            let rule = rules.iter().find(|r| r.holds(&values))?;
            Some(SmellInstance {
                kind: SmellKind::DuplicateCode,
                location: a.id.clone(),
                location2: Some(b.id.clone()),
                evidence: evidence(SmellKind::DuplicateCode, rule, &values),
                rule: rule.id.clone(),
                target_class: None,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests;
