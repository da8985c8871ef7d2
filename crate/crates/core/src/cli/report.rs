//! The JSON report. Every section is always present, `null` when the command
//! did not produce it; key order follows field order.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::code_model::LineStats;
use crate::metrics::MetricsReport;
use crate::planner::ActionKind;
use crate::remod::{FeatureMetricsReport, MoveOp, RestructuringCandidate};
use crate::smells::{SmellInstance, SmellKind};

pub const TOOL: &str = "smellplan";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub input_digest: String,
    pub files: usize,
    pub line_stats: Option<LineStats>,
    pub metrics: Option<MetricsReport>,
    pub smells: Option<Vec<SmellInstance>>,
    pub ordered_smells: Option<Vec<OrderedSmell>>,
    pub plan: Option<PlanSection>,
    pub feature_metrics: Option<FeatureMetricsSection>,
    pub candidates: Option<Vec<RestructuringCandidate>>,
    pub suggested_moves: Option<Vec<MoveOp>>,
    pub graphs: Option<Graphs>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, input_digest: String, files: usize) -> Self {
        Self {
            tool: TOOL,
            version: env!("CARGO_PKG_VERSION"),
            command,
            input_digest,
            files,
            line_stats: None,
            metrics: None,
            smells: None,
            ordered_smells: None,
            plan: None,
            feature_metrics: None,
            candidates: None,
            suggested_moves: None,
            graphs: None,
            warnings: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderedSmell {
    pub position: usize,
    /// Index into the `smells` section.
    pub smell: usize,
    pub kind: SmellKind,
    pub location: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlanSection {
    pub fitness: f64,
    /// Actions whose precedence prerequisites all come earlier.
    pub satisfied: usize,
    /// Precedence edges the order violates.
    pub violations: usize,
    pub steps: Vec<PlanStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlanStep {
    pub position: usize,
    pub action: usize,
    pub kind: ActionKind,
    pub smell: usize,
    pub location: String,
    pub rationale: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeatureMetricsSection {
    pub features: BTreeMap<String, usize>,
    pub before: FeatureMetricsReport,
    pub after: FeatureMetricsReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Graphs {
    pub precedence: Option<String>,
    pub features: Option<String>,
}
