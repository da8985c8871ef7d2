//! Feature-oriented remodularization: feature maps, scattering/tangling and
//! package cohesion/coupling metrics, restructuring candidates and simulated
//! class moves.

mod candidates;
mod measures;
mod moves;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::code_model::{ClassId, CodeModel, MethodRef};

pub use candidates::{restructuring_candidates, CandidateReason, RestructuringCandidate};
pub use measures::{feature_metrics, fsca, ftang, objective, pcom, pcoup, FeatureMetricsReport};
pub use moves::{simulate_move, suggest_moves, MoveOp, MoveSuggestion, SuggestConfig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RemodError {
    #[error("no features: annotate methods with @feature(\"NAME\") or pass a trace file")]
    NoFeatures,
    #[error("model has no classes")]
    EmptyModel,
    #[error("{file}:{line}: malformed trace line, expected FEATURE<TAB>qualified.method")]
    MalformedTraceLine { file: String, line: usize },
    #[error("unknown class {0}")]
    UnknownClass(String),
    #[error("unknown package {0}")]
    UnknownPackage(String),
    #[error("class {0} is already in package {1}")]
    SamePackage(String, String),
    #[error("package {package} already has a class named {name}")]
    NameClash { package: String, name: String },
}

/// A trace file: one `feature<TAB>qualified.method` entry per line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceFile {
    pub path: String,
    pub text: String,
}

impl TraceFile {
    pub fn new(path: impl Into<String>, text: impl Into<String>) -> Self {
        Self {
            path: path.into(),
            text: text.into(),
        }
    }
}

/// Feature name to the methods implementing it.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct FeatureMap {
    pub features: BTreeMap<String, BTreeSet<MethodRef>>,
}

impl FeatureMap {
    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn insert(&mut self, feature: impl Into<String>, method: MethodRef) {
        self.features.entry(feature.into()).or_default().insert(method);
    }

    /// Classes implementing each feature.
    pub fn classes(&self) -> BTreeMap<&str, BTreeSet<&ClassId>> {
        self.features
            .iter()
            .map(|(f, ms)| (f.as_str(), ms.iter().map(|m| &m.class).collect()))
            .collect()
    }

    /// Features each method of `class` contributes to, per method.
    pub fn tags_in(&self, class: &ClassId) -> BTreeMap<&MethodRef, BTreeSet<&str>> {
        let mut out: BTreeMap<&MethodRef, BTreeSet<&str>> = BTreeMap::new();
        for (f, ms) in &self.features {
            for m in ms.iter().filter(|m| &m.class == class) {
                out.entry(m).or_default().insert(f.as_str());
            }
        }
        out
    }

    /// Classes carrying at least one feature.
    pub fn tagged_classes(&self) -> BTreeSet<&ClassId> {
        self.features.values().flatten().map(|m| &m.class).collect()
    }

    /// Rewrite entries after `op` relocated a class.
    pub fn relocate(&self, op: &MoveOp) -> FeatureMap {
        let target = op.target_id();
        let features = self
            .features
            .iter()
            .map(|(f, ms)| {
                let moved = ms
                    .iter()
                    .map(|m| {
                        if m.class == op.class {
                            MethodRef::new(target.clone(), m.signature.clone())
                        } else {
                            m.clone()
                        }
                    })
                    .collect();
                (f.clone(), moved)
            })
            .collect();
        FeatureMap { features }
    }

    /// Bipartite feature-to-package graph in DOT, edges labelled with class counts.
    pub fn to_dot(&self, model: &CodeModel) -> String {
        let layout = measures::Layout::of(model);
        let mut out = String::from("digraph features {\n  rankdir=LR;\n");
        for (f, classes) in self.classes() {
            let _ = writeln!(out, "  \"feature:{f}\" [shape=box];");
            let mut per_package: BTreeMap<&str, usize> = BTreeMap::new();
            for c in classes {
                if let Some(p) = layout.package_of(c) {
                    *per_package.entry(p).or_default() += 1;
                }
            }
            for (p, n) in per_package {
                let _ = writeln!(out, "  \"feature:{f}\" -> \"package:{p}\" [label=\"{n}\"];");
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Union of `@feature` annotations in the model and trace-file entries.
///
/// Trace entries naming methods absent from the model are skipped and reported
/// as warnings. An entry without a parameter list names every overload.
pub fn build_feature_map(model: &CodeModel, traces: &[TraceFile]) -> Result<(FeatureMap, Vec<String>), RemodError> {
    let mut fm = FeatureMap::default();
    for (_, m) in model.methods() {
        for tag in &m.feature_tags {
            fm.insert(tag.clone(), m.id.clone());
        }
    }
    let by_name: BTreeMap<String, &MethodRef> = model.methods().map(|(_, m)| (m.qualified_name(), &m.id)).collect();
    let mut by_plain: BTreeMap<String, Vec<&MethodRef>> = BTreeMap::new();
    for (_, m) in model.methods() {
        by_plain.entry(format!("{}.{}", m.id.class, m.name)).or_default().push(&m.id);
    }
    let mut warnings = Vec::new();
    for trace in traces {
        for (idx, raw) in trace.text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let malformed = || RemodError::MalformedTraceLine {
                file: trace.path.clone(),
                line: idx + 1,
            };
            let (feature, method) = line.split_once('\t').ok_or_else(malformed)?;
            let (feature, method) = (feature.trim(), method.trim());
            if feature.is_empty() || method.is_empty() || method.contains('\t') {
                return Err(malformed());
            }
            let resolved: Vec<&MethodRef> = if method.contains('(') {
                by_name.get(method).copied().into_iter().collect()
            } else {
                by_plain.get(method).cloned().unwrap_or_default()
            };
            if resolved.is_empty() {
                warnings.push(format!(
                    "{}:{}: trace names unknown method {method}; entry skipped",
                    trace.path,
                    idx + 1
                ));
            }
            for m in resolved {
                fm.insert(feature, m.clone());
            }
        }
    }
    Ok((fm, warnings))
}
