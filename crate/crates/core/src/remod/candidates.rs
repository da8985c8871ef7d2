//! Classes worth relocating, and where to.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::measures::Layout;
use super::FeatureMap;
use crate::code_model::{ClassId, CodeModel};
use crate::metrics::{CohesionLevel, MetricsReport, ViolationKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CandidateReason {
    LowCohesion,
    RuleOf30Violation,
    ScatteringContributor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestructuringCandidate {
    pub class: ClassId,
    pub reasons: BTreeSet<CandidateReason>,
    pub dominant_feature: Option<String>,
    pub suggested_target_package: Option<String>,
}

/// Flag classes with low cohesion, a size violation on the class or one of its
/// methods, or that are the only class of some scattered feature in their package.
pub fn restructuring_candidates(model: &CodeModel, metrics: &MetricsReport, fm: &FeatureMap) -> Vec<RestructuringCandidate> {
    let layout = Layout::of(model);
    let feature_classes = fm.classes();
    let feature_packages: BTreeMap<&str, BTreeSet<&str>> = feature_classes
        .iter()
        .map(|(f, cs)| (*f, cs.iter().filter_map(|c| layout.package_of(c)).collect()))
        .collect();

    let mut out = Vec::new();
    for class in model.classes() {
        let id = &class.id;
        let mut reasons = BTreeSet::new();
        if metrics
            .class(&id.to_string())
            .is_some_and(|c| c.cohesion_level == CohesionLevel::L)
        {
            reasons.insert(CandidateReason::LowCohesion);
        }
        let class_name = id.to_string();
        let methods: BTreeSet<String> = class.methods.iter().map(|m| m.qualified_name()).collect();
        if metrics.rule_of_30.violations.iter().any(|v| match v.kind {
            ViolationKind::ClassMethods => v.entity == class_name,
            ViolationKind::MethodLines => methods.contains(&v.entity),
            ViolationKind::PackageClasses => false,
        }) {
            reasons.insert(CandidateReason::RuleOf30Violation);
        }
        // Removing the class lowers sca(f) when it is f's only class in its package
        // and f spans other packages too.
        let scatters = feature_classes.iter().any(|(f, cs)| {
            cs.contains(id)
                && feature_packages[f].len() >= 2
                && cs.iter().filter(|c| c.package == id.package).count() == 1
        });
        if scatters {
            reasons.insert(CandidateReason::ScatteringContributor);
        }
        if reasons.is_empty() {
            continue;
        }
        let dominant_feature = dominant_feature(fm, id);
        let suggested_target_package = dominant_feature
            .as_deref()
            .and_then(|f| plurality_package(&feature_classes[f], id));
        out.push(RestructuringCandidate {
            class: id.clone(),
            reasons,
            dominant_feature,
            suggested_target_package,
        });
    }
    out
}

/// The feature tagging a strict majority of the class's tagged methods.
fn dominant_feature(fm: &FeatureMap, class: &ClassId) -> Option<String> {
    let tags = fm.tags_in(class);
    let mut votes: BTreeMap<&str, usize> = BTreeMap::new();
    for fs in tags.values() {
        for f in fs {
            *votes.entry(f).or_default() += 1;
        }
    }
    votes
        .into_iter()
        .find(|(_, n)| 2 * n > tags.len())
        .map(|(f, _)| f.to_string())
}

/// Package holding most of the feature's other classes. No suggestion when the
/// class's own package is among the most populated; other ties go to the
/// smaller name.
fn plurality_package(classes: &BTreeSet<&ClassId>, class: &ClassId) -> Option<String> {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for c in classes.iter().filter(|c| **c != class) {
        *counts.entry(c.package.as_str()).or_default() += 1;
    }
    let best = counts.values().copied().max()?;
    if counts.get(class.package.as_str()) == Some(&best) {
        return None;
    }
    counts.into_iter().find(|(_, n)| *n == best).map(|(p, _)| p.to_string())
}
