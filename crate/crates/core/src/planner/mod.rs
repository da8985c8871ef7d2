//! Refactoring plans: one candidate action per smell, sequenced by a genetic
//! algorithm that rewards respecting the precedence graph.

mod ga;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::code_model::CodeModel;
use crate::ordering::PrecedenceGraph;
use crate::smells::{SmellInstance, SmellKind};

pub use ga::{brute_force_best, evolve, evolve_traced, pmx_crossover, swap_mutation, Evolution, GaConfig, BRUTE_FORCE_LIMIT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ActionKind {
    RemoveDeadCode,
    MergeDuplicate,
    ExtractMethod,
    IntroduceParameterObject,
    MoveMethod,
    PullUpMethod,
}

impl fmt::Display for ActionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefactoringAction {
    /// Dense id; equal to the index of the target smell.
    pub id: usize,
    pub kind: ActionKind,
    pub smell: usize,
    pub location: String,
    pub rationale: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RefactoringPlan {
    /// A permutation of action ids.
    pub order: Vec<usize>,
    pub fitness: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlanError {
    #[error("no refactoring actions to plan")]
    NoActions,
    #[error("invalid GA configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid crossover cuts ({cut1}, {cut2}) for length {len}")]
    InvalidCuts { cut1: usize, cut2: usize, len: usize },
    #[error("brute force limited to {limit} actions, got {n}")]
    TooLarge { n: usize, limit: usize },
}

fn location_label(s: &SmellInstance) -> String {
    match &s.location2 {
        Some(other) => format!("{} & {other}", s.location),
        None => s.location.to_string(),
    }
}

/// Map each smell to one refactoring action.
///
/// Duplicates between sibling classes with a common model supertype become
/// `PullUpMethod`; the model is consulted only for that check.
pub fn candidate_actions(smells: &[SmellInstance], model: &CodeModel) -> Vec<RefactoringAction> {
    smells
        .iter()
        .enumerate()
        .map(|(id, s)| {
            let (kind, rationale) = match s.kind {
                SmellKind::DeadCode => (ActionKind::RemoveDeadCode, "method is never referenced".to_string()),
                SmellKind::LongMethod => (ActionKind::ExtractMethod, format!("split {} into smaller methods", s.location.name())),
                SmellKind::LongParameterList => (
                    ActionKind::IntroduceParameterObject,
                    "group the parameters into an object".to_string(),
                ),
                SmellKind::FeatureEnvy => (
                    ActionKind::MoveMethod,
                    match &s.target_class {
                        Some(c) => format!("move towards {c}"),
                        None => "move towards the envied class".to_string(),
                    },
                ),
                SmellKind::DuplicateCode => duplicate_action(s, model),
            };
            RefactoringAction {
                id,
                kind,
                smell: id,
                location: location_label(s),
                rationale,
            }
        })
        .collect()
}

fn duplicate_action(s: &SmellInstance, model: &CodeModel) -> (ActionKind, String) {
    let a = &s.location.class;
    if let Some(b) = s.location2.as_ref().map(|m| &m.class) {
        if a != b {
            let parent_a = model.class(a).and_then(|c| c.internal_supertype());
            let parent_b = model.class(b).and_then(|c| c.internal_supertype());
            if let (Some(pa), Some(pb)) = (parent_a, parent_b) {
                if pa == pb {
                    return (ActionKind::PullUpMethod, format!("pull the shared code up into {pa}"));
                }
            }
        }
    }
    (ActionKind::MergeDuplicate, "extract the shared span into one method".to_string())
}

/// Satisfied actions `R` and violated edges `V` of an order.
pub fn precedence_counts(order: &[usize], g: &PrecedenceGraph) -> (usize, usize) {
    Scorer::new(g, 0.0).counts(order)
}

/// `R - weight * V`: higher is better.
pub fn fitness(order: &[usize], g: &PrecedenceGraph, violation_weight: f64) -> f64 {
    Scorer::new(g, violation_weight).fitness(order)
}

/// Fitness evaluation with the graph's adjacency prepared once.
pub(crate) struct Scorer<'g> {
    g: &'g PrecedenceGraph,
    preds: Vec<Vec<usize>>,
    weight: f64,
}

impl<'g> Scorer<'g> {
    pub(crate) fn new(g: &'g PrecedenceGraph, weight: f64) -> Self {
        Self {
            g,
            preds: g.predecessors(),
            weight,
        }
    }

    pub(crate) fn counts(&self, order: &[usize]) -> (usize, usize) {
        let mut pos = vec![0usize; order.len()];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let violated = self.g.edges.iter().filter(|&&(a, b)| pos[a] > pos[b]).count();
        let satisfied = (0..order.len())
            .filter(|&v| self.preds[v].iter().all(|&u| pos[u] < pos[v]))
            .count();
        (satisfied, violated)
    }

    pub(crate) fn fitness(&self, order: &[usize]) -> f64 {
        let (r, v) = self.counts(order);
        r as f64 - self.weight * v as f64
    }
}

/// `true` when `order` holds each of `0..n` exactly once.
pub fn is_permutation(order: &[usize], n: usize) -> bool {
    if order.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    order.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
}

#[cfg(test)]
mod tests;
