//! Simulated class moves and greedy move suggestion.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::measures::Layout;
use super::{feature_metrics, FeatureMap, FeatureMetricsReport, RemodError};
use crate::code_model::{CallTarget, ClassId, CodeModel, MethodRef, Reference};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MoveOp {
    pub class: ClassId,
    pub from: String,
    pub to: String,
}

impl MoveOp {
    pub fn new(class: ClassId, to: impl Into<String>) -> Self {
        Self {
            from: class.package.clone(),
            class,
            to: to.into(),
        }
    }

    /// The class id after the move.
    pub fn target_id(&self) -> ClassId {
        ClassId::new(self.to.clone(), self.class.name.clone())
    }
}

impl fmt::Display for MoveOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "move {} from {} to {}", self.class.name, self.from, self.to)
    }
}

fn check(model: &CodeModel, op: &MoveOp) -> Result<(), RemodError> {
    if op.class.package != op.from || model.class(&op.class).is_none() {
        return Err(RemodError::UnknownClass(op.class.to_string()));
    }
    let Some(target) = model.package(&op.to) else {
        return Err(RemodError::UnknownPackage(op.to.clone()));
    };
    if op.from == op.to {
        return Err(RemodError::SamePackage(op.class.to_string(), op.to.clone()));
    }
    if target.classes.iter().any(|c| c.id.name == op.class.name) {
        return Err(RemodError::NameClash {
            package: op.to.clone(),
            name: op.class.name.clone(),
        });
    }
    Ok(())
}

/// A new model with the class relocated and every reference to it rewritten.
/// The source package is kept even when emptied.
pub fn simulate_move(model: &CodeModel, op: &MoveOp) -> Result<CodeModel, RemodError> {
    check(model, op)?;
    let new_id = op.target_id();
    let fix = |c: &mut ClassId| {
        if *c == op.class {
            *c = new_id.clone();
        }
    };
    let fix_method = |m: &mut MethodRef| fix(&mut m.class);
    let fix_calls = |calls: &mut BTreeSet<CallTarget>| {
        if calls.iter().any(|c| matches!(c, Reference::Internal(m) if m.class == op.class)) {
            *calls = std::mem::take(calls)
                .into_iter()
                .map(|c| match c {
                    Reference::Internal(mut m) => {
                        fix_method(&mut m);
                        Reference::Internal(m)
                    }
                    other => other,
                })
                .collect();
        }
    };

    let mut out = model.clone();
    let mut moved = None;
    for package in &mut out.packages {
        if package.name == op.from {
            let idx = package.classes.iter().position(|c| c.id == op.class).expect("checked above");
            moved = Some(package.classes.remove(idx));
        }
    }
    let mut moved = moved.expect("checked above");
    moved.id = new_id.clone();
    let target = out.packages.iter_mut().find(|p| p.name == op.to).expect("checked above");
    let at = target.classes.partition_point(|c| c.id.name < moved.id.name);
    target.classes.insert(at, moved);

    for package in &mut out.packages {
        for class in &mut package.classes {
            if let Some(Reference::Internal(s)) = &mut class.supertype {
                fix(s);
            }
            for i in &mut class.interfaces {
                if let Reference::Internal(c) = i {
                    fix(c);
                }
            }
            if class.dependencies.contains(&op.class) {
                class.dependencies.remove(&op.class);
                class.dependencies.insert(new_id.clone());
            }
            fix_calls(&mut class.initializer_calls);
            for m in &mut class.methods {
                fix_method(&mut m.id);
                fix_calls(&mut m.calls);
                if let Some(members) = m.foreign_accesses.remove(&op.class) {
                    m.foreign_accesses.insert(new_id.clone(), members);
                }
            }
        }
    }
    out.entry_points = out
        .entry_points
        .into_iter()
        .map(|mut m| {
            fix_method(&mut m);
            m
        })
        .collect();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SuggestConfig {
    pub max_moves: usize,
    /// Reject moves that lower package cohesion.
    pub constrain_pcom: bool,
}

impl Default for SuggestConfig {
    fn default() -> Self {
        Self {
            max_moves: 5,
            constrain_pcom: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MoveSuggestion {
    pub moves: Vec<MoveOp>,
    pub before: FeatureMetricsReport,
    pub after: FeatureMetricsReport,
}

/// Improvements at or below this are treated as ties with the current state.
const EPSILON: f64 = 1e-12;

/// Greedy hill climb on `fsca + ftang` over moves of feature-carrying classes
/// into other non-empty packages. Each step takes the move with the lowest
/// objective, ties broken by (class, target package); the climb stops when no
/// move strictly improves or `max_moves` is reached.
pub fn suggest_moves(model: &CodeModel, fm: &FeatureMap, cfg: &SuggestConfig) -> Result<MoveSuggestion, RemodError> {
    let before = feature_metrics(model, fm)?;
    let mut layout = Layout::of(model);
    let movable: Vec<&ClassId> = fm.tagged_classes().into_iter().filter(|c| model.class(c).is_some()).collect();
    let packages: Vec<&str> = model.non_empty_packages().map(|p| p.name.as_str()).collect();
    let mut current = layout.objective(fm);
    let mut current_pcom = layout.cohesion(model).unwrap_or(0.0);
    // Original id -> current package, for every moved class.
    let mut placed: Vec<(&ClassId, &str)> = Vec::new();

    while placed.len() < cfg.max_moves {
        let mut best: Option<(f64, &ClassId, &str)> = None;
        for &class in &movable {
            let home = layout.package_of(class).expect("movable classes are placed");
            for &to in &packages {
                if to == home || !layout.hosts(to) || occupied(model, &layout, to, &class.name) {
                    continue;
                }
                let mut trial = layout.clone();
                trial.assign(class, to);
                if cfg.constrain_pcom && trial.cohesion(model).unwrap_or(0.0) < current_pcom {
                    continue;
                }
                let j = trial.objective(fm);
                if j < current - EPSILON && best.is_none_or(|(bj, _, _)| j < bj) {
                    best = Some((j, class, to));
                }
            }
        }
        let Some((j, class, to)) = best else { break };
        layout.assign(class, to);
        current = j;
        current_pcom = layout.cohesion(model).unwrap_or(0.0);
        placed.push((class, to));
    }

    // Replay the chosen moves on real models so ids stay consistent.
    let mut moves = Vec::new();
    let mut state = model.clone();
    let mut state_fm = fm.clone();
    let mut now: BTreeMap<&ClassId, ClassId> = BTreeMap::new();
    for (original, to) in placed {
        let id = now.get(original).cloned().unwrap_or_else(|| original.clone());
        let op = MoveOp::new(id, to);
        state = simulate_move(&state, &op)?;
        state_fm = state_fm.relocate(&op);
        now.insert(original, op.target_id());
        moves.push(op);
    }
    let after = feature_metrics(&state, &state_fm)?;
    debug_assert!(super::objective(&after) <= super::objective(&before) + EPSILON);
    Ok(MoveSuggestion { moves, before, after })
}

/// A class named `name` already sits in `package` under the current layout.
fn occupied(model: &CodeModel, layout: &Layout<'_>, package: &str, name: &str) -> bool {
    model
        .classes()
        .any(|c| c.id.name == name && layout.package_of(&c.id) == Some(package))
}
