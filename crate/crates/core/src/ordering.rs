//! Pairwise precedence among detected smells and their topological ordering.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code_model::ClassId;
use crate::smells::{SmellInstance, SmellKind};

/// Kind-level precedence: `(a, b)` present means smells of kind `a` resolve before kind `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KindPrecedence {
    pub before: BTreeSet<(SmellKind, SmellKind)>,
}

impl Default for KindPrecedence {
    /// Removing dead and duplicate code first shrinks methods before the
    /// size-based smells are judged again.
    fn default() -> Self {
        use SmellKind::*;
        Self {
            before: BTreeSet::from([
                (DeadCode, DuplicateCode),
                (DeadCode, LongMethod),
                (DeadCode, FeatureEnvy),
                (DuplicateCode, LongMethod),
                (LongParameterList, LongMethod),
            ]),
        }
    }
}

impl KindPrecedence {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (SmellKind, SmellKind)>) -> Result<Self, OrderingError> {
        let before: BTreeSet<_> = pairs.into_iter().collect();
        if let Some((k, _)) = before.iter().find(|(a, b)| a == b) {
            return Err(OrderingError::Reflexive(*k));
        }
        Ok(Self { before })
    }

    pub fn precedes(&self, a: SmellKind, b: SmellKind) -> bool {
        self.before.contains(&(a, b))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderingError {
    #[error("precedence cycle: {}", .0.join(" -> "))]
    CycleDetected(Vec<String>),
    #[error("kind {0} cannot precede itself")]
    Reflexive(SmellKind),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
}

/// Nodes are smell indices into `smells`; edges are `(before, after)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrecedenceGraph {
    pub nodes: Vec<NodeInfo>,
    pub edges: BTreeSet<(usize, usize)>,
}

/// What the sorter needs to know about a node for tie-breaking.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeInfo {
    pub kind: SmellKind,
    pub location: String,
}

impl PrecedenceGraph {
    pub fn new(nodes: Vec<NodeInfo>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, OrderingError> {
        let edges: BTreeSet<_> = edges.into_iter().collect();
        for &(a, b) in &edges {
            if a == b {
                return Err(OrderingError::InvalidGraph(format!("self-edge on node {a}")));
            }
            if a >= nodes.len() || b >= nodes.len() {
                return Err(OrderingError::InvalidGraph(format!("edge ({a}, {b}) outside {} nodes", nodes.len())));
            }
        }
        Ok(Self { nodes, edges })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Predecessor lists indexed by node.
    pub fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut preds = vec![Vec::new(); self.nodes.len()];
        for &(a, b) in &self.edges {
            preds[b].push(a);
        }
        preds
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph precedence {\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\\n{}\"];", n.kind, n.location.replace('"', "\\\""));
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}

fn touched_classes(s: &SmellInstance) -> BTreeSet<&ClassId> {
    s.locations().map(|m| &m.class).collect()
}

/// Edge `(x, y)` whenever kind(x) precedes kind(y) and the smells touch a common class.
pub fn pairwise_analysis(smells: &[SmellInstance], kp: &KindPrecedence) -> PrecedenceGraph {
    let classes: Vec<BTreeSet<&ClassId>> = smells.iter().map(touched_classes).collect();
    let mut edges = BTreeSet::new();
    for (i, x) in smells.iter().enumerate() {
        for (j, y) in smells.iter().enumerate() {
            if i != j && kp.precedes(x.kind, y.kind) && !classes[i].is_disjoint(&classes[j]) {
                edges.insert((i, j));
            }
        }
    }
    let nodes = smells
        .iter()
        .map(|s| NodeInfo {
            kind: s.kind,
            location: match &s.location2 {
                Some(other) => format!("{} & {other}", s.location),
                None => s.location.to_string(),
            },
        })
        .collect();
    PrecedenceGraph { nodes, edges }
}

/// Kahn's algorithm; among ready nodes the smallest (kind rank, location, index) goes first.
pub fn topological_sort(g: &PrecedenceGraph) -> Result<Vec<usize>, OrderingError> {
    let n = g.len();
    let mut indegree = vec![0usize; n];
    let mut succ = vec![Vec::new(); n];
    for &(a, b) in &g.edges {
        indegree[b] += 1;
        succ[a].push(b);
    }
    let key = |i: usize| (g.nodes[i].kind, g.nodes[i].location.clone(), i);
    let mut ready: BTreeMap<(SmellKind, String, usize), usize> =
        (0..n).filter(|&i| indegree[i] == 0).map(|i| (key(i), i)).collect();
    let mut order = Vec::with_capacity(n);
    while let Some((_, i)) = ready.pop_first() {
        order.push(i);
        for &j in &succ[i] {
            indegree[j] -= 1;
            if indegree[j] == 0 {
                ready.insert(key(j), j);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    let remaining: BTreeSet<usize> = (0..n).filter(|&i| indegree[i] > 0).collect();
    let cycle = find_cycle(g, &remaining);
    Err(OrderingError::CycleDetected(
        cycle
            .iter()
            .map(|&i| format!("{} at {}", g.nodes[i].kind, g.nodes[i].location))
            .collect(),
    ))
}

/// Walk predecessors inside the unsorted remainder until a node repeats.
fn find_cycle(g: &PrecedenceGraph, remaining: &BTreeSet<usize>) -> Vec<usize> {
    let preds = g.predecessors();
    let Some(&start) = remaining.first() else {
        return Vec::new();
    };
    let mut seen = BTreeMap::new();
    let mut path = Vec::new();
    let mut cur = start;
    while !seen.contains_key(&cur) {
        seen.insert(cur, path.len());
        path.push(cur);
        // Every remaining node keeps a remaining predecessor, so this never fails.
        cur = *preds[cur].iter().find(|p| remaining.contains(p)).expect("remaining node has a remaining predecessor");
    }
    let mut cycle = path[seen[&cur]..].to_vec();
    cycle.reverse();
    // Rotate so the cycle starts at its smallest node.
    let min_pos = cycle.iter().enumerate().min_by_key(|(_, v)| **v).map_or(0, |(p, _)| p);
    cycle.rotate_left(min_pos);
    cycle
}

/// `true` when `order` is a permutation of the nodes that respects every edge.
pub fn respects(g: &PrecedenceGraph, order: &[usize]) -> bool {
    if order.len() != g.len() {
        return false;
    }
    let mut pos = vec![usize::MAX; g.len()];
    for (p, &v) in order.iter().enumerate() {
        if v >= g.len() || pos[v] != usize::MAX {
            return false;
        }
        pos[v] = p;
    }
    g.edges.iter().all(|&(a, b)| pos[a] < pos[b])
}
