//! Shared runs of normalized tokens between method bodies.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap};
use std::hash::{Hash, Hasher};

use serde::Serialize;

use crate::code_model::MethodDecl;

/// A common token run: `len` tokens starting at `a_start` in the first body
/// and `b_start` in the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Span {
    pub a_start: usize,
    pub b_start: usize,
    pub len: usize,
}

/// Maximal common runs of normalized body tokens with at least `min_tokens` tokens,
/// sorted by position in `a`.
pub fn duplicate_spans(a: &MethodDecl, b: &MethodDecl, min_tokens: usize) -> Vec<Span> {
    maximal_runs(&a.body_tokens, &b.body_tokens, min_tokens.max(1))
}

pub(crate) fn maximal_runs(a: &[String], b: &[String], min: usize) -> Vec<Span> {
    let mut spans = Vec::new();
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    for i in 0..a.len() {
        for j in 0..b.len() {
            cur[j + 1] = if a[i] == b[j] { prev[j] + 1 } else { 0 };
        }
        // A run ending at (i, j) is maximal when it cannot extend to (i+1, j+1).
        for j in 0..b.len() {
            let len = cur[j + 1];
            let extends = i + 1 < a.len() && j + 1 < b.len() && a[i + 1] == b[j + 1];
            if len >= min && !extends {
                spans.push(Span {
                    a_start: i + 1 - len,
                    b_start: j + 1 - len,
                    len,
                });
            }
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    spans.sort();
    spans
}

/// Length of the longest common token run.
pub(crate) fn longest_run(a: &[String], b: &[String]) -> usize {
    let mut best = 0;
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    for x in a {
        for (j, y) in b.iter().enumerate() {
            cur[j + 1] = if x == y { prev[j] + 1 } else { 0 };
            best = best.max(cur[j + 1]);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    best
}

fn gram_hash(gram: &[String]) -> u64 {
    let mut h = DefaultHasher::new();
    gram.hash(&mut h);
    h.finish()
}

/// Index pairs `(i, j)`, `i < j`, of methods sharing at least one `k`-token window.
pub(crate) fn candidate_pairs(methods: &[&MethodDecl], k: usize) -> Vec<(usize, usize)> {
    let mut index: HashMap<u64, Vec<usize>> = HashMap::new();
    for (i, m) in methods.iter().enumerate() {
        let grams: BTreeSet<u64> = m.body_tokens.windows(k).map(gram_hash).collect();
        for g in grams {
            index.entry(g).or_default().push(i);
        }
    }
    let mut pairs = BTreeSet::new();
    for owners in index.values() {
        for (x, &i) in owners.iter().enumerate() {
            for &j in &owners[x + 1..] {
                pairs.insert((i, j));
            }
        }
    }
    pairs.into_iter().collect()
}
