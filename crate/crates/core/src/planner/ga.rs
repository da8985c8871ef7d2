//! Permutation genetic algorithm: tournament selection, partially mapped
//! crossover, swap mutation and elitism, plus an exhaustive oracle.

use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{is_permutation, Scorer, PlanError, RefactoringAction, RefactoringPlan};
use crate::ordering::{topological_sort, PrecedenceGraph};

pub const BRUTE_FORCE_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GaConfig {
    pub population_size: usize,
    pub generations: usize,
    pub crossover_prob: f64,
    pub mutation_prob: f64,
    pub elite_count: usize,
    pub seed: u64,
    pub tournament_size: usize,
    /// Penalty per violated precedence edge.
    pub violation_weight: f64,
    /// Fresh random permutations injected into every generation, keeping the
    /// population from collapsing onto one local optimum.
    pub immigrants: usize,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population_size: 100,
            generations: 150,
            crossover_prob: 0.9,
            mutation_prob: 0.4,
            elite_count: 2,
            seed: 42,
            tournament_size: 3,
            violation_weight: 2.0,
            immigrants: 15,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<(), PlanError> {
        let bad = |msg: &str| Err(PlanError::InvalidConfig(msg.to_string()));
        if self.population_size == 0 {
            return bad("population_size must be positive");
        }
        if self.elite_count + self.immigrants >= self.population_size {
            return bad("elite_count + immigrants must be smaller than population_size");
        }
        if !(0.0..=1.0).contains(&self.crossover_prob) || !(0.0..=1.0).contains(&self.mutation_prob) {
            return bad("probabilities must lie in [0, 1]");
        }
        if self.tournament_size == 0 {
            return bad("tournament_size must be positive");
        }
        if !self.violation_weight.is_finite() || self.violation_weight < 0.0 {
            return bad("violation_weight must be a non-negative number");
        }
        Ok(())
    }
}

/// Partially mapped crossover over the inclusive segment `cut1..=cut2`.
///
/// The child copies `p1` inside the segment; every other position takes `p2`'s
/// value, chased through the segment mapping `p1[i] -> p2[i]` until it no longer
/// collides with the copied segment.
pub fn pmx_crossover(p1: &[usize], p2: &[usize], cut1: usize, cut2: usize) -> Result<Vec<usize>, PlanError> {
    let n = p1.len();
    if p2.len() != n || cut1 > cut2 || cut2 >= n {
        return Err(PlanError::InvalidCuts { cut1, cut2, len: n });
    }
    let mut pos_in_p1 = vec![usize::MAX; n];
    for (i, &v) in p1.iter().enumerate() {
        pos_in_p1[v] = i;
    }
    let in_segment = |v: usize| (cut1..=cut2).contains(&pos_in_p1[v]);
    let mut child = p1.to_vec();
    for i in (0..cut1).chain(cut2 + 1..n) {
        let mut v = p2[i];
        while in_segment(v) {
            v = p2[pos_in_p1[v]];
        }
        child[i] = v;
    }
    Ok(child)
}

/// With probability `prob`, swap two distinct positions.
pub fn swap_mutation<R: Rng>(p: &mut [usize], rng: &mut R, prob: f64) {
    let n = p.len();
    if n < 2 || !rng.gen_bool(prob) {
        return;
    }
    let i = rng.gen_range(0..n);
    let mut j = rng.gen_range(0..n - 1);
    if j >= i {
        j += 1;
    }
    p.swap(i, j);
}

#[derive(Debug, Clone, PartialEq)]
struct Individual {
    order: Vec<usize>,
    fitness: f64,
}

/// Higher fitness first; equal fitness resolved by the lexicographically smaller order.
fn better(a: &Individual, b: &Individual) -> Ordering {
    b.fitness.total_cmp(&a.fitness).then_with(|| a.order.cmp(&b.order))
}

/// The best plan found plus the best fitness present in the population of each
/// generation (index 0 is the initial population).
#[derive(Debug, Clone, PartialEq)]
pub struct Evolution {
    pub plan: RefactoringPlan,
    pub history: Vec<f64>,
}

pub fn evolve(actions: &[RefactoringAction], g: &PrecedenceGraph, cfg: &GaConfig) -> Result<RefactoringPlan, PlanError> {
    evolve_traced(actions, g, cfg).map(|e| e.plan)
}

pub fn evolve_traced(actions: &[RefactoringAction], g: &PrecedenceGraph, cfg: &GaConfig) -> Result<Evolution, PlanError> {
    cfg.validate()?;
    let n = actions.len();
    if n == 0 {
        return Err(PlanError::NoActions);
    }
    let scorer = Scorer::new(g, cfg.violation_weight);
    let score = |order: Vec<usize>| Individual {
        fitness: scorer.fitness(&order),
        order,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut population: Vec<Individual> = Vec::with_capacity(cfg.population_size);
    if let Ok(order) = topological_sort(g) {
        population.push(score(order));
    }
    while population.len() < cfg.population_size {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        population.push(score(order));
    }
    population.sort_by(better);
    let mut best = population[0].clone();
    let mut history = vec![best.fitness];

    for _ in 0..cfg.generations {
        let mut next: Vec<Individual> = population[..cfg.elite_count].to_vec();
        for _ in 0..cfg.immigrants {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            next.push(score(order));
        }
        while next.len() < cfg.population_size {
            let p1 = tournament(&population, cfg.tournament_size, &mut rng);
            let p2 = tournament(&population, cfg.tournament_size, &mut rng);
            let mut child = if n >= 2 && rng.gen_bool(cfg.crossover_prob) {
                let cut1 = rng.gen_range(0..n - 1);
                let cut2 = rng.gen_range(cut1 + 1..n);
                pmx_crossover(&p1.order, &p2.order, cut1, cut2)?
            } else {
                p1.order.clone()
            };
            swap_mutation(&mut child, &mut rng, cfg.mutation_prob);
            debug_assert!(is_permutation(&child, n), "GA produced an invalid permutation");
            next.push(score(child));
        }
        next.sort_by(better);
        population = next;
        if better(&population[0], &best) == Ordering::Less {
            best = population[0].clone();
        }
        history.push(population[0].fitness);
    }
    Ok(Evolution {
        plan: RefactoringPlan {
            order: best.order,
            fitness: best.fitness,
        },
        history,
    })
}

fn tournament<'a, R: Rng>(population: &'a [Individual], k: usize, rng: &mut R) -> &'a Individual {
    (0..k)
        .map(|_| &population[rng.gen_range(0..population.len())])
        .min_by(|a, b| better(a, b))
        .expect("tournament size is positive")
}

/// Exhaustive scan of all permutations in lexicographic order; the first maximum wins.
pub fn brute_force_best(actions: &[RefactoringAction], g: &PrecedenceGraph, violation_weight: f64) -> Result<RefactoringPlan, PlanError> {
    let n = actions.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(PlanError::TooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    if n == 0 {
        return Err(PlanError::NoActions);
    }
    let scorer = Scorer::new(g, violation_weight);
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = RefactoringPlan {
        fitness: scorer.fitness(&order),
        order: order.clone(),
    };
    while next_permutation(&mut order) {
        let f = scorer.fitness(&order);
        if f > best.fitness {
            best = RefactoringPlan {
                order: order.clone(),
                fitness: f,
            };
        }
    }
    Ok(best)
}

/// Advance to the next lexicographic permutation; `false` after the last one.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).expect("a larger element exists after a rise");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn next_permutation_enumerates_all() {
        let mut v = vec![0, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 24);
        assert_eq!(v, [3, 2, 1, 0]);
    }

    #[test]
    fn best_prefers_higher_fitness_then_smaller_order() {
        let a = Individual { order: vec![1, 0], fitness: 2.0 };
        let b = Individual { order: vec![0, 1], fitness: 2.0 };
        let c = Individual { order: vec![0, 1], fitness: 1.0 };
        assert_eq!(better(&b, &a), Ordering::Less);
        assert_eq!(better(&a, &c), Ordering::Less);
    }
}
