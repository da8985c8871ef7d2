use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::code_model::{parse_source, ClassId, MethodRef, SourceUnit};
use crate::ordering::{NodeInfo, PrecedenceGraph};

fn smell(kind: SmellKind, class: &str, other: Option<&str>) -> SmellInstance {
    SmellInstance {
        kind,
        location: MethodRef::new(ClassId::new("p", class), "f()"),
        location2: other.map(|c| MethodRef::new(ClassId::new("p", c), "g()")),
        evidence: BTreeMap::new(),
        rule: "r".into(),
        target_class: None,
    }
}

fn graph(n: usize, edges: &[(usize, usize)]) -> PrecedenceGraph {
    let nodes = (0..n)
        .map(|i| NodeInfo {
            kind: SmellKind::LongMethod,
            location: format!("m{i}"),
        })
        .collect();
    PrecedenceGraph::new(nodes, edges.iter().copied()).unwrap()
}

fn actions(n: usize) -> Vec<RefactoringAction> {
    (0..n)
        .map(|id| RefactoringAction {
            id,
            kind: ActionKind::ExtractMethod,
            smell: id,
            location: format!("m{id}"),
            rationale: String::new(),
        })
        .collect()
}

#[test]
fn one_action_per_smell() {
    let model = CodeModel::default();
    assert!(candidate_actions(&[], &model).is_empty());
    let smells = [
        smell(SmellKind::DeadCode, "A", None),
        smell(SmellKind::LongMethod, "A", None),
        smell(SmellKind::LongParameterList, "A", None),
        smell(SmellKind::FeatureEnvy, "A", None),
        smell(SmellKind::DuplicateCode, "A", Some("A")),
    ];
    let kinds: Vec<ActionKind> = candidate_actions(&smells, &model).iter().map(|a| a.kind).collect();
    assert_eq!(
        kinds,
        [
            ActionKind::RemoveDeadCode,
            ActionKind::ExtractMethod,
            ActionKind::IntroduceParameterObject,
            ActionKind::MoveMethod,
            ActionKind::MergeDuplicate
        ]
    );
}

#[test]
fn sibling_duplicates_pull_up() {
    let src = "package p;\nclass Base {}\nclass A extends Base { void f() {} }\nclass B extends Base { void g() {} }\nclass C { void g() {} }";
    let model = parse_source(&[SourceUnit::new("p/All.java", src)]).unwrap();
    let siblings = candidate_actions(&[smell(SmellKind::DuplicateCode, "A", Some("B"))], &model);
    assert_eq!(siblings[0].kind, ActionKind::PullUpMethod);
    let unrelated = candidate_actions(&[smell(SmellKind::DuplicateCode, "A", Some("C"))], &model);
    assert_eq!(unrelated[0].kind, ActionKind::MergeDuplicate);
}

#[test]
fn fitness_examples() {
    let g = graph(3, &[(0, 1), (1, 2)]);
    assert_eq!(precedence_counts(&[0, 1, 2], &g), (3, 0));
    assert_eq!(fitness(&[0], &graph(1, &[]), 2.0), 1.0);
    let two = graph(2, &[(0, 1)]);
    assert_eq!(precedence_counts(&[1, 0], &two), (1, 1));
    assert_eq!(fitness(&[1, 0], &two, 2.0), -1.0);
}

#[test]
fn pmx_examples() {
    assert_eq!(pmx_crossover(&[1, 2, 3, 0], &[1, 2, 3, 0], 0, 2).unwrap(), [1, 2, 3, 0]);
    // Values 1..=4 shifted to ids 0..=3: p1=[1,2,3,4], p2=[3,4,1,2], cuts (1, 2).
    assert_eq!(pmx_crossover(&[0, 1, 2, 3], &[2, 3, 0, 1], 1, 2).unwrap(), [0, 1, 2, 3]);
    assert!(matches!(pmx_crossover(&[0, 1, 2], &[2, 1, 0], 2, 1), Err(PlanError::InvalidCuts { .. })));
    assert!(matches!(pmx_crossover(&[0, 1, 2], &[2, 1, 0], 1, 3), Err(PlanError::InvalidCuts { .. })));
}

#[test]
fn mutation_edge_cases() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut p = vec![0, 1, 2];
    swap_mutation(&mut p, &mut rng, 0.0);
    assert_eq!(p, [0, 1, 2]);
    let mut single = vec![0];
    swap_mutation(&mut single, &mut rng, 1.0);
    assert_eq!(single, [0]);
    swap_mutation(&mut p, &mut rng, 1.0);
    let moved = p.iter().enumerate().filter(|(i, v)| *i != **v).count();
    assert_eq!(moved, 2);
    let mut sorted = p.clone();
    sorted.sort();
    assert_eq!(sorted, [0, 1, 2]);
}

#[test]
fn evolve_single_and_empty() {
    let plan = evolve(&actions(1), &graph(1, &[]), &GaConfig::default()).unwrap();
    assert_eq!(plan.order, [0]);
    assert_eq!(plan.fitness, 1.0);
    assert_eq!(evolve(&[], &graph(0, &[]), &GaConfig::default()), Err(PlanError::NoActions));
}

#[test]
fn invalid_config_is_rejected() {
    let cfg = GaConfig {
        elite_count: 100,
        ..Default::default()
    };
    assert!(matches!(evolve(&actions(2), &graph(2, &[]), &cfg), Err(PlanError::InvalidConfig(_))));
    let cfg = GaConfig {
        mutation_prob: 1.5,
        ..Default::default()
    };
    assert!(cfg.validate().is_err());
    let cfg = GaConfig {
        population_size: 10,
        elite_count: 2,
        immigrants: 8,
        ..Default::default()
    };
    assert!(cfg.validate().is_err());
}

#[test]
fn brute_force_examples() {
    assert_eq!(brute_force_best(&actions(1), &graph(1, &[]), 2.0).unwrap().order, [0]);
    let chain = brute_force_best(&actions(3), &graph(3, &[(0, 1), (1, 2)]), 2.0).unwrap();
    assert_eq!(chain.order, [0, 1, 2]);
    assert_eq!(chain.fitness, 3.0);
    let reverse = brute_force_best(&actions(3), &graph(3, &[(2, 1), (1, 0)]), 2.0).unwrap();
    assert_eq!(reverse.order, [2, 1, 0]);
    assert!(matches!(
        brute_force_best(&actions(9), &graph(9, &[]), 2.0),
        Err(PlanError::TooLarge { n: 9, .. })
    ));
}

#[test]
fn evolve_is_deterministic() {
    let g = graph(6, &[(0, 3), (3, 1), (1, 0), (4, 5), (2, 5)]);
    let cfg = GaConfig::default();
    assert_eq!(evolve_traced(&actions(6), &g, &cfg).unwrap(), evolve_traced(&actions(6), &g, &cfg).unwrap());
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn pmx_children_are_permutations(
        (p1, p2, cut1, cut2) in (2usize..20)
            .prop_flat_map(|n| (permutation(n), permutation(n), Just(n), 0..n - 1))
            .prop_flat_map(|(p1, p2, n, cut1)| (Just(p1), Just(p2), Just(cut1), cut1 + 1..n))
    ) {
        let child = pmx_crossover(&p1, &p2, cut1, cut2).unwrap();
        prop_assert!(is_permutation(&child, p1.len()));
        prop_assert_eq!(&child[cut1..=cut2], &p1[cut1..=cut2]);
    }

    #[test]
    fn mutation_preserves_multiset(p in (1usize..15).prop_flat_map(permutation), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut q = p.clone();
        swap_mutation(&mut q, &mut rng, 0.5);
        prop_assert!(is_permutation(&q, p.len()));
        prop_assert!(p.iter().zip(&q).filter(|(a, b)| a != b).count() <= 2);
    }
}
