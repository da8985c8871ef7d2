use std::path::Path;

use smellplan::cli::corpus::discover;
use smellplan::code_model::{line_statistics, parse_source};
use smellplan::metrics::{build_metrics_report, MetricsConfig};
use smellplan::ordering::{pairwise_analysis, respects, topological_sort, KindPrecedence};
use smellplan::planner::{brute_force_best, candidate_actions, evolve, GaConfig};
use smellplan::remod::{build_feature_map, objective, suggest_moves, SuggestConfig};
use smellplan::smells::{detect_smells, generate_rules, SmellKind, ThresholdConfig};

fn fixture(name: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

#[test]
fn chain_plan_matches_the_brute_force_optimum() {
    let units = discover(&fixture("chain")).unwrap();
    let model = parse_source(&units).unwrap();
    let report = build_metrics_report(&model, line_statistics(&units), &MetricsConfig::default());
    let smells = detect_smells(&model, &report, &generate_rules(&ThresholdConfig::default()).unwrap());
    let kinds: Vec<SmellKind> = smells.iter().map(|s| s.kind).collect();
    assert_eq!(kinds, [SmellKind::DeadCode, SmellKind::DuplicateCode, SmellKind::LongMethod]);

    let g = pairwise_analysis(&smells, &KindPrecedence::default());
    assert_eq!(g.edges.len(), 3);
    let order = topological_sort(&g).unwrap();
    assert!(respects(&g, &order));

    let actions = candidate_actions(&smells, &model);
    let cfg = GaConfig::default();
    let ga = evolve(&actions, &g, &cfg).unwrap();
    let oracle = brute_force_best(&actions, &g, cfg.violation_weight).unwrap();
    assert_eq!(ga.fitness, oracle.fitness);
    assert_eq!(ga.order, oracle.order);
    assert!(respects(&g, &ga.order));
}

#[test]
fn demo_suggestions_lower_the_objective() {
    let units = discover(&fixture("demo")).unwrap();
    let model = parse_source(&units).unwrap();
    let (fm, warnings) = build_feature_map(&model, &[]).unwrap();
    assert!(warnings.is_empty(), "{warnings:?}");
    let s = suggest_moves(&model, &fm, &SuggestConfig::default()).unwrap();
    assert!(!s.moves.is_empty());
    assert!(objective(&s.after) < objective(&s.before));
}
