use proptest::prelude::*;

use super::*;
use crate::code_model::{line_statistics, parse_source, ClassId, SourceUnit};
use crate::metrics::{build_metrics_report, MetricsConfig};

fn detect(files: &[SourceUnit], cfg: &ThresholdConfig) -> Vec<SmellInstance> {
    let model = parse_source(files).unwrap();
    let report = build_metrics_report(&model, line_statistics(files), &MetricsConfig::default());
    detect_smells(&model, &report, &generate_rules(cfg).unwrap())
}

fn detect_src(src: &str) -> Vec<SmellInstance> {
    detect(&[SourceUnit::new("T.java", src)], &ThresholdConfig::default())
}

fn of_kind(smells: &[SmellInstance], kind: SmellKind) -> Vec<&SmellInstance> {
    smells.iter().filter(|s| s.kind == kind).collect()
}

/// A 30-token body with no repeated substructure.
const THIRTY: &str = "int s = 0; s = s + 1; s = s * 2; s = s - 3; s += 4; return s;";

#[test]
fn default_table_has_six_rules_over_five_kinds() {
    let rules = generate_rules(&ThresholdConfig::default()).unwrap();
    assert_eq!(rules.len(), 6);
    let kinds: std::collections::BTreeSet<_> = rules.iter().map(|r| r.kind).collect();
    assert_eq!(kinds.len(), 5);
    for r in &rules {
        r.validate().unwrap();
    }
}

#[test]
fn parameter_threshold_passes_through() {
    let cfg = ThresholdConfig {
        long_parameter_list: 4,
        ..Default::default()
    };
    let rules = generate_rules(&cfg).unwrap();
    let lpl = rules.iter().find(|r| r.kind == SmellKind::LongParameterList).unwrap();
    assert_eq!(lpl.condition(), "param_count > 4");
}

#[test]
fn negative_threshold_is_rejected() {
    let cfg = ThresholdConfig {
        long_method_sloc: -1,
        ..Default::default()
    };
    assert!(matches!(generate_rules(&cfg), Err(SmellError::InvalidThreshold { .. })));
    let rule = DetectionRule::new("r", SmellKind::LongMethod, vec![clause(Metric::Sloc, Comparator::Gt, -2.0)]);
    assert!(matches!(rule.validate(), Err(SmellError::InvalidThreshold { .. })));
}

#[test]
fn pairwise_metric_outside_duplicate_rule_is_rejected() {
    let rule = DetectionRule::new("r", SmellKind::LongMethod, vec![clause(Metric::DuplicateSpan, Comparator::Gt, 2.0)]);
    assert!(matches!(rule.validate(), Err(SmellError::InvalidRule { .. })));
}

#[test]
fn unreferenced_private_method_is_dead() {
    let smells = detect_src("class A { private int helper() { return 1; } public int api() { return 2; } }");
    let dead = of_kind(&smells, SmellKind::DeadCode);
    assert_eq!(dead.len(), 1);
    assert_eq!(dead[0].location.to_string(), "A.helper()");
    assert_eq!(dead[0].evidence[&Metric::IncomingRefs], 0);
}

#[test]
fn called_and_entry_methods_are_not_dead() {
    let src = "class A { public static void main(String[] args) { run(); } static void run() {} static void main2() {} }";
    let smells = detect_src(src);
    let dead: Vec<String> = of_kind(&smells, SmellKind::DeadCode).iter().map(|s| s.location.to_string()).collect();
    assert_eq!(dead, ["A.main2()"]);
}

#[test]
fn identical_bodies_are_one_duplicate() {
    let src = format!("class A {{ public int f() {{ {THIRTY} }} public int g() {{ {THIRTY} }} }}");
    let model = parse_source(&[SourceUnit::new("A.java", src.as_str())]).unwrap();
    assert_eq!(model.methods().next().unwrap().1.body_tokens.len(), 30);
    let smells = detect_src(&src);
    let dups = of_kind(&smells, SmellKind::DuplicateCode);
    assert_eq!(dups.len(), 1);
    assert_eq!(dups[0].location.to_string(), "A.f()");
    assert_eq!(dups[0].location2.as_ref().unwrap().to_string(), "A.g()");
    assert_eq!(dups[0].evidence[&Metric::DuplicateSpan], 30);
}

#[test]
fn renamed_loop_clone_is_found_after_normalization() {
    let a = "int total = 0; for (int i = 0; i < n; i++) { total = total + i * 2; if (total > 100) { total = total - 7; } } return total;";
    let b = "int acc = 5; for (int k = 0; k < size; k++) { acc = acc + k * 2; if (acc > 100) { acc = acc - 7; } } log(acc); return acc;";
    let src = format!(
        "class A {{ int f(int n) {{ {a} }} void log(int v) {{}} }}\nclass B {{ A a; int size; int g() {{ {b} }} void log(int v) {{}} }}"
    );
    let model = parse_source(&[SourceUnit::new("A.java", src.as_str())]).unwrap();
    let f = model.method(&MethodRef::new(ClassId::new("<default>", "A"), "f(int)")).unwrap();
    let g = model.method(&MethodRef::new(ClassId::new("<default>", "B"), "g()")).unwrap();
    // Brute-force longest common substring over the normalized streams.
    let mut best = 0;
    for i in 0..f.body_tokens.len() {
        for j in 0..g.body_tokens.len() {
            let mut l = 0;
            while i + l < f.body_tokens.len() && j + l < g.body_tokens.len() && f.body_tokens[i + l] == g.body_tokens[j + l] {
                l += 1;
            }
            best = best.max(l);
        }
    }
    assert!(best >= 30, "fixture shares only {best} tokens");
    let spans = duplicate_spans(f, g, 25);
    assert_eq!(spans.len(), 1);
    assert_eq!(spans[0].len, best);
    assert!(duplicate_spans(f, g, best + 1).is_empty());
}

#[test]
fn feature_envy_reports_foreign_and_own_counts() {
    let src = r#"package p;
class B { int a; int b; int get() { return a; } }
class A {
    int x; int y;
    B other;
    int envy() {
        x = x + y + x + y;
        return other.a + other.b + other.a + other.get() + other.get() + other.b + other.a + other.b + other.get();
    }
}
"#;
    let smells = detect(&[SourceUnit::new("p/A.java", src)], &ThresholdConfig::default());
    let envy = of_kind(&smells, SmellKind::FeatureEnvy);
    assert_eq!(envy.len(), 1);
    assert_eq!(envy[0].evidence[&Metric::ForeignAccesses], 9);
    assert_eq!(envy[0].evidence[&Metric::OwnAccesses], 5);
    assert_eq!(envy[0].target_class.as_deref(), Some("p.B"));
}

#[test]
fn long_method_and_parameter_list() {
    let mut body = String::new();
    for i in 0..31 {
        body.push_str(&format!("    a = a + {i};\n"));
    }
    let src = format!("class A {{\n  public int f(int a, int b, int c, int d, int e) {{\n{body}    return a;\n  }}\n}}\n");
    let smells = detect_src(&src);
    let long = of_kind(&smells, SmellKind::LongMethod);
    assert_eq!(long.len(), 1);
    assert_eq!(long[0].rule, "long-method-sloc");
    assert_eq!(long[0].evidence[&Metric::Sloc], 34);
    assert_eq!(of_kind(&smells, SmellKind::LongParameterList).len(), 1);
}

#[test]
fn output_is_sorted_by_kind_then_location() {
    let src = format!("class A {{ private int z() {{ {THIRTY} }} private int y() {{ {THIRTY} }} }}");
    let smells = detect_src(&src);
    let keys: Vec<_> = smells.iter().map(SmellInstance::sort_key).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(smells[0].kind, SmellKind::DeadCode);
    assert_eq!(smells[0].location.to_string(), "A.y()");
}

/// A source file of random methods exercising every rule.
fn random_file(idx: usize, methods: &[(u8, u8, u8, bool, u8)]) -> SourceUnit {
    let mut src = format!("package p{};\npublic class C{idx} {{\n  int f;\n  C0 peer;\n", idx % 2);
    for (m, &(lines, params, branches, public, peer)) in methods.iter().enumerate() {
        let params: Vec<String> = (0..params).map(|p| format!("int a{p}")).collect();
        let vis = if public { "public " } else { "private " };
        src.push_str(&format!("  {vis}int m{m}({}) {{\n", params.join(", ")));
        for l in 0..lines {
            src.push_str(&format!("    f = f + {};\n", l % 3));
        }
        for _ in 0..branches {
            src.push_str("    if (f > 2) { f = 0; }\n");
        }
        for _ in 0..peer {
            src.push_str("    f = peer.f;\n");
        }
        if m > 0 && lines % 2 == 0 {
            src.push_str(&format!("    m{}({});\n", m - 1, vec!["1"; methods[m - 1].1 as usize].join(", ")));
        }
        src.push_str("    return f;\n  }\n");
    }
    src.push_str("}\n");
    SourceUnit::new(format!("p{}/C{idx}.java", idx % 2), src)
}

fn corpus() -> impl Strategy<Value = Vec<SourceUnit>> {
    let method = (0u8..40, 0u8..7, 0u8..12, any::<bool>(), 0u8..5);
    proptest::collection::vec(proptest::collection::vec(method, 1..5), 1..4)
        .prop_map(|files| files.iter().enumerate().map(|(i, ms)| random_file(i, ms)).collect())
}

fn count(smells: &[SmellInstance], kind: SmellKind) -> usize {
    smells.iter().filter(|s| s.kind == kind).count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn detection_ignores_file_order(files in corpus()) {
        let cfg = ThresholdConfig::default();
        let mut reversed = files.clone();
        reversed.reverse();
        prop_assert_eq!(detect(&files, &cfg), detect(&reversed, &cfg));
    }

    #[test]
    fn dead_code_never_on_public_or_entry(files in corpus()) {
        let model = parse_source(&files).unwrap();
        for s in detect(&files, &ThresholdConfig::default()) {
            if s.kind == SmellKind::DeadCode {
                let m = model.method(&s.location).unwrap();
                prop_assert!(m.visibility != Visibility::Public);
                prop_assert!(!model.is_entry_point(&s.location));
            }
        }
    }

    #[test]
    fn duplicates_reported_once_per_pair(files in corpus()) {
        let smells = detect(&files, &ThresholdConfig { duplicate_min_tokens: 8, ..Default::default() });
        let mut pairs = std::collections::BTreeSet::new();
        for s in smells.iter().filter(|s| s.kind == SmellKind::DuplicateCode) {
            let a = s.location.to_string();
            let b = s.location2.as_ref().unwrap().to_string();
            prop_assert!(a < b);
            prop_assert!(pairs.insert((a, b)));
        }
    }

    #[test]
    fn raising_thresholds_never_adds_smells(files in corpus(), lo in 0i64..40, bump in 0i64..20) {
        let hi = lo + bump;
        let low = ThresholdConfig {
            long_method_sloc: lo,
            long_method_mccabe: lo / 3,
            long_parameter_list: lo / 8,
            duplicate_min_tokens: lo + 1,
            feature_envy_min_foreign: lo / 10,
        };
        let high = ThresholdConfig {
            long_method_sloc: hi,
            long_method_mccabe: hi / 3,
            long_parameter_list: hi / 8,
            duplicate_min_tokens: hi + 1,
            feature_envy_min_foreign: hi / 10,
        };
        let a = detect(&files, &low);
        let b = detect(&files, &high);
        for kind in [SmellKind::LongMethod, SmellKind::LongParameterList, SmellKind::DuplicateCode, SmellKind::FeatureEnvy] {
            prop_assert!(count(&b, kind) <= count(&a, kind), "{kind}");
        }
    }
}
