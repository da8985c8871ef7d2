//! Method, class and package metrics: McCabe complexity, Henderson-Sellers LCOM,
//! cohesion banding and rule-of-30 size calibration.

use serde::{Deserialize, Serialize};

use crate::code_model::{ClassDecl, CodeModel, LineStats, MethodDecl};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CohesionThresholds {
    /// Largest LCOM still banded `H`.
    pub high_max: f64,
    /// Largest LCOM still banded `M`.
    pub medium_max: f64,
}

impl Default for CohesionThresholds {
    fn default() -> Self {
        Self {
            high_max: 1.0 / 3.0,
            medium_max: 2.0 / 3.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RuleOf30Limits {
    pub method_lines: usize,
    pub class_methods: usize,
    pub package_classes: usize,
}

impl Default for RuleOf30Limits {
    fn default() -> Self {
        Self {
            method_lines: 30,
            class_methods: 30,
            package_classes: 30,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MetricsConfig {
    pub cohesion: CohesionThresholds,
    pub rule_of_30: RuleOf30Limits,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MethodMetrics {
    pub qualified_name: String,
    pub mccabe: usize,
    pub sloc: usize,
    pub param_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CohesionLevel {
    L,
    M,
    H,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassMetrics {
    pub class: String,
    pub lcom: f64,
    pub cohesion_level: CohesionLevel,
    pub method_count: usize,
    pub field_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ViolationKind {
    MethodLines,
    ClassMethods,
    PackageClasses,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleOf30Violation {
    pub entity: String,
    pub kind: ViolationKind,
    pub observed: usize,
    pub limit: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct RuleOf30Report {
    pub violations: Vec<RuleOf30Violation>,
}

impl RuleOf30Report {
    pub fn mentions(&self, entity: &str) -> bool {
        self.violations.iter().any(|v| v.entity == entity)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsReport {
    pub methods: Vec<MethodMetrics>,
    pub classes: Vec<ClassMetrics>,
    pub avg_complexity: f64,
    /// Reported in its own section of the JSON report.
    #[serde(skip)]
    pub line_stats: LineStats,
    pub rule_of_30: RuleOf30Report,
    pub warnings: Vec<String>,
}

impl MetricsReport {
    pub fn class(&self, id: &str) -> Option<&ClassMetrics> {
        self.classes.iter().find(|c| c.class == id)
    }
}

/// 1 + the number of `if`, `for`, `while`, `case`, `catch`, `&&`, `||` and `?`
/// in the method body.
pub fn cyclomatic_complexity(m: &MethodDecl) -> usize {
    1 + m.decision_points
}

/// Henderson-Sellers lack of cohesion, clamped to `[0, 1]`.
///
/// Constructors are excluded from the method set. A class with at most one
/// method or no fields scores 0.
pub fn lcom(c: &ClassDecl) -> f64 {
    let methods: Vec<&MethodDecl> = c.methods.iter().filter(|m| !m.is_constructor).collect();
    let m = methods.len();
    let a = c.fields.len();
    if m <= 1 || a == 0 {
        return 0.0;
    }
    let accesses: usize = c
        .fields
        .iter()
        .map(|f| methods.iter().filter(|mm| mm.own_field_accesses.contains_key(&f.name)).count())
        .sum();
    let mean_mu = accesses as f64 / a as f64;
    let value = (mean_mu - m as f64) / (1.0 - m as f64);
    value.clamp(0.0, 1.0)
}

pub fn cohesion_level(lcom: f64, t: &CohesionThresholds) -> CohesionLevel {
    if lcom <= t.high_max {
        CohesionLevel::H
    } else if lcom <= t.medium_max {
        CohesionLevel::M
    } else {
        CohesionLevel::L
    }
}

pub fn rule_of_30(model: &CodeModel, limits: &RuleOf30Limits) -> RuleOf30Report {
    let mut violations = Vec::new();
    for package in model.non_empty_packages() {
        if package.classes.len() > limits.package_classes {
            violations.push(RuleOf30Violation {
                entity: package.name.clone(),
                kind: ViolationKind::PackageClasses,
                observed: package.classes.len(),
                limit: limits.package_classes,
            });
        }
        for class in &package.classes {
            if class.methods.len() > limits.class_methods {
                violations.push(RuleOf30Violation {
                    entity: class.id.to_string(),
                    kind: ViolationKind::ClassMethods,
                    observed: class.methods.len(),
                    limit: limits.class_methods,
                });
            }
            for m in &class.methods {
                if m.sloc > limits.method_lines {
                    violations.push(RuleOf30Violation {
                        entity: m.qualified_name(),
                        kind: ViolationKind::MethodLines,
                        observed: m.sloc,
                        limit: limits.method_lines,
                    });
                }
            }
        }
    }
    RuleOf30Report { violations }
}

pub fn class_metrics(c: &ClassDecl, t: &CohesionThresholds) -> ClassMetrics {
    let value = lcom(c);
    ClassMetrics {
        class: c.id.to_string(),
        lcom: value,
        cohesion_level: cohesion_level(value, t),
        method_count: c.methods.len(),
        field_count: c.fields.len(),
    }
}

pub fn build_metrics_report(model: &CodeModel, line_stats: LineStats, cfg: &MetricsConfig) -> MetricsReport {
    let methods: Vec<MethodMetrics> = model
        .methods()
        .map(|(_, m)| MethodMetrics {
            qualified_name: m.qualified_name(),
            mccabe: cyclomatic_complexity(m),
            sloc: m.sloc,
            param_count: m.params.len(),
        })
        .collect();
    let classes = model.classes().map(|c| class_metrics(c, &cfg.cohesion)).collect();
    let mut warnings = Vec::new();
    let avg_complexity = if methods.is_empty() {
        warnings.push("model has no methods; average complexity reported as 0".to_string());
        0.0
    } else {
        methods.iter().map(|m| m.mccabe as f64).sum::<f64>() / methods.len() as f64
    };
    MetricsReport {
        methods,
        classes,
        avg_complexity,
        line_stats,
        rule_of_30: rule_of_30(model, &cfg.rule_of_30),
        warnings,
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::code_model::{line_statistics, parse_source, SourceUnit};

    fn model(src: &str) -> CodeModel {
        parse_source(&[SourceUnit::new("T.java", src)]).unwrap()
    }

    fn only_method(src: &str) -> usize {
        let m = model(src);
        let (_, method) = m.methods().next().unwrap();
        cyclomatic_complexity(method)
    }

    /// A class with `fields` fields where method `i` touches exactly `access[i]`.
    fn class_source(fields: usize, access: &[Vec<usize>]) -> String {
        let mut src = String::from("class K {\n");
        for f in 0..fields {
            src.push_str(&format!("  int f{f};\n"));
        }
        for (i, touched) in access.iter().enumerate() {
            let body: String = touched.iter().map(|f| format!("f{f} = f{f} + 1; ")).collect();
            src.push_str(&format!("  void m{i}() {{ {body}}}\n"));
        }
        src.push_str("}\n");
        src
    }

    fn lcom_of(fields: usize, access: &[Vec<usize>]) -> f64 {
        let m = model(&class_source(fields, access));
        let class = m.classes().next().unwrap();
        lcom(class)
    }

    /// Direct tally of the Henderson-Sellers formula from an access matrix.
    fn lcom_oracle(fields: usize, access: &[Vec<usize>]) -> f64 {
        let m = access.len();
        if m <= 1 || fields == 0 {
            return 0.0;
        }
        let mut mu = vec![0usize; fields];
        for touched in access {
            let mut seen = vec![false; fields];
            for &f in touched {
                if !seen[f] {
                    seen[f] = true;
                    mu[f] += 1;
                }
            }
        }
        let mean = mu.iter().sum::<usize>() as f64 / fields as f64;
        ((mean - m as f64) / (1.0 - m as f64)).clamp(0.0, 1.0)
    }

    #[test]
    fn straight_line_method_has_complexity_one() {
        assert_eq!(only_method("class A { int f(int a) { int b = a + 1; return b; } }"), 1);
    }

    #[test]
    fn if_with_conjunction_plus_while() {
        let src = "class A { void f(boolean a, boolean b) { if (a && b) { return; } while (a) { a = false; } } }";
        assert_eq!(only_method(src), 4);
    }

    #[test]
    fn switch_with_three_cases() {
        let src = "class A { int f(int k) { switch (k) { case 1: return 10; case 2: return 20; case 3: return 30; default: return 0; } } }";
        assert_eq!(only_method(src), 4);
    }

    #[test]
    fn ternary_or_catch_and_for_all_count() {
        let src = "class A { int f(int k) { try { for (int i = 0; i < k || k > 9; i++) { k = k > 0 ? k : -k; } } catch (Exception e) { k = 0; } return k; } }";
        // for, ||, ?, catch
        assert_eq!(only_method(src), 5);
    }

    #[test]
    fn lcom_examples() {
        let all = vec![vec![0, 1], vec![0, 1], vec![1, 0]];
        assert_eq!(lcom_of(2, &all), 0.0);
        assert_eq!(lcom_of(3, &[vec![0]]), 0.0);
        let distinct = vec![vec![0], vec![1]];
        assert_eq!(lcom_oracle(2, &distinct), 1.0);
        assert_eq!(lcom_of(2, &distinct), 1.0);
        assert_eq!(lcom_of(0, &[vec![], vec![]]), 0.0);
    }

    #[test]
    fn constructors_do_not_count_towards_lcom() {
        let src = "class K { int a; int b; K() { a = 0; b = 0; } void f() { a++; } void g() { b++; } }";
        assert_eq!(lcom(model(src).classes().next().unwrap()), 1.0);
    }

    #[test]
    fn cohesion_bands() {
        let t = CohesionThresholds::default();
        assert_eq!(cohesion_level(0.0, &t), CohesionLevel::H);
        assert_eq!(cohesion_level(1.0 / 3.0, &t), CohesionLevel::H);
        assert_eq!(cohesion_level(0.5, &t), CohesionLevel::M);
        assert_eq!(cohesion_level(2.0 / 3.0, &t), CohesionLevel::M);
        assert_eq!(cohesion_level(0.7, &t), CohesionLevel::L);
        assert_eq!(cohesion_level(1.0, &t), CohesionLevel::L);
    }

    fn method_with_sloc(lines: usize) -> String {
        let mut src = String::from("class A {\n  void f() {\n");
        for i in 0..lines.saturating_sub(2) {
            src.push_str(&format!("    int v{i} = {i};\n"));
        }
        src.push_str("  }\n}\n");
        src
    }

    #[test]
    fn rule_of_30_method_limit_is_inclusive() {
        let limits = RuleOf30Limits::default();
        let ok = model(&method_with_sloc(30));
        assert_eq!(ok.methods().next().unwrap().1.sloc, 30);
        assert!(rule_of_30(&ok, &limits).violations.is_empty());
        let long = model(&method_with_sloc(31));
        let report = rule_of_30(&long, &limits);
        assert_eq!(
            report.violations,
            [RuleOf30Violation {
                entity: "A.f()".into(),
                kind: ViolationKind::MethodLines,
                observed: 31,
                limit: 30
            }]
        );
    }

    #[test]
    fn rule_of_30_package_with_31_classes() {
        let src: String = (0..31).map(|i| format!("class C{i} {{}}\n")).collect();
        let m = parse_source(&[SourceUnit::new("p/C.java", format!("package p;\n{src}"))]).unwrap();
        let report = rule_of_30(&m, &RuleOf30Limits::default());
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].kind, ViolationKind::PackageClasses);
        assert_eq!(report.violations[0].observed, 31);
    }

    #[test]
    fn average_complexity() {
        let src = "class A { void a() {} void b(boolean x) { if (x) {} } void c(boolean x) { if (x) {} while (x) {} } }";
        let m = model(src);
        let r = build_metrics_report(&m, line_statistics(&[]), &MetricsConfig::default());
        assert_eq!(r.avg_complexity, 2.0);
        assert!(r.warnings.is_empty());

        let single = model("class A { void b(boolean x) { if (x) {} } }");
        let r = build_metrics_report(&single, line_statistics(&[]), &MetricsConfig::default());
        assert_eq!(r.avg_complexity, 2.0);
    }

    #[test]
    fn empty_model_reports_zero_with_warning() {
        let r = build_metrics_report(&CodeModel::default(), line_statistics(&[]), &MetricsConfig::default());
        assert_eq!(r.avg_complexity, 0.0);
        assert_eq!(r.warnings.len(), 1);
    }

    fn access_matrix() -> impl Strategy<Value = (usize, Vec<Vec<usize>>)> {
        (1usize..5).prop_flat_map(|fields| {
            (Just(fields), proptest::collection::vec(proptest::collection::vec(0..fields, 0..4), 2..6))
        })
    }

    fn body_strategy() -> impl Strategy<Value = String> {
        let stmt = prop_oneof![
            Just("x = x + 1;".to_string()),
            Just("if (x > 1 && x < 5) { x--; }".to_string()),
            Just("while (x > 3 || x < -3) { x = x / 2; }".to_string()),
            Just("for (int i = 0; i < 3; i++) { x += i; }".to_string()),
            Just("switch (x) { case 1: x = 2; break; case 2: x = 3; break; }".to_string()),
            Just("x = x > 0 ? x : -x;".to_string()),
            Just("try { x = 1; } catch (Exception e) { x = 0; }".to_string()),
        ];
        proptest::collection::vec(stmt, 0..8).prop_map(|v| v.join(" "))
    }

    proptest! {
        #[test]
        fn lcom_matches_tally((fields, access) in access_matrix()) {
            prop_assert!((lcom_of(fields, &access) - lcom_oracle(fields, &access)).abs() < 1e-12);
        }

        #[test]
        fn adding_a_method_touching_every_field_never_raises_lcom((fields, access) in access_matrix()) {
            let before = lcom_of(fields, &access);
            let mut more = access.clone();
            more.push((0..fields).collect());
            prop_assert!(lcom_of(fields, &more) <= before + 1e-12);
        }

        #[test]
        fn mccabe_is_at_least_one(body in body_strategy()) {
            let m = model(&format!("class A {{ void f(int x) {{ {body} }} }}"));
            prop_assert!(cyclomatic_complexity(m.methods().next().unwrap().1) >= 1);
        }

        #[test]
        fn cohesion_level_is_total(v in 0.0f64..=1.0) {
            let t = CohesionThresholds::default();
            let level = cohesion_level(v, &t);
            prop_assert_eq!(level, cohesion_level(v, &t));
            let expected = if v <= 1.0 / 3.0 { CohesionLevel::H } else if v <= 2.0 / 3.0 { CohesionLevel::M } else { CohesionLevel::L };
            prop_assert_eq!(level, expected);
        }

        #[test]
        fn rule_of_30_counts_exactly(classes in 25usize..36, methods in 25usize..36) {
            let mut src = String::from("package big;\n");
            for c in 0..classes {
                src.push_str(&format!("class C{c} {{\n"));
                let n = if c == 0 { methods } else { 1 };
                for m in 0..n {
                    src.push_str(&format!("  void m{m}() {{}}\n"));
                }
                src.push_str("}\n");
            }
            let model = parse_source(&[SourceUnit::new("big/C.java", src)]).unwrap();
            let report = rule_of_30(&model, &RuleOf30Limits::default());
            let expected = usize::from(classes > 30) + usize::from(methods > 30);
            prop_assert_eq!(report.violations.len(), expected);
        }
    }
}
