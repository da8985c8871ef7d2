use proptest::prelude::*;

use super::*;

fn unit(path: &str, text: &str) -> SourceUnit {
    SourceUnit::new(path, text)
}

const SHAPES: &str = r#"package geo;

import java.util.List;

public class Shape {
    protected double area;
    public double getArea() { return area; }
}
"#;

const CIRCLE: &str = r#"package geo;

public class Circle extends Shape {
    private double r;
    public Circle(double r) { this.r = r; }
    double compute() {
        area = Math.PI * r * r;
        return helper(area);
    }
    private double helper(double x) { return x; }
    public static void main(String[] args) {
        Circle c = new Circle(2.0);
        System.out.println(c.compute());
    }
}
"#;

#[test]
fn empty_file_list_gives_empty_model() {
    let model = parse_source(&[]).unwrap();
    assert_eq!(model.packages.len(), 0);
    assert!(model.is_empty());
}

#[test]
fn minimal_unit() {
    let model = parse_source(&[unit("A.java", "class A { void f() { } }")]).unwrap();
    assert_eq!(model.packages.len(), 1);
    assert_eq!(model.packages[0].name, DEFAULT_PACKAGE);
    assert_eq!(model.classes().count(), 1);
    assert_eq!(model.method_count(), 1);
    let (_, m) = model.methods().next().unwrap();
    assert_eq!(m.qualified_name(), "A.f()");
    assert_eq!(m.visibility, Visibility::Package);
}

#[test]
fn duplicate_class_across_files() {
    let err = parse_source(&[unit("a/X.java", "package p; class X {}"), unit("b/X.java", "package p; class X {}")]).unwrap_err();
    assert_eq!(err, ModelError::DuplicateDefinition("p.X".into()));
}

#[test]
fn duplicate_method_signature() {
    let err = parse_source(&[unit("X.java", "package p; class X { void f(int a) {} void f(int b) {} }")]).unwrap_err();
    assert_eq!(err, ModelError::DuplicateDefinition("p.X.f(int)".into()));
}

#[test]
fn syntax_error_carries_file_and_line() {
    let err = parse_source(&[unit("bad/B.java", "class B {\n  void f() {\n    return 1 +;\n  }\n}\n")]).unwrap_err();
    match err {
        ModelError::Syntax { file, line, .. } => {
            assert_eq!(file, "bad/B.java");
            assert_eq!(line, 3);
        }
        other => panic!("unexpected {other:?}"),
    }
    let err = parse_source(&[unit("G.java", "class G {\n  java.util.List<String> xs;\n}")]).unwrap_err();
    assert!(err.to_string().starts_with("G.java:2: syntax error"), "{err}");
}

#[test]
fn references_resolve_or_are_external() {
    let model = parse_source(&[unit("geo/Shape.java", SHAPES), unit("geo/Circle.java", CIRCLE)]).unwrap();
    let circle = model.class(&ClassId::new("geo", "Circle")).unwrap();
    assert_eq!(circle.internal_supertype(), Some(&ClassId::new("geo", "Shape")));
    assert!(circle.dependencies.contains(&ClassId::new("geo", "Shape")));
    assert!(!circle.dependencies.contains(&circle.id));
    assert!(circle.external_dependencies.contains("Math"));

    let compute = model.method(&MethodRef::new(circle.id.clone(), "compute()")).unwrap();
    assert!(compute.calls.contains(&Reference::Internal(MethodRef::new(circle.id.clone(), "helper(double)"))));
    assert_eq!(compute.own_field_accesses.get("r"), Some(&2));
    // `area` is inherited: an own access but not a declared field of Circle.
    assert!(!compute.own_field_accesses.contains_key("area"));
    assert!(compute.foreign_accesses.is_empty());

    let main = model.method(&MethodRef::new(circle.id.clone(), "main(String[])")).unwrap();
    assert!(main.calls.contains(&Reference::Internal(MethodRef::new(circle.id.clone(), "Circle(double)"))));
    assert!(main.calls.contains(&Reference::External("System.out.println".into())));
    assert!(model.is_entry_point(&main.id));
    assert_eq!(model.entry_points.len(), 1);

    // every internal call target exists in the model
    for (_, m) in model.methods() {
        for call in &m.calls {
            if let Reference::Internal(t) = call {
                assert!(model.method(t).is_some(), "dangling {t}");
            }
        }
    }
    for c in model.classes() {
        for d in &c.dependencies {
            assert!(model.class(d).is_some());
        }
    }
}

#[test]
fn foreign_access_counts() {
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
    let model = parse_source(&[unit("p/A.java", src)]).unwrap();
    let a = ClassId::new("p", "A");
    let m = model.method(&MethodRef::new(a.clone(), "envy()")).unwrap();
    // five own field reads/writes plus the `other` field read nine times as a receiver.
    assert_eq!(m.own_field_accesses.values().sum::<usize>(), 5 + 9);
    assert_eq!(m.own_member_accesses, 5);
    let counts = m.foreign_access_counts();
    assert_eq!(counts[&ClassId::new("p", "B")], 9);
}

#[test]
fn methods_record_sloc_and_decision_points() {
    let src = "class A {\n  int f(int a, int b) {\n    // note\n\n    if (a > 0 && b > 0) { a++; }\n    while (a < b) a++;\n    return a;\n  }\n}\n";
    let model = parse_source(&[unit("A.java", src)]).unwrap();
    let (_, m) = model.methods().next().unwrap();
    assert_eq!(m.sloc, 5);
    assert_eq!(m.decision_points, 3);
    assert_eq!(m.params.len(), 2);
}

#[test]
fn parameter_order_and_class_names_follow_paths_not_input_order() {
    let files = vec![unit("geo/Circle.java", CIRCLE), unit("geo/Shape.java", SHAPES)];
    let mut reversed = files.clone();
    reversed.reverse();
    assert_eq!(parse_source(&files).unwrap(), parse_source(&reversed).unwrap());
}

#[test]
fn cross_package_resolution_uses_imports_and_unique_names() {
    let a = "package one;\nimport two.Helper;\npublic class User { int run() { return Helper.twice(2) + new Other().v; } }";
    let b = "package two;\npublic class Helper { public static int twice(int x) { return x * 2; } }";
    let c = "package three;\npublic class Other { public int v; }";
    let model = parse_source(&[unit("one/User.java", a), unit("two/Helper.java", b), unit("three/Other.java", c)]).unwrap();
    let user = model.class(&ClassId::new("one", "User")).unwrap();
    let deps: Vec<String> = user.dependencies.iter().map(|d| d.to_string()).collect();
    assert_eq!(deps, ["three.Other", "two.Helper"]);
}

#[test]
fn overriding_methods_are_reachable_through_the_base_call() {
    let src = "class Base { void hook() {} void run() { hook(); } }\nclass Derived extends Base { void hook() {} }";
    let model = parse_source(&[unit("B.java", src)]).unwrap();
    let incoming = model.incoming_references();
    assert_eq!(incoming[&MethodRef::new(ClassId::new(DEFAULT_PACKAGE, "Derived"), "hook()")], 1);
}

#[test]
fn feature_tags_single_and_stacked() {
    let src = "package p;\nclass A {\n  // @feature(\"sample\")\n  void m() {}\n  // @feature(\"one\")\n  // @feature(\"two\")\n  void n() {}\n  void plain() {}\n}\n";
    let files = [unit("p/A.java", src)];
    let frag = extract_feature_tags(&files).unwrap();
    assert_eq!(frag.len(), 2);
    assert_eq!(frag["p.A.m()"], ["sample".to_string()].into());
    assert_eq!(frag["p.A.n()"], ["one".to_string(), "two".to_string()].into());
    let model = parse_source(&files).unwrap();
    let plain = model.method(&MethodRef::new(ClassId::new("p", "A"), "plain()")).unwrap();
    assert!(plain.feature_tags.is_empty());
}

#[test]
fn no_annotations_gives_empty_fragment() {
    assert!(extract_feature_tags(&[unit("A.java", "class A { void f() {} }")]).unwrap().is_empty());
}

#[test]
fn malformed_annotation_is_an_error() {
    let src = "class A {\n  // @feature(sample)\n  void f() {}\n}";
    let err = extract_feature_tags(&[unit("A.java", src)]).unwrap_err();
    assert_eq!(err, ModelError::MalformedAnnotation { file: "A.java".into(), line: 2 });
}

#[test]
fn package_name_of_units() {
    assert_eq!(unit("a", "package a.b.c;\nclass X {}").package_name(), "a.b.c");
    assert_eq!(unit("a", "class X {}").package_name(), DEFAULT_PACKAGE);
}

#[test]
fn raw_lines_keep_bytes() {
    let u = unit("a", "x\r\ny\n");
    assert_eq!(u.raw_lines().collect::<Vec<_>>(), ["x\r\n", "y\n"]);
}

fn line_strategy() -> impl Strategy<Value = String> {
    prop_oneof![
        Just(String::new()),
        Just("   \t".to_string()),
        Just("int x = 1;".to_string()),
        Just("// comment".to_string()),
        Just("/* open".to_string()),
        Just("close */".to_string()),
        Just("x = 2; /* c */".to_string()),
        Just("String s = \"/*\";".to_string()),
        "[a-z /*\"]{0,12}",
    ]
}

proptest! {
    #[test]
    fn line_totals_add_up(lines in proptest::collection::vec(line_strategy(), 0..40), files in 1usize..3) {
        let text = lines.join("\n");
        let units: Vec<SourceUnit> = (0..files).map(|i| unit(&format!("f{i}.java"), &text)).collect();
        let s = line_statistics(&units);
        prop_assert_eq!(s.total_lines, s.code_lines + s.comment_lines + s.whitespace_lines);
        prop_assert_eq!(s.total_lines, files * text.lines().count());
    }

    #[test]
    fn parsing_is_deterministic(n in 1usize..6, extra in 0usize..4) {
        let mut src = String::from("package p;\nclass A {\n");
        for i in 0..n {
            src.push_str(&format!("  int f{i}(int a) {{ if (a > {extra}) {{ return f{}(a - 1); }} return a; }}\n", (i + 1) % n));
        }
        src.push_str("}\n");
        let files = [unit("p/A.java", &src)];
        prop_assert_eq!(parse_source(&files).unwrap(), parse_source(&files).unwrap());
    }
}
