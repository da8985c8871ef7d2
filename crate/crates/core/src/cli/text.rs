//! Human-readable rendering of a [`Report`].

use std::fmt::Write as _;

use super::report::Report;
use crate::smells::DetectionRule;
use crate::ordering::KindPrecedence;

pub fn render(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {} {} ({} files, digest {})", r.tool, r.version, r.command, r.files, &r.input_digest[..12]);

    if let Some(s) = &r.line_stats {
        let _ = writeln!(out, "\nLine statistics");
        let rows = [
            ("total lines", s.total_lines.to_string()),
            ("code lines", s.code_lines.to_string()),
            ("comment lines", s.comment_lines.to_string()),
            ("whitespace lines", s.whitespace_lines.to_string()),
            ("average line length", s.avg_line_length.to_string()),
            ("code/(comment+whitespace)", format!("{:.2}", s.code_to_comment_plus_ws)),
            ("code/comment", format!("{:.2}", s.code_to_comment)),
            ("code/whitespace", format!("{:.2}", s.code_to_ws)),
            ("code/total", format!("{:.2}", s.code_to_total)),
        ];
        for (k, v) in rows {
            let _ = writeln!(out, "  {k:<28} {v}");
        }
    }

    if let Some(m) = &r.metrics {
        let _ = writeln!(out, "\nMetrics");
        let _ = writeln!(out, "  methods {}, classes {}, average complexity {:.3}", m.methods.len(), m.classes.len(), m.avg_complexity);
        for c in &m.classes {
            let _ = writeln!(out, "  {:<40} lcom {:.3} cohesion {:?}", c.class, c.lcom, c.cohesion_level);
        }
        for v in &m.rule_of_30.violations {
            let _ = writeln!(out, "  rule of 30: {} {:?} {} > {}", v.entity, v.kind, v.observed, v.limit);
        }
    }

    if let Some(smells) = &r.smells {
        let _ = writeln!(out, "\nSmells ({})", smells.len());
        for (i, s) in smells.iter().enumerate() {
            let _ = writeln!(out, "  [{i}] {s} (rule {})", s.rule);
        }
    }

    if let Some(order) = &r.ordered_smells {
        let _ = writeln!(out, "\nResolution order");
        for o in order {
            let _ = writeln!(out, "  {}. [{}] {} {}", o.position + 1, o.smell, o.kind, o.location);
        }
    }

    if let Some(plan) = &r.plan {
        let _ = writeln!(
            out,
            "\nPlan (fitness {}, satisfied {}, violations {})",
            plan.fitness, plan.satisfied, plan.violations
        );
        for step in &plan.steps {
            let _ = writeln!(out, "  {}. {} {}: {}", step.position + 1, step.kind, step.location, step.rationale);
        }
    }

    if let Some(fm) = &r.feature_metrics {
        let _ = writeln!(out, "\nFeature metrics        before    after");
        let rows = [
            ("FSCA", fm.before.fsca, fm.after.fsca),
            ("FTANG", fm.before.ftang, fm.after.ftang),
            ("PCOM", fm.before.pcom, fm.after.pcom),
            ("PCOUP", fm.before.pcoup, fm.after.pcoup),
        ];
        for (k, b, a) in rows {
            let _ = writeln!(out, "  {k:<20} {b:>8.3} {a:>8.3}");
        }
    }

    if let Some(cands) = &r.candidates {
        let _ = writeln!(out, "\nRestructuring candidates ({})", cands.len());
        for c in cands {
            let reasons: Vec<String> = c.reasons.iter().map(|r| format!("{r:?}")).collect();
            let target = c.suggested_target_package.as_deref().unwrap_or("-");
            let _ = writeln!(out, "  {:<40} {} -> {target}", c.class.to_string(), reasons.join(","));
        }
    }

    if let Some(moves) = &r.suggested_moves {
        let _ = writeln!(out, "\nSuggested moves ({})", moves.len());
        for m in moves {
            let _ = writeln!(out, "  {m}");
        }
    }

    if let Some(g) = &r.graphs {
        for dot in [&g.precedence, &g.features].into_iter().flatten() {
            let _ = writeln!(out, "\n{dot}");
        }
    }

    for w in &r.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

/// The active rule table and precedence matrix, for `--explain`.
pub fn explain(rules: &[DetectionRule], kp: &KindPrecedence) -> String {
    let mut out = String::from("Detection rules (a smell fires when any of its rules holds):\n");
    let width = rules.iter().map(|r| r.id.len()).max().unwrap_or(0);
    for r in rules {
        let _ = writeln!(out, "  {:<width$}  {:<18} {}", r.id, r.kind.to_string(), r.condition());
    }
    out.push_str("\nResolution precedence (smells on a shared class):\n");
    for (a, b) in &kp.before {
        let _ = writeln!(out, "  {a} before {b}");
    }
    out
}
