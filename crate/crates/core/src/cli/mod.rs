//! Command-line front end: `analyze`, `plan` and `remod` over a corpus directory.
//!
//! Exit codes: 0 success, 2 source errors, 3 precedence cycle, 4 no features,
//! 1 anything else.

pub mod config;
pub mod corpus;
pub mod report;
pub mod text;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::code_model::{line_statistics, parse_source, ModelError, SourceUnit};
use crate::metrics::build_metrics_report;
use crate::ordering::{pairwise_analysis, topological_sort, OrderingError};
use crate::planner::{candidate_actions, evolve, precedence_counts, PlanError};
use crate::remod::{build_feature_map, restructuring_candidates, suggest_moves, RemodError, TraceFile};
use crate::smells::detect_smells;

pub use config::{Config, Format};
pub use report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Ordering(#[from] OrderingError),
    #[error(transparent)]
    Remod(#[from] RemodError),
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error("configuration: {0}")]
    Config(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Model(_) => 2,
            CliError::Ordering(OrderingError::CycleDetected(_)) => 3,
            CliError::Remod(RemodError::NoFeatures) => 4,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "smellplan", version, about = "Detect code smells, plan refactorings and suggest package restructurings")]
pub struct Args {
    /// TOML configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// GA seed, overriding the configuration.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output format, overriding the configuration.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Include the precedence graph as DOT text in the report.
    #[arg(long, global = true)]
    pub emit_graph: bool,
    /// Include the feature-to-package graph as DOT text in the report.
    #[arg(long, global = true)]
    pub emit_feature_graph: bool,
    /// Print the active rule table and exit.
    #[arg(long, global = true)]
    pub explain: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Line statistics and metrics.
    Analyze { root: PathBuf },
    /// Smells, their resolution order and a refactoring plan.
    Plan { root: PathBuf },
    /// Feature metrics, restructuring candidates and suggested class moves.
    Remod {
        root: PathBuf,
        /// Trace file of `feature<TAB>qualified.method` lines; repeatable.
        #[arg(long)]
        traces: Vec<PathBuf>,
        /// Maximum number of suggested moves, overriding the configuration.
        #[arg(long)]
        max_moves: Option<usize>,
    },
}

struct Loaded {
    units: Vec<SourceUnit>,
    report: Report,
}

fn load(command: &'static str, root: &Path) -> Result<Loaded, CliError> {
    let units = corpus::discover(root)?;
    let mut report = Report::new(command, corpus::digest(&units), units.len());
    if units.is_empty() {
        report.warnings.push(format!("no .java files under {}", root.display()));
    }
    Ok(Loaded { units, report })
}

pub fn cmd_analyze(root: &Path, cfg: &Config) -> Result<Report, CliError> {
    let Loaded { units, mut report } = load("analyze", root)?;
    let model = parse_source(&units)?;
    let stats = line_statistics(&units);
    let metrics = build_metrics_report(&model, stats.clone(), &cfg.metrics());
    report.warnings.extend(metrics.warnings.iter().cloned());
    report.line_stats = Some(stats);
    report.metrics = Some(metrics);
    Ok(report)
}

pub fn cmd_plan(root: &Path, cfg: &Config) -> Result<Report, CliError> {
    let Loaded { units, mut report } = load("plan", root)?;
    let model = parse_source(&units)?;
    let rules = cfg.detection_rules()?;
    let metrics = build_metrics_report(&model, line_statistics(&units), &cfg.metrics());
    let smells = detect_smells(&model, &metrics, &rules);
    let graph = pairwise_analysis(&smells, &cfg.precedence()?);
    let order = topological_sort(&graph)?;
    let actions = candidate_actions(&smells, &model);

    let plan = if actions.is_empty() {
        report::PlanSection {
            fitness: 0.0,
            satisfied: 0,
            violations: 0,
            steps: Vec::new(),
        }
    } else {
        let best = evolve(&actions, &graph, &cfg.ga)?;
        let (satisfied, violations) = precedence_counts(&best.order, &graph);
        report::PlanSection {
            fitness: best.fitness,
            satisfied,
            violations,
            steps: best
                .order
                .iter()
                .enumerate()
                .map(|(position, &a)| {
                    let action = &actions[a];
                    report::PlanStep {
                        position,
                        action: a,
                        kind: action.kind,
                        smell: action.smell,
                        location: action.location.clone(),
                        rationale: action.rationale.clone(),
                    }
                })
                .collect(),
        }
    };

    report.ordered_smells = Some(
        order
            .iter()
            .enumerate()
            .map(|(position, &i)| report::OrderedSmell {
                position,
                smell: i,
                kind: smells[i].kind,
                location: graph.nodes[i].location.clone(),
            })
            .collect(),
    );
    if cfg.output.emit_graph {
        report.graphs = Some(report::Graphs {
            precedence: Some(graph.to_dot()),
            features: None,
        });
    }
    report.smells = Some(smells);
    report.plan = Some(plan);
    Ok(report)
}

pub fn cmd_remod(root: &Path, traces: &[PathBuf], cfg: &Config) -> Result<Report, CliError> {
    let Loaded { units, mut report } = load("remod", root)?;
    let model = parse_source(&units)?;
    let trace_files = traces
        .iter()
        .map(|p| {
            std::fs::read_to_string(p)
                .map(|text| TraceFile::new(p.display().to_string(), text))
                .map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let (fm, warnings) = build_feature_map(&model, &trace_files)?;
    report.warnings.extend(warnings);
    if fm.is_empty() {
        return Err(RemodError::NoFeatures.into());
    }
    let metrics = build_metrics_report(&model, line_statistics(&units), &cfg.metrics());
    let suggestion = suggest_moves(&model, &fm, &cfg.remod)?;
    report.feature_metrics = Some(report::FeatureMetricsSection {
        features: fm.features.iter().map(|(f, ms)| (f.clone(), ms.len())).collect(),
        before: suggestion.before,
        after: suggestion.after,
    });
    report.candidates = Some(restructuring_candidates(&model, &metrics, &fm));
    report.suggested_moves = Some(suggestion.moves);
    if cfg.output.emit_feature_graph {
        report.graphs = Some(report::Graphs {
            precedence: None,
            features: Some(fm.to_dot(&model)),
        });
    }
    Ok(report)
}

fn effective_config(args: &Args) -> Result<Config, CliError> {
    let mut cfg = match &args.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    if let Some(seed) = args.seed {
        cfg.ga.seed = seed;
    }
    if let Some(format) = args.format {
        cfg.output.format = format;
    }
    cfg.output.emit_graph |= args.emit_graph;
    cfg.output.emit_feature_graph |= args.emit_feature_graph;
    if let Some(Command::Remod { max_moves: Some(n), .. }) = &args.command {
        cfg.remod.max_moves = *n;
    }
    Ok(cfg)
}

/// Run one invocation, writing the report to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(args) => args,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(&args) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(args: &Args) -> Result<String, CliError> {
    let cfg = effective_config(args)?;
    if args.explain {
        return Ok(text::explain(&cfg.detection_rules()?, &cfg.precedence()?));
    }
    let report = match &args.command {
        Some(Command::Analyze { root }) => cmd_analyze(root, &cfg)?,
        Some(Command::Plan { root }) => cmd_plan(root, &cfg)?,
        Some(Command::Remod { root, traces, .. }) => cmd_remod(root, traces, &cfg)?,
        None => return Err(CliError::Config("a subcommand is required: analyze, plan or remod".into())),
    };
    Ok(match cfg.output.format {
        Format::Json => report.to_json(),
        Format::Text => text::render(&report),
    })
}
