//! Subcommands of the `conserv` binary and their reports.
//!
//! Every command produces a list of [`Report`] rows sorted by entry name.
//! The exit status is 0 when no row failed, 1 when some row disagreed or
//! missed its expected verdict, and a per-module code when a module
//! returned an error.

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use conserv::forcing::{check_on, meta_lemma_suite, Forcing, ForcingError, Governing, Poset};
use conserv::holog::{parse_formula, Env, Formula, HologError, Var};
use conserv::kernel::corpus::{logical_lines, parse_corpus as parse_kernel, run_entry};
use conserv::kernel::{parse_judgment, show, CtxItem, Defs, KernelError};
use conserv::model::{denote_judgment, ModelError, World};
use conserv::pca::{parse_comb, EvalOutcome, Machine, ParseError};
use conserv::realize::{
    check_irrelevant_equiv, check_relevant_soundness, parse_bindings, parse_corpus as parse_entries, RealizeError,
    Status, Verdict,
};
use conserv::translate::{ctx_of, translate_checked, Mode, TranslateError};

#[derive(Parser, Debug)]
#[command(name = "conserv", version, about = "Bounded checks of conservativity results")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

/// Bounds and output options shared by every command.
#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Combinator steps per evaluation.
    #[arg(long, global = true, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Sort-0 quantifier bound for first-order checks.
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    pub cutoff: u64,
    /// Cutoff of the realizability model used by `thm1` and `denote`.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub world: u64,
    /// Largest forcing condition.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub size: u64,
    /// Translation mode.
    #[arg(long, global = true, default_value = "irrelevant")]
    pub mode: String,
    /// Bindings for free variables, as `x=3, Y:1={0,2}`.
    #[arg(long, global = true, default_value = "")]
    pub env: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            budget: 100_000,
            cutoff: 64,
            world: 3,
            size: 2,
            mode: "irrelevant".into(),
            env: String::new(),
            format: Format::Text,
        }
    }
}

#[derive(clap::ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Check a kernel judgment, or run every manifest under a path.
    Check { target: String },
    /// Evaluate a combinator term.
    Eval { term: String },
    /// Translate a formula into the type theory.
    Translate { formula: String },
    /// Interpret a kernel judgment in the realizability model.
    Denote { judgment: String },
    /// Build the canonical realizer of a first-order formula and check it.
    Realize { formula: String },
    /// Compare the model reading of the proof-irrelevant translation with
    /// the bounded truth value.
    Thm1 { formula: String },
    /// Print the forcing translation `P ⊩ A`.
    Force {
        formula: String,
        /// Governing formula `A(x,y)` for the pairs of a condition.
        #[arg(long, default_value = "top")]
        governing: String,
    },
    /// Check monotonicity, density and the base-formula lemma on a
    /// generated suite.
    ForceCheck {
        #[arg(long, default_value_t = 3)]
        domain: u64,
        #[arg(long, default_value_t = 60)]
        count: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value = "top")]
        governing: String,
    },
    /// Run corpus manifests: `assert-type`, `assert-fail`, `assert-agree`
    /// and `assert-realized` directives.
    Corpus { path: PathBuf },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Eval { .. } => "eval",
            Command::Translate { .. } => "translate",
            Command::Denote { .. } => "denote",
            Command::Realize { .. } => "realize",
            Command::Thm1 { .. } => "thm1",
            Command::Force { .. } => "force",
            Command::ForceCheck { .. } => "force-check",
            Command::Corpus { .. } => "corpus",
        }
    }
}

/// One row of a report.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Report {
    pub entry: String,
    pub command: String,
    pub verdict: String,
    pub detail: String,
    #[serde(skip)]
    pub failed: bool,
}

impl Report {
    fn new(entry: impl Into<String>, command: &str, verdict: impl Into<String>, detail: impl Into<String>) -> Report {
        Report { entry: entry.into(), command: command.into(), verdict: verdict.into(), detail: detail.into(), failed: false }
    }

    fn failing(mut self, failed: bool) -> Report {
        self.failed = failed;
        self
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("formula: {0}")]
    Holog(#[from] HologError),
    #[error("combinator: {0}")]
    Pca(#[from] ParseError),
    #[error("kernel: {0}")]
    Kernel(#[from] KernelError),
    #[error("translate: {0}")]
    Translate(#[from] TranslateError),
    #[error("model: {0}")]
    Model(#[from] ModelError),
    #[error("realize: {0}")]
    Realize(#[from] RealizeError),
    #[error("forcing: {0}")]
    Forcing(#[from] ForcingError),
    #[error("input: {0}")]
    Input(String),
}

impl CliError {
    /// Machine-readable category.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Io(_) => "io",
            CliError::Holog(_) => "holog",
            CliError::Pca(_) => "pca",
            CliError::Kernel(_) => "kernel",
            CliError::Translate(_) => "translate",
            CliError::Model(_) => "model",
            CliError::Realize(_) => "realize",
            CliError::Forcing(_) => "forcing",
            CliError::Input(_) => "input",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 3,
            CliError::Io(_) => 4,
            CliError::Holog(_) => 10,
            CliError::Pca(_) => 11,
            CliError::Kernel(_) => 12,
            CliError::Translate(_) => 13,
            CliError::Model(_) => 14,
            CliError::Realize(_) => 15,
            CliError::Forcing(_) => 16,
        }
    }
}

/// Exit status for a finished run.
pub fn exit_status(reports: &[Report]) -> i32 {
    i32::from(reports.iter().any(|r| r.failed))
}

/// Run one command; rows come back sorted by entry.
pub fn run(command: &Command, config: &RunConfig) -> Result<Vec<Report>, CliError> {
    let name = command.name();
    let mut rows = match command {
        Command::Check { target } => {
            if Path::new(target).exists() {
                run_manifests(Path::new(target), config)?
            } else {
                vec![check_inline(target)?]
            }
        }
        Command::Corpus { path } => run_manifests(path, config)?,
        Command::Eval { term } => vec![eval(term, config)?],
        Command::Translate { formula } => vec![translate_one(formula, config)?],
        Command::Denote { judgment } => vec![denote(judgment, config)?],
        Command::Realize { formula } => {
            let f = parse_formula(formula)?;
            let env = bindings(&config.env)?;
            vec![realize_row(formula, name, &f, &env, config.cutoff, config.budget, None)?]
        }
        Command::Thm1 { formula } => {
            let f = parse_formula(formula)?;
            let env = bindings(&config.env)?;
            vec![thm1_row(formula, name, &f, &env, config.world, None)?]
        }
        Command::Force { formula, governing } => {
            let f = parse_formula(formula)?;
            let forcing = Forcing::new("R", governing_of(governing)?);
            let p = Var::new("P", 1);
            let t = forcing.force(&p, &f)?;
            vec![Report::new(formula.clone(), name, "ok", t.to_string())]
        }
        Command::ForceCheck { domain, count, seed, governing } => {
            force_check(*domain, *count, *seed, governing, config.size as usize)?
        }
    };
    rows.sort();
    Ok(rows)
}

fn bindings(s: &str) -> Result<Env, CliError> {
    parse_bindings(s).map_err(CliError::Input)
}

fn governing_of(src: &str) -> Result<Governing, CliError> {
    Ok(Governing::new("x", "y", parse_formula(src)?)?)
}

fn mode_of(config: &RunConfig) -> Result<Mode, CliError> {
    Ok(config.mode.parse::<Mode>()?)
}

fn check_inline(src: &str) -> Result<Report, CliError> {
    let j = parse_judgment(src, &Defs::default())?;
    let checker = conserv::kernel::Checker::new();
    Ok(match conserv::kernel::corpus::check_judgment(&checker, &j) {
        Ok(_) => Report::new(src, "check", "accept", "accepted"),
        Err(r) => Report::new(src, "check", "reject", r.to_string()),
    })
}

fn eval(src: &str, config: &RunConfig) -> Result<Report, CliError> {
    let t = parse_comb(src)?;
    Ok(match Machine::new(config.budget).eval(&t) {
        Ok(EvalOutcome::Value(v)) => Report::new(src, "eval", "value", v.to_string()),
        Ok(EvalOutcome::Diverged { steps_used }) => {
            Report::new(src, "eval", "out-of-budget", format!("{steps_used} steps"))
        }
        Err(e) => Report::new(src, "eval", "undefined", e.to_string()),
    })
}

fn translate_one(src: &str, config: &RunConfig) -> Result<Report, CliError> {
    let f = parse_formula(src)?;
    let mode = mode_of(config)?;
    let t = translate_checked(&f, mode)?;
    let ctx = ctx_of(&f);
    let names: Vec<String> = ctx.iter().map(|(n, _)| n.clone()).collect();
    let shown: Vec<String> =
        ctx.iter().enumerate().map(|(i, (n, ty))| format!("{n} : {}", show(ty, &names[..i]))).collect();
    let detail = format!("{} |- {} : {}", shown.join(", "), show(&t, &names), mode.target());
    Ok(Report::new(src, "translate", mode.to_string(), detail))
}

fn denote(src: &str, config: &RunConfig) -> Result<Report, CliError> {
    let j = parse_judgment(src, &Defs::default())?;
    let mut ctx = Vec::new();
    for item in &j.ctx {
        match item {
            CtxItem::Var(n, ty) => ctx.push((n.clone(), ty.clone())),
            CtxItem::Hint { .. } => return Err(CliError::Input("hints have no denotation".into())),
        }
    }
    let d = denote_judgment(&World::new(config.world), &ctx, Some(&j.term), &j.ty)?;
    let values: Vec<String> = d.values.iter().map(ToString::to_string).collect();
    let detail = format!(
        "points {}, sizes {:?}, level {}, values [{}], tracker {}, tracked {:?}",
        d.points,
        d.type_sizes,
        d.level,
        values.join(", "),
        d.tracker.map_or("none".to_string(), |t| t.to_string()),
        d.tracked
    );
    let verdict = format!("well-typed-{}", tri(d.well_typed));
    let failed = d.well_typed.is_false();
    Ok(Report::new(src, "denote", verdict, detail).failing(failed))
}

fn tri(t: conserv::Tri) -> &'static str {
    match t {
        conserv::Tri::True => "true",
        conserv::Tri::False => "false",
        conserv::Tri::Unknown => "unknown",
    }
}

fn verdict_name(v: &Verdict) -> String {
    match v.status() {
        Status::Unknown => "unknown".into(),
        s => format!("{s}-{}", tri(v.truth)),
    }
}

/// A harness row fails on disagreement, or when an expected truth value is
/// given and not met (unknown passes only for flagged entries).
fn judged(v: &Verdict, expect: Option<(bool, bool)>) -> bool {
    match (v.status(), expect) {
        (Status::Disagree, _) => true,
        (_, None) => false,
        (Status::Unknown, Some((_, flagged))) => !flagged,
        (Status::Agree, Some((want, _))) => v.truth != conserv::Tri::from_bool(want),
    }
}

fn realize_row(
    entry: &str,
    command: &str,
    f: &Formula,
    env: &Env,
    cutoff: u64,
    budget: u64,
    expect: Option<(bool, bool)>,
) -> Result<Report, CliError> {
    let s = check_relevant_soundness(f, env, cutoff, budget)?;
    let value = s.value.as_ref().map_or("undefined".to_string(), ToString::to_string);
    let detail = format!("r = {}; r x = {}; model {}, truth {}", s.realizer, value, tri(s.verdict.model), tri(s.verdict.truth));
    Ok(Report::new(entry, command, verdict_name(&s.verdict), detail).failing(judged(&s.verdict, expect)))
}

fn thm1_row(
    entry: &str,
    command: &str,
    f: &Formula,
    env: &Env,
    world: u64,
    expect: Option<(bool, bool)>,
) -> Result<Report, CliError> {
    let v = check_irrelevant_equiv(f, env, &World::new(world))?;
    let detail = format!("model {}, truth {}", tri(v.model), tri(v.truth));
    Ok(Report::new(entry, command, verdict_name(&v), detail).failing(judged(&v, expect)))
}

fn force_check(domain: u64, count: usize, seed: u64, governing: &str, size: usize) -> Result<Vec<Report>, CliError> {
    let forcing = Forcing::new("R", governing_of(governing)?);
    let poset = Poset::new(&forcing.governing, domain, size)?;
    let suite = meta_lemma_suite(count, domain, seed);
    suite
        .par_iter()
        .enumerate()
        .map(|(i, a)| {
            let r = check_on(&poset, &forcing, a)?;
            let entry = format!("suite:{i:03}");
            Ok(match r.counterexample {
                None => {
                    let counts: Vec<String> = r.instances.iter().map(|(k, n)| format!("{k} {n}")).collect();
                    Report::new(entry, "force-check", "pass", format!("{a}; {}", counts.join(", ")))
                }
                Some(c) => Report::new(entry, "force-check", "fail", c.to_string()).failing(true),
            })
        })
        .collect()
}

/// `.ctt` files under `path`, sorted; a file stands for itself.
fn manifest_files(path: &Path) -> Result<Vec<PathBuf>, CliError> {
    if path.is_file() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut out = Vec::new();
    for entry in std::fs::read_dir(path)? {
        let p = entry?.path();
        if p.is_dir() {
            out.extend(manifest_files(&p)?);
        } else if p.extension().is_some_and(|e| e == "ctt") {
            out.push(p);
        }
    }
    out.sort();
    Ok(out)
}

/// Work items carry source text so they can be parsed on any thread.
enum Job {
    /// The `index`-th judgment of a file's kernel part.
    Kernel { source: std::sync::Arc<String>, index: usize },
    Agree { line: usize, text: String },
    Realized { line: usize, text: String },
}

fn harness_entry(text: &str, line: usize, label: &str) -> Result<conserv::realize::Entry, CliError> {
    let mut entries = parse_entries(text).map_err(|e| CliError::Input(format!("{label}:{line}: {e}")))?;
    let mut e = entries.pop().ok_or_else(|| CliError::Input(format!("{label}:{line}: empty directive")))?;
    e.line = line;
    Ok(e)
}

fn run_manifests(path: &Path, config: &RunConfig) -> Result<Vec<Report>, CliError> {
    let mut jobs = Vec::new();
    for file in manifest_files(path)? {
        let src = std::fs::read_to_string(&file)?;
        let label = file.display().to_string();
        // harness directives are pulled out; everything else is for the kernel
        let mut kernel_src: Vec<String> = src.lines().map(str::to_string).collect();
        for (line, text) in logical_lines(&src) {
            let job = match (text.strip_prefix("assert-agree"), text.strip_prefix("assert-realized")) {
                (Some(r), _) => Job::Agree { line, text: r.to_string() },
                (_, Some(r)) => Job::Realized { line, text: r.to_string() },
                _ => continue,
            };
            kernel_src[line - 1].clear();
            jobs.push((label.clone(), job));
        }
        let source = kernel_src.join("\n");
        let count = parse_kernel(&source).map_err(|e| CliError::Input(format!("{label}: {e}")))?.entries.len();
        let source = std::sync::Arc::new(source);
        jobs.extend((0..count).map(|index| (label.clone(), Job::Kernel { source: source.clone(), index })));
    }
    jobs.par_iter()
        .map(|(label, job)| match job {
            Job::Kernel { source, index } => {
                let corpus = parse_kernel(source).map_err(|e| CliError::Input(format!("{label}: {e}")))?;
                let e = &corpus.entries[*index];
                let o = run_entry(e);
                let verdict = if o.verdict.is_ok() { "accept" } else { "reject" };
                Ok(Report::new(format!("{label}:{:05}", e.line), "check", verdict, o.detail).failing(!o.passed))
            }
            Job::Agree { line, text } => {
                let e = harness_entry(text, *line, label)?;
                let entry = format!("{label}:{line:05}");
                thm1_row(&entry, "thm1", &e.formula, &e.env, config.world, Some((e.expect, e.flagged)))
            }
            Job::Realized { line, text } => {
                let e = harness_entry(text, *line, label)?;
                let entry = format!("{label}:{line:05}");
                realize_row(&entry, "realize", &e.formula, &e.env, config.cutoff, config.budget, Some((e.expect, e.flagged)))
            }
        })
        .collect()
}

/// Render rows as text lines or a JSON array.
pub fn render(rows: &[Report], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(rows).expect("reports serialize") + "\n",
        Format::Text => rows.iter().map(|r| format!("{r}\n")).collect(),
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}\t{}", self.entry, self.command, self.verdict, self.detail)
    }
}

/// Render an error in the requested format.
pub fn render_error(command: &str, e: &CliError, format: Format) -> String {
    match format {
        Format::Json => {
            let v = serde_json::json!({ "command": command, "error": e.code(), "detail": e.to_string() });
            serde_json::to_string_pretty(&v).expect("errors serialize") + "\n"
        }
        Format::Text => format!("error[{}]: {e}\n", e.code()),
    }
}
