//! Golden-file judgments. One directive per line; indented lines continue
//! the previous one and `#` starts a comment line.
//!
//! ```text
//! def two := fun (C : Prop) (c : C) (f : C -> C) => f (f c)
//! assert-type [Pi-I, Pi-E] |- two : Pi (C : Prop), C -> (C -> C) -> C
//! assert-fail [axiom_P] |- Prop : Prop
//! ```

use std::collections::BTreeSet;

use super::check::{Checker, RULES};
use super::context::Ctx;
use super::parse::{parse_judgment, parse_term, CtxItem, Defs, Judgment};
use super::term::{Sort, Term};
use super::{KernelError, Rejection};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expect {
    /// Accepted, and every listed rule fires while checking.
    Accept(Vec<String>),
    /// Rejected by the named rule.
    Reject(String),
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub line: usize,
    pub source: String,
    pub expect: Expect,
    pub judgment: Judgment,
}

#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub defs: Defs,
    pub entries: Vec<Entry>,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub line: usize,
    pub passed: bool,
    pub verdict: Result<(), Rejection>,
    pub fired: BTreeSet<&'static str>,
    pub detail: String,
}

/// Non-blank, non-comment lines with their 1-based line numbers, indented
/// lines folded into the previous one.
pub fn logical_lines(src: &str) -> Vec<(usize, String)> {
    let mut out: Vec<(usize, String)> = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if raw.starts_with(char::is_whitespace) {
            if let Some(last) = out.last_mut() {
                last.1.push(' ');
                last.1.push_str(trimmed);
                continue;
            }
        }
        out.push((i + 1, trimmed.to_string()));
    }
    out
}

fn at_line(e: KernelError, line: usize) -> KernelError {
    match e {
        KernelError::Parse { col, msg, .. } => KernelError::Parse { line, col, msg },
        other => other,
    }
}

fn rules_list(rest: &str, line: usize) -> Result<(Vec<String>, &str), KernelError> {
    let bad = |msg: &str| KernelError::Parse { line, col: 1, msg: msg.to_string() };
    let rest = rest.trim_start().strip_prefix('[').ok_or_else(|| bad("expected `[rules]`"))?;
    let close = rest.find(']').ok_or_else(|| bad("unterminated rule list"))?;
    let rules: Vec<String> =
        rest[..close].split(',').map(|r| r.trim().to_string()).filter(|r| !r.is_empty()).collect();
    if let Some(r) = rules.iter().find(|r| !RULES.contains(&r.as_str())) {
        return Err(bad(&format!("unknown rule `{r}`")));
    }
    Ok((rules, &rest[close + 1..]))
}

pub fn parse_corpus(src: &str) -> Result<Corpus, KernelError> {
    let mut corpus = Corpus::default();
    for (line, text) in logical_lines(src) {
        if let Some(rest) = text.strip_prefix("def ") {
            let (name, body) = rest
                .split_once(":=")
                .ok_or(KernelError::Parse { line, col: 1, msg: "expected `def name := term`".into() })?;
            let t = parse_term(body, &corpus.defs).map_err(|e| at_line(e, line))?;
            corpus.defs.insert(name.trim().to_string(), t);
            continue;
        }
        let (expect, rest) = if let Some(rest) = text.strip_prefix("assert-type") {
            let (rules, rest) = rules_list(rest, line)?;
            (Expect::Accept(rules), rest)
        } else if let Some(rest) = text.strip_prefix("assert-fail") {
            let (rules, rest) = rules_list(rest, line)?;
            if rules.len() != 1 {
                return Err(KernelError::Parse { line, col: 1, msg: "assert-fail names exactly one rule".into() });
            }
            (Expect::Reject(rules[0].clone()), rest)
        } else {
            return Err(KernelError::Parse { line, col: 1, msg: format!("unknown directive `{text}`") });
        };
        let judgment = parse_judgment(rest, &corpus.defs).map_err(|e| at_line(e, line))?;
        corpus.entries.push(Entry { line, source: text.clone(), expect, judgment });
    }
    Ok(corpus)
}

/// Build the context of a judgment, then check its term.
pub fn check_judgment(checker: &Checker, j: &Judgment) -> Result<Ctx, Rejection> {
    let ctx = build_ctx(checker, &j.ctx)?;
    if j.ty != Term::Sort(Sort::Type) {
        checker.sort_of(&ctx, &j.ty, "convers")?;
    }
    checker.check(&ctx, &j.term, &j.ty)?;
    Ok(ctx)
}

pub fn build_ctx(checker: &Checker, items: &[CtxItem]) -> Result<Ctx, Rejection> {
    let mut ctx = Ctx::new();
    for item in items {
        ctx = match item {
            CtxItem::Var(n, ty) => checker.declare(&ctx, n, ty)?,
            CtxItem::Hint { lhs, rhs, ty, proof } => checker.declare_hint(&ctx, lhs, rhs, ty, proof)?,
        };
    }
    Ok(ctx)
}

pub fn run_entry(e: &Entry) -> Outcome {
    let checker = Checker::new();
    let verdict = check_judgment(&checker, &e.judgment).map(|_| ());
    let fired = checker.rules_used();
    let (passed, detail) = match (&e.expect, &verdict) {
        (Expect::Accept(rules), Ok(())) => {
            let missing: Vec<&String> = rules.iter().filter(|r| !fired.contains(r.as_str())).collect();
            if missing.is_empty() {
                (true, "accepted".to_string())
            } else {
                (false, format!("accepted but rules did not fire: {missing:?}"))
            }
        }
        (Expect::Accept(_), Err(r)) => (false, format!("rejected: {r}")),
        (Expect::Reject(rule), Err(r)) if *rule == r.rule => (true, format!("rejected: {r}")),
        (Expect::Reject(rule), Err(r)) => (false, format!("rejected by {} instead of {rule}: {r}", r.rule)),
        (Expect::Reject(rule), Ok(())) => (false, format!("accepted, expected rejection by {rule}")),
    };
    Outcome { line: e.line, passed, verdict, fired, detail }
}
