use conserv::kernel::corpus::{parse_corpus, run_entry, Expect};

const CORPUS: &str = include_str!("../corpus/kernel.ctt");

#[test]
fn golden_verdicts() {
    let corpus = parse_corpus(CORPUS).expect("corpus parses");
    let mut failures = Vec::new();
    for e in &corpus.entries {
        let o = run_entry(e);
        if !o.passed {
            failures.push(format!("line {}: {}\n    {}", e.line, o.detail, e.source));
        }
    }
    assert!(failures.is_empty(), "{} failures:\n{}", failures.len(), failures.join("\n"));
}

#[test]
fn corpus_size() {
    let corpus = parse_corpus(CORPUS).unwrap();
    let acc = corpus.entries.iter().filter(|e| matches!(e.expect, Expect::Accept(_))).count();
    let rej = corpus.entries.len() - acc;
    assert!(acc >= 40 && rej >= 15, "{acc} accepting, {rej} rejecting");
}

use std::collections::BTreeSet;

use conserv::kernel::corpus::{build_ctx, check_judgment, Entry};
use conserv::kernel::{normalize, step, Checker, Sort, Term, RULES};

fn accepted(corpus: &conserv::kernel::corpus::Corpus) -> Vec<&Entry> {
    corpus.entries.iter().filter(|e| matches!(e.expect, Expect::Accept(_))).collect()
}

#[test]
fn every_rule_is_annotated_and_fires() {
    let corpus = parse_corpus(CORPUS).unwrap();
    let mut annotated = BTreeSet::new();
    let mut fired = BTreeSet::new();
    for e in &corpus.entries {
        match &e.expect {
            Expect::Accept(rs) => annotated.extend(rs.iter().cloned()),
            Expect::Reject(r) => {
                annotated.insert(r.clone());
            }
        }
        fired.extend(run_entry(e).fired);
    }
    let missing: Vec<_> = RULES.iter().filter(|r| !annotated.contains(**r)).collect();
    assert!(missing.is_empty(), "rules without an annotation: {missing:?}");
    let silent: Vec<_> = RULES.iter().filter(|r| !fired.contains(**r)).collect();
    assert!(silent.is_empty(), "rules that never fired: {silent:?}");
}

/// Reducts of accepted terms keep their type. Conversion hints that come
/// from identity-typed λ-binders disappear once those binders are reduced
/// away, so entries relying on them are reported separately.
#[test]
fn subject_reduction() {
    let corpus = parse_corpus(CORPUS).unwrap();
    let mut checked = 0;
    let mut broken = Vec::new();
    for e in accepted(&corpus) {
        let ch = Checker::new();
        let ctx = check_judgment(&ch, &e.judgment).expect("accepted entry");
        let uses_reflection = ch.rules_used().contains("reflection");
        let mut t = e.judgment.term.clone();
        for _ in 0..20 {
            let Some(next) = step(&t) else { break };
            t = next;
            checked += 1;
            if let Err(r) = Checker::new().check(&ctx, &t, &e.judgment.ty) {
                if !uses_reflection {
                    broken.push(format!("line {}: {r}", e.line));
                }
                break;
            }
        }
        let mut ty = e.judgment.ty.clone();
        for _ in 0..20 {
            let Some(next) = step(&ty) else { break };
            ty = next;
            checked += 1;
            if let Err(r) = Checker::new().check(&ctx, &e.judgment.term, &ty) {
                if !uses_reflection {
                    broken.push(format!("line {} (type reduct): {r}", e.line));
                }
                break;
            }
        }
    }
    assert!(checked > 50, "only {checked} reducts examined");
    assert!(broken.is_empty(), "{}", broken.join("\n"));
}

#[test]
fn cumulativity_on_corpus_types() {
    let corpus = parse_corpus(CORPUS).unwrap();
    let sorts = [Sort::Prop, Sort::Set, Sort::Type];
    let mut seen = 0;
    for e in accepted(&corpus) {
        let ch = Checker::new();
        let ctx = build_ctx(&ch, &e.judgment.ctx).unwrap();
        let ty = &e.judgment.ty;
        let ok: Vec<bool> = sorts.iter().map(|s| ch.check(&ctx, ty, &Term::Sort(*s)).is_ok()).collect();
        if ok[0] {
            assert!(ok[1], "line {}: Prop but not Set", e.line);
        }
        if ok[1] {
            assert!(ok[2], "line {}: Set but not Type", e.line);
        }
        seen += ok[0] as usize;
    }
    assert!(seen > 10);
}

#[test]
fn conversion_laws_on_corpus() {
    let corpus = parse_corpus(CORPUS).unwrap();
    for e in accepted(&corpus) {
        let ch = Checker::new();
        let ctx = build_ctx(&ch, &e.judgment.ctx).unwrap();
        let t0 = e.judgment.term.clone();
        let t1 = step(&t0).unwrap_or_else(|| t0.clone());
        let t2 = normalize(&t1, 40).unwrap_or_else(|| t1.clone());
        for t in [&t0, &t1, &t2] {
            assert!(ch.conv(&ctx, t, t), "line {}: not reflexive", e.line);
        }
        for (a, b) in [(&t0, &t1), (&t1, &t2), (&t0, &t2)] {
            let (x, y) = (ch.conv(&ctx, a, b), ch.conv(&ctx, b, a));
            assert_eq!(x, y, "line {}: asymmetric", e.line);
            assert!(x, "line {}: a term is not convertible with its reduct", e.line);
        }
        let ty = &e.judgment.ty;
        if let Some(n) = normalize(ty, 40) {
            assert!(ch.conv(&ctx, ty, &n) && ch.conv(&ctx, &n, ty), "line {}: type vs its normal form", e.line);
        }
    }
}
