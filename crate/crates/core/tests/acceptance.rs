//! The acceptance suite. Every criterion prints one `PASS` or `FAIL` line
//! straight to stdout, so the report survives output capture. The run as a
//! whole fails on any FAIL line except the known translation gap checked in
//! `translation_well_typed`.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use common::pca::{axioms, beta, body, oracle_matches_apply, query_free, value};
use common::{formulas, has_higher_exists, Shape};
use conserv::forcing::{check_on, meta_lemma_suite, Forcing, Governing, Poset};
use conserv::holog::Formula;
use conserv::kernel::corpus::{parse_corpus as parse_kernel, run_entry, Expect};
use conserv::kernel::{Checker, Sort, Term, RULES};
use conserv::model::{fin, nat_upto, parity, Per};
use conserv::pca::{eval_oracle, pair_u64, parse_comb, unpair_u64, Comb, EvalOutcome, FnOracle};
use conserv::realize::{
    check_irrelevant_equiv, check_relevant_soundness, choice_demo, parse_corpus, Status, DEFAULT_STEPS,
    FIRST_ORDER_CORPUS, IRRELEVANT_CORPUS,
};
use conserv::translate::{kernel_ctx, relevant_sort, translate, Mode};
use conserv::Tri;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const KERNEL_CORPUS: &str = include_str!("../corpus/kernel.ctt");

/// A criterion's result: the detail line, and whether it passed.
type Outcome = (bool, String);

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let (ok, detail) = f();
    let took = start.elapsed();
    match limit {
        Some(l) if took > l => (false, format!("{detail}; took {took:.2?}, limit {l:?}")),
        _ => (ok, format!("{detail}; {took:.2?}")),
    }
}

fn report(name: &str, (ok, detail): &Outcome) {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{} {name}: {detail}", if *ok { "PASS" } else { "FAIL" }).unwrap();
}

fn pca_axioms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut bad = Vec::new();
    for i in 0..10_000u64 {
        let (x, y, z) = (value(&mut rng), value(&mut rng), value(&mut rng));
        bad.extend(axioms(&x, &y, &z, i % 100, 100_000));
    }
    (bad.is_empty(), format!("10000 triples, {} failures {:?}", bad.len(), bad.first()))
}

fn beta_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let bad: Vec<String> =
        (0..1000).filter_map(|_| beta(&body(&mut rng, 4), &value(&mut rng), 100_000).err()).collect();
    (bad.is_empty(), format!("1000 pairs, {} failures {:?}", bad.len(), bad.first()))
}

fn pairing() -> Outcome {
    let mut bad = 0;
    for a in 0..512 {
        for b in 0..512 {
            bad += (pair_u64(a, b).map(unpair_u64) != Some((a, b))) as usize;
        }
    }
    for n in 0..10_000 {
        let (a, b) = unpair_u64(n);
        bad += (pair_u64(a, b) != Some(n)) as usize;
    }
    (bad == 0, format!("{bad} mismatches"))
}

fn kernel_corpus() -> Outcome {
    let corpus = parse_kernel(KERNEL_CORPUS).expect("corpus parses");
    let acc = corpus.entries.iter().filter(|e| matches!(e.expect, Expect::Accept(_))).count();
    let rej = corpus.entries.len() - acc;
    let wrong: Vec<usize> = corpus.entries.iter().filter(|e| !run_entry(e).passed).map(|e| e.line).collect();
    let annotated = |r: &str| {
        corpus.entries.iter().any(|e| match &e.expect {
            Expect::Accept(rs) => rs.iter().any(|x| x == r),
            Expect::Reject(x) => x == r,
        })
    };
    let missing: Vec<&str> = RULES.iter().copied().filter(|r| !annotated(r)).collect();
    let ok = acc >= 40 && rej >= 15 && wrong.is_empty() && missing.is_empty();
    (ok, format!("{acc} accepting, {rej} rejecting, wrong at lines {wrong:?}, unannotated rules {missing:?}"))
}

fn church_numerals() -> Outcome {
    let corpus = parse_kernel(KERNEL_CORPUS).expect("corpus parses");
    let find = |needle: &str| corpus.entries.iter().find(|e| e.source.contains(needle));
    let (Some(weak), Some(dep)) = (find("=> n C c f"), find("|- n (C n) c (f n)")) else {
        return (false, "Church entries missing from the corpus".into());
    };
    let weak_ok = matches!(weak.expect, Expect::Accept(_)) && run_entry(weak).passed;
    let dep_ok = matches!(dep.expect, Expect::Reject(_)) && run_entry(dep).passed;
    (weak_ok && dep_ok, format!("weak eliminator accepted: {weak_ok}, dependent motive rejected: {dep_ok}"))
}

fn checks_at(f: &Formula, mode: Mode, sort: Sort) -> bool {
    let (Ok(t), Ok(ctx)) = (translate(f, mode), kernel_ctx(f)) else { return false };
    Checker::new().check(&ctx, &t, &Term::Sort(sort)).is_ok()
}

/// Both translations of 100 generated formulas. The relevant one lands in
/// `Type`, not `Set`, exactly when a higher-sort `∃` sits outside every
/// antecedent; the second component says whether every failure is of that
/// kind and checks at `Type`.
fn translation_well_typed() -> (Outcome, bool) {
    let fs = formulas(12, 100, Shape::Full, 4);
    let prop = fs.iter().filter(|f| checks_at(f, Mode::Irrelevant, Sort::Prop)).count();
    let failed: Vec<&Formula> = fs.iter().filter(|f| !checks_at(f, Mode::Relevant, Sort::Set)).collect();
    let explained = failed
        .iter()
        .all(|f| has_higher_exists(f) && relevant_sort(f) == Sort::Type && checks_at(f, Mode::Relevant, Sort::Type));
    let ok = prop == 100 && failed.is_empty();
    let detail = format!(
        "irrelevant at Prop {prop}/100, relevant at Set {}/100 ({} with a higher-sort existential check at Type only)",
        100 - failed.len(),
        failed.len()
    );
    ((ok, detail), prop == 100 && explained)
}

fn irrelevant_equivalence() -> Outcome {
    let entries = parse_corpus(IRRELEVANT_CORPUS).expect("corpus parses");
    let world = conserv::model::World::new(3);
    let (mut agree, mut disagree, mut t, mut f) = (0, 0, 0, 0);
    for e in &entries {
        let v = check_irrelevant_equiv(&e.formula, &e.env, &world).expect("harness runs");
        match v.status() {
            Status::Agree => agree += 1,
            Status::Disagree => disagree += 1,
            Status::Unknown => {}
        }
        if v.truth == Tri::True {
            t += 1
        } else {
            f += 1
        }
    }
    let has = |p: &dyn Fn(&Formula) -> bool| entries.iter().any(|e| e.formula.has(p));
    let cases = has(&|f| matches!(f, Formula::Elem(..)))
        && has(&|f| matches!(f, Formula::Imp(..)))
        && has(&|f| matches!(f, Formula::Forall(..)));
    let ok = agree >= 20 && disagree == 0 && t > 0 && f > 0 && cases;
    (ok, format!("{agree} agree ({t} true, {f} false), {disagree} disagree, membership/implication/forall cases: {cases}"))
}

fn realizer_soundness() -> Outcome {
    let entries = parse_corpus(FIRST_ORDER_CORPUS).expect("corpus parses");
    let (mut t, mut f, mut disagree, mut stray) = (0, 0, 0, Vec::new());
    for e in &entries {
        let s = check_relevant_soundness(&e.formula, &e.env, 64, DEFAULT_STEPS).expect("harness runs");
        match s.verdict.status() {
            Status::Agree if e.expect => t += 1,
            Status::Agree => f += 1,
            Status::Disagree => disagree += 1,
            Status::Unknown if e.flagged => {}
            Status::Unknown => stray.push(e.line),
        }
    }
    let ok = t >= 30 && f >= 15 && disagree == 0 && stray.is_empty();
    (ok, format!("{t} true and {f} false agree, {disagree} disagree, unflagged unknowns at lines {stray:?}"))
}

fn choice() -> Outcome {
    let demo = choice_demo(4, 2_000, 10_000);
    let ok = demo.tracker.is_some();
    let found = demo.tracker.map(|c| c.to_string()).unwrap_or_else(|| "none".into());
    (ok, format!("{} instances, {} candidates tried, tracker {found}", demo.checked, demo.tried))
}

fn forcing_lemmas() -> Outcome {
    let forcing = Forcing::new("R", Governing::any());
    let poset = Poset::new(&forcing.governing, 3, 2).expect("poset builds");
    let suite = meta_lemma_suite(60, 3, 7);
    let mut bad = Vec::new();
    for a in &suite {
        let r = check_on(&poset, &forcing, a).expect("lemma check runs");
        if let Some(c) = r.counterexample {
            bad.push(c.to_string());
        }
    }
    let ok = suite.len() >= 50 && bad.is_empty();
    (ok, format!("{} formulas over {} conditions, counterexamples {bad:?}", suite.len(), poset.conditions.len()))
}

fn oracle_protocol() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut decided, mut bad) = (0, Vec::new());
    for i in 0..1000u64 {
        let (program, g) = query_free(&mut rng);
        match oracle_matches_apply(&program, &g, i % 20, 100_000) {
            Ok(d) => decided += d as usize,
            Err(e) => bad.push(e),
        }
    }
    // Ask at 5, then return whatever the oracle said.
    let two_round = parse_comb(r"\t. ifz t (k 20) (\d. npair 1 (nsnd t))").expect("program parses");
    let f = FnOracle(|x| (x == 5).then_some(9));
    let traced = eval_oracle(&two_round, 0, &f, 1_000_000);
    let traced_ok = traced == Ok(EvalOutcome::Value(Comb::Num(9)));
    let ok = bad.is_empty() && decided >= 900 && traced_ok;
    (ok, format!("{decided}/1000 decided, {} mismatches, two-round example gives {traced:?}", bad.len()))
}

fn per_laws() -> Vec<String> {
    let mut pers: Vec<(String, Per)> = (0..8).map(|n| (format!("fin {n}"), fin(n))).collect();
    pers.push(("parity".into(), parity(64)));
    pers.push(("nat".into(), nat_upto(64)));
    pers.into_iter().filter(|(_, r)| r.law_violation().is_some()).map(|(n, _)| n).collect()
}

fn model_invariants() -> Outcome {
    let laws = per_laws();
    let b = common::model::b();
    let constructions = common::model::corpus();
    let unrealized: Vec<&str> =
        constructions.iter().filter(|(_, a, _)| a.unrealized(&b).is_some()).map(|(n, ..)| n.as_str()).collect();
    let levels: Vec<&str> =
        constructions.iter().filter(|(_, a, l)| a.level != *l).map(|(n, ..)| n.as_str()).collect();
    let ok = laws.is_empty() && unrealized.is_empty() && levels.is_empty();
    let detail = format!(
        "{} constructions; PER law violations {laws:?}, unrealized {unrealized:?}, wrong levels {levels:?}",
        constructions.len()
    );
    (ok, detail)
}

fn preservation() -> Outcome {
    let bad = common::model::preservation_failures();
    (bad.is_empty(), format!("no isomorphism for {bad:?}"))
}

#[test]
fn acceptance() {
    let secs = |s| Some(Duration::from_secs(s));
    let (translation, translation_explained) = translation_well_typed();
    let rows: Vec<(&str, Outcome)> = vec![
        ("pca axioms", timed(secs(10), pca_axioms)),
        ("bracket abstraction beta law", timed(None, beta_law)),
        ("pairing bijection", timed(secs(1), pairing)),
        ("kernel golden corpus", timed(secs(5), kernel_corpus)),
        ("church numerals", timed(None, church_numerals)),
        ("translation well-typedness", translation),
        ("irrelevant equivalence harness", timed(None, irrelevant_equivalence)),
        ("realizer soundness harness", timed(secs(60), realizer_soundness)),
        ("choice instance", timed(None, choice)),
        ("forcing meta-lemmas", timed(secs(60), forcing_lemmas)),
        ("oracle protocol", timed(None, oracle_protocol)),
        ("model invariants", timed(None, model_invariants)),
        ("preservation", timed(None, preservation)),
    ];
    for (name, outcome) in &rows {
        report(name, outcome);
    }
    let unexpected: Vec<&str> = rows
        .iter()
        .filter(|(name, (ok, _))| !ok && !(*name == "translation well-typedness" && translation_explained))
        .map(|(name, _)| *name)
        .collect();
    assert!(unexpected.is_empty(), "failing criteria: {unexpected:?}");
}
