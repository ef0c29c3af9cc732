mod common;

use std::collections::BTreeMap;

use common::{formulas, Shape};
use conserv::holog::{Env, Formula, Obj, Term, Var};
use conserv::model::World;
use conserv::realize::{
    check_irrelevant_equiv, check_relevant_soundness, choice_demo, g, g_inv, parse_corpus, Status, DEFAULT_STEPS,
    FIRST_ORDER_CORPUS, IRRELEVANT_CORPUS,
};
use conserv::Tri;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A direct evaluator for first-order formulas with quantifiers over
/// `0..=cutoff`, written against the syntax tree alone.
fn naive(f: &Formula, env: &BTreeMap<String, u64>, cutoff: u64) -> bool {
    fn term(t: &Term, env: &BTreeMap<String, u64>) -> u64 {
        match t {
            Term::Var(v) => env[&v.name],
            Term::Zero => 0,
            Term::Succ(a) => term(a, env) + 1,
            Term::Add(a, b) => term(a, env) + term(b, env),
            Term::Mul(a, b) => term(a, env) * term(b, env),
            other => panic!("not arithmetic: {other:?}"),
        }
    }
    let with = |v: &Var, n: u64| {
        let mut e = env.clone();
        e.insert(v.name.clone(), n);
        e
    };
    match f {
        Formula::Eq(a, b) => term(a, env) == term(b, env),
        Formula::Bot => false,
        Formula::Top => true,
        Formula::Or(a, b) => naive(a, env, cutoff) || naive(b, env, cutoff),
        Formula::And(a, b) => naive(a, env, cutoff) && naive(b, env, cutoff),
        Formula::Imp(a, b) => !naive(a, env, cutoff) || naive(b, env, cutoff),
        Formula::Exists(v, b) => (0..=cutoff).any(|n| naive(b, &with(v, n), cutoff)),
        Formula::Forall(v, b) => (0..=cutoff).all(|n| naive(b, &with(v, n), cutoff)),
        other => panic!("not first-order: {other:?}"),
    }
}

fn nat_env(env: &Env) -> BTreeMap<String, u64> {
    env.0.iter().map(|(v, o)| (v.name.clone(), o.as_nat().unwrap())).collect()
}

#[test]
fn first_order_corpus_expectations() {
    let entries = parse_corpus(FIRST_ORDER_CORPUS).unwrap();
    let (t, f) = entries.iter().fold((0, 0), |(t, f), e| if e.expect { (t + 1, f) } else { (t, f + 1) });
    assert!(t >= 30 && f >= 15, "{t} true and {f} false");
    for e in &entries {
        assert_eq!(naive(&e.formula, &nat_env(&e.env), 64), e.expect, "line {}: {}", e.line, e.formula);
    }
}

#[test]
fn canonical_realizers_are_sound_on_the_corpus() {
    for e in parse_corpus(FIRST_ORDER_CORPUS).unwrap() {
        let s = check_relevant_soundness(&e.formula, &e.env, 64, DEFAULT_STEPS).unwrap();
        let ok = s.verdict.status() == Status::Agree || (e.flagged && s.verdict.status() == Status::Unknown);
        assert!(ok, "line {}: {} gave {:?}", e.line, e.formula, s.verdict);
        assert_eq!(s.verdict.truth, Tri::from_bool(e.expect), "line {}", e.line);
    }
}

#[test]
fn canonical_realizers_are_sound_on_random_formulas() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut agree = 0;
    for f in formulas(40, 400, Shape::FirstOrder, 4) {
        let env = f.free_vars().into_iter().fold(Env::new(), |env, v| env.with(v, Obj::nat(rng.gen_range(0..5))));
        let s = check_relevant_soundness(&f, &env, 5, DEFAULT_STEPS).unwrap();
        assert_ne!(s.verdict.status(), Status::Disagree, "{f}: {:?}", s.verdict);
        assert_eq!(s.verdict.truth, Tri::from_bool(naive(&f, &nat_env(&env), 5)), "{f}");
        agree += (s.verdict.status() == Status::Agree) as usize;
    }
    assert!(agree >= 380, "only {agree} of 400 decided");
}

#[test]
fn irrelevant_translation_agrees_on_the_corpus() {
    let entries = parse_corpus(IRRELEVANT_CORPUS).unwrap();
    assert!(entries.len() >= 20);
    let world = World::new(3);
    for e in entries {
        let v = check_irrelevant_equiv(&e.formula, &e.env, &world).unwrap();
        assert_eq!(v.status(), Status::Agree, "line {}: {} gave {:?}", e.line, e.formula, v);
        assert_eq!(v.truth, Tri::from_bool(e.expect), "line {}", e.line);
    }
}

#[test]
fn g_round_trips() {
    let w = World::new(4);
    for n in 0..1000 {
        assert_eq!(g_inv(&w, 0, &g(&w, 0, &Obj::nat(n)).unwrap()).unwrap(), Obj::nat(n));
    }
    for mask in 0u32..32 {
        let x = Obj::nats((0..5).filter(|k| mask >> k & 1 == 1));
        assert_eq!(g_inv(&w, 1, &g(&w, 1, &x).unwrap()).unwrap(), x);
    }
    let w = World::new(1);
    let x = Obj::Set([Obj::nats([]), Obj::nats([0, 1])].into());
    assert_eq!(g_inv(&w, 2, &g(&w, 2, &x).unwrap()).unwrap(), x);
}

#[test]
fn choice_over_four_points_is_tracked() {
    let demo = choice_demo(4, 2_000, 10_000);
    assert_eq!(demo.checked, 256);
    assert!(demo.tracker.is_some(), "no tracker among {} candidates", demo.tried);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn larger_budgets_never_flip_a_verdict(i in 0usize..52, low in 20u64..400, extra in 1u64..4000) {
        let entries = parse_corpus(FIRST_ORDER_CORPUS).unwrap();
        let e = &entries[i % entries.len()];
        let small = check_relevant_soundness(&e.formula, &e.env, 8, low).unwrap().verdict.model;
        let large = check_relevant_soundness(&e.formula, &e.env, 8, low + extra).unwrap().verdict.model;
        prop_assert!(small == Tri::Unknown || small == large, "{}: {small:?} then {large:?}", e.formula);
    }
}
