mod common;

use common::model::*;
use conserv::kernel::{parse_term, Term};
use conserv::model::*;
use conserv::pca::{Comb, EvalOutcome, Machine};
use conserv::Tri;
use proptest::prelude::*;

/// `code k`, run directly on the machine.
fn run(code: &Comb, k: u64) -> Option<u64> {
    match Machine::new(10_000).apply(code, &Comb::Num(k)) {
        Ok(EvalOutcome::Value(v)) => v.as_num(),
        _ => None,
    }
}

#[test]
fn per_laws_on_finite_cases() {
    let mut pers: Vec<Per> = (0..8).map(fin).collect();
    pers.push(parity(64));
    pers.push(nat_upto(64));
    for r in &pers {
        assert!(r.law_violation().is_none(), "{r:?}");
    }
    // the diagonal relations against their definitions
    for n in 0..6 {
        for i in 0..8 {
            for j in 0..8 {
                let want = i == j && i < n;
                assert_eq!(fin(n).related(&Comb::Num(i), &Comb::Num(j)).is_true(), want);
            }
        }
    }
    assert_eq!(nat().quotient().len() as u64, NAT_WINDOW + 1);
}

#[test]
fn embeddings() {
    let full = embed_subsing_to_per(Subsingleton::new(Tri::True));
    let empty = embed_subsing_to_per(Subsingleton::new(Tri::False));
    for a in full.window() {
        for c in full.window() {
            assert!(full.related(a, c).is_true());
            assert!(empty.related(a, c).is_false());
        }
    }
    let f2 = fin_asm(2);
    assert_eq!(f2.elements(), &[class(0), class(1)]);
    for k in 0..2 {
        for a in 0..3 {
            assert_eq!(f2.realizes(&Comb::Num(a), &class(k), &b()).is_true(), a == k);
        }
    }
    let star = nabla("point", SemSet::finite(0, vec![Sem::star()]));
    for n in 0..20 {
        assert!(star.realizes(&Comb::Num(n), &Sem::star(), &b()).is_true());
    }
}

#[test]
fn sigma_matches_enumeration() {
    let s = sigma(&fin_asm(2), &|_| Ok(fin_asm(3)), &b()).unwrap();
    let mut want = Vec::new();
    for i in 0..2 {
        for j in 0..3 {
            want.push(Sem::pair(class(i), class(j)));
        }
    }
    let mut got = s.elements().to_vec();
    got.sort();
    want.sort();
    assert_eq!(got, want);
    for x in s.elements() {
        let r = s.realizer(x, &b()).expect("pair realizer");
        let (i, j) = x.split().unwrap();
        let fst = Machine::new(1000).apply(&conserv::pca::library::cfst(), &r).unwrap();
        let snd = Machine::new(1000).apply(&conserv::pca::library::csnd(), &r).unwrap();
        assert_eq!(fst.value().and_then(Comb::as_num), Some(num_of(i)));
        assert_eq!(snd.value().and_then(Comb::as_num), Some(num_of(j)));
    }
}

#[test]
fn pi_matches_set_functions_and_small_codes() {
    let p = pi(&fin_asm(2), &|_| Ok(fin_asm(3)), &b()).unwrap();
    assert_eq!(p.elements().len(), 9);
    // every set-function appears
    for f0 in 0..3 {
        for f1 in 0..3 {
            let g = Sem::Fun([(class(0), class(f0)), (class(1), class(f1))].into());
            assert!(p.elements().contains(&g));
            // the Π clause agrees with running small codes directly
            for code in 0..300u64 {
                let c = Comb::from_code_u64(code);
                if !c.is_value() {
                    continue;
                }
                let direct = run(&c, 0) == Some(f0) && run(&c, 1) == Some(f1);
                assert_eq!(p.realizes(&c, &g, &b()).is_true(), direct, "code {code}");
            }
        }
    }
    let empty = pi(&fin_asm(0), &|_| Ok(fin_asm(3)), &b()).unwrap();
    assert_eq!(empty.elements(), &[Sem::Fun(Default::default())]);
    for c in [Comb::K, Comb::S, Comb::Num(5)] {
        assert!(empty.realizes(&c, &empty.elements()[0], &b()).is_true());
    }
}

#[test]
fn w_types() {
    let leaf = wtype(&fin_asm(1), &|_| Ok(fin_asm(0)), 3, &b()).unwrap();
    assert_eq!(leaf.elements().len(), 1);
    assert!(is_wellfounded_tree(&leaf.elements()[0], &[class(0)], &|_| Vec::new()));
    // unary/nullary labels: the naturals below the height bound
    let edges = |x: &Sem| if num_of(x) == 1 { vec![class(0)] } else { Vec::new() };
    let nats = wtype(&fin_asm(2), &|x| Ok(fin_asm(num_of(x))), 3, &b()).unwrap();
    assert_eq!(nats.elements().len(), 4);
    for t in nats.elements() {
        assert!(is_wellfounded_tree(t, &[class(0), class(1)], &edges), "{t}");
        assert!(nats.realizer(t, &b()).is_some());
    }
    // a path set missing a required child is not a tree
    let broken = Sem::Tree([vec![class(1)]].into());
    assert!(!is_wellfounded_tree(&broken, &[class(0), class(1)], &edges));
}

#[test]
fn quotients_and_subsingletons() {
    let q = quot(
        &fin_asm(4),
        &|x, y| Ok(subsing(num_of(x) % 2 == num_of(y) % 2)),
        &b(),
    )
    .unwrap();
    assert_eq!(q.elements().len(), 2);
    let odd = q.elements().iter().find(|c| c.as_set().unwrap().contains(&class(1))).unwrap();
    assert!(q.realizes(&Comb::Num(1), odd, &b()).is_true());
    assert!(q.realizes(&Comb::Num(3), odd, &b()).is_true());
    assert!(q.realizes(&Comb::Num(2), odd, &b()).is_false());
    assert!(subsing_eq(&class(3), &class(3)).inhabited.is_true());
    assert!(trunc(&fin_asm(0)).inhabited.is_false());
}

#[test]
fn realizers_exist_and_levels_add_up() {
    for (name, a, level) in corpus() {
        assert!(a.unrealized(&b()).is_none(), "{name}");
        assert_eq!(a.level, level, "{name}");
    }
}

#[test]
fn preservation_on_micro_suite() {
    let bad = preservation_failures();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn morphisms_are_tracked() {
    let f3 = fin_asm(3);
    let succ_mod = find_tracker(&f3, &f3, |x| Some(class((num_of(x) + 1) % 3)), &b()).expect("tracker");
    assert!(succ_mod.tracks(&f3, &f3, &b()).is_true());
    for k in 0..3 {
        assert_eq!(run(&succ_mod.tracker, k), Some((k + 1) % 3));
    }
    let wrong = Morphism::new(conserv::pca::library::skk(), |x| Some(class((num_of(x) + 1) % 3)));
    assert!(wrong.tracks(&f3, &f3, &b()).is_false());
}

fn term(src: &str) -> Term {
    parse_term(src, &Default::default()).unwrap()
}

#[test]
fn denotations() {
    let w = World::new(6);
    let n = denote_judgment(&w, &[], None, &Term::Nat).unwrap();
    assert_eq!(n.type_sizes, vec![7]);
    let zero = denote_judgment(&w, &[], Some(&Term::Zero), &Term::Nat).unwrap();
    assert_eq!(zero.values, vec![class(0)]);
    assert!(zero.tracked.is_true());
    let ctx = vec![("x".to_string(), Term::Nat)];
    let s = denote_judgment(&w, &ctx, Some(&Term::Succ(Term::Var(0).into())), &Term::Nat).unwrap();
    assert_eq!(s.values[3], class(4));
    assert!(s.tracked.is_true());
    let prop = denote_judgment(&w, &[], None, &Term::Sort(conserv::kernel::Sort::Prop)).unwrap();
    assert_eq!(prop.type_sizes, vec![2]);
    assert!(matches!(
        denote_judgment(&w, &[], None, &Term::Sort(conserv::kernel::Sort::Type)),
        Err(ModelError::Unsupported(_))
    ));
}

#[test]
fn propositions_denote_their_truth() {
    let w = World::new(4);
    for (src, truth) in [
        ("Id Nat 0 0", true),
        ("Id Nat 0 (S 0)", false),
        ("Pi (n : Nat), Id Nat n n", true),
        ("Trunc (Sig (n : Nat), Id Nat (S n) 3)", true),
        ("Trunc (Sig (n : Nat), Id Nat (S n) 0)", false),
        ("Trunc (Fin 0) -> Id Nat 0 1", true),
    ] {
        let d = denote_judgment(&w, &[], None, &term(src)).unwrap();
        assert_eq!(d.type_sizes, vec![truth as usize], "{src}");
    }
}

proptest! {
    #[test]
    fn per_laws_on_random_triples(n in 0u64..10, i in 0u64..12, j in 0u64..12, k in 0u64..12) {
        for r in [fin(n), parity(11), nat_upto(11)] {
            let (a, c, e) = (Comb::Num(i), Comb::Num(j), Comb::Num(k));
            if r.related(&a, &c).is_true() {
                prop_assert!(r.related(&c, &a).is_true());
                if r.related(&c, &e).is_true() {
                    prop_assert!(r.related(&a, &e).is_true());
                }
            }
        }
    }

    #[test]
    fn finite_constructions_count_and_level(n in 0u64..4, m in 0u64..4) {
        let s = sigma(&fin_asm(n), &|_| Ok(fin_asm(m)), &b()).unwrap();
        prop_assert_eq!(s.elements().len() as u64, n * m);
        prop_assert_eq!(s.level, 1);
        let p = pi(&fin_asm(n), &|_| Ok(fin_asm(m)), &b()).unwrap();
        prop_assert_eq!(p.elements().len() as u64, m.pow(n as u32));
        prop_assert_eq!(p.level, 2);
        prop_assert!(p.unrealized(&b()).is_none());
    }
}
