//! Standard codes: identity, arithmetic, combinatory pairs, and the
//! rec-based lifts of Cantor pairing.

use super::comb::Comb;
use super::lambda::{abstract_many, close, Open};

fn v(x: &str) -> Open {
    Open::var(x)
}

fn c(code: Comb) -> Open {
    Open::Const(code)
}

fn lam(xs: &[&str], body: Open) -> Comb {
    close(&abstract_many(xs, &body)).expect("library terms are closed")
}

/// `s k k`, the identity.
pub fn skk() -> Comb {
    Comb::apps(Comb::S, [Comb::K, Comb::K])
}

/// `add := λy. rec y (λi λr. suc r)`, so `add b c = b + c`.
pub fn add() -> Comb {
    let step = lam(&["i", "r"], Open::app(c(Comb::Suc), v("r")));
    lam(&["y"], Open::apps(c(Comb::Rec), [v("y"), c(step)]))
}

/// `mul := λy. rec 0 (λi λr. add r y)`, so `mul b c = b * c`.
pub fn mul() -> Comb {
    let step = abstract_many(&["i", "r"], &Open::apps(c(add()), [v("r"), v("y")]));
    lam(&["y"], Open::apps(c(Comb::Rec), [c(Comb::Num(0)), step]))
}

/// Combinatory pair `λa λb λf. f a b`.
pub fn cpair() -> Comb {
    lam(&["a", "b", "f"], Open::apps(v("f"), [v("a"), v("b")]))
}

/// First projection of a combinatory pair: `λp. p k`.
pub fn cfst() -> Comb {
    lam(&["p"], Open::app(v("p"), c(Comb::K)))
}

/// Second projection: `λp. p (k (s k k))`.
pub fn csnd() -> Comb {
    lam(&["p"], Open::app(v("p"), c(Comb::app(Comb::K, skk()))))
}

/// Combinatory pair of two codes, unevaluated.
pub fn pair_of(a: Comb, b: Comb) -> Comb {
    Comb::apps(cpair(), [a, b])
}

/// `pred := λn. rec 0 (λi λr. i) n`.
pub fn pred() -> Comb {
    let step = lam(&["i", "r"], v("i"));
    lam(&["n"], Open::apps(c(Comb::Rec), [c(Comb::Num(0)), c(step), v("n")]))
}

/// `ifz a z nz` forces the thunk `z` (when `a = 0`) or `nz` with argument 0.
pub fn ifz() -> Comb {
    let step = abstract_many(&["i", "r"], &v("nz"));
    lam(
        &["a", "z", "nz"],
        Open::apps(c(Comb::Rec), [v("z"), step, v("a"), c(Comb::Num(0))]),
    )
}

fn thunk(body: Open) -> Open {
    abstract_many(&["_d"], &body)
}

/// `half n = n / 2` by toggling a parity bit `n` times.
pub fn half() -> Comb {
    let st = || v("st");
    let q = || Open::app(c(cfst()), st());
    let parity = Open::app(c(csnd()), st());
    let step_body = Open::apps(
        c(ifz()),
        [
            parity,
            thunk(Open::apps(c(cpair()), [q(), c(Comb::Num(1))])),
            thunk(Open::apps(c(cpair()), [Open::app(c(Comb::Suc), q()), c(Comb::Num(0))])),
        ],
    );
    let step = abstract_many(&["i", "st"], &step_body);
    let start = c(pair_of(Comb::Num(0), Comb::Num(0)));
    lam(&["n"], Open::app(c(cfst()), Open::apps(c(Comb::Rec), [start, step, v("n")])))
}

/// Cantor pairing as a code: `λa λb. half((a+b)(a+b+1)) + b`.
pub fn num_pair() -> Comb {
    let w = || Open::apps(c(add()), [v("a"), v("b")]);
    let tri = Open::apps(c(mul()), [w(), Open::app(c(Comb::Suc), w())]);
    lam(&["a", "b"], Open::apps(c(add()), [Open::app(c(half()), tri), v("b")]))
}

/// `λn.` the combinatory pair `(a, b)` with `<a,b> = n`, found by walking
/// the diagonals: `(0,b) -> (b+1,0)` and `(a,b) -> (a-1,b+1)`.
pub fn num_unpair() -> Comb {
    let st = || v("st");
    let a = || Open::app(c(cfst()), st());
    let b = || Open::app(c(csnd()), st());
    let step_body = Open::apps(
        c(ifz()),
        [
            a(),
            thunk(Open::apps(c(cpair()), [Open::app(c(Comb::Suc), b()), c(Comb::Num(0))])),
            thunk(Open::apps(c(cpair()), [Open::app(c(pred()), a()), Open::app(c(Comb::Suc), b())])),
        ],
    );
    let step = abstract_many(&["i", "st"], &step_body);
    let start = c(pair_of(Comb::Num(0), Comb::Num(0)));
    lam(&["n"], Open::apps(c(Comb::Rec), [start, step, v("n")]))
}

/// First component of a Cantor-encoded pair.
pub fn num_fst() -> Comb {
    lam(&["n"], Open::app(c(cfst()), Open::app(c(num_unpair()), v("n"))))
}

/// Second component of a Cantor-encoded pair.
pub fn num_snd() -> Comb {
    lam(&["n"], Open::app(c(csnd()), Open::app(c(num_unpair()), v("n"))))
}

/// `λb.` the b-th entry of `table` (the last entry for larger `b`).
pub fn case_table(table: &[Comb]) -> Comb {
    assert!(!table.is_empty(), "case table needs an entry");
    if table.len() == 1 {
        return Comb::app(Comb::K, table[0].clone());
    }
    let rest = case_table(&table[1..]);
    let body = Open::apps(
        c(ifz()),
        [
            v("b"),
            thunk(c(table[0].clone())),
            thunk(Open::app(c(rest), Open::app(c(pred()), v("b")))),
        ],
    );
    lam(&["b"], body)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pca::machine::{eval, EvalOutcome};
    use crate::pca::pairing::{pair_u64, unpair_u64};

    fn run(t: Comb) -> Comb {
        match eval(&t, 10_000_000).unwrap() {
            EvalOutcome::Value(v) => v,
            d => panic!("{d:?}"),
        }
    }

    fn n(k: u64) -> Comb {
        Comb::Num(k)
    }

    #[test]
    fn add_and_mul_by_hand() {
        assert_eq!(run(Comb::apps(add(), [n(2), n(3)])), n(5));
        assert_eq!(run(Comb::apps(mul(), [n(2), n(3)])), n(6));
        assert_eq!(run(Comb::apps(mul(), [n(0), n(3)])), n(0));
    }

    #[test]
    fn arithmetic_matches_native_on_a_grid() {
        for a in 0..12 {
            for b in 0..12 {
                assert_eq!(run(Comb::apps(add(), [n(a), n(b)])), n(a + b));
                assert_eq!(run(Comb::apps(mul(), [n(a), n(b)])), n(a * b));
            }
        }
    }

    #[test]
    fn combinatory_pairs_project() {
        let p = pair_of(Comb::Suc, n(7));
        assert_eq!(run(Comb::app(cfst(), p.clone())), Comb::Suc);
        assert_eq!(run(Comb::app(csnd(), p)), n(7));
    }

    #[test]
    fn pred_half_and_ifz() {
        for k in 0..30 {
            assert_eq!(run(Comb::app(pred(), n(k))), n(k.saturating_sub(1)));
            assert_eq!(run(Comb::app(half(), n(k))), n(k / 2));
        }
        let pick = |a| run(Comb::apps(ifz(), [n(a), Comb::app(Comb::K, n(10)), Comb::app(Comb::K, n(20))]));
        assert_eq!(pick(0), n(10));
        assert_eq!(pick(3), n(20));
    }

    #[test]
    fn lifted_pairing_agrees_with_arithmetic() {
        for a in 0..12 {
            for b in 0..12 {
                assert_eq!(run(Comb::apps(num_pair(), [n(a), n(b)])), n(pair_u64(a, b).unwrap()));
            }
        }
        for k in 0..200 {
            let (a, b) = unpair_u64(k);
            assert_eq!(run(Comb::app(num_fst(), n(k))), n(a));
            assert_eq!(run(Comb::app(num_snd(), n(k))), n(b));
        }
    }

    #[test]
    fn case_tables_select() {
        let t = case_table(&[n(5), Comb::Suc, n(9)]);
        assert_eq!(run(Comb::app(t.clone(), n(0))), n(5));
        assert_eq!(run(Comb::app(t.clone(), n(1))), Comb::Suc);
        assert_eq!(run(Comb::app(t.clone(), n(2))), n(9));
        assert_eq!(run(Comb::app(t, n(7))), n(9));
    }
}
