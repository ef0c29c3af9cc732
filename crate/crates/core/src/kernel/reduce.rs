//! Weak-head reduction, the one-step reducer, and the structural view of
//! terms shared by conversion.

use std::rc::Rc;

use super::term::{occurs, shift, subst1, Name, Term};

/// Weak-head normal form under β and the ι rules of every eliminator.
pub fn whnf(t: &Term) -> Term {
    whnf_with(t, &|_| {})
}

/// As [`whnf`], reporting the name of each reduction rule that fires.
pub fn whnf_with(t: &Term, note: &dyn Fn(&'static str)) -> Term {
    let mut cur = t.clone();
    loop {
        match &cur {
            Term::App(f, a) => {
                let hf = whnf_with(f, note);
                if let Term::Lam(_, _, body) = &hf {
                    note("Pi-beta");
                    cur = subst1(body, a);
                    continue;
                }
                match iota(&hf, a, note) {
                    Some(r) => cur = r,
                    None => return Term::App(Rc::new(hf), a.clone()),
                }
            }
            Term::Ann(a, _) => cur = (**a).clone(),
            Term::Transport(_, _, c, e, u) => {
                if !occurs(c, 0) || matches!(whnf_with(e, note), Term::Refl(_)) {
                    note("transport");
                    cur = (**u).clone();
                } else {
                    return cur;
                }
            }
            _ => return cur,
        }
    }
}

/// Contract `f a` when `f` is an eliminator spine expecting `a` as its
/// scrutinee and `a` reduces to a constructor.
fn iota(f: &Term, a: &Term, note: &dyn Fn(&'static str)) -> Option<Term> {
    let (head, args) = f.spine();
    let arity = match head {
        Term::IndEq(..) => 2,
        Term::IndNat(..) | Term::IndFin(..) | Term::IndSigma(..) | Term::IndW(..) | Term::IndTrunc(..) | Term::IndQuot(..) => 0,
        _ => return None,
    };
    if args.len() != arity {
        return None;
    }
    let scrut = whnf_with(a, note);
    match (head, &scrut) {
        (Term::IndNat(..), Term::Zero) => {
            let Term::IndNat(_, _, z, _) = head else { unreachable!() };
            note("Nat-beta0");
            Some((**z).clone())
        }
        (Term::IndNat(_, _, _, s), Term::Succ(n)) => {
            note("Nat-betaS");
            let rec = Term::app(head.clone(), (**n).clone());
            Some(Term::apps((**s).clone(), [(**n).clone(), rec]))
        }
        (Term::IndFin(size, _, _, cs), Term::FinEl(k, _)) if *k < *size && (*k as usize) < cs.len() => {
            note("Fin-beta");
            Some(cs[*k as usize].clone())
        }
        (Term::IndSigma(_, _, _, g), Term::Pair(x, y)) => {
            note("Sig-beta");
            Some(Term::apps((**g).clone(), [(**x).clone(), (**y).clone()]))
        }
        (Term::IndW(ty, _, _, g), Term::Tree(x, d)) => {
            let Term::W(_, _, b) = whnf_with(ty, note) else { return None };
            note("W-beta");
            let dom = subst1(&b, x);
            let rec = Term::lam(
                "b",
                dom,
                Term::app(shift(head, 1), Term::app(shift(d, 1), Term::Var(0))),
            );
            Some(Term::apps((**g).clone(), [(**x).clone(), (**d).clone(), rec]))
        }
        (Term::IndEq(_, _, _, g), Term::Refl(_)) => {
            note("Id-beta");
            Some(Term::app((**g).clone(), args[0].clone()))
        }
        (Term::IndTrunc(_, _, _, g, _), Term::TruncIn(x)) => {
            note("Trunc-beta");
            Some(Term::app((**g).clone(), (**x).clone()))
        }
        (Term::IndQuot(_, _, _, g, _), Term::Class(_, x)) => {
            note("Quot-beta");
            Some(Term::app((**g).clone(), (**x).clone()))
        }
        _ => None,
    }
}

/// A redex contracted at the root, if any. Unlike [`whnf`] this does not
/// reduce the scrutinee first.
fn root_step(t: &Term) -> Option<Term> {
    match t {
        Term::App(f, a) => {
            if let Term::Lam(_, _, body) = &**f {
                return Some(subst1(body, a));
            }
            let (head, _) = f.spine();
            let is_ctor = matches!(
                &**a,
                Term::Zero | Term::Succ(_) | Term::FinEl(..) | Term::Pair(..) | Term::Tree(..) | Term::Refl(_) | Term::TruncIn(_) | Term::Class(..)
            );
            let ok_head = match head {
                // W-β needs the W-type in view; accept only a literal one.
                Term::IndW(ty, ..) => matches!(&**ty, Term::W(..)),
                _ => true,
            };
            if is_ctor && ok_head {
                iota(f, a, &|_| {})
            } else {
                None
            }
        }
        Term::Ann(a, _) => Some((**a).clone()),
        Term::Transport(_, _, c, e, u) if !occurs(c, 0) || matches!(&**e, Term::Refl(_)) => Some((**u).clone()),
        _ => None,
    }
}

/// One leftmost-outermost reduction step.
pub fn step(t: &Term) -> Option<Term> {
    if let Some(r) = root_step(t) {
        return Some(r);
    }
    let mut kids: Vec<Term> = parts(t).into_iter().map(|p| p.body).collect();
    for i in 0..kids.len() {
        if let Some(k) = step(&kids[i]) {
            kids[i] = k;
            return Some(rebuild(t, kids));
        }
    }
    None
}

/// Normalize by repeated steps, giving up after `limit` of them.
pub fn normalize(t: &Term, limit: usize) -> Option<Term> {
    let mut cur = t.clone();
    for _ in 0..limit {
        match step(&cur) {
            Some(n) => cur = n,
            None => return Some(cur),
        }
    }
    None
}

/// An immediate subterm together with the binders it sits under. Each
/// binder type lives in the context extended by the binders before it.
#[derive(Clone, Debug)]
pub struct Part {
    pub binders: Vec<(Name, Term)>,
    pub body: Term,
}

fn plain(t: &Term) -> Part {
    Part { binders: Vec::new(), body: t.clone() }
}

fn bound(binders: Vec<(Name, Term)>, t: &Term) -> Part {
    Part { binders, body: t.clone() }
}

pub fn parts(t: &Term) -> Vec<Part> {
    match t {
        Term::Sort(_) | Term::Var(_) | Term::Fin(_) | Term::FinEl(..) | Term::Nat | Term::Zero | Term::Propext => vec![],
        Term::Pi(n, a, b) | Term::Lam(n, a, b) | Term::Sigma(n, a, b) | Term::W(n, a, b) => {
            vec![plain(a), bound(vec![(n.clone(), (**a).clone())], b)]
        }
        Term::App(a, b) | Term::Pair(a, b) | Term::Tree(a, b) | Term::Class(a, b) | Term::Ann(a, b) => {
            vec![plain(a), plain(b)]
        }
        Term::IndSigma(s, n, c, g) | Term::IndW(s, n, c, g) => {
            vec![plain(s), bound(vec![(n.clone(), (**s).clone())], c), plain(g)]
        }
        Term::IndFin(k, n, c, cs) => {
            let mut v = vec![bound(vec![(n.clone(), Term::Fin(*k))], c)];
            v.extend(cs.iter().map(plain));
            v
        }
        Term::Succ(a) | Term::Refl(a) | Term::Trunc(a) | Term::TruncIn(a) | Term::QuotAx(a) => vec![plain(a)],
        Term::IndNat(n, c, z, s) => vec![bound(vec![(n.clone(), Term::Nat)], c), plain(z), plain(s)],
        Term::Id(a, x, y) => vec![plain(a), plain(x), plain(y)],
        Term::IndEq(a, ns, c, g) => {
            let bs = vec![
                (ns[0].clone(), (**a).clone()),
                (ns[1].clone(), shift(a, 1)),
                (ns[2].clone(), Term::id(shift(a, 2), Term::Var(1), Term::Var(0))),
            ];
            vec![plain(a), bound(bs, c), plain(g)]
        }
        Term::IndTrunc(a, n, c, g, h) => {
            vec![plain(a), bound(vec![(n.clone(), Term::Trunc(a.clone()))], c), plain(g), plain(h)]
        }
        Term::Quot(a, ns, r) => {
            vec![plain(a), bound(vec![(ns[0].clone(), (**a).clone()), (ns[1].clone(), shift(a, 1))], r)]
        }
        Term::IndQuot(q, n, c, g, h) => vec![plain(q), bound(vec![(n.clone(), (**q).clone())], c), plain(g), plain(h)],
        Term::Transport(a, n, c, e, u) => {
            vec![plain(a), bound(vec![(n.clone(), (**a).clone())], c), plain(e), plain(u)]
        }
    }
}

/// Replace the immediate subterms of `t`, in the order given by [`parts`].
pub fn rebuild(t: &Term, kids: Vec<Term>) -> Term {
    let mut it = kids.into_iter().map(Rc::new);
    let mut next = || it.next().expect("arity mismatch in rebuild");
    match t {
        Term::Sort(_) | Term::Var(_) | Term::Fin(_) | Term::FinEl(..) | Term::Nat | Term::Zero | Term::Propext => t.clone(),
        Term::Pi(n, ..) => Term::Pi(n.clone(), next(), next()),
        Term::Lam(n, ..) => Term::Lam(n.clone(), next(), next()),
        Term::Sigma(n, ..) => Term::Sigma(n.clone(), next(), next()),
        Term::W(n, ..) => Term::W(n.clone(), next(), next()),
        Term::App(..) => Term::App(next(), next()),
        Term::Pair(..) => Term::Pair(next(), next()),
        Term::Tree(..) => Term::Tree(next(), next()),
        Term::Class(..) => Term::Class(next(), next()),
        Term::Ann(..) => Term::Ann(next(), next()),
        Term::IndSigma(_, n, ..) => Term::IndSigma(next(), n.clone(), next(), next()),
        Term::IndW(_, n, ..) => Term::IndW(next(), n.clone(), next(), next()),
        Term::IndFin(k, n, _, cs) => {
            let c = next();
            let cs = (0..cs.len()).map(|_| (*next()).clone()).collect();
            Term::IndFin(*k, n.clone(), c, cs)
        }
        Term::Succ(_) => Term::Succ(next()),
        Term::Refl(_) => Term::Refl(next()),
        Term::Trunc(_) => Term::Trunc(next()),
        Term::TruncIn(_) => Term::TruncIn(next()),
        Term::QuotAx(_) => Term::QuotAx(next()),
        Term::IndNat(n, ..) => Term::IndNat(n.clone(), next(), next(), next()),
        Term::Id(..) => Term::Id(next(), next(), next()),
        Term::IndEq(_, ns, ..) => Term::IndEq(next(), ns.clone(), next(), next()),
        Term::IndTrunc(_, n, ..) => Term::IndTrunc(next(), n.clone(), next(), next(), next()),
        Term::Quot(_, ns, _) => Term::Quot(next(), ns.clone(), next()),
        Term::IndQuot(_, n, ..) => Term::IndQuot(next(), n.clone(), next(), next(), next()),
        Term::Transport(_, n, ..) => Term::Transport(next(), n.clone(), next(), next(), next()),
    }
}

/// Same constructor with the same non-term data.
pub fn same_head(a: &Term, b: &Term) -> bool {
    match (a, b) {
        (Term::Sort(x), Term::Sort(y)) => x == y,
        (Term::Var(x), Term::Var(y)) => x == y,
        (Term::Fin(x), Term::Fin(y)) => x == y,
        (Term::FinEl(k, n), Term::FinEl(k2, n2)) => k == k2 && n == n2,
        (Term::IndFin(k, _, _, cs), Term::IndFin(k2, _, _, cs2)) => k == k2 && cs.len() == cs2.len(),
        _ => std::mem::discriminant(a) == std::mem::discriminant(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idnat() -> Term {
        Term::lam("x", Term::Nat, Term::Var(0))
    }

    #[test]
    fn beta_and_nat_iota() {
        let t = Term::app(idnat(), Term::numeral(3));
        assert_eq!(whnf(&t), Term::numeral(3));
        // ind_nat (n. Nat) 5 (λ n r. S r) 2 = 7
        let plus5 = Term::ind_nat(
            "n",
            Term::Nat,
            Term::numeral(5),
            Term::lam("n", Term::Nat, Term::lam("r", Term::Nat, Term::succ(Term::Var(0)))),
        );
        let t = Term::app(plus5.clone(), Term::Zero);
        assert_eq!(whnf(&t), Term::numeral(5));
        let t = Term::app(plus5, Term::numeral(2));
        assert_eq!(normalize(&t, 100), Some(Term::numeral(7)));
    }

    #[test]
    fn stuck_on_variables() {
        let t = Term::app(Term::ind_nat("n", Term::Nat, Term::Zero, Term::Var(3)), Term::Var(0));
        assert_eq!(whnf(&t), t);
    }

    #[test]
    fn rebuild_inverts_parts() {
        let t = Term::ind_trunc(Term::Nat, "t", Term::Fin(1), Term::Var(0), Term::Var(1));
        let kids = parts(&t).into_iter().map(|p| p.body).collect();
        assert_eq!(rebuild(&t, kids), t);
    }
}
