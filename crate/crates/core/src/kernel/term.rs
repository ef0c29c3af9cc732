//! Terms of λC+ with de Bruijn indices. Binder names are kept for printing
//! only and never affect equality.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::rc::Rc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Prop,
    Set,
    Type,
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sort::Prop => "Prop",
            Sort::Set => "Set",
            Sort::Type => "Type",
        })
    }
}

/// A binder name. All names compare equal, so `==` on terms is α-equality.
#[derive(Clone, Debug)]
pub struct Name(pub Rc<str>);

impl Name {
    pub fn new(s: &str) -> Name {
        Name(Rc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl PartialEq for Name {
    fn eq(&self, _: &Name) -> bool {
        true
    }
}

impl Eq for Name {}

impl Hash for Name {
    fn hash<H: Hasher>(&self, _: &mut H) {}
}

impl From<&str> for Name {
    fn from(s: &str) -> Name {
        Name::new(s)
    }
}

pub type Tm = Rc<Term>;

/// Eliminators are curried constants: `ind_nat C c f` has type
/// `Π(n:ℕ) C[n]` and reduces once applied to a constructor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Sort(Sort),
    Var(usize),
    Pi(Name, Tm, Tm),
    Lam(Name, Tm, Tm),
    App(Tm, Tm),
    Sigma(Name, Tm, Tm),
    Pair(Tm, Tm),
    /// `ind_sig S (p. C) f`, with `S` the Σ-type eliminated.
    IndSigma(Tm, Name, Tm, Tm),
    W(Name, Tm, Tm),
    Tree(Tm, Tm),
    /// `ind_W T (t. C) f`.
    IndW(Tm, Name, Tm, Tm),
    Fin(u64),
    /// `k` as an element of `Fin n`.
    FinEl(u64, u64),
    /// `ind_fin n (k. C) c₀ … c_{n-1}`.
    IndFin(u64, Name, Tm, Vec<Term>),
    Nat,
    Zero,
    Succ(Tm),
    /// `ind_nat (n. C) c f`.
    IndNat(Name, Tm, Tm, Tm),
    Id(Tm, Tm, Tm),
    Refl(Tm),
    /// `ind_eq A (x y e. C) f`.
    IndEq(Tm, [Name; 3], Tm, Tm),
    Trunc(Tm),
    TruncIn(Tm),
    /// `ind_trunc A (t. C) f h`.
    IndTrunc(Tm, Name, Tm, Tm, Tm),
    /// `Quot A (x y. R)`.
    Quot(Tm, [Name; 2], Tm),
    /// `cls Q a`, the class of `a` in the quotient type `Q`.
    Class(Tm, Tm),
    /// `ax_quot Q`.
    QuotAx(Tm),
    /// `ind_quot Q (q. C) f h`.
    IndQuot(Tm, Name, Tm, Tm, Tm),
    /// `transport T (q. C) e u`: from `u : C[a]` and `e : a =_T b` to `C[b]`.
    Transport(Tm, Name, Tm, Tm, Tm),
    Propext,
    /// `(t : T)`.
    Ann(Tm, Tm),
}

/// Apply `f` to every variable occurrence. `f` receives the index and the
/// number of binders passed on the way down.
pub fn map_vars(t: &Term, depth: usize, f: &dyn Fn(usize, usize) -> Term) -> Term {
    let go = |u: &Tm, extra: usize| Rc::new(map_vars(u, depth + extra, f));
    match t {
        Term::Var(i) => f(*i, depth),
        Term::Sort(_) | Term::Fin(_) | Term::FinEl(..) | Term::Nat | Term::Zero | Term::Propext => t.clone(),
        Term::Pi(n, a, b) => Term::Pi(n.clone(), go(a, 0), go(b, 1)),
        Term::Lam(n, a, b) => Term::Lam(n.clone(), go(a, 0), go(b, 1)),
        Term::Sigma(n, a, b) => Term::Sigma(n.clone(), go(a, 0), go(b, 1)),
        Term::W(n, a, b) => Term::W(n.clone(), go(a, 0), go(b, 1)),
        Term::App(a, b) => Term::App(go(a, 0), go(b, 0)),
        Term::Pair(a, b) => Term::Pair(go(a, 0), go(b, 0)),
        Term::Tree(a, b) => Term::Tree(go(a, 0), go(b, 0)),
        Term::IndSigma(s, n, c, g) => Term::IndSigma(go(s, 0), n.clone(), go(c, 1), go(g, 0)),
        Term::IndW(s, n, c, g) => Term::IndW(go(s, 0), n.clone(), go(c, 1), go(g, 0)),
        Term::IndFin(k, n, c, cs) => {
            Term::IndFin(*k, n.clone(), go(c, 1), cs.iter().map(|x| map_vars(x, depth, f)).collect())
        }
        Term::Succ(a) => Term::Succ(go(a, 0)),
        Term::IndNat(n, c, z, s) => Term::IndNat(n.clone(), go(c, 1), go(z, 0), go(s, 0)),
        Term::Id(a, x, y) => Term::Id(go(a, 0), go(x, 0), go(y, 0)),
        Term::Refl(a) => Term::Refl(go(a, 0)),
        Term::IndEq(a, ns, c, g) => Term::IndEq(go(a, 0), ns.clone(), go(c, 3), go(g, 0)),
        Term::Trunc(a) => Term::Trunc(go(a, 0)),
        Term::TruncIn(a) => Term::TruncIn(go(a, 0)),
        Term::IndTrunc(a, n, c, g, h) => Term::IndTrunc(go(a, 0), n.clone(), go(c, 1), go(g, 0), go(h, 0)),
        Term::Quot(a, ns, r) => Term::Quot(go(a, 0), ns.clone(), go(r, 2)),
        Term::Class(q, a) => Term::Class(go(q, 0), go(a, 0)),
        Term::QuotAx(q) => Term::QuotAx(go(q, 0)),
        Term::IndQuot(q, n, c, g, h) => Term::IndQuot(go(q, 0), n.clone(), go(c, 1), go(g, 0), go(h, 0)),
        Term::Transport(a, n, c, e, u) => Term::Transport(go(a, 0), n.clone(), go(c, 1), go(e, 0), go(u, 0)),
        Term::Ann(a, b) => Term::Ann(go(a, 0), go(b, 0)),
    }
}

/// Add `d` to every free variable at or above `cutoff`.
pub fn shift_above(t: &Term, cutoff: usize, d: usize) -> Term {
    if d == 0 {
        return t.clone();
    }
    map_vars(t, 0, &|i, depth| if i >= depth + cutoff { Term::Var(i + d) } else { Term::Var(i) })
}

pub fn shift(t: &Term, d: usize) -> Term {
    shift_above(t, 0, d)
}

/// Substitute for the `k = args.len()` innermost binders of `body`;
/// `args[0]` replaces the outermost. Arguments and the result live in the
/// context outside those binders.
pub fn instantiate(body: &Term, args: &[Term]) -> Term {
    let k = args.len();
    map_vars(body, 0, &|i, depth| {
        if i < depth {
            Term::Var(i)
        } else if i - depth < k {
            shift(&args[k - 1 - (i - depth)], depth)
        } else {
            Term::Var(i - k)
        }
    })
}

pub fn subst1(body: &Term, arg: &Term) -> Term {
    instantiate(body, std::slice::from_ref(arg))
}

/// Does variable `idx` (relative to the top of `t`) occur free?
pub fn occurs(t: &Term, idx: usize) -> bool {
    let hit = std::cell::Cell::new(false);
    map_vars(t, 0, &|i, depth| {
        if i == idx + depth {
            hit.set(true);
        }
        Term::Var(i)
    });
    hit.get()
}

/// Free variables of `t` as indices relative to its top.
pub fn free_vars(t: &Term) -> std::collections::BTreeSet<usize> {
    let acc = std::cell::RefCell::new(std::collections::BTreeSet::new());
    map_vars(t, 0, &|i, depth| {
        if i >= depth {
            acc.borrow_mut().insert(i - depth);
        }
        Term::Var(i)
    });
    acc.into_inner()
}

fn rc(t: Term) -> Tm {
    Rc::new(t)
}

/// Smart constructors. Bodies of binders are given in the extended context.
impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn pi(n: &str, a: Term, b: Term) -> Term {
        Term::Pi(Name::new(n), rc(a), rc(b))
    }

    /// `A → B`, with `B` given in the outer context.
    pub fn arrow(a: Term, b: Term) -> Term {
        Term::Pi(Name::new("_"), rc(a), rc(shift(&b, 1)))
    }

    pub fn lam(n: &str, a: Term, b: Term) -> Term {
        Term::Lam(Name::new(n), rc(a), rc(b))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(rc(f), rc(a))
    }

    pub fn apps<I: IntoIterator<Item = Term>>(f: Term, args: I) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn sigma(n: &str, a: Term, b: Term) -> Term {
        Term::Sigma(Name::new(n), rc(a), rc(b))
    }

    /// `A × B`, with `B` given in the outer context.
    pub fn product(a: Term, b: Term) -> Term {
        Term::Sigma(Name::new("_"), rc(a), rc(shift(&b, 1)))
    }

    pub fn pair(a: Term, b: Term) -> Term {
        Term::Pair(rc(a), rc(b))
    }

    pub fn w(n: &str, a: Term, b: Term) -> Term {
        Term::W(Name::new(n), rc(a), rc(b))
    }

    pub fn tree(a: Term, d: Term) -> Term {
        Term::Tree(rc(a), rc(d))
    }

    pub fn succ(t: Term) -> Term {
        Term::Succ(rc(t))
    }

    pub fn numeral(n: u64) -> Term {
        (0..n).fold(Term::Zero, |t, _| Term::succ(t))
    }

    pub fn as_numeral(&self) -> Option<u64> {
        match self {
            Term::Zero => Some(0),
            Term::Succ(t) => t.as_numeral().map(|n| n + 1),
            _ => None,
        }
    }

    pub fn id(a: Term, x: Term, y: Term) -> Term {
        Term::Id(rc(a), rc(x), rc(y))
    }

    pub fn refl(a: Term) -> Term {
        Term::Refl(rc(a))
    }

    pub fn trunc(a: Term) -> Term {
        Term::Trunc(rc(a))
    }

    pub fn trunc_in(a: Term) -> Term {
        Term::TruncIn(rc(a))
    }

    pub fn ind_nat(n: &str, motive: Term, z: Term, s: Term) -> Term {
        Term::IndNat(Name::new(n), rc(motive), rc(z), rc(s))
    }

    pub fn ind_fin(size: u64, n: &str, motive: Term, cases: Vec<Term>) -> Term {
        Term::IndFin(size, Name::new(n), rc(motive), cases)
    }

    pub fn ind_sigma(s: Term, n: &str, motive: Term, f: Term) -> Term {
        Term::IndSigma(rc(s), Name::new(n), rc(motive), rc(f))
    }

    pub fn ind_trunc(a: Term, n: &str, motive: Term, f: Term, h: Term) -> Term {
        Term::IndTrunc(rc(a), Name::new(n), rc(motive), rc(f), rc(h))
    }

    pub fn ann(t: Term, ty: Term) -> Term {
        Term::Ann(rc(t), rc(ty))
    }

    /// Head and arguments of an application spine.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut t = self;
        while let Term::App(f, a) = t {
            args.push(&**a);
            t = f;
        }
        args.reverse();
        (t, args)
    }

    pub fn size(&self) -> usize {
        let n = std::cell::Cell::new(0usize);
        fn count(t: &Term, n: &std::cell::Cell<usize>) {
            n.set(n.get() + 1);
            let mut kids: Vec<&Term> = Vec::new();
            match t {
                Term::Pi(_, a, b) | Term::Lam(_, a, b) | Term::Sigma(_, a, b) | Term::W(_, a, b) => kids.extend([&**a, &**b]),
                Term::App(a, b) | Term::Pair(a, b) | Term::Tree(a, b) | Term::Class(a, b) | Term::Ann(a, b) => kids.extend([&**a, &**b]),
                Term::IndSigma(a, _, b, c) | Term::IndW(a, _, b, c) | Term::IndEq(a, _, b, c) | Term::Id(a, b, c) => {
                    kids.extend([&**a, &**b, &**c])
                }
                Term::IndNat(_, a, b, c) => kids.extend([&**a, &**b, &**c]),
                Term::IndFin(_, _, c, cs) => {
                    kids.push(c);
                    kids.extend(cs.iter());
                }
                Term::Succ(a) | Term::Refl(a) | Term::Trunc(a) | Term::TruncIn(a) | Term::QuotAx(a) => kids.push(a),
                Term::Quot(a, _, r) => kids.extend([&**a, &**r]),
                Term::IndTrunc(a, _, b, c, d) | Term::IndQuot(a, _, b, c, d) | Term::Transport(a, _, b, c, d) => {
                    kids.extend([&**a, &**b, &**c, &**d])
                }
                _ => {}
            }
            for k in kids {
                count(k, n);
            }
        }
        count(self, &n);
        n.get()
    }
}
