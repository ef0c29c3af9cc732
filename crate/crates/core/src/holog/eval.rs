//! Bounded three-valued truth: sort-0 quantifiers range over an initial
//! segment of the numerals, higher sorts over iterated powersets of a small
//! base segment, and partial terms run on the combinator machine.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::rc::Rc;

use super::syntax::{Formula, PcaConst, Term, Var};
use super::HologError;
use crate::pca::{eval_oracle, Comb, EpsTable, EvalOutcome, Machine, Oracle};
use crate::Tri;

/// A semantic value: an individual (a combinator value, usually a numeral)
/// or a finite set of values one sort down.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Obj {
    Ind(Comb),
    Set(BTreeSet<Obj>),
}

impl Obj {
    pub fn nat(n: u64) -> Obj {
        Obj::Ind(Comb::Num(n))
    }

    pub fn nats<I: IntoIterator<Item = u64>>(items: I) -> Obj {
        Obj::Set(items.into_iter().map(Obj::nat).collect())
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self {
            Obj::Ind(c) => c.as_num(),
            Obj::Set(_) => None,
        }
    }

    pub fn as_set(&self) -> Option<&BTreeSet<Obj>> {
        match self {
            Obj::Set(s) => Some(s),
            Obj::Ind(_) => None,
        }
    }
}

/// Assignment of values to free variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Env(pub BTreeMap<Var, Obj>);

impl Env {
    pub fn new() -> Env {
        Env::default()
    }

    pub fn with(mut self, v: Var, o: Obj) -> Env {
        self.0.insert(v, o);
        self
    }

    pub fn nat(self, name: &str, n: u64) -> Env {
        self.with(Var::new(name, 0), Obj::nat(n))
    }

    pub fn set(self, name: &str, items: &[u64]) -> Env {
        self.with(Var::new(name, 1), Obj::nats(items.iter().copied()))
    }

    pub fn get(&self, v: &Var) -> Option<&Obj> {
        self.0.get(v)
    }
}

/// How to read a quantifier whose range had to be cut off.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// The bounded ranges are the whole world.
    Bounded,
    /// A verdict that could change on a larger range is `Unknown`: a true
    /// `∀` or a false `∃` over a truncated range.
    Strict,
}

#[derive(Clone, Debug)]
pub struct Bounds {
    /// Sort-0 `∀` ranges over `0..=cutoff`.
    pub cutoff: u64,
    /// Step budget for each combinator evaluation.
    pub budget: u64,
    pub policy: Truncation,
    /// Sort-0 `∃` ranges over `0..=cutoff + witness_slack`.
    pub witness_slack: u64,
    /// Sort-1 quantifiers range over subsets of `0..set_base`.
    pub set_base: u64,
    /// Explicit universes replacing the powerset construction for a sort.
    /// An overridden universe counts as complete under `Strict`.
    pub universes: BTreeMap<u32, Rc<Vec<Obj>>>,
    /// Largest universe that will be built.
    pub limit: u128,
}

impl Bounds {
    pub fn new(cutoff: u64, budget: u64) -> Bounds {
        Bounds {
            cutoff,
            budget,
            policy: Truncation::Bounded,
            witness_slack: 0,
            set_base: 4,
            universes: BTreeMap::new(),
            limit: 1 << 16,
        }
    }

    pub fn strict(mut self) -> Bounds {
        self.policy = Truncation::Strict;
        self
    }

    pub fn slack(mut self, n: u64) -> Bounds {
        self.witness_slack = n;
        self
    }

    pub fn base(mut self, n: u64) -> Bounds {
        self.set_base = n;
        self
    }

    pub fn universe(mut self, sort: u32, items: Vec<Obj>) -> Bounds {
        self.universes.insert(sort, Rc::new(items));
        self
    }
}

/// Result of evaluating a term: a value, undefined, or out of budget.
enum TermVal {
    Val(Obj),
    Undefined,
    Unknown,
}

type Relation<'a> = Rc<dyn Fn(&[u64]) -> bool + 'a>;

/// Bounded evaluator with optional ε-constants, an oracle reinterpreting
/// application, and interpretations of relation symbols.
pub struct Evaluator<'a> {
    bounds: Bounds,
    eps: Option<&'a EpsTable>,
    oracle: Option<&'a dyn Oracle>,
    relations: BTreeMap<String, Relation<'a>>,
    cache: RefCell<BTreeMap<u32, Rc<Vec<Obj>>>>,
}

impl<'a> Evaluator<'a> {
    pub fn new(bounds: Bounds) -> Evaluator<'a> {
        Evaluator { bounds, eps: None, oracle: None, relations: BTreeMap::new(), cache: RefCell::new(BTreeMap::new()) }
    }

    pub fn with_eps(mut self, table: &'a EpsTable) -> Evaluator<'a> {
        self.eps = Some(table);
        self
    }

    /// Relativize: `a @ b` runs `a` on input `b` under the oracle protocol.
    pub fn with_oracle(mut self, f: &'a dyn Oracle) -> Evaluator<'a> {
        self.oracle = Some(f);
        self
    }

    pub fn with_relation(mut self, name: &str, r: impl Fn(&[u64]) -> bool + 'a) -> Evaluator<'a> {
        self.relations.insert(name.to_string(), Rc::new(r));
        self
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn eval(&self, f: &Formula, env: &Env) -> Result<Tri, HologError> {
        for v in f.free_vars() {
            if env.get(&v).is_none() {
                return Err(HologError::Unbound(format!("{v}")));
            }
        }
        let mut scope = Scope { env, stack: Vec::new() };
        self.formula(f, &mut scope)
    }

    /// Every value of the given sort that quantifiers range over.
    pub fn universe(&self, sort: u32) -> Result<Rc<Vec<Obj>>, HologError> {
        if let Some(u) = self.bounds.universes.get(&sort) {
            return Ok(u.clone());
        }
        if let Some(u) = self.cache.borrow().get(&sort) {
            return Ok(u.clone());
        }
        let u = if sort == 0 {
            Rc::new((0..self.bounds.set_base).map(Obj::nat).collect::<Vec<_>>())
        } else {
            let below = self.universe(sort - 1)?;
            let n = below.len();
            if n >= 127 || (1u128 << n) > self.bounds.limit {
                let size = if n >= 127 { u128::MAX } else { 1u128 << n };
                return Err(HologError::Resource { sort, size, limit: self.bounds.limit });
            }
            Rc::new(powerset(&below))
        };
        self.cache.borrow_mut().insert(sort, u.clone());
        Ok(u)
    }

    fn formula(&self, f: &Formula, sc: &mut Scope<'_>) -> Result<Tri, HologError> {
        Ok(match f {
            Formula::Bot => Tri::False,
            Formula::Top => Tri::True,
            Formula::Eq(a, b) => match (self.term(a, sc)?, self.term(b, sc)?) {
                (TermVal::Val(x), TermVal::Val(y)) => Tri::from_bool(x == y),
                (TermVal::Undefined, _) | (_, TermVal::Undefined) => Tri::False,
                _ => Tri::Unknown,
            },
            Formula::Elem(a, b) => match (self.term(a, sc)?, self.term(b, sc)?) {
                (TermVal::Val(x), TermVal::Val(Obj::Set(s))) => Tri::from_bool(s.contains(&x)),
                (TermVal::Val(_), TermVal::Val(Obj::Ind(_))) => return Err(HologError::Sort(format!("`{b}` is not a set"))),
                (TermVal::Undefined, _) | (_, TermVal::Undefined) => Tri::False,
                _ => Tri::Unknown,
            },
            Formula::Defined(a) => match self.term(a, sc)? {
                TermVal::Val(_) => Tri::True,
                TermVal::Undefined => Tri::False,
                TermVal::Unknown => Tri::Unknown,
            },
            Formula::Rel(name, args) => {
                let r = self.relations.get(name).ok_or_else(|| HologError::UnknownRelation(name.clone()))?.clone();
                let mut nums = Vec::with_capacity(args.len());
                let mut verdict = None;
                for a in args {
                    match self.term(a, sc)? {
                        TermVal::Val(o) => match o.as_nat() {
                            Some(n) => nums.push(n),
                            None => verdict = Some(Tri::False),
                        },
                        TermVal::Undefined => verdict = Some(Tri::False),
                        TermVal::Unknown => verdict = verdict.or(Some(Tri::Unknown)),
                    }
                }
                verdict.unwrap_or_else(|| Tri::from_bool(r(&nums)))
            }
            Formula::And(a, b) => {
                let x = self.formula(a, sc)?;
                if x.is_false() {
                    Tri::False
                } else {
                    x.and(self.formula(b, sc)?)
                }
            }
            Formula::Or(a, b) => {
                let x = self.formula(a, sc)?;
                if x.is_true() {
                    Tri::True
                } else {
                    x.or(self.formula(b, sc)?)
                }
            }
            Formula::Imp(a, b) => {
                let x = self.formula(a, sc)?;
                if x.is_false() {
                    Tri::True
                } else {
                    x.implies(self.formula(b, sc)?)
                }
            }
            Formula::Forall(v, body) => self.quantify(v, body, sc, false)?,
            Formula::Exists(v, body) => self.quantify(v, body, sc, true)?,
        })
    }

    fn quantify(&self, v: &Var, body: &Formula, sc: &mut Scope<'_>, exists: bool) -> Result<Tri, HologError> {
        let (range, complete): (Rc<Vec<Obj>>, bool) = if v.sort == 0 {
            let top = if exists { self.bounds.cutoff + self.bounds.witness_slack } else { self.bounds.cutoff };
            (Rc::new((0..=top).map(Obj::nat).collect()), false)
        } else {
            (self.universe(v.sort)?, self.bounds.universes.contains_key(&v.sort))
        };
        let mut acc = if exists { Tri::False } else { Tri::True };
        for o in range.iter() {
            sc.stack.push((v.clone(), o.clone()));
            let r = self.formula(body, sc);
            sc.stack.pop();
            let r = r?;
            acc = if exists { acc.or(r) } else { acc.and(r) };
            if (exists && acc.is_true()) || (!exists && acc.is_false()) {
                return Ok(acc);
            }
        }
        if self.bounds.policy == Truncation::Strict && !complete {
            return Ok(Tri::Unknown);
        }
        Ok(acc)
    }

    fn term(&self, t: &Term, sc: &Scope<'_>) -> Result<TermVal, HologError> {
        let arith = |a: &Term, f: &dyn Fn(u64) -> Option<u64>| -> Result<TermVal, HologError> {
            Ok(match self.term(a, sc)? {
                TermVal::Val(o) => match o.as_nat().and_then(f) {
                    Some(n) => TermVal::Val(Obj::nat(n)),
                    None => TermVal::Undefined,
                },
                other => other,
            })
        };
        let binary = |a: &Term, b: &Term, f: &dyn Fn(u64, u64) -> Option<u64>| -> Result<TermVal, HologError> {
            let x = self.term(a, sc)?;
            let y = self.term(b, sc)?;
            Ok(match (x, y) {
                (TermVal::Val(x), TermVal::Val(y)) => match (x.as_nat(), y.as_nat()) {
                    (Some(x), Some(y)) => f(x, y).map(|n| TermVal::Val(Obj::nat(n))).unwrap_or(TermVal::Undefined),
                    _ => TermVal::Undefined,
                },
                (TermVal::Undefined, _) | (_, TermVal::Undefined) => TermVal::Undefined,
                _ => TermVal::Unknown,
            })
        };
        match t {
            Term::Var(v) => sc.lookup(v).map(|o| TermVal::Val(o.clone())).ok_or_else(|| HologError::Unbound(format!("{v}"))),
            Term::Zero => Ok(TermVal::Val(Obj::nat(0))),
            Term::Succ(a) => arith(a, &|n| n.checked_add(1)),
            Term::Add(a, b) => binary(a, b, &|x, y| x.checked_add(y)),
            Term::Mul(a, b) => binary(a, b, &|x, y| x.checked_mul(y)),
            Term::Const(c) => Ok(TermVal::Val(Obj::Ind(match c {
                PcaConst::K => Comb::K,
                PcaConst::S => Comb::S,
                PcaConst::Suc => Comb::Suc,
                PcaConst::Rec => Comb::Rec,
            }))),
            Term::Eps(id) => {
                let index = self.eps.and_then(|table| table.index_of(*id));
                let (table, i) = match (self.eps, index) {
                    (Some(table), Some(i)) => (table, i),
                    _ => return Err(HologError::Shape(format!("a registered ε-constant for {t}"))),
                };
                // a constant without parameters is called as soon as it is evaluated
                Ok(run(Machine::with_bank(self.bounds.budget, table).eval(&Comb::Eps(i))))
            }
            Term::App(a, b) => {
                let (f, x) = match (self.term(a, sc)?, self.term(b, sc)?) {
                    (TermVal::Val(Obj::Ind(f)), TermVal::Val(Obj::Ind(x))) => (f, x),
                    (TermVal::Val(Obj::Set(_)), _) | (_, TermVal::Val(Obj::Set(_))) => {
                        return Err(HologError::Sort(format!("set under application in `{t}`")))
                    }
                    (TermVal::Undefined, _) | (_, TermVal::Undefined) => return Ok(TermVal::Undefined),
                    _ => return Ok(TermVal::Unknown),
                };
                let out = match self.oracle {
                    Some(oracle) => match x.as_num() {
                        Some(n) => eval_oracle(&f, n, oracle, self.bounds.budget),
                        None => return Ok(TermVal::Undefined),
                    },
                    None => match self.eps {
                        Some(table) => Machine::with_bank(self.bounds.budget, table).apply(&f, &x),
                        None => Machine::new(self.bounds.budget).apply(&f, &x),
                    },
                };
                Ok(run(out))
            }
        }
    }
}

fn run(out: Result<EvalOutcome, crate::pca::EvalError>) -> TermVal {
    match out {
        Ok(EvalOutcome::Value(v)) => TermVal::Val(Obj::Ind(v)),
        Ok(EvalOutcome::Diverged { .. }) => TermVal::Unknown,
        Err(_) => TermVal::Undefined,
    }
}

struct Scope<'e> {
    env: &'e Env,
    stack: Vec<(Var, Obj)>,
}

impl Scope<'_> {
    fn lookup(&self, v: &Var) -> Option<&Obj> {
        self.stack.iter().rev().find(|(w, _)| w == v).map(|(_, o)| o).or_else(|| self.env.get(v))
    }
}

fn powerset(items: &[Obj]) -> Vec<Obj> {
    let n = items.len();
    (0u64..1 << n)
        .map(|mask| Obj::Set((0..n).filter(|i| mask >> i & 1 == 1).map(|i| items[i].clone()).collect()))
        .collect()
}

/// Evaluate with default bounds at the given cutoff and step budget.
pub fn eval_bounded(f: &Formula, env: &Env, cutoff: u64, budget: u64) -> Result<Tri, HologError> {
    Evaluator::new(Bounds::new(cutoff, budget)).eval(f, env)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holog::parse_formula;

    fn ev(src: &str, env: &Env, bounds: Bounds) -> Tri {
        Evaluator::new(bounds).eval(&parse_formula(src).unwrap(), env).unwrap()
    }

    #[test]
    fn closed_arithmetic() {
        let e = Env::new();
        assert_eq!(ev("0 = 0", &e, Bounds::new(8, 100)), Tri::True);
        assert_eq!(ev("exists y. y = S S 0", &e, Bounds::new(8, 100)), Tri::True);
        assert_eq!(ev("forall x. x + 0 = x", &e, Bounds::new(8, 100)), Tri::True);
        assert_eq!(ev("exists y. S y = 0", &e, Bounds::new(8, 100)), Tri::False);
    }

    #[test]
    fn truncation_policy() {
        let f = "forall x. exists y. y = S x";
        let e = Env::new();
        assert_eq!(ev(f, &e, Bounds::new(8, 100).strict()), Tri::Unknown);
        assert_eq!(ev(f, &e, Bounds::new(8, 100).slack(1)), Tri::True);
        assert_eq!(ev(f, &e, Bounds::new(8, 100)), Tri::False);
        // decided on the bounded range, so strictness does not matter
        assert_eq!(ev("exists y. y = 3", &e, Bounds::new(8, 100).strict()), Tri::True);
        assert_eq!(ev("forall y. y = 3", &e, Bounds::new(8, 100).strict()), Tri::False);
    }

    #[test]
    fn sets_and_membership() {
        let e = Env::new().nat("x", 1).set("Y", &[0, 2]);
        assert_eq!(ev("x in Y:1", &e, Bounds::new(4, 100)), Tri::False);
        assert_eq!(ev("S x in Y:1", &e, Bounds::new(4, 100)), Tri::True);
        // extensionality of the finite universe: some set separates 0 and 1
        assert_eq!(ev("exists X:1. 0 in X /\\ ~(1 in X)", &e, Bounds::new(4, 100)), Tri::True);
        assert_eq!(ev("forall X:2. exists Y:1. Y in X \\/ ~(Y in X)", &e, Bounds::new(4, 100).base(2)), Tri::True);
    }

    #[test]
    fn resource_limit() {
        let f = parse_formula("forall X:3. X = X").unwrap();
        let err = Evaluator::new(Bounds::new(4, 100)).eval(&f, &Env::new()).unwrap_err();
        assert!(matches!(err, HologError::Resource { sort: 3, .. }));
    }

    #[test]
    fn unbound_variables_are_errors() {
        let f = parse_formula("x = 0").unwrap();
        assert!(matches!(eval_bounded(&f, &Env::new(), 4, 10), Err(HologError::Unbound(_))));
    }

    #[test]
    fn partial_terms() {
        let e = Env::new();
        let b = || Bounds::new(4, 1000);
        assert_eq!(ev("k @ 3 @ 5 = 3", &e, b()), Tri::True);
        assert_eq!(ev("(s @ k @ k @ 5)!", &e, b()), Tri::True);
        // a numeral applied to anything is stuck, hence undefined
        assert_eq!(ev("(3 @ 4)!", &e, b()), Tri::False);
        assert_eq!(ev("3 @ 4 = 3 @ 4", &e, b()), Tri::False);
        // self-application loop runs out of budget
        let omega = "(s @ (s @ k @ k) @ (s @ k @ k)) @ (s @ (s @ k @ k) @ (s @ k @ k))";
        assert_eq!(ev(&format!("({omega})!"), &e, b()), Tri::Unknown);
    }

    #[test]
    fn relations_and_oracles() {
        let e = Env::new();
        let r = Evaluator::new(Bounds::new(4, 100)).with_relation("R", |a: &[u64]| a[0] < a[1]);
        assert_eq!(r.eval(&parse_formula("forall x. ~R(x, x)").unwrap(), &e).unwrap(), Tri::True);
        assert!(Evaluator::new(Bounds::new(4, 100)).eval(&parse_formula("R(0, 1)").unwrap(), &e).is_err());
        // the program `k <1,7>` answers 7 without querying, whatever the oracle
        let tagged = crate::pca::pair_u64(1, 7).unwrap();
        let prog = Comb::app(Comb::K, Comb::Num(tagged));
        let e = Env::new().with(Var::new("p", 0), Obj::Ind(prog));
        let f = parse_formula("p @ 0 = 7").unwrap();
        let o = crate::pca::Undefined;
        assert_eq!(Evaluator::new(Bounds::new(4, 100)).with_oracle(&o).eval(&f, &e).unwrap(), Tri::True);
    }

    #[test]
    fn more_budget_never_flips_a_verdict() {
        let srcs = ["(s @ k @ k @ 5) = 5", "(3 @ 4)!", "rec @ 0 @ (k @ suc) @ 6 = 6", "forall x. (suc @ x)!"];
        for src in srcs {
            let f = parse_formula(src).unwrap();
            let mut seen: Option<Tri> = None;
            for budget in [0, 1, 2, 4, 8, 64, 1000] {
                let v = eval_bounded(&f, &Env::new(), 4, budget).unwrap();
                if let Some(prev) = seen {
                    assert!(!prev.is_known() || prev == v, "{src}: {prev} then {v}");
                }
                if v.is_known() {
                    seen = Some(v);
                }
            }
        }
    }
}
