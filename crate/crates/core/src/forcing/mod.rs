//! Forcing over finite approximations of an oracle relation, the lemmas
//! that make it work, and merging finitely many ε-bodies into one.
//!
//! A condition is a finite set of pairs `⟨x,y⟩` with distinct first
//! components, each satisfying the governing formula `A(x,y)`. Inside
//! formulas a condition is a sort-1 variable holding the codes
//! `(x+y)·(x+y)+x` of its pairs, so membership of a pair is a plain `∈`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::holog::{fresh_name, Bounds, Env, Evaluator, Formula, HologError, Obj, Term, Var};
use crate::Tri;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ForcingError {
    #[error(transparent)]
    Holog(#[from] HologError),
    #[error("relation `{0}` is not the forcing relation")]
    Relation(String),
    #[error("invalid condition: {0}")]
    Condition(String),
    #[error("{what} exceeds the limit of {limit}")]
    Resource { what: String, limit: usize },
    #[error("`{0}` is not decided by the bounded evaluator")]
    Undecided(String),
    #[error("{0}")]
    Shape(String),
}

/// Most conditions an exhaustive check will enumerate.
pub const MAX_CONDITIONS: usize = 20_000;

/// Step budget for evaluating atoms.
const BUDGET: u64 = 10_000;

/// The formula `A(x,y)` every pair in a condition must satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Governing {
    pub x: Var,
    pub y: Var,
    pub body: Formula,
}

impl Governing {
    /// `body` may mention only sort-0 `x` and `y` freely.
    pub fn new(x: &str, y: &str, body: Formula) -> Result<Governing, ForcingError> {
        let (x, y) = (Var::new(x, 0), Var::new(y, 0));
        if let Some(v) = body.free_vars().into_iter().find(|v| *v != x && *v != y) {
            return Err(ForcingError::Shape(format!("governing formula mentions `{v}` besides `{x}` and `{y}`")));
        }
        Ok(Governing { x, y, body })
    }

    /// No constraint: any pair may enter a condition.
    pub fn any() -> Governing {
        Governing { x: Var::new("x", 0), y: Var::new("y", 0), body: Formula::Top }
    }

    fn at(&self, x: Term, y: Term) -> Formula {
        self.body.subst(&self.x, &x).subst(&self.y, &y)
    }

    fn holds(&self, x: u64, y: u64, cutoff: u64) -> Result<bool, ForcingError> {
        let env = Env::new().with(self.x.clone(), Obj::nat(x)).with(self.y.clone(), Obj::nat(y));
        match Evaluator::new(Bounds::new(cutoff, BUDGET)).eval(&self.body, &env)? {
            Tri::True => Ok(true),
            Tri::False => Ok(false),
            Tri::Unknown => Err(ForcingError::Undecided(format!("{}", self.body))),
        }
    }
}

/// Code of a pair inside a condition.
pub fn pair_code(x: u64, y: u64) -> u64 {
    (x + y) * (x + y) + x
}

fn pair_term(x: Term, y: Term) -> Term {
    let s = Term::add(x.clone(), y);
    Term::add(Term::mul(s.clone(), s), x)
}

/// A finite approximation of the relation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ForcingCondition {
    pairs: BTreeSet<(u64, u64)>,
}

impl ForcingCondition {
    pub fn empty() -> ForcingCondition {
        ForcingCondition { pairs: BTreeSet::new() }
    }

    /// Checks that first components are distinct and that every pair
    /// satisfies the governing formula with quantifiers up to `cutoff`.
    pub fn new<I: IntoIterator<Item = (u64, u64)>>(pairs: I, governing: &Governing, cutoff: u64) -> Result<ForcingCondition, ForcingError> {
        let pairs: BTreeSet<(u64, u64)> = pairs.into_iter().collect();
        let firsts: BTreeSet<u64> = pairs.iter().map(|p| p.0).collect();
        if firsts.len() != pairs.len() {
            return Err(ForcingError::Condition("two pairs share a first component".into()));
        }
        for &(x, y) in &pairs {
            if !governing.holds(x, y, cutoff)? {
                return Err(ForcingError::Condition(format!("⟨{x},{y}⟩ fails the governing formula")));
            }
        }
        Ok(ForcingCondition { pairs })
    }

    pub fn pairs(&self) -> &BTreeSet<(u64, u64)> {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, x: u64, y: u64) -> bool {
        self.pairs.contains(&(x, y))
    }

    /// `self ⊇ other`.
    pub fn extends(&self, other: &ForcingCondition) -> bool {
        other.pairs.is_subset(&self.pairs)
    }

    /// The sort-1 value standing for this condition.
    pub fn encode(&self) -> Obj {
        Obj::nats(self.pairs.iter().map(|&(x, y)| pair_code(x, y)))
    }
}

impl fmt::Display for ForcingCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.pairs.iter().map(|(x, y)| format!("⟨{x},{y}⟩")).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// The forcing translation for one relation symbol and governing formula.
#[derive(Clone, Debug)]
pub struct Forcing {
    pub relation: String,
    pub governing: Governing,
}

impl Forcing {
    pub fn new(relation: &str, governing: Governing) -> Forcing {
        Forcing { relation: relation.to_string(), governing }
    }

    /// `p ⊩ a`, with `p` a sort-1 variable. Condition quantifiers become
    /// sort-1 quantifiers guarded by [`Forcing::guard`] and inclusion.
    pub fn force(&self, p: &Var, a: &Formula) -> Result<Formula, ForcingError> {
        if p.sort != 1 {
            return Err(ForcingError::Shape(format!("condition variable `{p}` must have sort 1")));
        }
        let mut avoid = a.all_names();
        avoid.insert(p.name.clone());
        avoid.insert(self.governing.x.name.clone());
        avoid.insert(self.governing.y.name.clone());
        self.go(p, a, &mut avoid)
    }

    fn fresh(avoid: &mut BTreeSet<String>, base: &str, sort: u32) -> Var {
        let name = fresh_name(base, avoid);
        avoid.insert(name.clone());
        Var::new(&name, sort)
    }

    /// `∀(P′ ⊇ P) body(P′)`.
    fn every_ext(&self, p: &Var, avoid: &mut BTreeSet<String>, body: impl FnOnce(&Var, &mut BTreeSet<String>) -> Result<Formula, ForcingError>) -> Result<Formula, ForcingError> {
        let q = Self::fresh(avoid, "Q", 1);
        let guard = Formula::and(self.guard_in(&q, avoid), self.includes_in(&q, p, avoid));
        Ok(Formula::forall(q.clone(), Formula::imp(guard, body(&q, avoid)?)))
    }

    /// `∃(P″ ⊇ P) body(P″)`.
    fn some_ext(&self, p: &Var, avoid: &mut BTreeSet<String>, body: impl FnOnce(&Var, &mut BTreeSet<String>) -> Result<Formula, ForcingError>) -> Result<Formula, ForcingError> {
        let q = Self::fresh(avoid, "Q", 1);
        let guard = Formula::and(self.guard_in(&q, avoid), self.includes_in(&q, p, avoid));
        Ok(Formula::exists(q.clone(), Formula::and(guard, body(&q, avoid)?)))
    }

    fn go(&self, p: &Var, a: &Formula, avoid: &mut BTreeSet<String>) -> Result<Formula, ForcingError> {
        match a {
            Formula::Rel(name, args) if *name == self.relation => {
                let [x, y] = &args[..] else {
                    return Err(ForcingError::Shape(format!("`{name}` is binary, found {} arguments", args.len())));
                };
                let code = pair_term(x.clone(), y.clone());
                self.every_ext(p, avoid, |q, avoid| self.some_ext(q, avoid, |r, _| Ok(Formula::elem(code, Term::Var(r.clone())))))
            }
            Formula::Rel(name, _) => Err(ForcingError::Relation(name.clone())),
            Formula::Eq(..) | Formula::Elem(..) | Formula::Defined(_) | Formula::Bot | Formula::Top => Ok(a.clone()),
            Formula::Or(l, r) => self.every_ext(p, avoid, |q, avoid| {
                self.some_ext(q, avoid, |s, avoid| Ok(Formula::or(self.go(s, l, avoid)?, self.go(s, r, avoid)?)))
            }),
            Formula::And(l, r) => Ok(Formula::and(self.go(p, l, avoid)?, self.go(p, r, avoid)?)),
            Formula::Imp(l, r) => {
                self.every_ext(p, avoid, |q, avoid| Ok(Formula::imp(self.go(q, l, avoid)?, self.go(q, r, avoid)?)))
            }
            Formula::Exists(v, b) => self.every_ext(p, avoid, |q, avoid| {
                self.some_ext(q, avoid, |s, avoid| Ok(Formula::exists(v.clone(), self.go(s, b, avoid)?)))
            }),
            Formula::Forall(v, b) => {
                self.every_ext(p, avoid, |q, avoid| Ok(Formula::forall(v.clone(), self.go(q, b, avoid)?)))
            }
        }
    }

    /// The well-formedness guard: every pair in `p` satisfies the governing
    /// formula, and no two pairs share a first component.
    pub fn guard(&self, p: &Var) -> Formula {
        let mut avoid = BTreeSet::from([p.name.clone(), self.governing.x.name.clone(), self.governing.y.name.clone()]);
        self.governing.body.visit_binders(&mut |v| {
            avoid.insert(v.name.clone());
        });
        self.guard_in(p, &mut avoid)
    }

    fn guard_in(&self, p: &Var, avoid: &mut BTreeSet<String>) -> Formula {
        let u = Self::fresh(avoid, "u", 0);
        let v = Self::fresh(avoid, "v", 0);
        let w = Self::fresh(avoid, "w", 0);
        let (tu, tv, tw) = (Term::Var(u.clone()), Term::Var(v.clone()), Term::Var(w.clone()));
        let pt = Term::Var(p.clone());
        let mem = |a: &Term, b: &Term| Formula::elem(pair_term(a.clone(), b.clone()), pt.clone());
        let body = Formula::imp(
            mem(&tu, &tv),
            Formula::and(self.governing.at(tu.clone(), tv.clone()), Formula::imp(mem(&tu, &tw), Formula::eq(tv.clone(), tw))),
        );
        Formula::forall(u, Formula::forall(v, Formula::forall(w, body)))
    }

    /// `q ⊇ p`, read over pairs.
    pub fn includes(&self, q: &Var, p: &Var) -> Formula {
        let mut avoid = BTreeSet::from([p.name.clone(), q.name.clone()]);
        self.includes_in(q, p, &mut avoid)
    }

    fn includes_in(&self, q: &Var, p: &Var, avoid: &mut BTreeSet<String>) -> Formula {
        let u = Self::fresh(avoid, "u", 0);
        let v = Self::fresh(avoid, "v", 0);
        let code = pair_term(Term::Var(u.clone()), Term::Var(v.clone()));
        let body = Formula::imp(Formula::elem(code.clone(), Term::Var(p.clone())), Formula::elem(code, Term::Var(q.clone())));
        Formula::forall(u, Formula::forall(v, body))
    }
}

/// `P ⊩_R A` for the relation `R`.
pub fn force(p: &Var, a: &Formula, governing: &Governing) -> Result<Formula, ForcingError> {
    Forcing::new("R", governing.clone()).force(p, a)
}

/// Every condition over `0..=domain` with at most `size` pairs, ordered by
/// size and then pairs, with the extension relation.
#[derive(Clone, Debug)]
pub struct Poset {
    pub domain: u64,
    pub conditions: Vec<ForcingCondition>,
    /// `up[i]`: indices of the conditions extending condition `i`, itself
    /// included.
    pub up: Vec<Vec<usize>>,
}

impl Poset {
    pub fn new(governing: &Governing, domain: u64, size: usize) -> Result<Poset, ForcingError> {
        let mut pairs = Vec::new();
        for x in 0..=domain {
            for y in 0..=domain {
                if governing.holds(x, y, domain)? {
                    pairs.push((x, y));
                }
            }
        }
        let mut conditions = vec![ForcingCondition::empty()];
        let mut frontier = vec![ForcingCondition::empty()];
        for _ in 0..size {
            let mut next = BTreeSet::new();
            for c in &frontier {
                for &(x, y) in &pairs {
                    if c.pairs.iter().all(|p| p.0 != x) {
                        let mut d = c.clone();
                        d.pairs.insert((x, y));
                        next.insert(d);
                    }
                }
            }
            if conditions.len() + next.len() > MAX_CONDITIONS {
                return Err(ForcingError::Resource { what: "conditions".into(), limit: MAX_CONDITIONS });
            }
            frontier = next.into_iter().collect();
            conditions.extend(frontier.iter().cloned());
        }
        let up = conditions.iter().map(|p| (0..conditions.len()).filter(|&j| conditions[j].extends(p)).collect()).collect();
        Ok(Poset { domain, conditions, up })
    }

    pub fn len(&self) -> usize {
        self.conditions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conditions.is_empty()
    }

    /// Sort-1 universe made of the encoded conditions.
    pub fn universe(&self) -> Vec<Obj> {
        self.conditions.iter().map(ForcingCondition::encode).collect()
    }

    /// Bounds under which the output of [`Forcing::force`] ranges over
    /// exactly these conditions.
    pub fn bounds(&self) -> Bounds {
        Bounds::new(self.domain, BUDGET).universe(1, self.universe())
    }

    /// Which conditions force `a` under `env`, computed clause by clause.
    pub fn forced(&self, forcing: &Forcing, a: &Formula, env: &Env) -> Result<Vec<bool>, ForcingError> {
        let n = self.len();
        let all_up = |f: &dyn Fn(usize) -> bool| -> Vec<bool> { (0..n).map(|p| self.up[p].iter().all(|&q| f(q))).collect() };
        let dense = |v: &[bool]| -> Vec<bool> { all_up(&|q| self.up[q].iter().any(|&r| v[r])) };
        Ok(match a {
            Formula::Rel(name, args) if *name == forcing.relation => {
                if args.len() != 2 {
                    return Err(ForcingError::Shape(format!("`{name}` is binary, found {} arguments", args.len())));
                }
                let mut here = Vec::with_capacity(n);
                for c in &self.conditions {
                    let ev = Evaluator::new(Bounds::new(self.domain, BUDGET)).with_relation(name, |xs| c.contains(xs[0], xs[1]));
                    here.push(decided(ev.eval(a, env)?, a)?);
                }
                dense(&here)
            }
            Formula::Rel(name, _) => return Err(ForcingError::Relation(name.clone())),
            Formula::Eq(..) | Formula::Elem(..) | Formula::Defined(_) | Formula::Bot | Formula::Top => {
                let v = decided(Evaluator::new(Bounds::new(self.domain, BUDGET)).eval(a, env)?, a)?;
                vec![v; n]
            }
            Formula::Or(l, r) => {
                let (l, r) = (self.forced(forcing, l, env)?, self.forced(forcing, r, env)?);
                let either: Vec<bool> = l.iter().zip(&r).map(|(a, b)| *a || *b).collect();
                dense(&either)
            }
            Formula::And(l, r) => {
                let (l, r) = (self.forced(forcing, l, env)?, self.forced(forcing, r, env)?);
                l.iter().zip(&r).map(|(a, b)| *a && *b).collect()
            }
            Formula::Imp(l, r) => {
                let (l, r) = (self.forced(forcing, l, env)?, self.forced(forcing, r, env)?);
                all_up(&|q| !l[q] || r[q])
            }
            Formula::Exists(v, b) => {
                let mut some = vec![false; n];
                for k in self.instances(v)? {
                    let inner = self.forced(forcing, b, &env.clone().with(v.clone(), k))?;
                    some.iter_mut().zip(inner).for_each(|(s, i)| *s |= i);
                }
                dense(&some)
            }
            Formula::Forall(v, b) => {
                let mut every = vec![true; n];
                for k in self.instances(v)? {
                    let inner = self.forced(forcing, b, &env.clone().with(v.clone(), k))?;
                    every.iter_mut().zip(inner).for_each(|(s, i)| *s &= i);
                }
                all_up(&|q| every[q])
            }
        })
    }

    fn instances(&self, v: &Var) -> Result<Vec<Obj>, ForcingError> {
        if v.sort != 0 {
            return Err(ForcingError::Shape(format!("the exhaustive check quantifies over sort 0 only, found `{v}`")));
        }
        Ok((0..=self.domain).map(Obj::nat).collect())
    }
}

fn decided(t: Tri, a: &Formula) -> Result<bool, ForcingError> {
    match t {
        Tri::True => Ok(true),
        Tri::False => Ok(false),
        Tri::Unknown => Err(ForcingError::Undecided(a.to_string())),
    }
}

/// One of the three lemmas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Lemma {
    /// `P ⊩ A` and `P′ ⊇ P` give `P′ ⊩ A`.
    Monotone,
    /// `∀(P′ ⊇ P) ∃(P″ ⊇ P′) P″ ⊩ A` gives `P ⊩ A`.
    Density,
    /// `P ⊩ B` iff `B` for relation-free `B`.
    Base,
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Lemma::Monotone => "monotonicity",
            Lemma::Density => "density",
            Lemma::Base => "base formula",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub lemma: Lemma,
    pub formula: Formula,
    pub env: Vec<(String, u64)>,
    pub condition: ForcingCondition,
    pub extension: Option<ForcingCondition>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails for {} at P = {}", self.lemma, self.formula, self.condition)?;
        if let Some(q) = &self.extension {
            write!(f, ", P′ = {q}")?;
        }
        for (x, n) in &self.env {
            write!(f, ", {x} = {n}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MetaReport {
    pub conditions: usize,
    /// Lemma instances checked, counted per lemma.
    pub instances: BTreeMap<String, usize>,
    pub counterexample: Option<Counterexample>,
}

impl MetaReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Check the three lemmas for `a` at every condition over `0..=domain` with
/// at most `size` pairs, and at every assignment of the free variables.
pub fn check_meta_lemmas(forcing: &Forcing, a: &Formula, domain: u64, size: usize) -> Result<MetaReport, ForcingError> {
    let poset = Poset::new(&forcing.governing, domain, size)?;
    check_on(&poset, forcing, a)
}

/// [`check_meta_lemmas`] over a poset built once.
pub fn check_on(poset: &Poset, forcing: &Forcing, a: &Formula) -> Result<MetaReport, ForcingError> {
    let mut report = MetaReport { conditions: poset.len(), ..MetaReport::default() };
    let free = a.free_vars();
    if let Some(v) = free.iter().find(|v| v.sort != 0) {
        return Err(ForcingError::Shape(format!("the exhaustive check takes sort-0 variables only, found `{v}`")));
    }
    let relation_free = !a.has(&|f| matches!(f, Formula::Rel(..)));
    let k = free.len() as u32;
    let width = poset.domain + 1;
    let total = width.checked_pow(k).filter(|t| *t <= 1 << 16).ok_or(ForcingError::Resource { what: "assignments".into(), limit: 1 << 16 })?;
    for code in 0..total {
        let mut rest = code;
        let mut env = Env::new();
        let mut shown = Vec::new();
        for v in &free {
            env = env.with(v.clone(), Obj::nat(rest % width));
            shown.push((v.name.clone(), rest % width));
            rest /= width;
        }
        let forced = poset.forced(forcing, a, &env)?;
        let fail = |lemma, p: usize, q: Option<usize>| Counterexample {
            lemma,
            formula: a.clone(),
            env: shown.clone(),
            condition: poset.conditions[p].clone(),
            extension: q.map(|q| poset.conditions[q].clone()),
        };
        for p in 0..poset.len() {
            for &q in &poset.up[p] {
                *report.instances.entry(Lemma::Monotone.to_string()).or_default() += 1;
                if forced[p] && !forced[q] {
                    report.counterexample = Some(fail(Lemma::Monotone, p, Some(q)));
                    return Ok(report);
                }
            }
            *report.instances.entry(Lemma::Density.to_string()).or_default() += 1;
            let dense = poset.up[p].iter().all(|&q| poset.up[q].iter().any(|&r| forced[r]));
            if dense && !forced[p] {
                report.counterexample = Some(fail(Lemma::Density, p, None));
                return Ok(report);
            }
        }
        if relation_free {
            let truth = decided(Evaluator::new(Bounds::new(poset.domain, BUDGET)).eval(a, &env)?, a)?;
            for (p, f) in forced.iter().enumerate() {
                *report.instances.entry(Lemma::Base.to_string()).or_default() += 1;
                if *f != truth {
                    report.counterexample = Some(fail(Lemma::Base, p, None));
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

/// Whether the formula produced by [`Forcing::force`], read by the bounded
/// evaluator with conditions as the sort-1 universe, agrees with
/// [`Poset::forced`] at every condition. Returns the first disagreeing
/// condition.
pub fn check_translation(poset: &Poset, forcing: &Forcing, a: &Formula, env: &Env) -> Result<Option<ForcingCondition>, ForcingError> {
    let p = Var::new(&fresh_name("P", &a.all_names()), 1);
    let translated = forcing.force(&p, a)?;
    let semantic = poset.forced(forcing, a, env)?;
    let ev = Evaluator::new(poset.bounds());
    for (c, want) in poset.conditions.iter().zip(semantic) {
        let got = decided(ev.eval(&translated, &env.clone().with(p.clone(), c.encode()))?, &translated)?;
        if got != want {
            return Ok(Some(c.clone()));
        }
    }
    Ok(None)
}

/// Formulas over the relation `R` for the exhaustive suite: a few fixed
/// cases, then seeded random ones with sort-0 quantifiers and at most one
/// free variable `x`.
pub fn meta_lemma_suite(count: usize, domain: u64, seed: u64) -> Vec<Formula> {
    let fixed = ["R(0, 1)", "0 = 0", "R(0, 0) \\/ ~R(0, 0)", "exists y. R(0, y)", "forall x. R(x, x) -> R(x, x)", "~~R(1, 2) -> R(1, 2)"];
    let mut out: Vec<Formula> = fixed.iter().map(|s| crate::holog::parse_formula(s).expect("fixed suite parses")).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut n = 0;
    while out.len() < count {
        let f = random_formula(&mut rng, 3, &mut vec![Var::new("x", 0)], domain, &mut n);
        if !out.contains(&f) {
            out.push(f);
        }
    }
    out.truncate(count);
    out
}

fn random_term(rng: &mut ChaCha8Rng, scope: &[Var], domain: u64) -> Term {
    if rng.gen_bool(0.5) {
        Term::Var(scope.choose(rng).expect("scope is never empty").clone())
    } else {
        Term::num(rng.gen_range(0..=domain))
    }
}

fn random_formula(rng: &mut ChaCha8Rng, depth: usize, scope: &mut Vec<Var>, domain: u64, n: &mut usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..5) {
            0 | 1 => Formula::Rel("R".into(), vec![random_term(rng, scope, domain), random_term(rng, scope, domain)]),
            2 => Formula::eq(random_term(rng, scope, domain), random_term(rng, scope, domain)),
            3 => Formula::Bot,
            _ => Formula::eq(Term::succ(random_term(rng, scope, domain)), random_term(rng, scope, domain)),
        };
    }
    let mut sub = |rng: &mut ChaCha8Rng, scope: &mut Vec<Var>| random_formula(rng, depth - 1, scope, domain, n);
    match rng.gen_range(0..6) {
        0 => Formula::and(sub(rng, scope), sub(rng, scope)),
        1 => Formula::or(sub(rng, scope), sub(rng, scope)),
        2 => Formula::imp(sub(rng, scope), sub(rng, scope)),
        3 => Formula::not(sub(rng, scope)),
        q => {
            *n += 1;
            let v = Var::new(&format!("n{n}"), 0);
            scope.push(v.clone());
            let body = random_formula(rng, depth - 1, scope, domain, n);
            scope.pop();
            if q == 4 {
                Formula::exists(v, body)
            } else {
                Formula::forall(v, body)
            }
        }
    }
}

/// `c = ⟨a, b⟩` under Cantor pairing, without division.
fn pair_eq(c: Term, a: Term, b: Term) -> Formula {
    let s = Term::add(a, b.clone());
    let rhs = Term::add(Term::add(Term::mul(s.clone(), Term::succ(s)), b.clone()), b);
    Formula::eq(Term::add(c.clone(), c), rhs)
}

/// One `∃y C[z,y]` answering every `∃y Bᵢ[x⃗,y]` at once:
/// `C[z,y] = ⋀ᵢ ∀x⃗ (z = ⟨i,x⃗⟩ → Bᵢ[x⃗,y])`, with right-nested Cantor tuples
/// as in the combinator pairing. Nested pairs name their inner components
/// with extra universally quantified variables, each at most `z`.
pub fn merge_epsilons(bodies: &[Formula]) -> Result<Formula, ForcingError> {
    if bodies.is_empty() {
        return Err(ForcingError::Shape("nothing to merge".into()));
    }
    let mut avoid = BTreeSet::new();
    for b in bodies {
        avoid.extend(b.all_names());
    }
    let z = Forcing::fresh(&mut avoid, "z", 0);
    let y = Forcing::fresh(&mut avoid, "y", 0);
    let mut conj: Option<Formula> = None;
    for (i, b) in bodies.iter().enumerate() {
        let Formula::Exists(w, body) = b else {
            return Err(ForcingError::Shape(format!("`{b}` is not existential")));
        };
        if !b.is_first_order() {
            return Err(ForcingError::Shape(format!("`{b}` is not first-order")));
        }
        let params = b.free_vars();
        let mut body = body.subst(w, &Term::Var(y.clone()));
        let mut xs = Vec::new();
        for p in &params {
            let x = Forcing::fresh(&mut avoid, "x", 0);
            body = body.subst(p, &Term::Var(x.clone()));
            xs.push(x);
        }
        let index = Term::num(i as u64);
        let zt = Term::Var(z.clone());
        let (antecedent, inner) = match xs.split_last() {
            None => (Formula::eq(zt, index), Vec::new()),
            Some((last, init)) => {
                // components ⟨x_j, …⟩ get names w_j
                let mut acc = Term::Var(last.clone());
                let mut eqs = Vec::new();
                let mut ws = Vec::new();
                for x in init.iter().rev() {
                    let wv = Forcing::fresh(&mut avoid, "w", 0);
                    eqs.push(pair_eq(Term::Var(wv.clone()), Term::Var(x.clone()), acc));
                    acc = Term::Var(wv.clone());
                    ws.push(wv);
                }
                let mut ante = pair_eq(zt, index, acc);
                for e in eqs {
                    ante = Formula::and(e, ante);
                }
                (ante, ws)
            }
        };
        let mut clause = Formula::imp(antecedent, body);
        for v in inner.into_iter().rev().chain(xs.into_iter().rev()) {
            clause = Formula::forall(v, clause);
        }
        conj = Some(match conj {
            None => clause,
            Some(c) => Formula::and(c, clause),
        });
    }
    Ok(Formula::exists(y, conj.expect("bodies is not empty")))
}
