//! Realizers for first-order sentences and the two equivalence harnesses.
//!
//! [`Realizability`] implements the pair clauses `⟨z,z′⟩ ∈ ⟦Aᵒ⟧` for `=`, `∧`,
//! `→`, `∃` and `∀` over the bounded world `0..=cutoff`, and builds the
//! canonical realizer `r_A` with ε constants answered by bounded search.
//! [`check_relevant_soundness`] compares `⟨r_A x⃗, r_A x⃗⟩ ∈ ⟦Aᵒ⟧` with the
//! bounded truth of `A`; [`check_irrelevant_equiv`] compares `∗ ∈ ⟦A•⟧` in
//! the model with the bounded truth of `A`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::holog::{desugar_first_order, Bounds, Env, Evaluator, Formula, HologError, Obj, Term, Var};
use crate::model::{inhabited_at, ModelError, Sem, World};
use crate::pca::library::{case_table, cfst, cpair, csnd};
use crate::pca::{abstract_many, abstract_open, close, epsilon, Comb, EpsTable, EvalOutcome, Machine, Open};
use crate::translate::{translate, Mode, TranslateError};
use crate::Tri;

#[derive(Debug, Error)]
pub enum RealizeError {
    #[error(transparent)]
    Holog(#[from] HologError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("corpus line {line}: {msg}")]
    Corpus { line: usize, msg: String },
}

/// Steps per combinator evaluation unless stated otherwise.
pub const DEFAULT_STEPS: u64 = 100_000;

/// Hypothesis samples per `→` clause.
const HYPOTHESES: usize = 6;

/// `g₀(x) = {x}`, `g_{n+1}(X) = (f ∈ ⟦𝒫ⁿℕ⟧) ↦ {∗ | g_n⁻¹(f) ∈ X}`. Sets are
/// read over the world's window, so `X ⊆ 0..=cutoff` at level 1.
pub fn g(world: &World, n: u32, x: &Obj) -> Result<Sem, RealizeError> {
    if n == 0 {
        return match x.as_nat() {
            Some(k) => Ok(world.nat(k)),
            None => Err(RealizeError::Unsupported(format!("g₀ of a non-individual {x:?}"))),
        };
    }
    let members = x.as_set().ok_or_else(|| RealizeError::Unsupported("g of a non-set".into()))?;
    let mut graph = BTreeMap::new();
    for f in window(world, n - 1)? {
        let y = g_inv(world, n - 1, &f)?;
        graph.insert(f, Sem::subsingleton(members.contains(&y)));
    }
    Ok(Sem::Fun(graph))
}

/// `g₀⁻¹({x}) = x`, `g_{n+1}⁻¹(F) = {x ∈ 𝒫ⁿℕ | ∗ ∈ F(g_n(x))}`.
pub fn g_inv(world: &World, n: u32, x: &Sem) -> Result<Obj, RealizeError> {
    if n == 0 {
        let k = match x.as_set().map(|s| s.iter().collect::<Vec<_>>()).as_deref() {
            Some([one]) => one.as_nat(),
            _ => None,
        };
        return k.map(Obj::nat).ok_or_else(|| RealizeError::Unsupported(format!("g₀⁻¹ of {x}")));
    }
    let mut out = std::collections::BTreeSet::new();
    for y in universe(world, n - 1)? {
        let image = g(world, n - 1, &y)?;
        match x.call(&image) {
            Some(v) if v.has_star() => {
                out.insert(y);
            }
            Some(_) => {}
            None => return Err(RealizeError::Unsupported(format!("g⁻¹ of a graph missing {image}"))),
        }
    }
    Ok(Obj::Set(out))
}

/// `0..=cutoff` and its iterated powersets, as holog values.
fn universe(world: &World, n: u32) -> Result<Vec<Obj>, RealizeError> {
    let ev = Evaluator::new(bounds(world.cutoff, 10_000));
    Ok(ev.universe(n)?.to_vec())
}

/// `⟦𝒫ⁿℕ⟧` in the world: `g_n` of every holog value of that sort.
fn window(world: &World, n: u32) -> Result<Vec<Sem>, RealizeError> {
    universe(world, n)?.iter().map(|y| g(world, n, y)).collect()
}

/// The bounds matching the model's world: quantifiers over `0..=cutoff` and
/// higher sorts over powersets of that segment.
pub fn bounds(cutoff: u64, budget: u64) -> Bounds {
    Bounds::new(cutoff, budget).base(cutoff + 1).slack(0)
}

/// Outcome of a harness comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Agree,
    Disagree,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Agree => "agree",
            Status::Disagree => "disagree",
            Status::Unknown => "unknown",
        })
    }
}

/// The model side and the bounded truth of a sentence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub model: Tri,
    pub truth: Tri,
}

impl Verdict {
    pub fn status(&self) -> Status {
        match (self.model, self.truth) {
            (Tri::Unknown, _) | (_, Tri::Unknown) => Status::Unknown,
            (a, b) if a == b => Status::Agree,
            _ => Status::Disagree,
        }
    }
}

/// The realizability clauses for one bounded world, with the ε constants
/// registered so far.
pub struct Realizability {
    pub cutoff: u64,
    pub steps: u64,
    pub table: EpsTable,
    fresh: std::cell::Cell<usize>,
}

impl Realizability {
    pub fn new(cutoff: u64) -> Realizability {
        Realizability { cutoff, steps: DEFAULT_STEPS, table: EpsTable::new(), fresh: std::cell::Cell::new(0) }
    }

    pub fn with_steps(mut self, steps: u64) -> Realizability {
        self.steps = steps;
        self
    }

    /// `f a` with the ε constants available. Undefined is `Ok(None)`.
    pub fn apply(&self, f: &Comb, a: &Comb) -> Result<Option<Comb>, ()> {
        match Machine::with_bank(self.steps, &self.table).apply(f, a) {
            Ok(EvalOutcome::Value(v)) => Ok(Some(v)),
            Ok(EvalOutcome::Diverged { .. }) => Err(()),
            Err(_) => Ok(None),
        }
    }

    fn run(&self, t: &Comb) -> Result<Option<Comb>, ()> {
        match Machine::with_bank(self.steps, &self.table).eval(t) {
            Ok(EvalOutcome::Value(v)) => Ok(Some(v)),
            Ok(EvalOutcome::Diverged { .. }) => Err(()),
            Err(_) => Ok(None),
        }
    }

    fn truth(&self, a: &Formula, env: &Env) -> Result<Tri, RealizeError> {
        Ok(Evaluator::new(bounds(self.cutoff, self.steps)).eval(a, env)?)
    }

    /// `⟨z,z′⟩ ∈ ⟦Aᵒ⟧` for a desugared first-order `A`.
    pub fn realizes(&self, z: &Comb, z2: &Comb, a: &Formula, env: &Env) -> Result<Tri, RealizeError> {
        // apply and feed both results to k; undefined makes the clause false
        let both = |f: &Comb, x: &Comb, f2: &Comb, x2: &Comb, k: &dyn Fn(&Comb, &Comb) -> Result<Tri, RealizeError>| {
            match (self.apply(f, x), self.apply(f2, x2)) {
                (Ok(Some(u)), Ok(Some(u2))) => k(&u, &u2),
                (Ok(None), _) | (_, Ok(None)) => Ok(Tri::False),
                _ => Ok(Tri::Unknown),
            }
        };
        match a {
            Formula::Eq(..) => self.truth(a, env),
            Formula::And(l, r) => {
                let left = both(&cfst(), z, &cfst(), z2, &|u, u2| self.realizes(u, u2, l, env))?;
                if left.is_false() {
                    return Ok(left);
                }
                let right = both(&csnd(), z, &csnd(), z2, &|u, u2| self.realizes(u, u2, r, env))?;
                Ok(left.and(right))
            }
            Formula::Imp(l, r) => {
                let mut acc = Tri::True;
                for (x, x2) in self.hypotheses(l, env)? {
                    acc = acc.and(both(z, &x, z2, &x2, &|u, u2| self.realizes(u, u2, r, env))?);
                    if acc.is_false() {
                        break;
                    }
                }
                Ok(acc)
            }
            Formula::Exists(v, body) => {
                let (p, p2) = match (self.apply(&cfst(), z), self.apply(&cfst(), z2)) {
                    (Ok(Some(p)), Ok(Some(p2))) => (p, p2),
                    (Ok(None), _) | (_, Ok(None)) => return Ok(Tri::False),
                    _ => return Ok(Tri::Unknown),
                };
                let (Some(n), Some(n2)) = (p.as_num(), p2.as_num()) else { return Ok(Tri::False) };
                if n != n2 {
                    return Ok(Tri::False);
                }
                let env = env.clone().with(v.clone(), Obj::nat(n));
                both(&csnd(), z, &csnd(), z2, &|u, u2| self.realizes(u, u2, body, &env))
            }
            Formula::Forall(v, body) => {
                let mut acc = Tri::True;
                for n in 0..=self.cutoff {
                    let env = env.clone().with(v.clone(), Obj::nat(n));
                    acc = acc.and(both(z, &Comb::Num(n), z2, &Comb::Num(n), &|u, u2| self.realizes(u, u2, body, &env))?);
                    if acc.is_false() {
                        break;
                    }
                }
                Ok(acc)
            }
            other => Err(RealizeError::Unsupported(format!("`{other}` is not a desugared first-order formula"))),
        }
    }

    /// Pairs `⟨x,x′⟩ ∈ ⟦Aᵒ⟧` the `→` clause quantifies over: the diagonal on
    /// every candidate, and all pairs among the first few.
    fn hypotheses(&self, a: &Formula, env: &Env) -> Result<Vec<(Comb, Comb)>, RealizeError> {
        let cands = self.candidates(a, env)?;
        let mut out: Vec<(Comb, Comb)> = cands.iter().map(|x| (x.clone(), x.clone())).collect();
        for x in cands.iter().take(HYPOTHESES) {
            for x2 in cands.iter().take(HYPOTHESES) {
                if x != x2 && self.realizes(x, x2, a, env)?.is_true() {
                    out.push((x.clone(), x2.clone()));
                }
            }
        }
        Ok(out)
    }

    /// Realizers of `A` in the bounded world: at least one whenever `A`
    /// is realizable there.
    pub fn candidates(&self, a: &Formula, env: &Env) -> Result<Vec<Comb>, RealizeError> {
        let raw: Vec<Comb> = match a {
            Formula::Eq(..) => vec![Comb::Num(0)],
            Formula::And(l, r) => {
                let (ls, rs) = (self.candidates(l, env)?, self.candidates(r, env)?);
                let mut out = Vec::new();
                for x in ls.iter().take(HYPOTHESES) {
                    for y in rs.iter().take(HYPOTHESES) {
                        out.extend(self.pair(x, y));
                    }
                }
                out
            }
            Formula::Imp(_, r) => {
                let mut out = vec![Comb::app(Comb::K, Comb::Num(0))];
                out.extend(self.candidates(r, env)?.into_iter().take(HYPOTHESES).map(|b| Comb::app(Comb::K, b)));
                out
            }
            Formula::Exists(v, body) => {
                let mut out = Vec::new();
                for n in 0..=self.cutoff {
                    let env = env.clone().with(v.clone(), Obj::nat(n));
                    for w in self.candidates(body, &env)?.into_iter().take(HYPOTHESES) {
                        out.extend(self.pair(&Comb::Num(n), &w));
                    }
                }
                out
            }
            Formula::Forall(v, body) => {
                let mut table = Vec::new();
                for n in 0..=self.cutoff {
                    let env = env.clone().with(v.clone(), Obj::nat(n));
                    match self.candidates(body, &env)?.into_iter().next() {
                        Some(r) => table.push(r),
                        None => return Ok(Vec::new()),
                    }
                }
                vec![case_table(&table)]
            }
            other => return Err(RealizeError::Unsupported(format!("`{other}` is not a desugared first-order formula"))),
        };
        let mut out = Vec::new();
        for x in raw {
            if self.realizes(&x, &x, a, env)?.is_true() {
                out.push(x);
            }
        }
        Ok(out)
    }

    fn pair(&self, a: &Comb, b: &Comb) -> Option<Comb> {
        self.run(&Comb::apps(cpair(), [a.clone(), b.clone()])).ok().flatten()
    }

    fn name(&self) -> String {
        let n = self.fresh.get();
        self.fresh.set(n + 1);
        format!("_y{n}")
    }

    /// `r_A`, a closed code taking the free variables of `A` in order.
    /// Registers the ε constants it needs.
    pub fn canonical_realizer(&mut self, a: &Formula) -> Result<Comb, RealizeError> {
        let a = desugar_first_order(a)?;
        let params = a.free_vars();
        let scope: BTreeMap<Var, Open> = params.iter().map(|v| (v.clone(), Open::var(&var_name(v)))).collect();
        let body = self.open(&a, &scope, None)?;
        let names: Vec<String> = params.iter().map(var_name).collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        close(&abstract_many(&names, &body)).map_err(|e| RealizeError::Unsupported(e.to_string()))
    }

    /// `lam` is the innermost λ-bound name. A closed ε under a λ is given
    /// the dummy argument `K 0 y`, so that `λy. ε` stays a value instead of
    /// running the search when the code is built.
    fn open(&mut self, a: &Formula, scope: &BTreeMap<Var, Open>, lam: Option<&str>) -> Result<Open, RealizeError> {
        Ok(match a {
            Formula::Eq(..) => Open::Const(Comb::Num(0)),
            Formula::And(l, r) => Open::apps(Open::Const(cpair()), [self.open(l, scope, lam)?, self.open(r, scope, lam)?]),
            Formula::Imp(_, r) => {
                let y = self.name();
                abstract_open(&y, &self.open(r, scope, Some(&y))?)
            }
            Formula::Exists(v, body) => {
                let mut oracle = epsilon(a, self.cutoff)?;
                let mut lam_arg = None;
                if let (true, Some(y)) = (oracle.params().is_empty(), lam) {
                    let d = Term::Var(Var::new("_d", 0));
                    let padded = Formula::exists(v.clone(), Formula::and((**body).clone(), Formula::eq(d.clone(), d)));
                    oracle = epsilon(&padded, self.cutoff)?;
                    lam_arg = Some(Open::apps(Open::Const(Comb::K), [Open::Const(Comb::Num(0)), Open::var(y)]));
                }
                let params = oracle.params().to_vec();
                let id = self.table.register(oracle);
                let args: Vec<Open> = match lam_arg {
                    Some(y) => vec![y],
                    None => params.iter().map(|p| scope.get(p).cloned().unwrap_or_else(|| Open::var(&var_name(p)))).collect(),
                };
                let eps = Open::apps(Open::Const(Comb::Eps(id)), args);
                let mut inner = scope.clone();
                inner.insert(v.clone(), eps.clone());
                Open::apps(Open::Const(cpair()), [eps, self.open(body, &inner, lam)?])
            }
            Formula::Forall(v, body) => {
                let y = self.name();
                let mut inner = scope.clone();
                inner.insert(v.clone(), Open::var(&y));
                abstract_open(&y, &self.open(body, &inner, Some(&y))?)
            }
            other => return Err(RealizeError::Unsupported(format!("`{other}` is not a desugared first-order formula"))),
        })
    }

    /// `r_A x⃗` at the environment's values; `None` when undefined or out
    /// of budget.
    pub fn instantiate(&self, r: &Comb, a: &Formula, env: &Env) -> Result<Option<Comb>, RealizeError> {
        Ok(self.run_at(r, a, env)?.unwrap_or(None))
    }

    /// Like [`instantiate`](Self::instantiate) with out of budget as `None`.
    fn run_at(&self, r: &Comb, a: &Formula, env: &Env) -> Result<Option<Option<Comb>>, RealizeError> {
        let args = nat_args(a, env)?;
        let t = Comb::apps(r.clone(), args.into_iter().map(Comb::Num));
        Ok(self.run(&t).ok())
    }
}

fn var_name(v: &Var) -> String {
    format!("x_{}", v.name)
}

fn nat_args(a: &Formula, env: &Env) -> Result<Vec<u64>, RealizeError> {
    a.free_vars()
        .iter()
        .map(|v| {
            env.get(v)
                .and_then(Obj::as_nat)
                .ok_or_else(|| RealizeError::Unsupported(format!("no natural bound to `{}`", v.name)))
        })
        .collect()
}

/// `⟨z,z′⟩ ∈ ⟦Aᵒ⟧` without ε constants.
pub fn realizes(z: &Comb, z2: &Comb, a: &Formula, env: &Env, cutoff: u64, steps: u64) -> Result<Tri, RealizeError> {
    let a = desugar_first_order(a)?;
    Realizability::new(cutoff).with_steps(steps).realizes(z, z2, &a, env)
}

/// `r_A` with the table answering its ε constants.
pub fn canonical_realizer(a: &Formula, cutoff: u64) -> Result<(Comb, Realizability), RealizeError> {
    let mut r = Realizability::new(cutoff);
    let code = r.canonical_realizer(a)?;
    Ok((code, r))
}

/// Details of a soundness check.
#[derive(Clone, Debug)]
pub struct Soundness {
    pub realizer: Comb,
    /// `r_A x⃗`, when it is defined.
    pub value: Option<Comb>,
    pub verdict: Verdict,
}

/// Compare `r_A x⃗↓ ∧ ⟨r_A x⃗, r_A x⃗⟩ ∈ ⟦Aᵒ⟧` with the bounded truth of `A`.
pub fn check_relevant_soundness(a: &Formula, env: &Env, cutoff: u64, steps: u64) -> Result<Soundness, RealizeError> {
    let d = desugar_first_order(a)?;
    let mut r = Realizability::new(cutoff).with_steps(steps);
    let code = r.canonical_realizer(&d)?;
    let run = r.run_at(&code, &d, env)?;
    let model = match &run {
        Some(Some(z)) => r.realizes(z, z, &d, env)?,
        Some(None) => Tri::False,
        None => Tri::Unknown,
    };
    let value = run.flatten();
    let truth = Evaluator::new(bounds(cutoff, steps)).eval(a, env)?;
    Ok(Soundness { realizer: code, value, verdict: Verdict { model, truth } })
}

/// Compare `∗ ∈ ⟦A•⟧(G_A)` in the model with the bounded truth of `A`. The
/// point `G_A` sends each free variable of sort `n` through `g_n`.
pub fn check_irrelevant_equiv(a: &Formula, env: &Env, world: &World) -> Result<Verdict, RealizeError> {
    let ty = translate(a, Mode::Irrelevant)?;
    let point = a
        .free_vars()
        .iter()
        .map(|v| {
            let x = env.get(v).ok_or_else(|| RealizeError::Unsupported(format!("no value bound to `{}`", v.name)))?;
            g(world, v.sort, x)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let model = inhabited_at(world, &point, &ty)?;
    let truth = Evaluator::new(bounds(world.cutoff, world.budget.steps)).eval(a, env)?;
    Ok(Verdict { model, truth })
}

/// Outcome of the choice demonstration.
#[derive(Clone, Debug)]
pub struct ChoiceDemo {
    /// `c` with `c h x = pr₀ (h x)` on every checked realizer `h`.
    pub tracker: Option<Comb>,
    /// Realizers `h` of `∀x ∃y ⟨x,y⟩ ∈ Z` checked, one per choice function.
    pub checked: usize,
    /// Candidates tried before the tracker was found.
    pub tried: usize,
}

/// The relevant content of choice over `{0..n-1}`: from a realizer `h` of
/// `∀x ∃y ⟨x,y⟩ ∈ Z` (so `h x = ⟨y, w⟩` with `⟨x,y⟩ ∈ Z`) a tracker must
/// produce a function `F` with `⟨x, F x⟩ ∈ Z`. Every `Z` realized by `h`
/// contains the pairs `h` picks, so checking one `h` per choice function
/// covers every `Z`. The tracker is searched among small codes after a few
/// seeded shapes.
pub fn choice_demo(n: u64, codes: u64, steps: u64) -> ChoiceDemo {
    let h_of = |choice: &[u64]| -> Comb {
        let entries: Vec<Comb> = choice
            .iter()
            .map(|y| match Machine::new(steps).eval(&Comb::apps(cpair(), [Comb::Num(*y), Comb::Num(0)])) {
                Ok(EvalOutcome::Value(v)) => v,
                _ => unreachable!("pairs of numerals evaluate"),
            })
            .collect();
        case_table(&entries)
    };
    let choices: Vec<Vec<u64>> = (0..n.pow(n as u32))
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let d = k % n;
                    k /= n;
                    d
                })
                .collect()
        })
        .collect();
    let hs: Vec<(Vec<u64>, Comb)> = choices.iter().map(|c| (c.clone(), h_of(c))).collect();
    let works = |c: &Comb| {
        hs.iter().all(|(choice, h)| {
            let Ok(EvalOutcome::Value(f)) = Machine::new(steps).apply(c, h) else { return false };
            (0..n).all(|x| matches!(Machine::new(steps).apply(&f, &Comb::Num(x)), Ok(EvalOutcome::Value(v)) if v.as_num() == Some(choice[x as usize])))
        })
    };
    // λh λx. pr₀ (h x), and its η-variants, before brute force
    let h_x = Open::app(Open::var("h"), Open::var("x"));
    let seeded = [
        abstract_many(&["h", "x"], &Open::app(Open::Const(cfst()), h_x.clone())),
        abstract_many(&["h", "x"], &Open::app(Open::Const(csnd()), h_x)),
        abstract_many(&["h"], &Open::var("h")),
    ];
    let seeded = seeded.iter().filter_map(|o| close(o).ok());
    let brute = (0..codes).map(Comb::from_code_u64).filter(|c| c.is_value());
    let mut tried = 0;
    let mut tracker = None;
    for c in brute.chain(seeded) {
        tried += 1;
        if works(&c) {
            tracker = Some(c);
            break;
        }
    }
    ChoiceDemo { tracker, checked: hs.len(), tried }
}

/// A corpus sentence with its expected bounded truth value.
#[derive(Clone, Debug)]
pub struct Entry {
    pub line: usize,
    pub expect: bool,
    /// Budget-sensitive: `unknown` is acceptable.
    pub flagged: bool,
    pub env: Env,
    pub formula: Formula,
}

/// Parse `expect | bindings | formula` lines. `expect` is `true` or `false`,
/// with a trailing `?` for flagged entries; bindings are comma-separated
/// `x=3` or `Y:1={0,2}`. `#` starts a comment.
pub fn parse_corpus(src: &str) -> Result<Vec<Entry>, RealizeError> {
    let mut out = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let err = |msg: &str| RealizeError::Corpus { line, msg: msg.to_string() };
        let parts: Vec<&str> = text.splitn(3, '|').map(str::trim).collect();
        let [expect, binds, formula] = parts[..] else { return Err(err("expected `expect | bindings | formula`")) };
        let flagged = expect.ends_with('?');
        let expect = match expect.trim_end_matches('?') {
            "true" => true,
            "false" => false,
            _ => return Err(err("expectation must be true or false")),
        };
        let env = parse_bindings(binds).map_err(|msg| err(&msg))?;
        let formula = crate::holog::parse_formula(formula).map_err(|e| err(&e.to_string()))?;
        out.push(Entry { line, expect, flagged, env, formula });
    }
    Ok(out)
}

/// Comma-separated bindings `x=3` or `Y:1={0,2}`.
pub fn parse_bindings(binds: &str) -> Result<Env, String> {
    let mut env = Env::new();
    for b in split_top(binds).into_iter().map(str::trim).filter(|b| !b.is_empty()) {
        let (lhs, rhs) = b.split_once('=').ok_or("binding without `=`")?;
        let (name, sort) = match lhs.trim().split_once(':') {
            Some((n, s)) => (n.trim(), s.trim().parse::<u32>().map_err(|_| "bad sort")?),
            None => (lhs.trim(), 0),
        };
        let value = parse_value(rhs.trim()).ok_or("bad value")?;
        env = env.with(Var::new(name, sort), value);
    }
    Ok(env)
}

/// Split on commas outside braces.
fn split_top(s: &str) -> Vec<&str> {
    let (mut out, mut depth, mut start) = (Vec::new(), 0i32, 0);
    for (k, ch) in s.char_indices() {
        match ch {
            '{' => depth += 1,
            '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_value(s: &str) -> Option<Obj> {
    if let Some(inner) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
        let items = split_top(inner).into_iter().map(str::trim).filter(|p| !p.is_empty());
        return items.map(parse_value).collect::<Option<_>>().map(Obj::Set);
    }
    s.parse::<u64>().ok().map(Obj::nat)
}

/// The curated first-order corpus for the soundness harness.
pub const FIRST_ORDER_CORPUS: &str = include_str!("../../corpus/first_order.txt");

/// The corpus for the irrelevant equivalence harness.
pub const IRRELEVANT_CORPUS: &str = include_str!("../../corpus/irrelevant.txt");
