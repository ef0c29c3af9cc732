//! Denotation of kernel judgments in a bounded world.
//!
//! `ℕ` is observed on `0..=cutoff`; a type built from `ℕ` is enumerated from
//! that window, so `𝒫ℕ` is every predicate on the window, and so on up. This
//! is the world `holog::eval_bounded` quantifies over when its base segment
//! is `0..=cutoff`.
//!
//! Terms evaluate to [`Val`]s: elements, or closures for λ and eliminator
//! spines so that arithmetic beyond the window still computes. Closures are
//! tabulated over their domain only when an element is needed.

use std::rc::Rc;

use super::asm::{
    embed_per_to_assembly, fin, nabla, nat_upto, pair_code, pi, quot, sigma, subsing_assembly, subsing_eq,
    subsingletons, subtree, trunc, tree_of, wtype, Assembly, Budget, SemSet, Subsingleton, Universe,
};
use super::sem::Sem;
use super::ModelError;
use crate::kernel::{Sort, Term};
use crate::pca::library::{cfst, cpair, csnd, ifz, pred};
use crate::pca::{abstract_open, close, Comb, Open};
use crate::Tri;

/// The bounded world judgments are interpreted in.
#[derive(Clone, Debug)]
pub struct World {
    pub cutoff: u64,
    /// Height bound for W-types.
    pub depth: usize,
    pub budget: Budget,
}

impl World {
    pub fn new(cutoff: u64) -> World {
        World { cutoff, depth: 2, budget: Budget::default() }
    }

    /// `g₀(x) = {x}`: the element of `⟦ℕ⟧` for `x`.
    pub fn nat(&self, n: u64) -> Sem {
        Sem::Set([Sem::nat(n)].into())
    }
}

/// A value: an element, or a function not yet tabulated.
#[derive(Clone)]
enum Val {
    El(Sem),
    /// `λ(x:A) body` in an environment.
    Lam(Env, Rc<Term>, Rc<Term>),
    /// An eliminator or axiom constant with the arguments it has received.
    Spine(Env, Rc<Term>, Vec<Val>),
}

type Env = Rc<Vec<Val>>;

fn push(env: &Env, v: Val) -> Env {
    let mut e = (**env).clone();
    e.push(v);
    Rc::new(e)
}

fn unsupported<T>(what: &str) -> Result<T, ModelError> {
    Err(ModelError::Unsupported(what.to_string()))
}

struct Interp<'w> {
    w: &'w World,
}

impl Interp<'_> {
    fn lookup(&self, env: &Env, i: usize) -> Result<Val, ModelError> {
        env.len()
            .checked_sub(i + 1)
            .map(|k| env[k].clone())
            .ok_or_else(|| ModelError::Shape(format!("variable #{i} is unbound")))
    }

    /// `⟦Γ ⊢ A⟧(G)`.
    fn ty(&self, env: &Env, t: &Term) -> Result<Assembly, ModelError> {
        let b = &self.w.budget;
        match t {
            Term::Sort(Sort::Prop) => Ok(nabla("Prop", subsingletons())),
            Term::Sort(Sort::Set) => Ok(nabla("Set", SemSet { level: 1, elements: Vec::new(), complete: false })),
            Term::Sort(Sort::Type) => unsupported("the sort Type has no denotation"),
            Term::Nat => {
                // the window is all of ℕ in this world
                let mut n = embed_per_to_assembly(&nat_upto(self.w.cutoff));
                n.domain.complete = true;
                Ok(n)
            }
            Term::Fin(n) => Ok(embed_per_to_assembly(&fin(*n))),
            Term::Pi(_, a, body) => {
                let dom = self.ty(env, a)?;
                pi(&dom, &|x| self.ty(&push(env, Val::El(x.clone())), body), b)
            }
            Term::Sigma(_, a, body) => {
                let dom = self.ty(env, a)?;
                sigma(&dom, &|x| self.ty(&push(env, Val::El(x.clone())), body), b)
            }
            Term::W(_, a, body) => {
                let dom = self.ty(env, a)?;
                wtype(&dom, &|x| self.ty(&push(env, Val::El(x.clone())), body), self.w.depth, b)
            }
            Term::Id(_, x, y) => {
                let (x, y) = (self.elem(env, x)?, self.elem(env, y)?);
                Ok(subsing_assembly(subsing_eq(&x, &y)))
            }
            Term::Trunc(a) => Ok(subsing_assembly(trunc(&self.ty(env, a)?))),
            Term::Quot(a, _, r) => {
                let dom = self.ty(env, a)?;
                quot(&dom, &|x, y| self.ty(&push(&push(env, Val::El(x.clone())), Val::El(y.clone())), r), b)
            }
            Term::Ann(a, _) => self.ty(env, a),
            other => {
                // a neutral type: its value must be a proposition
                let v = self.elem(env, other)?;
                match v.as_set() {
                    Some(s) if s.is_empty() || v == Sem::subsingleton(true) => {
                        Ok(subsing_assembly(Subsingleton::new(Tri::from_bool(v.has_star()))))
                    }
                    _ => unsupported("a type whose value is not a proposition"),
                }
            }
        }
    }

    fn is_type_former(t: &Term) -> bool {
        matches!(
            t,
            Term::Sort(_) | Term::Nat | Term::Fin(_) | Term::Pi(..) | Term::Sigma(..) | Term::W(..) | Term::Id(..) | Term::Trunc(..) | Term::Quot(..)
        )
    }

    fn eval(&self, env: &Env, t: &Term) -> Result<Val, ModelError> {
        Ok(match t {
            Term::Var(i) => self.lookup(env, *i)?,
            Term::Lam(_, a, body) => Val::Lam(env.clone(), a.clone(), body.clone()),
            Term::App(f, a) => {
                let f = self.eval(env, f)?;
                let a = self.eval(env, a)?;
                self.apply(f, a)?
            }
            Term::IndNat(..)
            | Term::IndFin(..)
            | Term::IndSigma(..)
            | Term::IndW(..)
            | Term::IndEq(..)
            | Term::IndTrunc(..)
            | Term::IndQuot(..)
            | Term::QuotAx(_)
            | Term::Propext => Val::Spine(env.clone(), Rc::new(t.clone()), Vec::new()),
            Term::Ann(a, _) => self.eval(env, a)?,
            Term::Transport(_, _, _, _, u) => self.eval(env, u)?,
            _ => Val::El(self.elem(env, t)?),
        })
    }

    /// The element a term denotes.
    fn elem(&self, env: &Env, t: &Term) -> Result<Sem, ModelError> {
        match t {
            Term::Zero => Ok(self.w.nat(0)),
            Term::Succ(a) => {
                let n = nat_of(&self.elem(env, a)?)?;
                Ok(self.w.nat(n + 1))
            }
            Term::FinEl(k, _) => Ok(self.w.nat(*k)),
            Term::Pair(a, b) => Ok(Sem::pair(self.elem(env, a)?, self.elem(env, b)?)),
            Term::Refl(_) | Term::TruncIn(_) => Ok(Sem::star()),
            Term::Class(q, a) => {
                let q = self.ty(env, q)?;
                let x = self.elem(env, a)?;
                q.elements()
                    .iter()
                    .find(|c| c.as_set().is_some_and(|s| s.contains(&x)))
                    .cloned()
                    .ok_or_else(|| ModelError::Unknown("the class of an element outside the window".into()))
            }
            Term::Tree(a, f) => {
                let label = self.elem(env, a)?;
                let Sem::Fun(g) = self.elem(env, f)? else { return Err(ModelError::Shape("tree branches".into())) };
                let kids: Vec<(Sem, Sem)> = g.into_iter().collect();
                Ok(tree_of(&label, &kids))
            }
            t if Self::is_type_former(t) => {
                let a = self.ty(env, t)?;
                if a.universe != Universe::Prop {
                    return unsupported("a Set- or Type-valued type used as a value");
                }
                Subsingleton::new(a.inhabited()).to_sem()
            }
            _ => {
                let v = self.eval(env, t)?;
                self.reify(v)
            }
        }
    }

    /// Tabulate a value over its domain.
    fn reify(&self, v: Val) -> Result<Sem, ModelError> {
        match v {
            Val::El(x) => Ok(x),
            Val::Lam(ref env, ref a, _) => {
                let dom = self.ty(env, a)?;
                self.tabulate(&dom, &v)
            }
            Val::Spine(ref env, ref head, ref args) => match (&**head, args.len()) {
                (Term::Propext | Term::QuotAx(_), _) => Ok(Sem::star()),
                (Term::IndNat(..), 0) => {
                    let dom = self.ty(env, &Term::Nat)?;
                    self.tabulate(&dom, &v)
                }
                (Term::IndFin(n, ..), 0) => self.tabulate(&embed_per_to_assembly(&fin(*n)), &v),
                (Term::IndSigma(s, ..) | Term::IndW(s, ..) | Term::IndQuot(s, ..), 0) => {
                    let dom = self.ty(env, s)?;
                    self.tabulate(&dom, &v)
                }
                (Term::IndTrunc(a, ..), 0) => {
                    let dom = self.ty(env, &Term::Trunc(a.clone()))?;
                    self.tabulate(&dom, &v)
                }
                (Term::IndEq(a, ..), k) if k < 3 => {
                    let dom = match k {
                        0 | 1 => self.ty(env, a)?,
                        _ => subsing_assembly(subsing_eq(&self.reify(args[0].clone())?, &self.reify(args[1].clone())?)),
                    };
                    self.tabulate(&dom, &v)
                }
                _ => Err(ModelError::Shape("an over-applied eliminator".into())),
            },
        }
    }

    fn tabulate(&self, dom: &Assembly, f: &Val) -> Result<Sem, ModelError> {
        let mut g = std::collections::BTreeMap::new();
        for x in dom.elements() {
            let y = self.apply(f.clone(), Val::El(x.clone()))?;
            g.insert(x.clone(), self.reify(y)?);
        }
        Ok(Sem::Fun(g))
    }

    fn apply(&self, f: Val, a: Val) -> Result<Val, ModelError> {
        match f {
            Val::Lam(env, _, body) => self.eval(&push(&env, a), &body),
            Val::El(Sem::Fun(g)) => {
                let x = self.reify(a)?;
                g.get(&x)
                    .cloned()
                    .map(Val::El)
                    .ok_or_else(|| ModelError::Unknown(format!("argument {x} outside the tabulated domain")))
            }
            Val::El(x) => Err(ModelError::Shape(format!("{x} applied as a function"))),
            Val::Spine(env, head, mut args) => {
                args.push(a);
                self.spine(env, head, args)
            }
        }
    }

    fn spine(&self, env: Env, head: Rc<Term>, args: Vec<Val>) -> Result<Val, ModelError> {
        let pending = |args| Ok(Val::Spine(env.clone(), head.clone(), args));
        match &*head {
            Term::Propext | Term::QuotAx(_) => {
                if args.len() < 3 {
                    pending(args)
                } else {
                    Ok(Val::El(Sem::star()))
                }
            }
            Term::IndNat(_, _, z, s) => {
                let n = nat_of(&self.reify(args[0].clone())?)?;
                let mut acc = self.eval(&env, z)?;
                let step = self.eval(&env, s)?;
                for i in 0..n {
                    let partial = self.apply(step.clone(), Val::El(self.w.nat(i)))?;
                    acc = self.apply(partial, acc)?;
                }
                Ok(acc)
            }
            Term::IndFin(n, _, _, cases) => {
                let k = nat_of(&self.reify(args[0].clone())?)?;
                if k >= *n {
                    return Err(ModelError::Shape(format!("{k} is not below {n}")));
                }
                self.eval(&env, &cases[k as usize])
            }
            Term::IndSigma(_, _, _, f) => {
                let p = self.reify(args[0].clone())?;
                let (x, y) = p.split().ok_or_else(|| ModelError::Shape("Σ eliminator on a non-pair".into()))?;
                let f = self.eval(&env, f)?;
                let f = self.apply(f, Val::El(x.clone()))?;
                self.apply(f, Val::El(y.clone()))
            }
            Term::IndEq(_, _, _, f) => {
                if args.len() < 3 {
                    return pending(args);
                }
                let f = self.eval(&env, f)?;
                self.apply(f, args[0].clone())
            }
            Term::IndTrunc(a, _, _, f, _) => {
                // any element of A; the result does not depend on which
                let dom = self.ty(&env, a)?;
                let f = self.eval(&env, f)?;
                let mut out: Option<Sem> = None;
                for x in dom.elements() {
                    let y = self.reify(self.apply(f.clone(), Val::El(x.clone()))?)?;
                    if out.as_ref().is_some_and(|o| *o != y) {
                        return Err(ModelError::Shape("truncation eliminator depends on the chosen element".into()));
                    }
                    out = Some(y);
                }
                out.map(Val::El).ok_or_else(|| ModelError::Shape("truncation of an empty type".into()))
            }
            Term::IndQuot(_, _, _, f, _) => {
                let q = self.reify(args[0].clone())?;
                let members = q.as_set().ok_or_else(|| ModelError::Shape("quotient eliminator on a non-class".into()))?;
                let f = self.eval(&env, f)?;
                let mut out: Option<Sem> = None;
                for x in members {
                    let y = self.reify(self.apply(f.clone(), Val::El(x.clone()))?)?;
                    if out.as_ref().is_some_and(|o| *o != y) {
                        return Err(ModelError::Shape("quotient eliminator does not respect the relation".into()));
                    }
                    out = Some(y);
                }
                out.map(Val::El).ok_or_else(|| ModelError::Shape("empty class".into()))
            }
            Term::IndW(..) => {
                let t = self.reify(args[0].clone())?;
                self.w_rec(&env, &head, &t)
            }
            _ => Err(ModelError::Shape("not an eliminator".into())),
        }
    }

    fn w_rec(&self, env: &Env, head: &Rc<Term>, t: &Sem) -> Result<Val, ModelError> {
        let Term::IndW(_, _, _, f) = &**head else { unreachable!() };
        let root = t.root().ok_or_else(|| ModelError::Shape("W eliminator on a non-tree".into()))?.clone();
        let Sem::Tree(paths) = t else { unreachable!() };
        let edges: std::collections::BTreeSet<Sem> =
            paths.iter().filter(|p| p.len() >= 3).map(|p| p[1].clone()).collect();
        let mut d = std::collections::BTreeMap::new();
        let mut ih = std::collections::BTreeMap::new();
        for e in edges {
            let sub = subtree(t, &e).ok_or_else(|| ModelError::Shape("dangling edge".into()))?;
            ih.insert(e.clone(), self.reify(self.w_rec(env, head, &sub)?)?);
            d.insert(e, sub);
        }
        let f = self.eval(env, f)?;
        let f = self.apply(f, Val::El(root))?;
        let f = self.apply(f, Val::El(Sem::Fun(d)))?;
        self.apply(f, Val::El(Sem::Fun(ih)))
    }
}

fn nat_of(x: &Sem) -> Result<u64, ModelError> {
    match x.as_set().map(|s| s.iter().collect::<Vec<_>>()).as_deref() {
        Some([one]) => one.as_nat().ok_or_else(|| ModelError::Shape(format!("{x} is not a natural"))),
        _ => Err(ModelError::Shape(format!("{x} is not a natural"))),
    }
}

/// What a judgment denotes at every point of its context.
#[derive(Clone, Debug)]
pub struct Denotation {
    /// Context points visited.
    pub points: usize,
    /// Elements of the type at each point, in order.
    pub type_sizes: Vec<usize>,
    /// Largest level of the type's assembly.
    pub level: u32,
    /// The term's value at each point, when a term was given.
    pub values: Vec<Sem>,
    /// The value lies in the type at every point.
    pub well_typed: Tri,
    /// Synthesized tracker for the term, when the term is in the fragment
    /// covered by synthesis.
    pub tracker: Option<Comb>,
    /// The tracker maps each context realizer to a realizer of the value.
    pub tracked: Tri,
}

/// `⟨⟨⟨0, a₁⟩, a₂⟩, …⟩`, the realizer of a context point.
pub fn context_realizer(parts: &[Comb], b: &Budget) -> Option<Comb> {
    parts.iter().try_fold(Comb::Num(0), |g, a| pair_code(&g, a, b))
}

/// Interpret `Γ ⊢ A` or `Γ ⊢ t : A`. Context entries are named types, the
/// first entry outermost.
pub fn denote_judgment(
    world: &World,
    ctx: &[(String, Term)],
    term: Option<&Term>,
    ty: &Term,
) -> Result<Denotation, ModelError> {
    let it = Interp { w: world };
    let b = &world.budget;
    // context points with realizers
    let mut points: Vec<(Env, Comb)> = vec![(Rc::new(Vec::new()), Comb::Num(0))];
    for (_, a) in ctx {
        let mut next = Vec::new();
        for (env, g) in &points {
            let asm = it.ty(env, a)?;
            for x in asm.elements() {
                let Some(r) = asm.realizer(x, b) else { continue };
                let Some(g2) = pair_code(g, &r, b) else { continue };
                next.push((push(env, Val::El(x.clone())), g2));
                if next.len() > b.elements {
                    return Err(ModelError::Resource { what: "context".into(), limit: b.elements });
                }
            }
        }
        points = next;
    }
    let tracker = match term {
        Some(t) => tracker_of(t, ctx.len()),
        None => None,
    };
    let mut out = Denotation {
        points: points.len(),
        type_sizes: Vec::new(),
        level: 0,
        values: Vec::new(),
        well_typed: Tri::True,
        tracker: tracker.clone(),
        tracked: if term.is_some() && tracker.is_some() { Tri::True } else { Tri::Unknown },
    };
    for (env, g) in &points {
        let asm = it.ty(env, ty)?;
        out.type_sizes.push(asm.elements().len());
        out.level = out.level.max(asm.level);
        let Some(t) = term else { continue };
        let v = it.elem(env, t)?;
        out.well_typed = out.well_typed.and(asm.contains(&v, b));
        if let Some(f) = &tracker {
            let got = match super::asm::app(f, g, b).value() {
                Some(r) => asm.realizes(&r, &v, b),
                None => Tri::False,
            };
            out.tracked = out.tracked.and(got);
        }
        out.values.push(v);
    }
    Ok(out)
}

/// Whether `⟦Γ ⊢ A⟧(G)` is inhabited at the point `G`, given as one element
/// per context entry, outermost first.
pub fn inhabited_at(world: &World, point: &[Sem], ty: &Term) -> Result<Tri, ModelError> {
    let env: Env = Rc::new(point.iter().cloned().map(Val::El).collect());
    Ok(Interp { w: world }.ty(&env, ty)?.inhabited())
}

/// The elements of `⟦Γ ⊢ A⟧(G)` at a point.
pub fn elements_at(world: &World, point: &[Sem], ty: &Term) -> Result<Vec<Sem>, ModelError> {
    let env: Env = Rc::new(point.iter().cloned().map(Val::El).collect());
    Ok(Interp { w: world }.ty(&env, ty)?.elements().to_vec())
}

/// A code taking the context realizer to a realizer of the term's value.
/// Truncation and W eliminators are outside the synthesized fragment.
pub fn tracker_of(t: &Term, ctx_len: usize) -> Option<Comb> {
    let g = "g";
    let body = Synth { fresh: std::cell::Cell::new(0) }.term(t, &Open::var(g), ctx_len)?;
    close(&abstract_open(g, &body)).ok()
}

struct Synth {
    fresh: std::cell::Cell<usize>,
}

fn c(x: Comb) -> Open {
    Open::Const(x)
}

impl Synth {
    fn name(&self) -> String {
        let n = self.fresh.get();
        self.fresh.set(n + 1);
        format!("v{n}")
    }

    fn lam(&self, body: impl FnOnce(Open) -> Option<Open>) -> Option<Open> {
        let x = self.name();
        Some(abstract_open(&x, &body(Open::var(&x))?))
    }

    fn var(&self, g: &Open, i: usize) -> Open {
        let mut cur = g.clone();
        for _ in 0..i {
            cur = Open::app(c(cfst()), cur);
        }
        Open::app(c(csnd()), cur)
    }

    fn pair(a: Open, b: Open) -> Open {
        Open::apps(c(cpair()), [a, b])
    }

    fn term(&self, t: &Term, g: &Open, depth: usize) -> Option<Open> {
        let _ = depth;
        Some(match t {
            Term::Var(i) => self.var(g, *i),
            Term::Zero => c(Comb::Num(0)),
            Term::Succ(a) => Open::Succ(Box::new(self.term(a, g, depth)?)),
            Term::FinEl(k, _) => c(Comb::Num(*k)),
            Term::Lam(_, _, body) => self.lam(|x| self.term(body, &Self::pair(g.clone(), x), depth + 1))?,
            Term::App(f, a) => Open::app(self.term(f, g, depth)?, self.term(a, g, depth)?),
            Term::Pair(a, b) => Self::pair(self.term(a, g, depth)?, self.term(b, g, depth)?),
            Term::Tree(a, f) => Self::pair(self.term(a, g, depth)?, self.term(f, g, depth)?),
            Term::Refl(_) | Term::TruncIn(_) | Term::Sort(_) => c(Comb::Num(0)),
            t if Interp::is_type_former(t) => c(Comb::Num(0)),
            Term::Propext | Term::QuotAx(_) => {
                let k0 = Comb::app(Comb::K, Comb::Num(0));
                c(Comb::app(Comb::K, Comb::app(Comb::K, k0)))
            }
            Term::Class(_, a) | Term::Ann(a, _) => self.term(a, g, depth)?,
            Term::Transport(_, _, _, _, u) => self.term(u, g, depth)?,
            Term::IndNat(_, _, z, s) => Open::apps(c(Comb::Rec), [self.term(z, g, depth)?, self.term(s, g, depth)?]),
            Term::IndFin(_, _, _, cases) => {
                let cs = cases.iter().map(|k| self.term(k, g, depth)).collect::<Option<Vec<_>>>()?;
                if cs.is_empty() {
                    // no element to eliminate
                    return Some(c(Comb::K));
                }
                self.lam(|k| Some(self.select(&cs, k)))?
            }
            Term::IndSigma(_, _, _, f) => {
                let f = self.term(f, g, depth)?;
                self.lam(|p| Some(Open::apps(f, [Open::app(c(cfst()), p.clone()), Open::app(c(csnd()), p)])))?
            }
            Term::IndEq(_, _, _, f) => {
                let f = self.term(f, g, depth)?;
                let (x, y, e) = (self.name(), self.name(), self.name());
                let body = Open::app(f, Open::var(&x));
                abstract_open(&x, &abstract_open(&y, &abstract_open(&e, &body)))
            }
            Term::IndQuot(_, _, _, f, _) => self.term(f, g, depth)?,
            _ => return None,
        })
    }

    /// `ifz k (λ_. c₀) (λ_. select rest (pred k))`.
    fn select(&self, cs: &[Open], k: Open) -> Open {
        if cs.len() == 1 {
            return cs[0].clone();
        }
        let d = self.name();
        let first = abstract_open(&d, &cs[0]);
        let rest = self.select(&cs[1..], Open::app(c(pred()), k.clone()));
        let d2 = self.name();
        Open::apps(c(ifz()), [k, first, abstract_open(&d2, &rest)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::parse_term;

    fn ty(src: &str) -> Term {
        parse_term(src, &Default::default()).unwrap()
    }

    #[test]
    fn successor_at_three() {
        let w = World::new(8);
        let ctx = vec![("x".to_string(), Term::Nat)];
        let d = denote_judgment(&w, &ctx, Some(&Term::Succ(Term::Var(0).into())), &Term::Nat).unwrap();
        assert_eq!(d.points, 9);
        assert_eq!(d.values[3], w.nat(4));
        assert!(d.well_typed.is_true());
        assert!(d.tracked.is_true());
    }

    #[test]
    fn closed_types() {
        let w = World::new(3);
        let d = denote_judgment(&w, &[], None, &ty("Fin 2 -> Fin 3")).unwrap();
        assert_eq!(d.type_sizes, vec![9]);
        let d = denote_judgment(&w, &[], None, &ty("Nat -> Prop")).unwrap();
        assert_eq!(d.type_sizes, vec![16]);
        let d = denote_judgment(&w, &[], None, &ty("Pi (n : Nat), Id Nat n n")).unwrap();
        assert_eq!(d.type_sizes, vec![1]);
    }

    #[test]
    fn trackers_realize_values() {
        let w = World::new(4);
        for (t, a) in [
            ("fun (x : Nat) => S (S x)", "Nat -> Nat"),
            ("(0, S 0)", "Nat * Nat"),
            ("ind_fin 2 (k. Nat) 3 5 (fin 1 2)", "Nat"),
            ("fun (p : Nat * Fin 2) => ind_sig (Nat * Fin 2) (q. Nat) (fun (a : Nat) (b : Fin 2) => a) p", "Nat * Fin 2 -> Nat"),
        ] {
            let d = denote_judgment(&w, &[], Some(&ty(t)), &ty(a)).unwrap_or_else(|e| panic!("{t}: {e}"));
            assert!(d.well_typed.is_true(), "{t}: {:?} {:?}", d.well_typed, d.values);
            assert!(d.tracked.is_true(), "{t}: {:?} {:?}", d.tracked, d.tracker);
        }
    }
}
