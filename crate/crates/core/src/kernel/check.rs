//! Bidirectional checking. Every rule that fires is recorded so a corpus
//! can assert which rules a judgment exercised.

use std::cell::RefCell;
use std::collections::BTreeSet;

use super::context::Ctx;
use super::print::show;
use super::reduce::{parts, same_head, whnf_with};
use super::term::{instantiate, occurs, shift, shift_above, subst1, Name, Sort, Term};
use super::Rejection;

/// Inferred type, or the rule whose side condition failed.
pub type TypingVerdict = Result<Term, Rejection>;

/// Default bound on hint rewrites along one conversion path.
pub const DEFAULT_FUEL: usize = 24;

/// Rule names as they appear in traces, corpus annotations and rejections.
pub const RULES: &[&str] = &[
    "start", "weakening", "axiom_P", "axiom_S", "cumul_P", "cumul_S", "convers", "reflection", "Fin-F", "Fin-I",
    "Fin-E", "Fin-beta", "Nat-F", "Nat-I0", "Nat-IS", "Nat-E", "Nat-beta0", "Nat-betaS", "Sig-F", "Sig-I", "Sig-E",
    "Sig-beta", "Pi-F", "Pi-I", "Pi-E", "Pi-beta", "W-F", "W-I", "W-E", "W-beta", "Id-F", "Id-I", "Id-E", "Id-beta",
    "Trunc-F", "Trunc-I", "Trunc-E", "Trunc-beta", "Quot-F", "Quot-I", "Quot-E", "Quot-Ieq", "Quot-beta", "propext",
    "transport",
];

pub struct Checker {
    fuel: usize,
    trace: RefCell<BTreeSet<&'static str>>,
}

impl Default for Checker {
    fn default() -> Self {
        Checker::new()
    }
}

fn rc(t: Term) -> std::rc::Rc<Term> {
    std::rc::Rc::new(t)
}

/// `C` bound over `k` variables, moved under `extra` fresh binders and then
/// instantiated with `args` (which live under those binders).
fn motive_at(c: &Term, k: usize, extra: usize, args: &[Term]) -> Term {
    instantiate(&shift_above(c, k, extra), args)
}

impl Checker {
    pub fn new() -> Checker {
        Checker { fuel: DEFAULT_FUEL, trace: RefCell::new(BTreeSet::new()) }
    }

    pub fn with_fuel(fuel: usize) -> Checker {
        Checker { fuel, trace: RefCell::new(BTreeSet::new()) }
    }

    /// Rules fired since construction or the last [`Checker::reset`].
    pub fn rules_used(&self) -> BTreeSet<&'static str> {
        self.trace.borrow().clone()
    }

    pub fn reset(&self) {
        self.trace.borrow_mut().clear();
    }

    fn note(&self, rule: &'static str) {
        self.trace.borrow_mut().insert(rule);
    }

    fn reject(&self, ctx: &Ctx, rule: &str, t: &Term, reason: impl Into<String>) -> Rejection {
        Rejection { rule: rule.to_string(), location: show(t, &ctx.names()), reason: reason.into() }
    }

    pub fn whnf(&self, t: &Term) -> Term {
        whnf_with(t, &|r| self.note(r))
    }

    /// Extend the context, turning an identity-typed variable into a
    /// conversion hint.
    pub fn extend(&self, ctx: &Ctx, name: &str, ty: &Term) -> Ctx {
        let out = ctx.push(name, ty.clone());
        match whnf_with(ty, &|_| {}) {
            Term::Id(_, a, b) => out.push_hint(shift(&a, 1), shift(&b, 1)),
            _ => out,
        }
    }

    /// Extend with a checked variable declaration.
    pub fn declare(&self, ctx: &Ctx, name: &str, ty: &Term) -> Result<Ctx, Rejection> {
        self.sort_of(ctx, ty, "start")?;
        Ok(self.extend(ctx, name, ty))
    }

    /// Add `lhs ≡ rhs` after checking `proof : Id ty lhs rhs`.
    pub fn declare_hint(&self, ctx: &Ctx, lhs: &Term, rhs: &Term, ty: &Term, proof: &Term) -> Result<Ctx, Rejection> {
        self.sort_of(ctx, ty, "reflection")?;
        self.check(ctx, lhs, ty)?;
        self.check(ctx, rhs, ty)?;
        let want = Term::id(ty.clone(), lhs.clone(), rhs.clone());
        self.check(ctx, proof, &want)
            .map_err(|r| Rejection { rule: "reflection".into(), location: r.location, reason: r.reason })?;
        self.note("reflection");
        Ok(ctx.push_hint(lhs.clone(), rhs.clone()))
    }

    /// The sort of a type, or a rejection naming `rule`.
    pub fn sort_of(&self, ctx: &Ctx, ty: &Term, rule: &str) -> Result<Sort, Rejection> {
        let k = self.infer(ctx, ty)?;
        match self.whnf(&k) {
            Term::Sort(s) => Ok(s),
            other => Err(self.reject(ctx, rule, ty, format!("expected a type, found a term of type {}", show(&other, &ctx.names())))),
        }
    }

    pub fn conv(&self, ctx: &Ctx, a: &Term, b: &Term) -> bool {
        self.conv_fuel(ctx, a, b, self.fuel)
    }

    fn conv_fuel(&self, ctx: &Ctx, a: &Term, b: &Term, fuel: usize) -> bool {
        if a == b {
            return true;
        }
        let a = self.whnf(a);
        let b = self.whnf(b);
        if a == b {
            return true;
        }
        if same_head(&a, &b) && self.conv_parts(ctx, &a, &b, fuel) {
            return true;
        }
        if let Some(r) = self.eta(ctx, &a, &b, fuel).or_else(|| self.eta(ctx, &b, &a, fuel)) {
            return r;
        }
        if fuel == 0 {
            return false;
        }
        let hints: Vec<(Term, Term)> = ctx.hints().collect();
        for (l, r) in hints {
            let l = whnf_with(&l, &|_| {});
            if l == a && self.conv_fuel(ctx, &r, &b, fuel - 1) || l == b && self.conv_fuel(ctx, &a, &r, fuel - 1) {
                self.note("reflection");
                return true;
            }
        }
        false
    }

    fn conv_parts(&self, ctx: &Ctx, a: &Term, b: &Term, fuel: usize) -> bool {
        let pa = parts(a);
        let pb = parts(b);
        pa.len() == pb.len()
            && pa.iter().zip(&pb).all(|(x, y)| {
                let mut c = ctx.clone();
                for (n, ty) in &x.binders {
                    c = self.extend(&c, n.as_str(), ty);
                }
                self.conv_fuel(&c, &x.body, &y.body, fuel)
            })
    }

    /// η for functions: `λx.b ≡ f` when `b ≡ f x`.
    fn eta(&self, ctx: &Ctx, lam: &Term, other: &Term, fuel: usize) -> Option<bool> {
        let Term::Lam(n, dom, body) = lam else { return None };
        if matches!(other, Term::Lam(..)) {
            return None;
        }
        let c = self.extend(ctx, n.as_str(), dom);
        let applied = Term::app(shift(other, 1), Term::Var(0));
        Some(self.conv_fuel(&c, body, &applied, fuel))
    }

    /// Cumulativity: sorts ordered Prop ≤ Set ≤ Type, Π covariant in its
    /// codomain, and conversion everywhere else.
    pub fn subtype(&self, ctx: &Ctx, a: &Term, b: &Term) -> bool {
        if self.conv(ctx, a, b) {
            return true;
        }
        match (self.whnf(a), self.whnf(b)) {
            (Term::Sort(x), Term::Sort(y)) => {
                if x > y {
                    return false;
                }
                if x == Sort::Prop {
                    self.note("cumul_P");
                }
                if y == Sort::Type {
                    self.note("cumul_S");
                }
                true
            }
            (Term::Pi(n, a1, b1), Term::Pi(_, a2, b2)) => {
                self.conv(ctx, &a1, &a2) && self.subtype(&self.extend(ctx, n.as_str(), &a1), &b1, &b2)
            }
            _ => false,
        }
    }

    fn mismatch(&self, ctx: &Ctx, t: &Term, got: &Term, want: &Term, rule: &str) -> Rejection {
        let names = ctx.names();
        let rule = match (self.whnf(got), self.whnf(want), t) {
            (_, _, Term::Sort(Sort::Prop)) => "axiom_P",
            (_, _, Term::Sort(Sort::Set)) => "axiom_S",
            (Term::Sort(Sort::Type), Term::Sort(_), _) => "cumul_S",
            (Term::Sort(_), Term::Sort(_), _) => "cumul_P",
            _ => rule,
        };
        self.reject(ctx, rule, t, format!("has type {} but {} was expected", show(got, &names), show(want, &names)))
    }

    /// Check `t` against `ty`.
    pub fn check(&self, ctx: &Ctx, t: &Term, ty: &Term) -> Result<(), Rejection> {
        self.check_as(ctx, t, ty, "convers")
    }

    /// Check `t : ty` as the premise of `rule`; a type mismatch at this
    /// level (or inside an introduction form checked against it) is
    /// reported under that rule.
    fn check_as(&self, ctx: &Ctx, t: &Term, ty: &Term, rule: &str) -> Result<(), Rejection> {
        let inner = |intro: &'static str| if rule == "convers" { intro } else { rule };
        let wty = self.whnf(ty);
        match (t, &wty) {
            (Term::Lam(n, a, b), Term::Pi(_, dom, cod)) => {
                self.sort_of(ctx, a, "Pi-I")?;
                if !self.conv(ctx, a, dom) {
                    let names = ctx.names();
                    return Err(self.reject(
                        ctx,
                        inner("Pi-I"),
                        t,
                        format!("binder type {} does not match domain {}", show(a, &names), show(dom, &names)),
                    ));
                }
                self.check_as(&self.extend(ctx, n.as_str(), a), b, cod, inner("Pi-I"))?;
                self.note("Pi-I");
                Ok(())
            }
            (Term::Pair(a, b), Term::Sigma(_, dom, cod)) => {
                self.check_as(ctx, a, dom, inner("Sig-I"))?;
                self.check_as(ctx, b, &subst1(cod, a), inner("Sig-I"))?;
                self.note("Sig-I");
                Ok(())
            }
            (Term::Tree(a, d), Term::W(_, dom, cod)) => {
                self.check_as(ctx, a, dom, inner("W-I"))?;
                self.check_as(ctx, d, &Term::arrow(subst1(cod, a), wty.clone()), inner("W-I"))?;
                self.note("W-I");
                Ok(())
            }
            (Term::TruncIn(a), Term::Trunc(dom)) => {
                self.check_as(ctx, a, dom, inner("Trunc-I"))?;
                self.note("Trunc-I");
                Ok(())
            }
            (Term::Refl(a), Term::Id(dom, x, y)) => {
                self.check_as(ctx, a, dom, inner("Id-I"))?;
                if !(self.conv(ctx, a, x) && self.conv(ctx, a, y)) {
                    let names = ctx.names();
                    return Err(self.reject(
                        ctx,
                        inner("Id-I"),
                        t,
                        format!("{} and {} are not convertible", show(x, &names), show(y, &names)),
                    ));
                }
                self.note("Id-I");
                Ok(())
            }
            _ => {
                let got = self.infer(ctx, t)?;
                if self.subtype(ctx, &got, ty) {
                    if got != *ty {
                        self.note("convers");
                    }
                    Ok(())
                } else {
                    Err(self.mismatch(ctx, t, &got, ty, rule))
                }
            }
        }
    }

    /// Check the witness that a truncation eliminator's motive is an
    /// h-proposition: `h : Π(t:‖A‖) Π(c c':C[t]) Id C[t] c c'`.
    pub fn check_hprop_obligation(&self, ctx: &Ctx, a: &Term, name: &Name, motive: &Term, h: &Term) -> Result<(), Rejection> {
        let want = Term::Pi(
            name.clone(),
            rc(Term::trunc(a.clone())),
            rc(Term::pi(
                "c",
                motive.clone(),
                Term::pi("c'", shift(motive, 1), Term::id(shift(motive, 2), Term::Var(1), Term::Var(0))),
            )),
        );
        self.check(ctx, h, &want).map_err(|r| Rejection {
            rule: "Trunc-E".into(),
            location: r.location,
            reason: format!("motive is not shown to be a proposition: {}", r.reason),
        })
    }

    fn need_sort(&self, ctx: &Ctx, ty: &Term, rule: &str) -> Result<Sort, Rejection> {
        self.sort_of(ctx, ty, rule)
    }

    fn expect(&self, ctx: &Ctx, t: &Term, ty: &Term, rule: &str, what: &str) -> Result<Term, Rejection> {
        let w = self.whnf(ty);
        let ok = match what {
            "Pi" => matches!(w, Term::Pi(..)),
            "Sig" => matches!(w, Term::Sigma(..)),
            "W" => matches!(w, Term::W(..)),
            "Id" => matches!(w, Term::Id(..)),
            "Quot" => matches!(w, Term::Quot(..)),
            _ => false,
        };
        if ok {
            Ok(w)
        } else {
            Err(self.reject(ctx, rule, t, format!("expected a {what}-type, found {}", show(&w, &ctx.names()))))
        }
    }

    /// Infer the type of `t`.
    pub fn infer(&self, ctx: &Ctx, t: &Term) -> TypingVerdict {
        match t {
            Term::Sort(Sort::Prop) => {
                self.note("axiom_P");
                Ok(Term::Sort(Sort::Type))
            }
            Term::Sort(Sort::Set) => {
                self.note("axiom_S");
                Ok(Term::Sort(Sort::Type))
            }
            Term::Sort(Sort::Type) => Err(self.reject(ctx, "axiom_P", t, "Type has no type")),
            Term::Var(i) => match ctx.lookup(*i) {
                Some((_, ty)) => {
                    self.note(if *i == 0 { "start" } else { "weakening" });
                    if *i > 0 {
                        self.note("start");
                    }
                    Ok(ty)
                }
                None => Err(self.reject(ctx, "start", t, "unbound variable")),
            },
            Term::Pi(n, a, b) => {
                self.need_sort(ctx, a, "Pi-F")?;
                let sb = self.need_sort(&self.extend(ctx, n.as_str(), a), b, "Pi-F")?;
                self.note("Pi-F");
                Ok(Term::Sort(sb))
            }
            Term::Lam(n, a, b) => {
                self.need_sort(ctx, a, "Pi-I")?;
                let tb = self.infer(&self.extend(ctx, n.as_str(), a), b)?;
                let pi = Term::Pi(n.clone(), a.clone(), rc(tb));
                self.need_sort(ctx, &pi, "Pi-I").map_err(|r| Rejection { rule: "Pi-I".into(), ..r })?;
                self.note("Pi-I");
                Ok(pi)
            }
            Term::App(f, a) => {
                let tf = self.infer(ctx, f)?;
                let Term::Pi(_, dom, cod) = self.expect(ctx, f, &tf, "Pi-E", "Pi")? else { unreachable!() };
                self.check_as(ctx, a, &dom, "Pi-E")?;
                self.note("Pi-E");
                Ok(subst1(&cod, a))
            }
            Term::Sigma(n, a, b) => {
                let sa = self.need_sort(ctx, a, "Sig-F")?;
                let sb = self.need_sort(&self.extend(ctx, n.as_str(), a), b, "Sig-F")?;
                self.note("Sig-F");
                Ok(Term::Sort(sa.max(sb)))
            }
            Term::Pair(a, b) => {
                let ta = self.infer(ctx, a)?;
                let tb = self.infer(ctx, b)?;
                let ty = Term::product(ta, tb);
                self.need_sort(ctx, &ty, "Sig-I")?;
                self.note("Sig-I");
                Ok(ty)
            }
            Term::IndSigma(s, n, c, g) => {
                self.need_sort(ctx, s, "Sig-E")?;
                let Term::Sigma(x, a, b) = self.expect(ctx, s, s, "Sig-E", "Sig")? else { unreachable!() };
                self.need_sort(&self.extend(ctx, n.as_str(), s), c, "Sig-E")?;
                let want = Term::Pi(
                    x,
                    a,
                    rc(Term::Pi(Name::new("y"), b, rc(motive_at(c, 1, 2, &[Term::pair(Term::Var(1), Term::Var(0))])))),
                );
                self.check_as(ctx, g, &want, "Sig-E")?;
                self.note("Sig-E");
                Ok(Term::Pi(n.clone(), s.clone(), c.clone()))
            }
            Term::W(n, a, b) => {
                let sa = self.need_sort(ctx, a, "W-F")?;
                self.need_sort(&self.extend(ctx, n.as_str(), a), b, "W-F")?;
                self.note("W-F");
                Ok(Term::Sort(sa))
            }
            Term::Tree(_, d) => {
                let td = self.infer(ctx, d)?;
                let Term::Pi(_, _, cod) = self.expect(ctx, d, &td, "W-I", "Pi")? else { unreachable!() };
                if occurs(&cod, 0) {
                    return Err(self.reject(ctx, "W-I", t, "subtree family must be non-dependent"));
                }
                let w = subst1(&cod, &Term::Zero);
                self.expect(ctx, t, &w, "W-I", "W")?;
                self.check(ctx, t, &w)?;
                Ok(w)
            }
            Term::IndW(ty, n, c, g) => {
                self.need_sort(ctx, ty, "W-E")?;
                let Term::W(_, a, b) = self.expect(ctx, ty, ty, "W-E", "W")? else { unreachable!() };
                self.need_sort(&self.extend(ctx, n.as_str(), ty), c, "W-E")?;
                // Π(a:A) Π(d:B[a]→T) ((Π(b:B[a]) C[d b]) → C[tree a d])
                let ih = Term::pi("b", shift(&b, 1), motive_at(c, 1, 3, &[Term::app(Term::Var(1), Term::Var(0))]));
                let concl = motive_at(c, 1, 3, &[Term::tree(Term::Var(2), Term::Var(1))]);
                let want = Term::Pi(
                    Name::new("a"),
                    a,
                    rc(Term::pi(
                        "d",
                        Term::Pi(Name::new("_"), b.clone(), rc(shift(ty, 2))),
                        Term::Pi(Name::new("_"), rc(ih), rc(concl)),
                    )),
                );
                self.check_as(ctx, g, &want, "W-E")?;
                self.note("W-E");
                Ok(Term::Pi(n.clone(), ty.clone(), c.clone()))
            }
            Term::Fin(_) => {
                self.note("Fin-F");
                Ok(Term::Sort(Sort::Set))
            }
            Term::FinEl(k, n) => {
                if k >= n {
                    return Err(self.reject(ctx, "Fin-I", t, format!("{k} is not below {n}")));
                }
                self.note("Fin-I");
                Ok(Term::Fin(*n))
            }
            Term::IndFin(k, n, c, cs) => {
                self.need_sort(&self.extend(ctx, n.as_str(), &Term::Fin(*k)), c, "Fin-E")?;
                if cs.len() as u64 != *k {
                    return Err(self.reject(ctx, "Fin-E", t, format!("expected {k} cases, found {}", cs.len())));
                }
                for (i, ci) in cs.iter().enumerate() {
                    self.check_as(ctx, ci, &subst1(c, &Term::FinEl(i as u64, *k)), "Fin-E")?;
                }
                self.note("Fin-E");
                Ok(Term::Pi(n.clone(), rc(Term::Fin(*k)), c.clone()))
            }
            Term::Nat => {
                self.note("Nat-F");
                Ok(Term::Sort(Sort::Set))
            }
            Term::Zero => {
                self.note("Nat-I0");
                Ok(Term::Nat)
            }
            Term::Succ(m) => {
                self.check_as(ctx, m, &Term::Nat, "Nat-IS")?;
                self.note("Nat-IS");
                Ok(Term::Nat)
            }
            Term::IndNat(n, c, z, s) => {
                self.need_sort(&self.extend(ctx, n.as_str(), &Term::Nat), c, "Nat-E")?;
                self.check_as(ctx, z, &subst1(c, &Term::Zero), "Nat-E")?;
                let step = Term::pi(
                    "n",
                    Term::Nat,
                    Term::Pi(Name::new("_"), c.clone(), rc(motive_at(c, 1, 2, &[Term::succ(Term::Var(1))]))),
                );
                self.check_as(ctx, s, &step, "Nat-E")?;
                self.note("Nat-E");
                Ok(Term::Pi(n.clone(), rc(Term::Nat), c.clone()))
            }
            Term::Id(a, x, y) => {
                self.need_sort(ctx, a, "Id-F")?;
                self.check_as(ctx, x, a, "Id-F")?;
                self.check_as(ctx, y, a, "Id-F")?;
                self.note("Id-F");
                Ok(Term::Sort(Sort::Prop))
            }
            Term::Refl(a) => {
                let ta = self.infer(ctx, a)?;
                self.note("Id-I");
                Ok(Term::id(ta, (**a).clone(), (**a).clone()))
            }
            Term::IndEq(a, ns, c, g) => {
                self.need_sort(ctx, a, "Id-E")?;
                let c1 = self.extend(ctx, ns[0].as_str(), a);
                let c2 = self.extend(&c1, ns[1].as_str(), &shift(a, 1));
                let e_ty = Term::id(shift(a, 2), Term::Var(1), Term::Var(0));
                let c3 = self.extend(&c2, ns[2].as_str(), &e_ty);
                self.need_sort(&c3, c, "Id-E")?;
                let want = Term::Pi(
                    ns[0].clone(),
                    a.clone(),
                    rc(motive_at(c, 3, 1, &[Term::Var(0), Term::Var(0), Term::refl(Term::Var(0))])),
                );
                self.check_as(ctx, g, &want, "Id-E")?;
                self.note("Id-E");
                Ok(Term::Pi(
                    ns[0].clone(),
                    a.clone(),
                    rc(Term::Pi(ns[1].clone(), rc(shift(a, 1)), rc(Term::Pi(ns[2].clone(), rc(e_ty), c.clone())))),
                ))
            }
            Term::Trunc(a) => {
                self.need_sort(ctx, a, "Trunc-F")?;
                self.note("Trunc-F");
                Ok(Term::Sort(Sort::Prop))
            }
            Term::TruncIn(a) => {
                let ta = self.infer(ctx, a)?;
                self.note("Trunc-I");
                Ok(Term::trunc(ta))
            }
            Term::IndTrunc(a, n, c, g, h) => {
                self.need_sort(ctx, a, "Trunc-E")?;
                let tt = Term::Trunc(a.clone());
                self.need_sort(&self.extend(ctx, n.as_str(), &tt), c, "Trunc-E")?;
                let want = Term::pi("x", (**a).clone(), motive_at(c, 1, 1, &[Term::trunc_in(Term::Var(0))]));
                self.check_as(ctx, g, &want, "Trunc-E")?;
                self.check_hprop_obligation(ctx, a, n, c, h)?;
                self.note("Trunc-E");
                Ok(Term::Pi(n.clone(), rc(tt), c.clone()))
            }
            Term::Quot(a, ns, r) => {
                let sa = self.need_sort(ctx, a, "Quot-F")?;
                let c1 = self.extend(ctx, ns[0].as_str(), a);
                let c2 = self.extend(&c1, ns[1].as_str(), &shift(a, 1));
                self.need_sort(&c2, r, "Quot-F")?;
                self.note("Quot-F");
                Ok(Term::Sort(sa))
            }
            Term::Class(q, a) => {
                self.need_sort(ctx, q, "Quot-I")?;
                let Term::Quot(dom, ..) = self.expect(ctx, q, q, "Quot-I", "Quot")? else { unreachable!() };
                self.check_as(ctx, a, &dom, "Quot-I")?;
                self.note("Quot-I");
                Ok((**q).clone())
            }
            Term::QuotAx(q) => {
                self.need_sort(ctx, q, "Quot-Ieq")?;
                let Term::Quot(a, ns, r) = self.expect(ctx, q, q, "Quot-Ieq", "Quot")? else { unreachable!() };
                let q3 = shift(q, 3);
                let eq = Term::id(q3.clone(), Term::Class(rc(q3.clone()), rc(Term::Var(2))), Term::Class(rc(q3), rc(Term::Var(1))));
                self.note("Quot-Ieq");
                Ok(Term::Pi(
                    ns[0].clone(),
                    a.clone(),
                    rc(Term::Pi(ns[1].clone(), rc(shift(&a, 1)), rc(Term::Pi(Name::new("_"), r, rc(eq))))),
                ))
            }
            Term::IndQuot(q, n, c, g, h) => {
                self.need_sort(ctx, q, "Quot-E")?;
                let Term::Quot(a, _, r) = self.expect(ctx, q, q, "Quot-E", "Quot")? else { unreachable!() };
                self.need_sort(&self.extend(ctx, n.as_str(), q), c, "Quot-E")?;
                let q1 = shift(q, 1);
                let want_g = Term::Pi(
                    Name::new("x"),
                    a.clone(),
                    rc(motive_at(c, 1, 1, &[Term::Class(rc(q1), rc(Term::Var(0)))])),
                );
                self.check_as(ctx, g, &want_g, "Quot-E")?;
                // Π(x x':A) Π(r:R[x,x']) Id C[[x']] ((ax x x' r)_* (g x)) (g x')
                let q3 = shift(q, 3);
                let g3 = shift(g, 3);
                let c3 = shift_above(c, 1, 3);
                let moved = Term::Transport(
                    rc(q3.clone()),
                    n.clone(),
                    rc(c3),
                    rc(Term::apps(Term::QuotAx(rc(q3.clone())), [Term::Var(2), Term::Var(1), Term::Var(0)])),
                    rc(Term::app(g3.clone(), Term::Var(2))),
                );
                let target = motive_at(c, 1, 3, &[Term::Class(rc(q3), rc(Term::Var(1)))]);
                let eq = Term::id(target, moved, Term::app(g3, Term::Var(1)));
                let want_h = Term::Pi(
                    Name::new("x"),
                    a.clone(),
                    rc(Term::Pi(Name::new("x'"), rc(shift(&a, 1)), rc(Term::Pi(Name::new("r"), r, rc(eq))))),
                );
                self.check(ctx, h, &want_h).map_err(|r| Rejection {
                    rule: "Quot-E".into(),
                    location: r.location,
                    reason: format!("eliminator does not respect the relation: {}", r.reason),
                })?;
                self.note("Quot-E");
                Ok(Term::Pi(n.clone(), q.clone(), c.clone()))
            }
            Term::Transport(ty, n, c, e, u) => {
                self.need_sort(ctx, ty, "transport")?;
                self.need_sort(&self.extend(ctx, n.as_str(), ty), c, "transport")?;
                let te = self.infer(ctx, e)?;
                let Term::Id(a, x, y) = self.expect(ctx, e, &te, "transport", "Id")? else { unreachable!() };
                if !self.conv(ctx, &a, ty) {
                    return Err(self.reject(ctx, "transport", e, "equation lives in a different type"));
                }
                self.check_as(ctx, u, &subst1(c, &x), "transport")?;
                self.note("transport");
                Ok(subst1(c, &y))
            }
            Term::Propext => {
                self.note("propext");
                let prop = Term::Sort(Sort::Prop);
                // Π(P P':Prop) ((P→P') × (P'→P)) → Id Prop P P'
                let iff = Term::product(
                    Term::arrow(Term::Var(1), Term::Var(0)),
                    Term::arrow(Term::Var(0), Term::Var(1)),
                );
                Ok(Term::pi(
                    "P",
                    prop.clone(),
                    Term::pi("P'", prop.clone(), Term::arrow(iff, Term::id(prop, Term::Var(1), Term::Var(0)))),
                ))
            }
            Term::Ann(a, ty) => {
                self.need_sort(ctx, ty, "convers")?;
                self.check(ctx, a, ty)?;
                Ok((**ty).clone())
            }
        }
    }
}
