use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeSet;
use std::hash::{Hash, Hasher};

use super::HologError;

/// A sorted variable; sort n ranges over the n-fold power set of the naturals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub name: String,
    pub sort: u32,
}

impl Var {
    pub fn new(name: &str, sort: u32) -> Var {
        Var { name: name.to_string(), sort }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PcaConst {
    K,
    S,
    Suc,
    Rec,
}

/// Identity of an ε-constant: a hash of the α-normalised body.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpsId(pub u64);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Var),
    Zero,
    Succ(Box<Term>),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    App(Box<Term>, Box<Term>),
    Const(PcaConst),
    Eps(EpsId),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Term, Term),
    Elem(Term, Term),
    Defined(Term),
    Rel(String, Vec<Term>),
    Bot,
    Top,
    Or(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
}

impl Term {
    pub fn var(name: &str, sort: u32) -> Term {
        Term::Var(Var::new(name, sort))
    }

    pub fn num(n: u64) -> Term {
        (0..n).fold(Term::Zero, |t, _| Term::succ(t))
    }

    pub fn succ(t: Term) -> Term {
        Term::Succ(Box::new(t))
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn app(a: Term, b: Term) -> Term {
        Term::App(Box::new(a), Box::new(b))
    }

    /// `Some(n)` when the term is the numeral `S^n 0`.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut n = 0;
        let mut t = self;
        loop {
            match t {
                Term::Zero => return Some(n),
                Term::Succ(inner) => {
                    n += 1;
                    t = inner;
                }
                _ => return None,
            }
        }
    }

    pub fn sort(&self) -> u32 {
        match self {
            Term::Var(v) => v.sort,
            _ => 0,
        }
    }

    pub(crate) fn collect_vars(&self, out: &mut Vec<Var>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Zero | Term::Const(_) | Term::Eps(_) => {}
            Term::Succ(a) => a.collect_vars(out),
            Term::Add(a, b) | Term::Mul(a, b) | Term::App(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn mentions(&self, v: &Var) -> bool {
        self.vars().contains(v)
    }

    pub fn subst(&self, x: &Var, by: &Term) -> Term {
        match self {
            Term::Var(v) if v == x => by.clone(),
            Term::Var(_) | Term::Zero | Term::Const(_) | Term::Eps(_) => self.clone(),
            Term::Succ(a) => Term::succ(a.subst(x, by)),
            Term::Add(a, b) => Term::add(a.subst(x, by), b.subst(x, by)),
            Term::Mul(a, b) => Term::mul(a.subst(x, by), b.subst(x, by)),
            Term::App(a, b) => Term::app(a.subst(x, by), b.subst(x, by)),
        }
    }

    /// True when the term uses only total symbols (no `@`, constants or ε).
    pub fn is_arithmetic(&self) -> bool {
        match self {
            Term::Var(_) | Term::Zero => true,
            Term::Succ(a) => a.is_arithmetic(),
            Term::Add(a, b) | Term::Mul(a, b) => a.is_arithmetic() && b.is_arithmetic(),
            Term::App(..) | Term::Const(_) | Term::Eps(_) => false,
        }
    }
}

impl Formula {
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn elem(a: Term, b: Term) -> Formula {
        Formula::Elem(a, b)
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    /// `¬A` abbreviates `A → ⊥`.
    pub fn not(a: Formula) -> Formula {
        Formula::imp(a, Formula::Bot)
    }

    /// `A ↔ B` abbreviates `(A → B) ∧ (B → A)`.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    pub fn neq(a: Term, b: Term) -> Formula {
        Formula::not(Formula::eq(a, b))
    }

    pub fn exists(v: Var, body: Formula) -> Formula {
        Formula::Exists(v, Box::new(body))
    }

    pub fn forall(v: Var, body: Formula) -> Formula {
        Formula::Forall(v, Box::new(body))
    }

    pub fn forall_many(vs: &[Var], body: Formula) -> Formula {
        vs.iter().rev().fold(body, |acc, v| Formula::forall(v.clone(), acc))
    }

    /// Kleene equality `a ≃ b`, stored as `(a↓ ∨ b↓) → a = b`.
    pub fn kleene_eq(a: Term, b: Term) -> Formula {
        Formula::imp(
            Formula::or(Formula::Defined(a.clone()), Formula::Defined(b.clone())),
            Formula::eq(a, b),
        )
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Eq(..) | Formula::Elem(..) | Formula::Defined(_) | Formula::Rel(..) | Formula::Bot | Formula::Top => 1,
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => 1 + a.size() + b.size(),
            Formula::Exists(_, a) | Formula::Forall(_, a) => 1 + a.size(),
        }
    }

    /// Free variables in order of first occurrence.
    pub fn free_vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut Vec<Var>) {
        let push_term = |t: &Term, bound: &Vec<Var>, out: &mut Vec<Var>| {
            for v in t.vars() {
                if !bound.contains(&v) && !out.contains(&v) {
                    out.push(v);
                }
            }
        };
        match self {
            Formula::Eq(a, b) | Formula::Elem(a, b) => {
                push_term(a, bound, out);
                push_term(b, bound, out);
            }
            Formula::Defined(a) => push_term(a, bound, out),
            Formula::Rel(_, args) => {
                for a in args {
                    push_term(a, bound, out);
                }
            }
            Formula::Bot | Formula::Top => {}
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(v, a) | Formula::Forall(v, a) => {
                bound.push(v.clone());
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit_terms(&mut |t| {
            for v in t.vars() {
                out.insert(v.name);
            }
        });
        self.visit_binders(&mut |v| {
            out.insert(v.name.clone());
        });
        out
    }

    pub fn visit_terms(&self, f: &mut dyn FnMut(&Term)) {
        match self {
            Formula::Eq(a, b) | Formula::Elem(a, b) => {
                f(a);
                f(b);
            }
            Formula::Defined(a) => f(a),
            Formula::Rel(_, args) => args.iter().for_each(|a| f(a)),
            Formula::Bot | Formula::Top => {}
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => {
                a.visit_terms(f);
                b.visit_terms(f);
            }
            Formula::Exists(_, a) | Formula::Forall(_, a) => a.visit_terms(f),
        }
    }

    pub fn visit_binders(&self, f: &mut dyn FnMut(&Var)) {
        match self {
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => {
                a.visit_binders(f);
                b.visit_binders(f);
            }
            Formula::Exists(v, a) | Formula::Forall(v, a) => {
                f(v);
                a.visit_binders(f);
            }
            _ => {}
        }
    }

    /// Largest sort of any variable, bound or free.
    pub fn max_sort(&self) -> u32 {
        let mut m = 0;
        self.visit_terms(&mut |t| {
            for v in t.vars() {
                m = m.max(v.sort);
            }
        });
        self.visit_binders(&mut |v| m = m.max(v.sort));
        m
    }

    pub fn is_first_order(&self) -> bool {
        self.max_sort() == 0 && !self.has(&|f| matches!(f, Formula::Elem(..)))
    }

    /// Does any subformula satisfy `p`?
    pub fn has(&self, p: &dyn Fn(&Formula) -> bool) -> bool {
        if p(self) {
            return true;
        }
        match self {
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => a.has(p) || b.has(p),
            Formula::Exists(_, a) | Formula::Forall(_, a) => a.has(p),
            _ => false,
        }
    }

    /// Capture-avoiding substitution of `by` for the free variable `x`.
    pub fn subst(&self, x: &Var, by: &Term) -> Formula {
        match self {
            Formula::Eq(a, b) => Formula::Eq(a.subst(x, by), b.subst(x, by)),
            Formula::Elem(a, b) => Formula::Elem(a.subst(x, by), b.subst(x, by)),
            Formula::Defined(a) => Formula::Defined(a.subst(x, by)),
            Formula::Rel(r, args) => Formula::Rel(r.clone(), args.iter().map(|a| a.subst(x, by)).collect()),
            Formula::Bot | Formula::Top => self.clone(),
            Formula::Or(a, b) => Formula::or(a.subst(x, by), b.subst(x, by)),
            Formula::And(a, b) => Formula::and(a.subst(x, by), b.subst(x, by)),
            Formula::Imp(a, b) => Formula::imp(a.subst(x, by), b.subst(x, by)),
            Formula::Exists(v, a) | Formula::Forall(v, a) => {
                let rebuild = |v: Var, body: Formula| match self {
                    Formula::Exists(..) => Formula::exists(v, body),
                    _ => Formula::forall(v, body),
                };
                if v == x || !a.free_vars().contains(x) {
                    return self.clone();
                }
                if by.mentions(v) {
                    let mut avoid = a.all_names();
                    for w in by.vars() {
                        avoid.insert(w.name);
                    }
                    avoid.insert(x.name.clone());
                    let fresh = Var { name: fresh_name(&v.name, &avoid), sort: v.sort };
                    let renamed = a.subst(v, &Term::Var(fresh.clone()));
                    rebuild(fresh, renamed.subst(x, by))
                } else {
                    rebuild(v.clone(), a.subst(x, by))
                }
            }
        }
    }

    /// Check that `=` relates equal sorts, `∈` climbs one sort, and
    /// arithmetic and application only see sort 0.
    pub fn check_sorts(&self) -> Result<(), HologError> {
        fn term_ok(t: &Term) -> Result<(), HologError> {
            match t {
                Term::Var(_) | Term::Zero | Term::Const(_) | Term::Eps(_) => Ok(()),
                Term::Succ(a) => arith(a),
                Term::Add(a, b) | Term::Mul(a, b) | Term::App(a, b) => {
                    arith(a)?;
                    arith(b)
                }
            }
        }
        fn arith(t: &Term) -> Result<(), HologError> {
            if t.sort() != 0 {
                return Err(HologError::Sort(format!("term of sort {} under a sort-0 operation", t.sort())));
            }
            term_ok(t)
        }
        match self {
            Formula::Eq(a, b) => {
                term_ok(a)?;
                term_ok(b)?;
                if a.sort() != b.sort() {
                    return Err(HologError::Sort(format!("equality between sorts {} and {}", a.sort(), b.sort())));
                }
                Ok(())
            }
            Formula::Elem(a, b) => {
                term_ok(a)?;
                term_ok(b)?;
                if a.sort() + 1 != b.sort() {
                    return Err(HologError::Sort(format!("membership of sort {} in sort {}", a.sort(), b.sort())));
                }
                Ok(())
            }
            Formula::Defined(a) => arith(a),
            Formula::Rel(_, args) => args.iter().try_for_each(arith),
            Formula::Bot | Formula::Top => Ok(()),
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => {
                a.check_sorts()?;
                b.check_sorts()
            }
            Formula::Exists(_, a) | Formula::Forall(_, a) => a.check_sorts(),
        }
    }
}

/// `base`, `base'`, `base''`, … whichever is first not in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    let mut name = base.to_string();
    while avoid.contains(&name) {
        name.push('\'');
    }
    name
}

/// α-equivalence: equal up to renaming of bound variables.
pub fn alpha_eq(f: &Formula, g: &Formula) -> bool {
    alpha_normal(f) == alpha_normal(g)
}

/// Rename bound variables to `#0`, `#1`, … by binding depth.
pub fn alpha_normal(f: &Formula) -> Formula {
    fn go(f: &Formula, depth: usize) -> Formula {
        match f {
            Formula::Or(a, b) => Formula::or(go(a, depth), go(b, depth)),
            Formula::And(a, b) => Formula::and(go(a, depth), go(b, depth)),
            Formula::Imp(a, b) => Formula::imp(go(a, depth), go(b, depth)),
            Formula::Exists(v, a) | Formula::Forall(v, a) => {
                let canon = Var { name: format!("#{depth}"), sort: v.sort };
                let body = go(&rename_bound(a, v, &canon), depth + 1);
                match f {
                    Formula::Exists(..) => Formula::exists(canon, body),
                    _ => Formula::forall(canon, body),
                }
            }
            atom => atom.clone(),
        }
    }
    // Canonical names cannot clash with parsed names, so plain renaming of
    // free occurrences is capture-free.
    fn rename_bound(f: &Formula, from: &Var, to: &Var) -> Formula {
        f.subst(from, &Term::Var(to.clone()))
    }
    go(f, 0)
}

/// Identity of the ε-constant for `∃y body`, shared by α-equivalent bodies.
pub fn eps_id(witness: &Var, body: &Formula) -> EpsId {
    let closed = Formula::exists(witness.clone(), body.clone());
    let mut h = DefaultHasher::new();
    alpha_normal(&closed).hash(&mut h);
    EpsId(h.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Var {
        Var::new("x", 0)
    }
    fn y() -> Var {
        Var::new("y", 0)
    }

    #[test]
    fn numerals() {
        assert_eq!(Term::num(3).as_numeral(), Some(3));
        assert_eq!(Term::var("x", 0).as_numeral(), None);
    }

    #[test]
    fn free_variables_in_first_occurrence_order() {
        let f = Formula::and(
            Formula::elem(Term::Var(y()), Term::var("Y", 1)),
            Formula::forall(x(), Formula::eq(Term::Var(x()), Term::Var(y()))),
        );
        assert_eq!(f.free_vars(), vec![y(), Var::new("Y", 1)]);
    }

    #[test]
    fn substitution_avoids_capture() {
        // (∀y. x = y)[x := y] must not capture y
        let f = Formula::forall(y(), Formula::eq(Term::Var(x()), Term::Var(y())));
        let g = f.subst(&x(), &Term::Var(y()));
        match &g {
            Formula::Forall(b, body) => {
                assert_ne!(b, &y());
                assert_eq!(**body, Formula::eq(Term::Var(y()), Term::Var(b.clone())));
            }
            _ => panic!(),
        }
    }

    #[test]
    fn alpha_equivalence_ignores_bound_names() {
        let f = Formula::forall(x(), Formula::eq(Term::Var(x()), Term::Zero));
        let g = Formula::forall(y(), Formula::eq(Term::Var(y()), Term::Zero));
        assert!(alpha_eq(&f, &g));
        assert_eq!(eps_id(&x(), &Formula::Top), eps_id(&y(), &Formula::Top));
        let h = Formula::forall(y(), Formula::eq(Term::Var(x()), Term::Zero));
        assert!(!alpha_eq(&f, &h));
    }

    #[test]
    fn sort_discipline() {
        let ok = Formula::elem(Term::Var(x()), Term::var("X", 1));
        assert!(ok.check_sorts().is_ok());
        let bad = Formula::elem(Term::Var(x()), Term::var("X", 2));
        assert!(bad.check_sorts().is_err());
        let bad_eq = Formula::eq(Term::Var(x()), Term::var("X", 1));
        assert!(bad_eq.check_sorts().is_err());
        let bad_arith = Formula::eq(Term::succ(Term::var("X", 1)), Term::Zero);
        assert!(bad_arith.check_sorts().is_err());
    }
}
