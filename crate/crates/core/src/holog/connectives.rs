//! Derived connectives. Higher-order logic defines everything from `∈`, `→`
//! and `∀` by quantifying over a proposition; first-order arithmetic gets
//! by with `=`, `∧`, `→`, `∃` and `∀`.

use std::collections::BTreeSet;

use super::syntax::{fresh_name, Formula, Term, Var};
use super::HologError;

/// Rewrite into the `∈ → ∀` fragment. A proposition `Z` is encoded as the
/// sort-1 variable `X` filled in at `0`, that is `0 ∈ X`. Equality of sort n
/// becomes Leibniz equality over sort n+1.
pub fn expand_impredicative(f: &Formula) -> Formula {
    let mut avoid = f.all_names();
    expand(f, &mut avoid)
}

fn fresh_set(avoid: &mut BTreeSet<String>, sort: u32) -> Var {
    let name = fresh_name("Z", avoid);
    avoid.insert(name.clone());
    Var { name, sort }
}

fn expand(f: &Formula, avoid: &mut BTreeSet<String>) -> Formula {
    let prop = |x: &Var| Formula::elem(Term::Zero, Term::Var(x.clone()));
    match f {
        Formula::Eq(a, b) => {
            let x = fresh_set(avoid, a.sort() + 1);
            let (ea, eb) = (Formula::elem(a.clone(), Term::Var(x.clone())), Formula::elem(b.clone(), Term::Var(x.clone())));
            Formula::forall(x, Formula::imp(ea, eb))
        }
        Formula::Elem(..) | Formula::Defined(_) | Formula::Rel(..) => f.clone(),
        Formula::Bot => {
            let x = fresh_set(avoid, 1);
            Formula::forall(x.clone(), prop(&x))
        }
        Formula::Top => {
            let x = fresh_set(avoid, 1);
            Formula::forall(x.clone(), Formula::imp(prop(&x), prop(&x)))
        }
        Formula::Or(a, b) => {
            let (a, b) = (expand(a, avoid), expand(b, avoid));
            let x = fresh_set(avoid, 1);
            let z = prop(&x);
            let body = Formula::imp(Formula::imp(a, z.clone()), Formula::imp(Formula::imp(b, z.clone()), z));
            Formula::forall(x, body)
        }
        Formula::And(a, b) => {
            let (a, b) = (expand(a, avoid), expand(b, avoid));
            let x = fresh_set(avoid, 1);
            let z = prop(&x);
            Formula::forall(x, Formula::imp(Formula::imp(a, Formula::imp(b, z.clone())), z))
        }
        Formula::Imp(a, b) => Formula::imp(expand(a, avoid), expand(b, avoid)),
        Formula::Exists(v, b) => {
            let b = expand(b, avoid);
            let x = fresh_set(avoid, 1);
            let z = prop(&x);
            Formula::forall(x, Formula::imp(Formula::forall(v.clone(), Formula::imp(b, z.clone())), z))
        }
        Formula::Forall(v, b) => Formula::forall(v.clone(), expand(b, avoid)),
    }
}

/// Remove `∨`, `⊥` and `⊤` from a first-order formula:
/// `A ∨ B := ∃n((n = 0 → A) ∧ (n ≠ 0 → B))`, `⊥ := 0 = S 0`, `⊤ := 0 = 0`.
pub fn desugar_first_order(f: &Formula) -> Result<Formula, HologError> {
    for v in f.free_vars() {
        if v.sort > 0 {
            return Err(HologError::NotFirstOrder(v.name, v.sort));
        }
    }
    let mut bad = None;
    f.visit_binders(&mut |v| {
        if v.sort > 0 && bad.is_none() {
            bad = Some(v.clone());
        }
    });
    if let Some(v) = bad {
        return Err(HologError::NotFirstOrder(v.name, v.sort));
    }
    if f.has(&|g| matches!(g, Formula::Elem(..))) {
        return Err(HologError::NotFirstOrder("∈".into(), 1));
    }
    let mut avoid = f.all_names();
    Ok(desugar(f, &mut avoid))
}

fn falsum() -> Formula {
    Formula::eq(Term::Zero, Term::num(1))
}

fn desugar(f: &Formula, avoid: &mut BTreeSet<String>) -> Formula {
    match f {
        Formula::Bot => falsum(),
        Formula::Top => Formula::eq(Term::Zero, Term::Zero),
        Formula::Or(a, b) => {
            let (a, b) = (desugar(a, avoid), desugar(b, avoid));
            let name = fresh_name("n", avoid);
            avoid.insert(name.clone());
            let n = Var { name, sort: 0 };
            let is_zero = Formula::eq(Term::Var(n.clone()), Term::Zero);
            let left = Formula::imp(is_zero.clone(), a);
            let right = Formula::imp(Formula::imp(is_zero, falsum()), b);
            Formula::exists(n, Formula::and(left, right))
        }
        Formula::And(a, b) => Formula::and(desugar(a, avoid), desugar(b, avoid)),
        Formula::Imp(a, b) => Formula::imp(desugar(a, avoid), desugar(b, avoid)),
        Formula::Exists(v, b) => Formula::exists(v.clone(), desugar(b, avoid)),
        Formula::Forall(v, b) => Formula::forall(v.clone(), desugar(b, avoid)),
        atom => atom.clone(),
    }
}
