//! Axiom lists and schemes. Schemes are templates producing one instance
//! per formula.

use super::syntax::{eps_id, fresh_name, Formula, PcaConst, Term, Var};
use super::theory::TheoryTag;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axiom {
    pub name: String,
    pub formula: Formula,
}

impl Axiom {
    fn new(name: &str, formula: Formula) -> Axiom {
        Axiom { name: name.to_string(), formula }
    }
}

fn v(name: &str) -> Term {
    Term::var(name, 0)
}

fn var(name: &str) -> Var {
    Var::new(name, 0)
}

fn c(k: PcaConst) -> Term {
    Term::Const(k)
}

fn apps(head: Term, args: impl IntoIterator<Item = Term>) -> Term {
    args.into_iter().fold(head, Term::app)
}

/// The axioms of `tag` that are single formulas. Multiplication recurses as
/// `S(x) × y = (x × y) + y`.
pub fn arithmetic_axioms(tag: TheoryTag) -> Vec<Axiom> {
    let (x, y, z) = (var("x"), var("y"), var("z"));
    let all = |vs: &[&Var], body: Formula| Formula::forall_many(&vs.iter().map(|v| (*v).clone()).collect::<Vec<_>>(), body);
    let mut out = vec![
        Axiom::new("zero_not_succ", all(&[&y], Formula::neq(Term::succ(v("y")), Term::Zero))),
        Axiom::new(
            "succ_injective",
            all(&[&x, &y], Formula::imp(Formula::eq(Term::succ(v("x")), Term::succ(v("y"))), Formula::eq(v("x"), v("y")))),
        ),
        Axiom::new("add_zero", all(&[&y], Formula::eq(Term::add(Term::Zero, v("y")), v("y")))),
        Axiom::new(
            "add_succ",
            all(&[&x, &y], Formula::eq(Term::add(Term::succ(v("x")), v("y")), Term::succ(Term::add(v("x"), v("y"))))),
        ),
        Axiom::new("mul_zero", all(&[&y], Formula::eq(Term::mul(Term::Zero, v("y")), Term::Zero))),
        Axiom::new(
            "mul_succ",
            all(&[&x, &y], Formula::eq(Term::mul(Term::succ(v("x")), v("y")), Term::add(Term::mul(v("x"), v("y")), v("y")))),
        ),
    ];
    if TheoryTag::HAHP.sublanguage_of(tag) {
        out.extend([
            Axiom::new("k", all(&[&x, &y], Formula::eq(apps(c(PcaConst::K), [v("x"), v("y")]), v("x")))),
            Axiom::new("suc", all(&[&x], Formula::eq(Term::app(c(PcaConst::Suc), v("x")), Term::succ(v("x"))))),
            Axiom::new("s_defined", all(&[&x, &y], Formula::Defined(apps(c(PcaConst::S), [v("x"), v("y")])))),
            Axiom::new("rec_zero", all(&[&x, &y], Formula::eq(apps(c(PcaConst::Rec), [v("x"), v("y"), Term::Zero]), v("x")))),
            Axiom::new(
                "s",
                all(
                    &[&x, &y, &z],
                    Formula::kleene_eq(
                        apps(c(PcaConst::S), [v("x"), v("y"), v("z")]),
                        Term::app(Term::app(v("x"), v("z")), Term::app(v("y"), v("z"))),
                    ),
                ),
            ),
            Axiom::new(
                "rec_succ",
                all(
                    &[&x, &y, &z],
                    Formula::kleene_eq(
                        apps(c(PcaConst::Rec), [v("x"), v("y"), Term::succ(v("z"))]),
                        apps(v("y"), [v("z"), apps(c(PcaConst::Rec), [v("x"), v("y"), v("z")])]),
                    ),
                ),
            ),
        ]);
    }
    out
}

/// `A[0] ∧ ∀x(A[x] → A[S x]) → ∀x A[x]`.
pub fn induction_instance(x: &Var, a: &Formula) -> Formula {
    let base = a.subst(x, &Term::Zero);
    let step = Formula::forall(x.clone(), Formula::imp(a.clone(), a.subst(x, &Term::succ(Term::Var(x.clone())))));
    Formula::imp(Formula::and(base, step), Formula::forall(x.clone(), a.clone()))
}

/// `∀X^{n+1} ∀Y^{n+1} (∀z^n (z ∈ X ↔ z ∈ Y) → X = Y)`.
pub fn extensionality_instance(n: u32) -> Formula {
    let (bx, by, z) = (Var::new("X", n + 1), Var::new("Y", n + 1), Var::new("z", n));
    let mem = |s: &Var| Formula::elem(Term::Var(z.clone()), Term::Var(s.clone()));
    let same = Formula::forall(z.clone(), Formula::iff(mem(&bx), mem(&by)));
    Formula::forall_many(&[bx.clone(), by.clone()], Formula::imp(same, Formula::eq(Term::Var(bx), Term::Var(by))))
}

/// `∃X^{n+1} ∀z^n (z ∈ X ↔ P[z])` with `X` fresh for `P`.
pub fn comprehension_instance(z: &Var, p: &Formula) -> Formula {
    let mut avoid = p.all_names();
    avoid.insert(z.name.clone());
    let bx = Var { name: fresh_name("X", &avoid), sort: z.sort + 1 };
    let body = Formula::forall(z.clone(), Formula::iff(Formula::elem(Term::Var(z.clone()), Term::Var(bx.clone())), p.clone()));
    Formula::exists(bx, body)
}

/// The two axioms of the ε-constant for `∃y A[x⃗, y]`, with `x⃗` the other
/// free variables of `A`: `∀x⃗(∃y A → ε x⃗↓)` and `∀x⃗(ε x⃗↓ → A[x⃗, ε x⃗])`.
pub fn epsilon_axioms(y: &Var, a: &Formula) -> Vec<Axiom> {
    let params: Vec<Var> = Formula::exists(y.clone(), a.clone()).free_vars();
    let call = apps(Term::Eps(eps_id(y, a)), params.iter().map(|p| Term::Var(p.clone())));
    let defined = Formula::Defined(call.clone());
    vec![
        Axiom::new("eps_total", Formula::forall_many(&params, Formula::imp(Formula::exists(y.clone(), a.clone()), defined.clone()))),
        Axiom::new("eps_sound", Formula::forall_many(&params, Formula::imp(defined, a.subst(y, &call)))),
    ]
}

/// Axioms of the relation symbol `r` approximating `A[x, y]`: it is
/// functional, total where `A` has a witness, and contained in `A`.
pub fn relation_axioms(r: &str, x: &Var, y: &Var, a: &Formula) -> Vec<Axiom> {
    let mut avoid = a.all_names();
    avoid.insert(x.name.clone());
    avoid.insert(y.name.clone());
    let y2 = Var { name: fresh_name(&y.name, &avoid), sort: 0 };
    let rel = |u: &Var, w: &Var| Formula::Rel(r.to_string(), vec![Term::Var(u.clone()), Term::Var(w.clone())]);
    let functional = Formula::forall_many(
        &[x.clone(), y.clone(), y2.clone()],
        Formula::imp(Formula::and(rel(x, y), rel(x, &y2)), Formula::eq(Term::Var(y.clone()), Term::Var(y2.clone()))),
    );
    let total = Formula::forall(
        x.clone(),
        Formula::imp(Formula::exists(y.clone(), a.clone()), Formula::exists(y.clone(), rel(x, y))),
    );
    let sound = Formula::forall_many(&[x.clone(), y.clone()], Formula::imp(rel(x, y), a.clone()));
    vec![Axiom::new("functional", functional), Axiom::new("total", total), Axiom::new("sound", sound)]
}
