//! The proof-relevant (ᵒ) and proof-irrelevant (•) interpretations of
//! higher-order arithmetic in the kernel's type theory.
//!
//! Sort-n variables live in `𝒫ⁿℕ` with `𝒫A := A → Prop`. The two modes
//! differ only in where truncations go: `∨`, `∃`, atoms and the constants
//! are truncated in irrelevant mode.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::holog::{
    arithmetic_axioms, comprehension_instance, extensionality_instance, induction_instance, Formula,
    Term as HTerm, TheoryTag, Var,
};
use crate::kernel::corpus::logical_lines;
use crate::kernel::{parse_term, show, Checker, Ctx, Defs, KernelError, Rejection, Sort, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Relevant,
    Irrelevant,
}

impl Mode {
    /// The sort every translated formula should inhabit.
    pub fn target(self) -> Sort {
        match self {
            Mode::Relevant => Sort::Set,
            Mode::Irrelevant => Sort::Prop,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Relevant => "relevant",
            Mode::Irrelevant => "irrelevant",
        })
    }
}

impl FromStr for Mode {
    type Err = TranslateError;

    fn from_str(s: &str) -> Result<Mode, TranslateError> {
        match s {
            "relevant" => Ok(Mode::Relevant),
            "irrelevant" => Ok(Mode::Irrelevant),
            other => Err(TranslateError::Mode(other.to_string())),
        }
    }
}

#[derive(Debug, Error)]
pub enum TranslateError {
    #[error("{0} has no translation; only formulas of HAH are interpreted")]
    NotHah(String),
    #[error("unknown mode `{0}`, expected relevant or irrelevant")]
    Mode(String),
    #[error("variable `{0}` is not in scope")]
    Scope(String),
    #[error(transparent)]
    Rejected(#[from] Rejection),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("line {line}: {msg}")]
    Corpus { line: usize, msg: String },
}

/// `𝒫ⁿℕ`.
pub fn power(n: u32) -> Term {
    (0..n).fold(Term::Nat, |a, _| Term::arrow(a, Term::Sort(Sort::Prop)))
}

fn src(s: &str, defs: &Defs) -> Term {
    parse_term(s, defs).expect("prelude term parses")
}

/// Addition and multiplication by recursion on the first argument, so that
/// `0+y=y`, `S x+y=S(x+y)`, `0×y=0` and `S x×y=x×y+y` hold by conversion.
/// `disc` sends 0 to `Fin 0` and successors to `Fin 1`.
pub fn prelude() -> Defs {
    let mut d = Defs::new();
    let add = src("fun (m n : Nat) => ind_nat (k. Nat) n (fun (k r : Nat) => S r) m", &d);
    d.insert("add".into(), add);
    let mul = src("fun (m n : Nat) => ind_nat (k. Nat) 0 (fun (k r : Nat) => add r n) m", &d);
    d.insert("mul".into(), mul);
    let disc = src("ind_nat (m. Set) (Fin 0) (fun (m : Nat) (r : Set) => Fin 1)", &d);
    d.insert("disc".into(), disc);
    d
}

fn kernel_name(v: &Var, taken: &[String]) -> String {
    let mut name = v.name.clone();
    if crate::kernel::is_keyword(&name) || taken.contains(&name) {
        name = format!("{}_{}", v.name, v.sort);
    }
    while crate::kernel::is_keyword(&name) || taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// `Γ_A`: one entry per free variable in order of first occurrence, of type
/// `𝒫ⁿℕ` for a sort-n variable.
pub fn ctx_of(f: &Formula) -> Vec<(String, Term)> {
    let mut out: Vec<(String, Term)> = Vec::new();
    for v in f.free_vars() {
        let taken: Vec<String> = out.iter().map(|e| e.0.clone()).collect();
        out.push((kernel_name(&v, &taken), power(v.sort)));
    }
    out
}

/// `Γ_A` as a checked kernel context.
pub fn kernel_ctx(f: &Formula) -> Result<Ctx, Rejection> {
    let ch = Checker::new();
    let mut ctx = Ctx::new();
    for (n, ty) in ctx_of(f) {
        ctx = ch.declare(&ctx, &n, &ty)?;
    }
    Ok(ctx)
}

struct Tr {
    mode: Mode,
    defs: Defs,
    /// Outermost first: the free variables, then enclosing binders.
    scope: Vec<Var>,
}

impl Tr {
    fn var(&self, v: &Var) -> Result<Term, TranslateError> {
        match self.scope.iter().rev().position(|w| w == v) {
            Some(i) => Ok(Term::Var(i)),
            None => Err(TranslateError::Scope(v.name.clone())),
        }
    }

    fn term(&self, t: &HTerm) -> Result<Term, TranslateError> {
        Ok(match t {
            HTerm::Var(v) => self.var(v)?,
            HTerm::Zero => Term::Zero,
            HTerm::Succ(a) => Term::succ(self.term(a)?),
            HTerm::Add(a, b) => Term::apps(self.defs["add"].clone(), [self.term(a)?, self.term(b)?]),
            HTerm::Mul(a, b) => Term::apps(self.defs["mul"].clone(), [self.term(a)?, self.term(b)?]),
            HTerm::App(..) => return Err(TranslateError::NotHah("partial application".into())),
            HTerm::Const(c) => return Err(TranslateError::NotHah(format!("the combinator constant {c:?}"))),
            HTerm::Eps(_) => return Err(TranslateError::NotHah("an ε-constant".into())),
        })
    }

    fn trunc(&self, t: Term) -> Term {
        match self.mode {
            Mode::Relevant => t,
            Mode::Irrelevant => Term::trunc(t),
        }
    }

    fn formula(&mut self, f: &Formula) -> Result<Term, TranslateError> {
        Ok(match f {
            Formula::Eq(a, b) => {
                let ty = power(a.sort());
                let t = Term::id(ty, self.term(a)?, self.term(b)?);
                self.trunc(t)
            }
            Formula::Elem(a, x) => {
                let t = Term::app(self.term(x)?, self.term(a)?);
                self.trunc(t)
            }
            Formula::Bot => self.trunc(Term::Fin(0)),
            Formula::Top => self.trunc(Term::Fin(1)),
            Formula::And(a, b) => Term::product(self.formula(a)?, self.formula(b)?),
            Formula::Imp(a, b) => Term::arrow(self.formula(a)?, self.formula(b)?),
            Formula::Or(a, b) => {
                let (ta, tb) = (self.formula(a)?, self.formula(b)?);
                let (ta, tb) = (crate::kernel::shift(&ta, 1), crate::kernel::shift(&tb, 1));
                let sort = match self.mode {
                    Mode::Relevant => relevant_sort(f),
                    Mode::Irrelevant => Sort::Prop,
                };
                let family = if sort == Sort::Type {
                    // No large elimination into Type: (b=0 → A) × (b=1 → B).
                    let tag = |k| Term::id(Term::Fin(2), Term::Var(0), Term::FinEl(k, 2));
                    Term::product(Term::arrow(tag(0), ta), Term::arrow(tag(1), tb))
                } else {
                    // ind_fin 2 (k. 𝒞) A B b, the cases living under b.
                    Term::app(Term::ind_fin(2, "k", Term::Sort(sort), vec![ta, tb]), Term::Var(0))
                };
                let sum = Term::sigma("b", Term::Fin(2), family);
                self.trunc(sum)
            }
            Formula::Exists(v, body) => {
                let inner = self.bound(v, body)?;
                self.trunc(Term::sigma(&v.name, power(v.sort), inner))
            }
            Formula::Forall(v, body) => {
                let inner = self.bound(v, body)?;
                Term::pi(&v.name, power(v.sort), inner)
            }
            Formula::Defined(_) => return Err(TranslateError::NotHah("the definedness predicate".into())),
            Formula::Rel(r, _) => return Err(TranslateError::NotHah(format!("the relation symbol {r}"))),
        })
    }

    fn bound(&mut self, v: &Var, body: &Formula) -> Result<Term, TranslateError> {
        self.scope.push(v.clone());
        let r = self.formula(body);
        self.scope.pop();
        r
    }
}

/// The interpretation of `f` in context [`ctx_of`]`(f)`.
pub fn translate(f: &Formula, mode: Mode) -> Result<Term, TranslateError> {
    let mut tr = Tr { mode, defs: prelude(), scope: f.free_vars() };
    tr.formula(f)
}

/// The sort of `Aᵒ`. A relevant `∃X` over a sort-n≥1 variable is a Σ over
/// `𝒫ⁿℕ : Type`, so it lands in `Type`, and so does every `∧`, `∨` and consequent built
/// from it (Π takes the sort of its codomain); all
/// other formulas land in `Set`.
pub fn relevant_sort(f: &Formula) -> Sort {
    fn big(f: &Formula) -> bool {
        match f {
            Formula::Exists(v, b) => v.sort >= 1 || big(b),
            Formula::Forall(_, b) => big(b),
            Formula::And(a, b) | Formula::Or(a, b) => big(a) || big(b),
            Formula::Imp(_, b) => big(b),
            _ => false,
        }
    }
    if big(f) {
        Sort::Type
    } else {
        Sort::Set
    }
}

/// Translate and kernel-check at the mode's target sort.
pub fn translate_checked(f: &Formula, mode: Mode) -> Result<Term, TranslateError> {
    let t = translate(f, mode)?;
    let ctx = kernel_ctx(f)?;
    Checker::new().check(&ctx, &t, &Term::Sort(mode.target()))?;
    Ok(t)
}

/// A corpus directive asserting that the translation has its target sort,
/// checkable by the kernel's corpus runner.
pub fn to_directive(f: &Formula, mode: Mode) -> Result<String, TranslateError> {
    let t = translate(f, mode)?;
    let entries = ctx_of(f);
    let mut names = Vec::new();
    let mut parts = Vec::new();
    for (n, ty) in &entries {
        parts.push(format!("{n} : {}", show(ty, &names)));
        names.push(n.clone());
    }
    let ctx = if parts.is_empty() { String::new() } else { format!("{} ", parts.join(" ; ")) };
    Ok(format!("assert-type [] {ctx}|- {} : {}", show(&t, &names), mode.target()))
}

/// Remove every truncation, `‖A‖ ↦ A`.
pub fn erase_truncations(t: &Term) -> Term {
    if let Term::Trunc(a) = t {
        return erase_truncations(a);
    }
    let kids = crate::kernel::parts(t).into_iter().map(|p| erase_truncations(&p.body)).collect();
    crate::kernel::rebuild(t, kids)
}

/// A closed axiom of HAH together with its interpretation.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub formula: Formula,
    pub ty: Term,
}

/// The arithmetic axioms, extensionality at sorts 0 and 1, comprehension for
/// a few small predicates, and induction for a few motives, all translated.
pub fn axiom_instances(mode: Mode) -> Vec<Instance> {
    let z = Var::new("z", 0);
    let zt = || HTerm::Var(z.clone());
    let x = Var::new("x", 0);
    let xt = || HTerm::Var(x.clone());
    let mut formulas: Vec<(String, Formula)> =
        arithmetic_axioms(TheoryTag::HAH).into_iter().map(|a| (a.name, a.formula)).collect();
    formulas.push(("extensionality_0".into(), extensionality_instance(0)));
    formulas.push(("extensionality_1".into(), extensionality_instance(1)));
    formulas.push(("comprehension_refl".into(), comprehension_instance(&z, &Formula::eq(zt(), zt()))));
    formulas.push(("comprehension_zero".into(), comprehension_instance(&z, &Formula::eq(zt(), HTerm::Zero))));
    formulas.push(("comprehension_top".into(), comprehension_instance(&z, &Formula::Top)));
    formulas.push((
        "induction_add_zero".into(),
        induction_instance(&x, &Formula::eq(HTerm::add(xt(), HTerm::Zero), xt())),
    ));
    formulas.push((
        "induction_zero_or_succ".into(),
        induction_instance(
            &x,
            &Formula::or(
                Formula::eq(xt(), HTerm::Zero),
                Formula::exists(Var::new("y", 0), Formula::eq(xt(), HTerm::succ(HTerm::var("y", 0)))),
            ),
        ),
    ));
    formulas
        .into_iter()
        .map(|(name, formula)| {
            let ty = translate(&formula, mode).expect("HAH axioms translate");
            Instance { name, formula, ty }
        })
        .collect()
}

/// A claimed inhabitant of a translated axiom.
#[derive(Clone, Debug)]
pub struct Inhabitant {
    pub line: usize,
    pub mode: Mode,
    pub axiom: String,
    pub proof: Term,
}

/// Read `def name := term` and `inhabit <mode> <axiom> := term` lines. Terms
/// may use the [`prelude`] and earlier definitions.
pub fn parse_inhabitants(src: &str) -> Result<Vec<Inhabitant>, TranslateError> {
    let mut defs = prelude();
    let mut out = Vec::new();
    for (line, text) in logical_lines(src) {
        let bad = |msg: &str| TranslateError::Corpus { line, msg: msg.to_string() };
        let (head, body) = text.split_once(":=").ok_or_else(|| bad("expected `:=`"))?;
        let words: Vec<&str> = head.split_whitespace().collect();
        let term = parse_term(body, &defs).map_err(|e| bad(&e.to_string()))?;
        match words.as_slice() {
            ["def", name] => {
                defs.insert(name.to_string(), term);
            }
            ["inhabit", mode, axiom] => {
                let mode = mode.parse().map_err(|e: TranslateError| bad(&e.to_string()))?;
                out.push(Inhabitant { line, mode, axiom: axiom.to_string(), proof: term });
            }
            _ => return Err(bad("expected `def <name>` or `inhabit <mode> <axiom>`")),
        }
    }
    Ok(out)
}

/// Check `inh.proof` against the translation of the axiom it names.
pub fn check_inhabitant(inh: &Inhabitant) -> Result<(), TranslateError> {
    let instance = axiom_instances(inh.mode)
        .into_iter()
        .find(|i| i.name == inh.axiom)
        .ok_or_else(|| TranslateError::Corpus { line: inh.line, msg: format!("no axiom named `{}`", inh.axiom) })?;
    Checker::new().check(&Ctx::new(), &inh.proof, &instance.ty)?;
    Ok(())
}
