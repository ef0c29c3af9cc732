//! Definedness side conditions from the logic of partial terms. Variables
//! are always defined, and so are `0`, `S`, `+`, `×` and the constants, so
//! only application contributes obligations.

use std::fmt;

use super::syntax::{Formula, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartialRule {
    /// An atom `R(t⃗)` is only true of defined arguments.
    Rel,
    /// `f(t⃗)↓` implies each argument is defined.
    Fun,
}

impl fmt::Display for PartialRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PartialRule::Rel => "↓-rel",
            PartialRule::Fun => "↓-fun",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obligation {
    /// The atomic subformula imposing the condition.
    pub atom: Formula,
    /// The term that must be defined.
    pub term: Term,
    pub rule: PartialRule,
}

impl fmt::Display for Obligation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}! by {} in {}", self.term, self.rule, self.atom)
    }
}

/// Maximal applications inside `t`, looking through total symbols.
fn partial_parts<'t>(t: &'t Term, out: &mut Vec<&'t Term>) {
    match t {
        Term::App(..) => out.push(t),
        Term::Succ(a) => partial_parts(a, out),
        Term::Add(a, b) | Term::Mul(a, b) => {
            partial_parts(a, out);
            partial_parts(b, out);
        }
        Term::Var(_) | Term::Zero | Term::Const(_) | Term::Eps(_) => {}
    }
}

/// For every atomic subformula, the definedness conditions it imposes.
pub fn wf_partial_terms(f: &Formula) -> Vec<Obligation> {
    let mut out = Vec::new();
    collect(f, &mut out);
    out
}

fn collect(f: &Formula, out: &mut Vec<Obligation>) {
    let mut push = |atom: &Formula, args: Vec<&Term>, rule: PartialRule| {
        let mut parts = Vec::new();
        for a in args {
            partial_parts(a, &mut parts);
        }
        for t in parts {
            let ob = Obligation { atom: atom.clone(), term: t.clone(), rule };
            if !out.contains(&ob) {
                out.push(ob);
            }
        }
    };
    match f {
        Formula::Eq(a, b) | Formula::Elem(a, b) => push(f, vec![a, b], PartialRule::Rel),
        Formula::Rel(_, args) => push(f, args.iter().collect(), PartialRule::Rel),
        Formula::Defined(t) => match t {
            Term::App(a, b) => push(f, vec![a, b], PartialRule::Fun),
            other => push(f, vec![other], PartialRule::Fun),
        },
        Formula::Bot | Formula::Top => {}
        Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => {
            collect(a, out);
            collect(b, out);
        }
        Formula::Exists(_, a) | Formula::Forall(_, a) => collect(a, out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holog::{parse_formula, parse_term};

    fn terms(src: &str) -> Vec<(String, PartialRule)> {
        wf_partial_terms(&parse_formula(src).unwrap()).into_iter().map(|o| (o.term.to_string(), o.rule)).collect()
    }

    #[test]
    fn relation_arguments_must_be_defined() {
        assert_eq!(terms("R(f @ x)"), vec![("f @ x".to_string(), PartialRule::Rel)]);
        assert_eq!(terms("S (f @ x) = y + g @ 0"), vec![
            ("f @ x".to_string(), PartialRule::Rel),
            ("g @ 0".to_string(), PartialRule::Rel)
        ]);
    }

    #[test]
    fn variables_and_total_symbols_need_nothing() {
        assert!(terms("x = y").is_empty());
        assert!(terms("forall x. S x + x * 0 = x").is_empty());
    }

    #[test]
    fn definedness_atoms_only_constrain_subterms() {
        assert!(terms("(k @ x)!").is_empty());
        assert_eq!(terms("(k @ (s @ x))!"), vec![("s @ x".to_string(), PartialRule::Fun)]);
        let ob = &wf_partial_terms(&parse_formula("(k @ (s @ x) @ y)!").unwrap())[0];
        assert_eq!(ob.term, parse_term("k @ (s @ x)").unwrap());
    }
}
