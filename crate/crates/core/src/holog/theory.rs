use std::fmt;

use super::syntax::{Formula, Term};
use super::HologError;

/// Theories ordered by language extension: HA ⊂ HAH ⊂ HAHP ⊂ HAHPε, with
/// HAHPR and HAHPf extending HAHP by a relation symbol and an oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoryTag {
    HA,
    HAH,
    HAHP,
    HAHPEps,
    HAHPR,
    HAHPf,
}

impl TheoryTag {
    fn higher_sorts(self) -> bool {
        self != TheoryTag::HA
    }

    fn partial_terms(self) -> bool {
        !matches!(self, TheoryTag::HA | TheoryTag::HAH)
    }

    fn eps(self) -> bool {
        self == TheoryTag::HAHPEps
    }

    fn relation(self) -> bool {
        self == TheoryTag::HAHPR
    }

    /// Is every formula of `self` also a formula of `other`?
    pub fn sublanguage_of(self, other: TheoryTag) -> bool {
        (!self.higher_sorts() || other.higher_sorts())
            && (!self.partial_terms() || other.partial_terms())
            && (!self.eps() || other.eps())
            && (!self.relation() || other.relation())
    }
}

impl fmt::Display for TheoryTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoryTag::HA => "HA",
            TheoryTag::HAH => "HAH",
            TheoryTag::HAHP => "HAHP",
            TheoryTag::HAHPEps => "HAHPε",
            TheoryTag::HAHPR => "HAHPR",
            TheoryTag::HAHPf => "HAHPf",
        })
    }
}

/// Reject formulas using symbols the theory does not have.
pub fn check_language(tag: TheoryTag, f: &Formula) -> Result<(), HologError> {
    let deny = |feature: &str| Err(HologError::Language { tag, feature: feature.to_string() });
    if !tag.higher_sorts() && f.max_sort() > 0 {
        return deny("a higher-sort variable");
    }
    let mut term_problem: Option<&'static str> = None;
    f.visit_terms(&mut |t| check_term(tag, t, &mut term_problem));
    if let Some(p) = term_problem {
        return deny(p);
    }
    if !tag.partial_terms() && f.has(&|g| matches!(g, Formula::Defined(_))) {
        return deny("the definedness predicate");
    }
    if !tag.relation() && f.has(&|g| matches!(g, Formula::Rel(..))) {
        return deny("a relation symbol");
    }
    Ok(())
}

fn check_term(tag: TheoryTag, t: &Term, problem: &mut Option<&'static str>) {
    match t {
        Term::App(a, b) => {
            if !tag.partial_terms() {
                *problem = Some("application");
            }
            check_term(tag, a, problem);
            check_term(tag, b, problem);
        }
        Term::Const(_) if !tag.partial_terms() => *problem = Some("a combinator constant"),
        Term::Eps(_) if !tag.eps() => *problem = Some("an ε-constant"),
        Term::Succ(a) => check_term(tag, a, problem),
        Term::Add(a, b) | Term::Mul(a, b) => {
            check_term(tag, a, problem);
            check_term(tag, b, problem);
        }
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holog::{PcaConst, Var};
    use TheoryTag::*;

    #[test]
    fn extension_order() {
        assert!(HA.sublanguage_of(HAH));
        assert!(HAH.sublanguage_of(HAHP));
        assert!(HAHP.sublanguage_of(HAHPEps));
        assert!(HAHP.sublanguage_of(HAHPR));
        assert!(!HAHPEps.sublanguage_of(HAHP));
        assert!(!HAH.sublanguage_of(HA));
    }

    #[test]
    fn features_are_gated() {
        let set = Formula::elem(Term::var("x", 0), Term::var("X", 1));
        assert!(check_language(HA, &set).is_err());
        assert!(check_language(HAH, &set).is_ok());
        let app = Formula::Defined(Term::app(Term::Const(PcaConst::K), Term::Zero));
        assert!(check_language(HAH, &app).is_err());
        assert!(check_language(HAHP, &app).is_ok());
        let rel = Formula::Rel("R".into(), vec![Term::Zero, Term::Zero]);
        assert!(check_language(HAHP, &rel).is_err());
        assert!(check_language(HAHPR, &rel).is_ok());
        let q = Formula::forall(Var::new("y", 0), Formula::Top);
        assert!(check_language(HA, &q).is_ok());
    }
}
