//! Monadic higher-order arithmetic: sorted terms and formulas, the logic of
//! partial terms, derived connectives, axiom lists, and a bounded three-valued
//! evaluator that serves as the truth oracle for every harness.

mod axioms;
mod connectives;
mod eval;
mod parse;
mod partial;
mod print;
mod syntax;
mod theory;

pub use axioms::{
    arithmetic_axioms, comprehension_instance, epsilon_axioms, extensionality_instance,
    induction_instance, relation_axioms, Axiom,
};
pub use connectives::{desugar_first_order, expand_impredicative};
pub use eval::{eval_bounded, Bounds, Env, Evaluator, Obj, Truncation};
pub use parse::{parse_formula, parse_term};
pub use partial::{wf_partial_terms, Obligation, PartialRule};
pub use syntax::{alpha_eq, alpha_normal, eps_id, fresh_name, EpsId, Formula, PcaConst, Term, Var};
pub use theory::{check_language, TheoryTag};

use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum HologError {
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("sort error: {0}")]
    Sort(String),
    #[error("not first-order: `{0}` has sort {1}")]
    NotFirstOrder(String, u32),
    #[error("{feature} is outside the language of {tag}")]
    Language { tag: TheoryTag, feature: String },
    #[error("no interpretation for relation `{0}`")]
    UnknownRelation(String),
    #[error("universe of sort {sort} would have {size} elements (limit {limit})")]
    Resource { sort: u32, size: u128, limit: u128 },
    #[error("expected {0}")]
    Shape(String),
}
