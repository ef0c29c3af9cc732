//! The realizability model: subsingletons, PERs and assemblies over the
//! combinator algebra, the type formers on them, and the denotation of
//! kernel judgments in a bounded world.

mod asm;
mod denote;
mod sem;

use thiserror::Error;

pub use asm::{
    app, embed_per_to_assembly, embed_subsing_to_per, fin, find_tracker, is_wellfounded_tree, iso_to_per,
    iso_to_subsingleton, nabla, nat, nat_upto, pair_code, parity, pi, quot, sigma, subsing_assembly, subsing_eq,
    subsingletons, subtree, trunc, wtype, Assembly, Budget, Iso, Morphism, Per, Run, SemSet, Subsingleton, Universe,
    NAT_WINDOW,
};
pub use denote::{context_realizer, denote_judgment, elements_at, inhabited_at, tracker_of, Denotation, World};
pub use sem::{HSet, Sem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    /// The judgment needs a clause outside the supported fragment.
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{what} exceeds the limit of {limit} elements")]
    Resource { what: String, limit: usize },
    #[error("undecided within budget: {0}")]
    Unknown(String),
    #[error("ill-formed input: {0}")]
    Shape(String),
}
