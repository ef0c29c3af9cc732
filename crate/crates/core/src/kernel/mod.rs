//! Type checker for λC+: Π, Σ, W, finite types, ℕ, identity, truncation and
//! quotients over the impredicative sorts Prop ≤ Set ≤ Type, with β/ι
//! conversion and checked equality hints standing in for reflection.

mod check;
mod context;
pub mod corpus;
mod parse;
mod print;
mod reduce;
mod term;

use thiserror::Error;

pub use check::{Checker, TypingVerdict, DEFAULT_FUEL, RULES};
pub use context::{Ctx, Entry, Hint};
pub use parse::{parse_judgment, parse_term, parse_term_in, CtxItem, Defs, Judgment};
pub use print::show;
pub use reduce::{normalize, parts, rebuild, step, whnf, Part};

/// Whether `s` is reserved by the surface syntax.
pub fn is_keyword(s: &str) -> bool {
    print::KEYWORDS.contains(&s)
}
pub use term::{free_vars, instantiate, occurs, shift, shift_above, subst1, Name, Sort, Term, Tm};

/// Why a judgment was refused: the rule whose side condition failed, the
/// offending subterm as printed in its context, and a reason.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{rule}: {reason} (at `{location}`)")]
pub struct Rejection {
    pub rule: String,
    pub location: String,
    pub reason: String,
}

#[derive(Debug, Error)]
pub enum KernelError {
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unbound identifier `{0}`")]
    Unbound(String),
    #[error(transparent)]
    Rejected(#[from] Rejection),
}

/// Infer the type of a closed term.
pub fn infer(ctx: &Ctx, t: &Term) -> TypingVerdict {
    Checker::new().infer(ctx, t)
}

/// Check `t : ty`, returning `ty` on success.
pub fn check(ctx: &Ctx, t: &Term, ty: &Term) -> TypingVerdict {
    Checker::new().check(ctx, t, ty).map(|_| ty.clone())
}

pub fn conv(ctx: &Ctx, a: &Term, b: &Term) -> bool {
    Checker::new().conv(ctx, a, b)
}
