//! Open combinator terms and bracket abstraction.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::comb::Comb;
use super::library;

/// A combinator term that may mention variables, plus the arithmetic forms
/// `S b`, `b + c`, `b * c` that abstraction rewrites into `suc`, `add`, `mul`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Open {
    Var(String),
    Const(Comb),
    App(Box<Open>, Box<Open>),
    Succ(Box<Open>),
    Add(Box<Open>, Box<Open>),
    Mul(Box<Open>, Box<Open>),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LambdaError {
    #[error("unbound variable `{0}`")]
    Unbound(String),
}

impl Open {
    pub fn var(x: &str) -> Open {
        Open::Var(x.to_string())
    }

    pub fn app(f: Open, a: Open) -> Open {
        Open::App(Box::new(f), Box::new(a))
    }

    pub fn apps<I: IntoIterator<Item = Open>>(head: Open, args: I) -> Open {
        args.into_iter().fold(head, Open::app)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut BTreeSet<String>) {
        match self {
            Open::Var(x) => {
                out.insert(x.clone());
            }
            Open::Const(_) => {}
            Open::Succ(b) => b.collect(out),
            Open::App(b, c) | Open::Add(b, c) | Open::Mul(b, c) => {
                b.collect(out);
                c.collect(out);
            }
        }
    }

    /// Replace a variable by a closed code.
    pub fn subst(&self, x: &str, v: &Comb) -> Open {
        match self {
            Open::Var(y) if y == x => Open::Const(v.clone()),
            Open::Var(_) | Open::Const(_) => self.clone(),
            Open::Succ(b) => Open::Succ(Box::new(b.subst(x, v))),
            Open::App(b, c) => Open::app(b.subst(x, v), c.subst(x, v)),
            Open::Add(b, c) => Open::Add(Box::new(b.subst(x, v)), Box::new(c.subst(x, v))),
            Open::Mul(b, c) => Open::Mul(Box::new(b.subst(x, v)), Box::new(c.subst(x, v))),
        }
    }
}

impl fmt::Display for Open {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Open::Var(x) => f.write_str(x),
            Open::Const(c) => match c {
                Comb::App(..) => write!(f, "({c})"),
                _ => write!(f, "{c}"),
            },
            Open::App(b, c) => match **c {
                Open::App(..) => write!(f, "{b} ({c})"),
                _ => write!(f, "{b} {c}"),
            },
            Open::Succ(b) => write!(f, "S({b})"),
            Open::Add(b, c) => write!(f, "({b} + {c})"),
            Open::Mul(b, c) => write!(f, "({b} * {c})"),
        }
    }
}

/// `λx body` by the six-clause table. Variables other than `x` stay free.
pub fn abstract_open(x: &str, body: &Open) -> Open {
    match body {
        Open::Var(y) if y == x => Open::Const(library::skk()),
        Open::Var(_) => Open::app(Open::Const(Comb::K), body.clone()),
        Open::Const(c) => Open::Const(Comb::app(Comb::K, c.clone())),
        Open::App(b, c) => Open::apps(Open::Const(Comb::S), [abstract_open(x, b), abstract_open(x, c)]),
        Open::Succ(b) => abstract_open(x, &Open::app(Open::Const(Comb::Suc), (**b).clone())),
        Open::Add(b, c) => abstract_open(x, &Open::apps(Open::Const(library::add()), [(**b).clone(), (**c).clone()])),
        Open::Mul(b, c) => abstract_open(x, &Open::apps(Open::Const(library::mul()), [(**b).clone(), (**c).clone()])),
    }
}

/// Turn a variable-free open term into a code.
pub fn close(t: &Open) -> Result<Comb, LambdaError> {
    Ok(match t {
        Open::Var(y) => return Err(LambdaError::Unbound(y.clone())),
        Open::Const(c) => c.clone(),
        Open::App(b, c) => Comb::app(close(b)?, close(c)?),
        Open::Succ(b) => Comb::app(Comb::Suc, close(b)?),
        Open::Add(b, c) => Comb::apps(library::add(), [close(b)?, close(c)?]),
        Open::Mul(b, c) => Comb::apps(library::mul(), [close(b)?, close(c)?]),
    })
}

/// `λx body` as a closed code; any other free variable is an error.
pub fn abstract_closed(x: &str, body: &Open) -> Result<Comb, LambdaError> {
    close(&abstract_open(x, body))
}

/// `λx1 … λxn body`.
pub fn abstract_many(xs: &[&str], body: &Open) -> Open {
    xs.iter().rev().fold(body.clone(), |acc, x| abstract_open(x, &acc))
}
