//! A concrete partial combinatory algebra: combinator codes over `k`, `s`,
//! `suc`, `rec` and numerals, a step-budgeted call-by-value evaluator,
//! Cantor pairing, bracket abstraction, the oracle query protocol, and
//! bounded-search ε oracles.

mod comb;
pub mod epsilon;
mod lambda;
pub mod library;
mod machine;
mod oracle;
mod pairing;
mod parse;

pub use comb::{Comb, GodelError};
pub use epsilon::{epsilon, EpsTable, EpsilonOracle};
pub use lambda::{abstract_closed, abstract_many, abstract_open, close, LambdaError, Open};
pub use machine::{apply, eval, EpsBank, EvalError, EvalOutcome, Machine};
pub use oracle::{eval_oracle, FnOracle, Oracle, TableOracle, Undefined};
pub use pairing::{
    pair, pair_u64, tuple, unpair, unpair_u64, untuple, Natural,
};
pub use parse::{parse_comb, parse_open, ParseError};
