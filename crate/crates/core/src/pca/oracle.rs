//! The oracle query protocol: a program answers either `<0,x>` (ask the
//! oracle at x) or `<1,c>` (return c), and is re-run on the growing tuple
//! `<b, f(x0), …, f(x_{i-1})>`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use super::comb::Comb;
use super::machine::{EvalError, EvalOutcome, Machine};
use super::pairing::{tuple, unpair_u64};

/// A partial function on naturals. `None` means undefined (or undecided
/// within the oracle's own budget).
pub trait Oracle {
    fn query(&self, x: u64) -> Option<u64>;
}

/// The everywhere-undefined oracle.
pub struct Undefined;

impl Oracle for Undefined {
    fn query(&self, _: u64) -> Option<u64> {
        None
    }
}

pub struct FnOracle<F>(pub F);

impl<F: Fn(u64) -> Option<u64>> Oracle for FnOracle<F> {
    fn query(&self, x: u64) -> Option<u64> {
        (self.0)(x)
    }
}

/// A finite table; undefined off its domain.
pub struct TableOracle(pub BTreeMap<u64, u64>);

impl Oracle for TableOracle {
    fn query(&self, x: u64) -> Option<u64> {
        self.0.get(&x).copied()
    }
}

/// Run `a` against oracle `f` with input `b`. The budget covers every round;
/// each oracle query costs one step.
pub fn eval_oracle(a: &Comb, b: u64, f: &dyn Oracle, budget: u64) -> Result<EvalOutcome, EvalError> {
    let mut machine = Machine::new(budget);
    let session: RefCell<HashMap<u64, Option<u64>>> = RefCell::new(HashMap::new());
    let mut answers = vec![b];
    loop {
        let input = tuple(&answers).ok_or(EvalError::Overflow)?;
        let out = match machine.apply(a, &Comb::Num(input))? {
            EvalOutcome::Value(v) => v,
            diverged => return Ok(diverged),
        };
        let n = out.as_num().ok_or_else(|| EvalError::Protocol(out.clone()))?;
        match unpair_u64(n) {
            (0, x) => {
                if !machine.charge() {
                    return Ok(EvalOutcome::Diverged { steps_used: machine.steps() });
                }
                let y = *session.borrow_mut().entry(x).or_insert_with(|| f.query(x));
                match y {
                    Some(y) => answers.push(y),
                    None => return Ok(EvalOutcome::Diverged { steps_used: machine.steps() }),
                }
            }
            (1, c) => return Ok(EvalOutcome::Value(Comb::Num(c))),
            _ => return Err(EvalError::Protocol(out)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pca::pairing::pair_u64;
    use crate::pca::parse::parse_comb;

    fn tagged(tag: u64, x: u64) -> u64 {
        pair_u64(tag, x).unwrap()
    }

    #[test]
    fn immediate_return() {
        let a = Comb::app(Comb::K, Comb::Num(tagged(1, 42)));
        let out = eval_oracle(&a, 0, &Undefined, 100).unwrap();
        assert_eq!(out, EvalOutcome::Value(Comb::Num(42)));
    }

    #[test]
    fn two_round_trace() {
        // Input b = 0, so the first tuple is <0> = 0: ask at 5 (<0,5> = 20).
        // The second tuple is <0, f(5)>, which is nonzero: return <1, f(5)>.
        assert_eq!(tagged(0, 5), 20);
        let a = parse_comb(r"\t. ifz t (k 20) (\d. npair 1 (nsnd t))").unwrap();
        let f = FnOracle(|x| (x == 5).then_some(9));
        assert_eq!(eval_oracle(&a, 0, &f, 1_000_000).unwrap(), EvalOutcome::Value(Comb::Num(9)));
    }

    #[test]
    fn endless_queries_exhaust_the_budget() {
        let a = Comb::app(Comb::K, Comb::Num(tagged(0, 0)));
        let f = FnOracle(|_| Some(0));
        assert!(matches!(eval_oracle(&a, 0, &f, 1000).unwrap(), EvalOutcome::Diverged { .. }));
    }

    #[test]
    fn undefined_answers_diverge_and_junk_is_a_protocol_error() {
        let a = Comb::app(Comb::K, Comb::Num(tagged(0, 3)));
        assert!(matches!(eval_oracle(&a, 0, &Undefined, 1000).unwrap(), EvalOutcome::Diverged { .. }));
        let junk = Comb::app(Comb::K, Comb::Num(tagged(2, 3)));
        assert!(matches!(eval_oracle(&junk, 0, &Undefined, 1000), Err(EvalError::Protocol(_))));
        let code = Comb::app(Comb::K, Comb::K);
        assert!(matches!(eval_oracle(&code, 0, &Undefined, 1000), Err(EvalError::Protocol(_))));
    }
}
