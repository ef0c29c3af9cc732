use std::rc::Rc;

use thiserror::Error;

use super::comb::Comb;

/// Oracles behind the ε-constants `Eps(i)`.
pub trait EpsBank {
    /// Number of numeral arguments the i-th constant expects, if it exists.
    fn arity(&self, id: u32) -> Option<usize>;
    /// `None` means the oracle is undefined at `args`.
    fn call(&self, id: u32, args: &[u64]) -> Option<u64>;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalOutcome {
    Value(Comb),
    /// The step budget ran out.
    Diverged { steps_used: u64 },
}

impl EvalOutcome {
    pub fn value(&self) -> Option<&Comb> {
        match self {
            EvalOutcome::Value(v) => Some(v),
            EvalOutcome::Diverged { .. } => None,
        }
    }
}

/// Definite failures, as opposed to running out of budget.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("stuck term: `{head}` cannot be applied to `{arg}`")]
    Stuck { head: Comb, arg: Comb },
    #[error("ε-constant {id} has no witness at {args:?}")]
    Undefined { id: u32, args: Vec<u64> },
    #[error("numeral overflow")]
    Overflow,
    #[error("oracle protocol violation: `{0}` is not a tagged pair")]
    Protocol(Comb),
}

#[derive(Debug)]
enum Val {
    K,
    K1(V),
    S,
    S1(V),
    S2(V, V),
    Suc,
    Rec,
    Rec1(V),
    Rec2(V, V),
    Num(u64),
    Eps(u32, Vec<u64>),
}

type V = Rc<Val>;

fn readback(v: &Val) -> Comb {
    match v {
        Val::K => Comb::K,
        Val::K1(x) => Comb::app(Comb::K, readback(x)),
        Val::S => Comb::S,
        Val::S1(x) => Comb::app(Comb::S, readback(x)),
        Val::S2(x, y) => Comb::apps(Comb::S, [readback(x), readback(y)]),
        Val::Suc => Comb::Suc,
        Val::Rec => Comb::Rec,
        Val::Rec1(x) => Comb::app(Comb::Rec, readback(x)),
        Val::Rec2(x, y) => Comb::apps(Comb::Rec, [readback(x), readback(y)]),
        Val::Num(n) => Comb::Num(*n),
        Val::Eps(i, args) => Comb::apps(Comb::Eps(*i), args.iter().map(|n| Comb::Num(*n))),
    }
}

enum Frame<'t> {
    /// Function evaluated next; then evaluate this argument.
    Arg(&'t Comb),
    /// Argument being evaluated; then apply this function to it.
    Fun(V),
    /// `s x y z`: `x z` is being evaluated; `y z` comes next.
    SThen(V, V),
    /// `rec x y (n+1)`: `y n` is being evaluated; `rec x y n` comes next.
    RecThen(V, V, u64),
}

enum Mode<'t> {
    Eval(&'t Comb),
    Apply(V, V),
    Return(V),
}

/// Call-by-value, left-to-right evaluator. One step is one contraction of a
/// `k`, `s`, `suc`, `rec` or ε redex; the budget is shared across every call
/// made through the same machine.
pub struct Machine<'b> {
    budget: u64,
    steps: u64,
    bank: Option<&'b dyn EpsBank>,
}

impl<'b> Machine<'b> {
    pub fn new(budget: u64) -> Machine<'static> {
        Machine { budget, steps: 0, bank: None }
    }

    pub fn with_bank(budget: u64, bank: &'b dyn EpsBank) -> Machine<'b> {
        Machine { budget, steps: 0, bank: Some(bank) }
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn remaining(&self) -> u64 {
        self.budget - self.steps
    }

    /// Charge one step outside the evaluator (e.g. an oracle round trip).
    /// Returns false when the budget is already spent.
    pub fn charge(&mut self) -> bool {
        if self.steps >= self.budget {
            false
        } else {
            self.steps += 1;
            true
        }
    }

    pub fn apply(&mut self, f: &Comb, a: &Comb) -> Result<EvalOutcome, EvalError> {
        self.eval(&Comb::app(f.clone(), a.clone()))
    }

    pub fn eval(&mut self, t: &Comb) -> Result<EvalOutcome, EvalError> {
        let mut stack: Vec<Frame<'_>> = Vec::new();
        let mut mode = Mode::Eval(t);
        loop {
            mode = match mode {
                Mode::Eval(c) => match c {
                    Comb::App(f, a) => {
                        stack.push(Frame::Arg(a));
                        Mode::Eval(f)
                    }
                    Comb::K => Mode::Return(Rc::new(Val::K)),
                    Comb::S => Mode::Return(Rc::new(Val::S)),
                    Comb::Suc => Mode::Return(Rc::new(Val::Suc)),
                    Comb::Rec => Mode::Return(Rc::new(Val::Rec)),
                    Comb::Num(n) => Mode::Return(Rc::new(Val::Num(*n))),
                    Comb::Eps(id) => {
                        let nullary = self.bank.and_then(|b| b.arity(*id)) == Some(0);
                        if nullary {
                            if !self.charge() {
                                return Ok(self.diverged());
                            }
                            Mode::Return(self.call_eps(*id, Vec::new())?)
                        } else {
                            Mode::Return(Rc::new(Val::Eps(*id, Vec::new())))
                        }
                    }
                },
                Mode::Return(v) => match stack.pop() {
                    None => return Ok(EvalOutcome::Value(readback(&v))),
                    Some(Frame::Arg(a)) => {
                        stack.push(Frame::Fun(v));
                        Mode::Eval(a)
                    }
                    Some(Frame::Fun(f)) => Mode::Apply(f, v),
                    Some(Frame::SThen(y, z)) => {
                        stack.push(Frame::Fun(v));
                        Mode::Apply(y, z)
                    }
                    Some(Frame::RecThen(x, y, n)) => {
                        stack.push(Frame::Fun(v));
                        Mode::Apply(Rc::new(Val::Rec2(x, y)), Rc::new(Val::Num(n)))
                    }
                },
                Mode::Apply(f, a) => match &*f {
                    Val::K => Mode::Return(Rc::new(Val::K1(a))),
                    Val::S => Mode::Return(Rc::new(Val::S1(a))),
                    Val::S1(x) => Mode::Return(Rc::new(Val::S2(x.clone(), a))),
                    Val::Rec => Mode::Return(Rc::new(Val::Rec1(a))),
                    Val::Rec1(x) => Mode::Return(Rc::new(Val::Rec2(x.clone(), a))),
                    Val::K1(x) => {
                        if !self.charge() {
                            return Ok(self.diverged());
                        }
                        Mode::Return(x.clone())
                    }
                    Val::S2(x, y) => {
                        if !self.charge() {
                            return Ok(self.diverged());
                        }
                        stack.push(Frame::SThen(y.clone(), a.clone()));
                        Mode::Apply(x.clone(), a)
                    }
                    Val::Suc => match &*a {
                        Val::Num(n) => {
                            if !self.charge() {
                                return Ok(self.diverged());
                            }
                            Mode::Return(Rc::new(Val::Num(n.checked_add(1).ok_or(EvalError::Overflow)?)))
                        }
                        _ => return Err(stuck(&f, &a)),
                    },
                    Val::Rec2(x, y) => match &*a {
                        Val::Num(0) => {
                            if !self.charge() {
                                return Ok(self.diverged());
                            }
                            Mode::Return(x.clone())
                        }
                        Val::Num(n) => {
                            if !self.charge() {
                                return Ok(self.diverged());
                            }
                            let m = n - 1;
                            stack.push(Frame::RecThen(x.clone(), y.clone(), m));
                            Mode::Apply(y.clone(), Rc::new(Val::Num(m)))
                        }
                        _ => return Err(stuck(&f, &a)),
                    },
                    Val::Num(_) => return Err(stuck(&f, &a)),
                    Val::Eps(id, args) => {
                        let arity = match self.bank.and_then(|b| b.arity(*id)) {
                            Some(n) => n,
                            None => return Err(stuck(&f, &a)),
                        };
                        let n = match &*a {
                            Val::Num(n) => *n,
                            _ => return Err(stuck(&f, &a)),
                        };
                        let mut args = args.clone();
                        args.push(n);
                        if args.len() < arity {
                            Mode::Return(Rc::new(Val::Eps(*id, args)))
                        } else {
                            if !self.charge() {
                                return Ok(self.diverged());
                            }
                            Mode::Return(self.call_eps(*id, args)?)
                        }
                    }
                },
            };
        }
    }

    fn call_eps(&self, id: u32, args: Vec<u64>) -> Result<V, EvalError> {
        let bank = self.bank.expect("ε calls only happen with a bank");
        match bank.call(id, &args) {
            Some(y) => Ok(Rc::new(Val::Num(y))),
            None => Err(EvalError::Undefined { id, args }),
        }
    }

    fn diverged(&self) -> EvalOutcome {
        EvalOutcome::Diverged { steps_used: self.steps }
    }
}

fn stuck(f: &Val, a: &Val) -> EvalError {
    EvalError::Stuck { head: readback(f), arg: readback(a) }
}

/// Evaluate `f a` from scratch with the given step budget.
pub fn apply(f: &Comb, a: &Comb, budget: u64) -> Result<EvalOutcome, EvalError> {
    Machine::new(budget).apply(f, a)
}

pub fn eval(t: &Comb, budget: u64) -> Result<EvalOutcome, EvalError> {
    Machine::new(budget).eval(t)
}
