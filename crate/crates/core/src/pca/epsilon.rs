//! ε-constants realized by bounded least-witness search. The ε axioms hold
//! relative to the cutoff: a witness above it is never found.

use std::cell::RefCell;
use std::collections::HashMap;

use super::machine::EpsBank;
use super::oracle::Oracle;
use super::pairing::untuple;
use crate::holog::{eps_id, Bounds, Env, EpsId, Evaluator, Formula, HologError, Obj, Var};

/// Least-witness search for `∃y body` with parameters `params`.
pub struct EpsilonOracle {
    witness: Var,
    body: Formula,
    params: Vec<Var>,
    cutoff: u64,
    budget: u64,
    cache: RefCell<HashMap<Vec<u64>, Option<u64>>>,
}

impl EpsilonOracle {
    pub fn params(&self) -> &[Var] {
        &self.params
    }

    pub fn witness(&self) -> &Var {
        &self.witness
    }

    pub fn body(&self) -> &Formula {
        &self.body
    }

    pub fn id(&self) -> EpsId {
        eps_id(&self.witness, &self.body)
    }

    /// Step budget for partial terms inside the body (default 10⁴).
    pub fn with_budget(mut self, budget: u64) -> EpsilonOracle {
        self.budget = budget;
        self
    }

    /// Least `y ≤ cutoff` with `body[params := args, y]` true. A body that
    /// stays unknown at some `y` does not count as a witness there.
    pub fn search(&self, args: &[u64]) -> Option<u64> {
        if args.len() != self.params.len() {
            return None;
        }
        if let Some(hit) = self.cache.borrow().get(args) {
            return *hit;
        }
        let base = self.params.iter().zip(args).fold(Env::new(), |env, (v, n)| env.with(v.clone(), Obj::nat(*n)));
        let ev = Evaluator::new(Bounds::new(self.cutoff, self.budget));
        let found = (0..=self.cutoff).find(|y| {
            let env = base.clone().with(self.witness.clone(), Obj::nat(*y));
            matches!(ev.eval(&self.body, &env), Ok(v) if v.is_true())
        });
        self.cache.borrow_mut().insert(args.to_vec(), found);
        found
    }
}

impl Oracle for EpsilonOracle {
    /// The argument encodes the parameter tuple.
    fn query(&self, x: u64) -> Option<u64> {
        self.search(&untuple(x, self.params.len()))
    }
}

/// Build the oracle for a first-order `∃y body`. Parameters are the free
/// variables of the whole formula in order of first occurrence.
pub fn epsilon(f: &Formula, cutoff: u64) -> Result<EpsilonOracle, HologError> {
    let (witness, body) = match f {
        Formula::Exists(v, body) => (v.clone(), (**body).clone()),
        _ => return Err(HologError::Shape(format!("an existential formula, found `{f}`"))),
    };
    if !f.is_first_order() {
        let v = f.free_vars().into_iter().chain([witness.clone()]).find(|v| v.sort > 0);
        return Err(match v {
            Some(v) => HologError::NotFirstOrder(v.name, v.sort),
            None => HologError::NotFirstOrder(format!("{f}"), 1),
        });
    }
    Ok(EpsilonOracle { params: f.free_vars(), witness, body, cutoff, budget: 10_000, cache: RefCell::new(HashMap::new()) })
}

/// A bank of ε-constants indexed for the combinator machine. Registering the
/// same body twice (up to α-equivalence) returns the same index.
#[derive(Default)]
pub struct EpsTable {
    entries: Vec<EpsilonOracle>,
    index: HashMap<EpsId, u32>,
}

impl EpsTable {
    pub fn new() -> EpsTable {
        EpsTable::default()
    }

    pub fn register(&mut self, oracle: EpsilonOracle) -> u32 {
        let id = oracle.id();
        if let Some(i) = self.index.get(&id) {
            return *i;
        }
        let i = self.entries.len() as u32;
        self.entries.push(oracle);
        self.index.insert(id, i);
        i
    }

    pub fn index_of(&self, id: EpsId) -> Option<u32> {
        self.index.get(&id).copied()
    }

    pub fn get(&self, i: u32) -> Option<&EpsilonOracle> {
        self.entries.get(i as usize)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl EpsBank for EpsTable {
    fn arity(&self, id: u32) -> Option<usize> {
        self.get(id).map(|o| o.params.len())
    }

    fn call(&self, id: u32, args: &[u64]) -> Option<u64> {
        self.get(id)?.search(args)
    }
}
