//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

pub mod model;
pub mod pca;

use conserv::holog::{Formula, Term, Var};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Which connectives a generated formula may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// Every HAH connective.
    Full,
    /// Only `∧`, `→`, `∀` over atoms.
    Negative,
    /// Sort-0 variables only.
    FirstOrder,
}

pub struct Gen {
    rng: ChaCha8Rng,
    shape: Shape,
    max_sort: u32,
    fresh: usize,
}

const FREE: [(&str, u32); 7] = [("x", 0), ("y", 0), ("z", 0), ("X", 1), ("Y", 1), ("U", 2), ("V", 2)];

impl Gen {
    pub fn new(seed: u64, shape: Shape) -> Gen {
        let max_sort = if shape == Shape::FirstOrder { 0 } else { 2 };
        Gen { rng: ChaCha8Rng::seed_from_u64(seed), shape, max_sort, fresh: 0 }
    }

    fn var_of_sort(&mut self, sort: u32, scope: &[Var]) -> Var {
        let bound: Vec<&Var> = scope.iter().filter(|v| v.sort == sort).collect();
        if !bound.is_empty() && self.rng.gen_bool(0.7) {
            return (*bound.choose(&mut self.rng).unwrap()).clone();
        }
        let free: Vec<&(&str, u32)> = FREE.iter().filter(|f| f.1 == sort).collect();
        let (name, s) = **free.choose(&mut self.rng).unwrap();
        Var::new(name, s)
    }

    pub fn num_term(&mut self, depth: usize, scope: &[Var]) -> Term {
        let pick = if depth == 0 { self.rng.gen_range(0..2) } else { self.rng.gen_range(0..5) };
        match pick {
            0 => Term::Var(self.var_of_sort(0, scope)),
            1 => Term::Zero,
            2 => Term::succ(self.num_term(depth - 1, scope)),
            3 => Term::add(self.num_term(depth - 1, scope), self.num_term(depth - 1, scope)),
            _ => Term::mul(self.num_term(depth - 1, scope), self.num_term(depth - 1, scope)),
        }
    }

    fn atom(&mut self, scope: &[Var]) -> Formula {
        let higher = self.max_sort > 0;
        match self.rng.gen_range(0..if higher { 6 } else { 3 }) {
            0 | 1 => Formula::eq(self.num_term(2, scope), self.num_term(2, scope)),
            2 => {
                if self.rng.gen_bool(0.5) {
                    Formula::Bot
                } else {
                    Formula::Top
                }
            }
            3 | 4 => {
                let n = self.rng.gen_range(0..self.max_sort);
                let a = if n == 0 { self.num_term(1, scope) } else { Term::Var(self.var_of_sort(n, scope)) };
                Formula::elem(a, Term::Var(self.var_of_sort(n + 1, scope)))
            }
            _ => {
                let n = self.rng.gen_range(1..=self.max_sort);
                Formula::eq(Term::Var(self.var_of_sort(n, scope)), Term::Var(self.var_of_sort(n, scope)))
            }
        }
    }

    pub fn formula(&mut self, depth: usize) -> Formula {
        self.go(depth, &mut Vec::new())
    }

    fn go(&mut self, depth: usize, scope: &mut Vec<Var>) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.2) {
            return self.atom(scope);
        }
        let choices: &[u8] = match self.shape {
            Shape::Negative => &[0, 2, 4],
            _ => &[0, 1, 2, 3, 4],
        };
        match *choices.choose(&mut self.rng).unwrap() {
            0 => Formula::and(self.go(depth - 1, scope), self.go(depth - 1, scope)),
            1 => Formula::or(self.go(depth - 1, scope), self.go(depth - 1, scope)),
            2 => Formula::imp(self.go(depth - 1, scope), self.go(depth - 1, scope)),
            q => {
                let sort = self.rng.gen_range(0..=self.max_sort);
                self.fresh += 1;
                let name = if sort == 0 { format!("n{}", self.fresh) } else { format!("P{}", self.fresh) };
                let v = Var::new(&name, sort);
                scope.push(v.clone());
                let body = self.go(depth - 1, scope);
                scope.pop();
                if q == 3 {
                    Formula::exists(v, body)
                } else {
                    Formula::forall(v, body)
                }
            }
        }
    }
}

/// `count` formulas from `seed`.
pub fn formulas(seed: u64, count: usize, shape: Shape, depth: usize) -> Vec<Formula> {
    let mut g = Gen::new(seed, shape);
    (0..count).map(|_| g.formula(depth)).collect()
}

/// Whether `f` has an `∃` over a variable of sort at least 1 outside every
/// antecedent, which puts its relevant interpretation in `Type`.
pub fn has_higher_exists(f: &Formula) -> bool {
    match f {
        Formula::Exists(v, b) => v.sort >= 1 || has_higher_exists(b),
        Formula::Forall(_, b) | Formula::Imp(_, b) => has_higher_exists(b),
        Formula::And(a, b) | Formula::Or(a, b) => has_higher_exists(a) || has_higher_exists(b),
        _ => false,
    }
}
