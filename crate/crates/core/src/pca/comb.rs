use std::fmt;
use std::rc::Rc;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::pairing::{pair, unpair};

/// A closed combinator term.
///
/// `Eps(i)` is the i-th ε-constant of the extended language; it only reduces
/// under a [`super::Machine`] that carries an oracle bank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Comb {
    K,
    S,
    Suc,
    Rec,
    Num(u64),
    Eps(u32),
    App(Rc<Comb>, Rc<Comb>),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GodelError {
    #[error("numeral in code {0} does not fit in 64 bits")]
    NumeralTooLarge(BigUint),
    #[error("ε index in code {0} does not fit in 32 bits")]
    EpsTooLarge(BigUint),
}

impl Comb {
    pub fn app(f: Comb, a: Comb) -> Comb {
        Comb::App(Rc::new(f), Rc::new(a))
    }

    /// Left-nested application of `head` to all `args`.
    pub fn apps<I: IntoIterator<Item = Comb>>(head: Comb, args: I) -> Comb {
        args.into_iter().fold(head, Comb::app)
    }

    pub fn num(n: u64) -> Comb {
        Comb::Num(n)
    }

    pub fn as_num(&self) -> Option<u64> {
        match self {
            Comb::Num(n) => Some(*n),
            _ => None,
        }
    }

    /// Number of leaves.
    pub fn size(&self) -> usize {
        match self {
            Comb::App(f, a) => f.size() + a.size(),
            _ => 1,
        }
    }

    /// Head constant and argument count of the application spine.
    fn spine(&self) -> (&Comb, usize) {
        let mut head = self;
        let mut n = 0;
        while let Comb::App(f, _) = head {
            head = f;
            n += 1;
        }
        (head, n)
    }

    /// Syntactic value test: constants, numerals, and under-applied constants
    /// whose arguments are themselves values.
    pub fn is_value(&self) -> bool {
        let (head, n) = self.spine();
        let arity = match head {
            Comb::K => 2,
            Comb::S | Comb::Rec => 3,
            Comb::Suc => 1,
            Comb::Num(_) | Comb::Eps(_) => 0,
            Comb::App(..) => unreachable!("spine head is never an application"),
        };
        if n > 0 && n >= arity {
            return false;
        }
        let mut cur = self;
        while let Comb::App(f, a) = cur {
            if !a.is_value() {
                return false;
            }
            cur = f;
        }
        true
    }

    /// Gödel number: `k,s,suc,rec` are 0..3, `4+3n` is numeral n,
    /// `5+3i` is ε-constant i, and `6+3<f,a>` is the application `f a`.
    pub fn code(&self) -> BigUint {
        match self {
            Comb::K => BigUint::from(0u8),
            Comb::S => BigUint::from(1u8),
            Comb::Suc => BigUint::from(2u8),
            Comb::Rec => BigUint::from(3u8),
            Comb::Num(n) => BigUint::from(4u8) + BigUint::from(3u8) * BigUint::from(*n),
            Comb::Eps(i) => BigUint::from(5u8) + BigUint::from(3u8) * BigUint::from(*i),
            Comb::App(f, a) => BigUint::from(6u8) + BigUint::from(3u8) * pair(&f.code(), &a.code()),
        }
    }

    pub fn from_code(n: &BigUint) -> Result<Comb, GodelError> {
        if let Some(small) = n.to_u8() {
            match small {
                0 => return Ok(Comb::K),
                1 => return Ok(Comb::S),
                2 => return Ok(Comb::Suc),
                3 => return Ok(Comb::Rec),
                _ => {}
            }
        }
        let m = n - BigUint::from(4u8);
        let three = BigUint::from(3u8);
        let q = &m / &three;
        let r = &m % &three;
        if r.is_zero() {
            q.to_u64().map(Comb::Num).ok_or_else(|| GodelError::NumeralTooLarge(n.clone()))
        } else if r == BigUint::from(1u8) {
            q.to_u32().map(Comb::Eps).ok_or_else(|| GodelError::EpsTooLarge(n.clone()))
        } else {
            let (f, a) = unpair(&q);
            Ok(Comb::app(Comb::from_code(&f)?, Comb::from_code(&a)?))
        }
    }

    pub fn from_code_u64(n: u64) -> Comb {
        Comb::from_code(&BigUint::from(n)).expect("codes below 2^64 decode")
    }
}

impl fmt::Display for Comb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Comb::K => f.write_str("k"),
            Comb::S => f.write_str("s"),
            Comb::Suc => f.write_str("suc"),
            Comb::Rec => f.write_str("rec"),
            Comb::Num(n) => write!(f, "{n}"),
            Comb::Eps(i) => write!(f, "eps{i}"),
            Comb::App(g, a) => {
                write!(f, "{g} ")?;
                if matches!(**a, Comb::App(..)) {
                    write!(f, "({a})")
                } else {
                    write!(f, "{a}")
                }
            }
        }
    }
}
