//! Printer for the text grammar; `parse(print(f)) == f` for every formula.

use std::fmt;

use super::syntax::{Formula, PcaConst, Term, Var};

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sort == 0 {
            f.write_str(&self.name)
        } else {
            write!(f, "{}:{}", self.name, self.sort)
        }
    }
}

impl fmt::Display for PcaConst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PcaConst::K => "k",
            PcaConst::S => "s",
            PcaConst::Suc => "suc",
            PcaConst::Rec => "rec",
        })
    }
}

fn term(t: &Term, prec: u8, out: &mut String) {
    let level = match t {
        Term::Add(..) => 0,
        Term::Mul(..) => 1,
        Term::App(..) => 2,
        _ => 3,
    };
    let paren = level < prec;
    if paren {
        out.push('(');
    }
    match t {
        Term::Var(v) => out.push_str(&v.to_string()),
        Term::Zero => out.push('0'),
        Term::Succ(a) => match t.as_numeral() {
            Some(n) => out.push_str(&n.to_string()),
            None => {
                out.push_str("S ");
                term(a, 3, out);
            }
        },
        Term::Add(a, b) => {
            term(a, 0, out);
            out.push_str(" + ");
            term(b, 1, out);
        }
        Term::Mul(a, b) => {
            term(a, 1, out);
            out.push_str(" * ");
            term(b, 2, out);
        }
        Term::App(a, b) => {
            term(a, 2, out);
            out.push_str(" @ ");
            term(b, 3, out);
        }
        Term::Const(c) => out.push_str(&c.to_string()),
        Term::Eps(id) => out.push_str(&format!("eps#{:016x}", id.0)),
    }
    if paren {
        out.push(')');
    }
}

fn formula(f: &Formula, prec: u8, out: &mut String) {
    let level = match f {
        Formula::Imp(_, b) if **b == Formula::Bot => 3,
        Formula::Imp(..) | Formula::Exists(..) | Formula::Forall(..) => 0,
        Formula::Or(..) => 1,
        Formula::And(..) => 2,
        _ => 3,
    };
    let paren = level < prec;
    if paren {
        out.push('(');
    }
    match f {
        Formula::Eq(a, b) => {
            term(a, 0, out);
            out.push_str(" = ");
            term(b, 0, out);
        }
        Formula::Elem(a, b) => {
            term(a, 0, out);
            out.push_str(" in ");
            term(b, 0, out);
        }
        Formula::Defined(a) => {
            term(a, 3, out);
            out.push('!');
        }
        Formula::Rel(r, args) => {
            out.push_str(r);
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                term(a, 0, out);
            }
            out.push(')');
        }
        Formula::Bot => out.push_str("bot"),
        Formula::Top => out.push_str("top"),
        Formula::Imp(a, b) if **b == Formula::Bot => {
            out.push('~');
            formula(a, 3, out);
        }
        Formula::Imp(a, b) => {
            formula(a, 1, out);
            out.push_str(" -> ");
            formula(b, 0, out);
        }
        Formula::Or(a, b) => {
            formula(a, 1, out);
            out.push_str(" \\/ ");
            formula(b, 2, out);
        }
        Formula::And(a, b) => {
            formula(a, 2, out);
            out.push_str(" /\\ ");
            formula(b, 3, out);
        }
        Formula::Exists(v, a) | Formula::Forall(v, a) => {
            out.push_str(if matches!(f, Formula::Exists(..)) { "exists " } else { "forall " });
            out.push_str(&v.to_string());
            out.push_str(". ");
            formula(a, 0, out);
        }
    }
    if paren {
        out.push(')');
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        term(self, 0, &mut s);
        f.write_str(&s)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        formula(self, 0, &mut s);
        f.write_str(&s)
    }
}
