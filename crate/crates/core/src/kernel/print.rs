//! Printer for the surface syntax. Binder names are freshened against
//! everything in scope so that the output parses back to the same term.

use super::term::{occurs, Term};

pub(crate) const KEYWORDS: &[&str] = &[
    "fun", "Pi", "Sig", "W", "Prop", "Set", "Type", "Nat", "S", "Fin", "fin", "Id", "refl", "Trunc", "Quot", "cls",
    "ax_quot", "tree", "ind_nat", "ind_fin", "ind_sig", "ind_W", "ind_eq", "ind_trunc", "ind_quot", "transport",
    "propext", "def", "by",
];

/// Render `t` in a context whose variable names are `names`, outermost first.
pub fn show(t: &Term, names: &[String]) -> String {
    let mut p = Printer { names: names.to_vec() };
    p.term(t, 0)
}

struct Printer {
    names: Vec<String>,
}

// Precedence levels: 0 binders and arrows, 1 products, 2 application, 3 atoms.
impl Printer {
    fn fresh(&self, base: &str) -> String {
        let base = if base.is_empty() || base == "_" { "x" } else { base };
        let mut cand = base.to_string();
        while self.names.contains(&cand) || KEYWORDS.contains(&cand.as_str()) {
            cand.push('\'');
        }
        cand
    }

    fn under<R>(&mut self, names: &[&str], used: &[bool], f: impl FnOnce(&mut Self, Vec<String>) -> R) -> R {
        let mut chosen = Vec::new();
        for (n, u) in names.iter().zip(used) {
            let c = if *u || *n != "_" { self.fresh(n) } else { "_".to_string() };
            self.names.push(c.clone());
            chosen.push(c);
        }
        let r = f(self, chosen);
        for _ in names {
            self.names.pop();
        }
        r
    }

    fn var(&self, i: usize) -> String {
        let n = self.names.len();
        if i < n {
            self.names[n - 1 - i].clone()
        } else {
            format!("#{}", i - n)
        }
    }

    fn paren(s: String, needed: bool) -> String {
        if needed {
            format!("({s})")
        } else {
            s
        }
    }

    fn motive(&mut self, names: &[&str], c: &Term) -> String {
        let used = vec![true; names.len()];
        self.under(names, &used, |p, ns| format!("({}. {})", ns.join(" "), p.term(c, 0)))
    }

    fn binder(&mut self, kw: &str, sep: &str, n: &str, a: &Term, b: &Term, prec: u8) -> String {
        let dom = self.term(a, 0);
        let s = self.under(&[n], &[true], |p, ns| format!("{kw} ({} : {dom}){sep} {}", ns[0], p.term(b, 0)));
        Self::paren(s, prec > 0)
    }

    fn term(&mut self, t: &Term, prec: u8) -> String {
        if let Some(k) = t.as_numeral() {
            return k.to_string();
        }
        match t {
            Term::Sort(s) => s.to_string(),
            Term::Var(i) => self.var(*i),
            Term::Nat => "Nat".into(),
            Term::Zero => "0".into(),
            Term::Propext => "propext".into(),
            Term::Pi(n, a, b) if !occurs(b, 0) => {
                let l = self.term(a, 1);
                let r = self.under(&["_"], &[false], |p, _| p.term(b, 0));
                Self::paren(format!("{l} -> {r}"), prec > 0)
            }
            Term::Pi(n, a, b) => self.binder("Pi", ",", n.as_str(), a, b, prec),
            Term::Lam(n, a, b) => {
                let dom = self.term(a, 0);
                let used = occurs(b, 0);
                let s = self.under(&[n.as_str()], &[used], |p, ns| format!("fun ({} : {dom}) => {}", ns[0], p.term(b, 0)));
                Self::paren(s, prec > 0)
            }
            Term::Sigma(_, a, b) if !occurs(b, 0) => {
                let l = self.term(a, 2);
                let r = self.under(&["_"], &[false], |p, _| p.term(b, 1));
                Self::paren(format!("{l} * {r}"), prec > 1)
            }
            Term::Sigma(n, a, b) => self.binder("Sig", ",", n.as_str(), a, b, prec),
            Term::W(n, a, b) => self.binder("W", ",", n.as_str(), a, b, prec),
            Term::Pair(a, b) => format!("({}, {})", self.term(a, 0), self.term(b, 0)),
            Term::Ann(a, b) => format!("({} : {})", self.term(a, 0), self.term(b, 0)),
            Term::TruncIn(a) => Self::paren(format!("|{}|", self.term(a, 0)), prec > 2),
            Term::Fin(n) => Self::paren(format!("Fin {n}"), prec > 2),
            Term::FinEl(k, n) => Self::paren(format!("fin {k} {n}"), prec > 2),
            _ => {
                let s = self.app_like(t);
                Self::paren(s, prec > 2)
            }
        }
    }

    fn app_like(&mut self, t: &Term) -> String {
        match t {
            Term::App(f, a) => format!("{} {}", self.term(f, 2), self.term(a, 3)),
            Term::Succ(a) => format!("S {}", self.term(a, 3)),
            Term::Tree(a, d) => format!("tree {} {}", self.term(a, 3), self.term(d, 3)),
            Term::Id(a, x, y) => format!("Id {} {} {}", self.term(a, 3), self.term(x, 3), self.term(y, 3)),
            Term::Refl(a) => format!("refl {}", self.term(a, 3)),
            Term::Trunc(a) => format!("Trunc {}", self.term(a, 3)),
            Term::Class(q, a) => format!("cls {} {}", self.term(q, 3), self.term(a, 3)),
            Term::QuotAx(q) => format!("ax_quot {}", self.term(q, 3)),
            Term::Quot(a, ns, r) => {
                let a = self.term(a, 3);
                format!("Quot {a} {}", self.motive(&[ns[0].as_str(), ns[1].as_str()], r))
            }
            Term::IndNat(n, c, z, s) => {
                let m = self.motive(&[n.as_str()], c);
                format!("ind_nat {m} {} {}", self.term(z, 3), self.term(s, 3))
            }
            Term::IndFin(k, n, c, cs) => {
                let m = self.motive(&[n.as_str()], c);
                let mut out = format!("ind_fin {k} {m}");
                for x in cs {
                    out.push(' ');
                    out.push_str(&self.term(x, 3));
                }
                out
            }
            Term::IndSigma(s, n, c, g) => self.elim("ind_sig", s, &[n.as_str()], c, &[g]),
            Term::IndW(s, n, c, g) => self.elim("ind_W", s, &[n.as_str()], c, &[g]),
            Term::IndEq(a, ns, c, g) => self.elim("ind_eq", a, &[ns[0].as_str(), ns[1].as_str(), ns[2].as_str()], c, &[g]),
            Term::IndTrunc(a, n, c, g, h) => self.elim("ind_trunc", a, &[n.as_str()], c, &[g, h]),
            Term::IndQuot(q, n, c, g, h) => self.elim("ind_quot", q, &[n.as_str()], c, &[g, h]),
            Term::Transport(a, n, c, e, u) => self.elim("transport", a, &[n.as_str()], c, &[e, u]),
            _ => unreachable!("handled in term"),
        }
    }

    fn elim(&mut self, kw: &str, ty: &Term, names: &[&str], c: &Term, rest: &[&Term]) -> String {
        let ty = self.term(ty, 3);
        let m = self.motive(names, c);
        let mut out = format!("{kw} {ty} {m}");
        for x in rest {
            out.push(' ');
            out.push_str(&self.term(x, 3));
        }
        out
    }
}

impl std::fmt::Display for Term {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&show(self, &[]))
    }
}
