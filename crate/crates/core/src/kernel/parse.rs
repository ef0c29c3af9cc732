//! Surface syntax for kernel terms and judgments.
//!
//! Binders: `fun (x y : A) => b`, `Pi (x : A), B`, `Sig (x : A), B`,
//! `W (x : A), B`, `A -> B`, `A * B`. Eliminators take their motive as
//! `(x. C)`, e.g. `ind_nat (n. C) c f`. Judgments read
//! `x : A ; { a == b : A by p } |- t : T`.

use std::collections::HashMap;

use super::print::KEYWORDS;
use super::term::{shift, Name, Sort, Term};
use super::KernelError;

/// Closed macros available to the parser by name.
pub type Defs = HashMap<String, Term>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(u64),
    Sym(&'static str),
}

const SYMS: [&str; 17] = ["=>", "->", "|-", "==", ":=", "(", ")", ",", ":", ".", "*", "|", ";", "[", "]", "{", "}"];

fn lex(src: &str) -> Result<Vec<(Tok, usize, usize)>, KernelError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let sym = SYMS.iter().find(|s| chars[i..].starts_with(&s.chars().collect::<Vec<_>>()));
        if let Some(sym) = sym {
            out.push((Tok::Sym(sym), pos.0, pos.1));
            i += sym.len();
            col += sym.len();
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text
                .parse()
                .map_err(|_| KernelError::Parse { line: pos.0, col: pos.1, msg: format!("numeral `{text}` too large") })?;
            col += i - start;
            out.push((Tok::Num(n), pos.0, pos.1));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            col += i - start;
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos.0, pos.1));
            continue;
        }
        return Err(KernelError::Parse { line: pos.0, col: pos.1, msg: format!("unexpected character `{c}`") });
    }
    Ok(out)
}

/// One context item of a judgment.
#[derive(Clone, Debug)]
pub enum CtxItem {
    Var(String, Term),
    Hint { lhs: Term, rhs: Term, ty: Term, proof: Term },
}

#[derive(Clone, Debug)]
pub struct Judgment {
    pub ctx: Vec<CtxItem>,
    pub term: Term,
    pub ty: Term,
}

struct Parser<'d> {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    scope: Vec<String>,
    defs: &'d Defs,
    bars: usize,
}

const BINDERS: [&str; 4] = ["fun", "Pi", "Sig", "W"];

impl<'d> Parser<'d> {
    fn new(src: &str, defs: &'d Defs, scope: Vec<String>) -> Result<Parser<'d>, KernelError> {
        Ok(Parser { toks: lex(src)?, pos: 0, scope, defs, bars: 0 })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn err(&self, msg: impl Into<String>) -> KernelError {
        let (line, col) = match self.toks.get(self.pos).or(self.toks.last()) {
            Some((_, l, c)) => (*l, *c),
            None => (1, 1),
        };
        KernelError::Parse { line, col, msg: msg.into() }
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(x)) if *x == s)
    }

    fn is_kw(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(x)) if x == s)
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), KernelError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{s}`")))
        }
    }

    fn ident(&mut self) -> Result<String, KernelError> {
        match self.peek() {
            Some(Tok::Ident(x)) if !KEYWORDS.contains(&x.as_str()) => {
                let x = x.clone();
                self.pos += 1;
                Ok(x)
            }
            _ => Err(self.err("expected an identifier")),
        }
    }

    fn number(&mut self) -> Result<u64, KernelError> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.err("expected a numeral")),
        }
    }

    fn done(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn term(&mut self) -> Result<Term, KernelError> {
        if let Some(Tok::Ident(kw)) = self.peek() {
            if BINDERS.contains(&kw.as_str()) {
                let kw = kw.clone();
                self.pos += 1;
                return self.binder_form(&kw);
            }
        }
        let lhs = self.product()?;
        if self.eat("->") {
            let rhs = self.term()?;
            return Ok(Term::arrow(lhs, rhs));
        }
        Ok(lhs)
    }

    fn binder_form(&mut self, kw: &str) -> Result<Term, KernelError> {
        let mut binders: Vec<(String, Term)> = Vec::new();
        let base = self.scope.len();
        while self.eat("(") {
            let mut names = vec![self.ident()?];
            while !self.is_sym(":") {
                names.push(self.ident()?);
            }
            self.expect(":")?;
            let ty = self.term()?;
            self.expect(")")?;
            for (j, n) in names.into_iter().enumerate() {
                binders.push((n.clone(), shift(&ty, j)));
                self.scope.push(n);
            }
        }
        if binders.is_empty() {
            self.scope.truncate(base);
            return Err(self.err(format!("`{kw}` needs at least one binder group")));
        }
        let sep = if kw == "fun" { "=>" } else { "," };
        let body = self.expect(sep).and_then(|_| self.term());
        self.scope.truncate(base);
        let mut body = body?;
        for (n, ty) in binders.into_iter().rev() {
            body = match kw {
                "fun" => Term::lam(&n, ty, body),
                "Pi" => Term::pi(&n, ty, body),
                "Sig" => Term::sigma(&n, ty, body),
                _ => Term::w(&n, ty, body),
            };
        }
        Ok(body)
    }

    fn product(&mut self) -> Result<Term, KernelError> {
        let lhs = self.app()?;
        if self.eat("*") {
            let rhs = self.product()?;
            return Ok(Term::product(lhs, rhs));
        }
        Ok(lhs)
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Some(Tok::Sym("(")) => true,
            Some(Tok::Sym("|")) => self.bars == 0,
            Some(Tok::Num(_)) => true,
            Some(Tok::Ident(x)) => {
                !KEYWORDS.contains(&x.as_str()) || matches!(x.as_str(), "Prop" | "Set" | "Type" | "Nat" | "propext")
            }
            _ => false,
        }
    }

    fn app(&mut self) -> Result<Term, KernelError> {
        let mut head = match self.peek() {
            Some(Tok::Ident(kw)) if KEYWORDS.contains(&kw.as_str()) && !self.starts_atom() => {
                let kw = kw.clone();
                self.pos += 1;
                self.keyword_form(&kw)?
            }
            _ => self.atom()?,
        };
        while self.starts_atom() {
            let arg = self.atom()?;
            head = Term::app(head, arg);
        }
        Ok(head)
    }

    fn motive(&mut self, arity: usize) -> Result<(Vec<String>, Term), KernelError> {
        self.expect("(")?;
        let mut names = Vec::new();
        for _ in 0..arity {
            names.push(self.ident()?);
        }
        self.expect(".")?;
        let base = self.scope.len();
        self.scope.extend(names.iter().cloned());
        let saved = std::mem::replace(&mut self.bars, 0);
        let body = self.term();
        self.bars = saved;
        self.scope.truncate(base);
        let body = body?;
        self.expect(")")?;
        Ok((names, body))
    }

    fn keyword_form(&mut self, kw: &str) -> Result<Term, KernelError> {
        let rc = std::rc::Rc::new;
        Ok(match kw {
            "S" => Term::succ(self.atom()?),
            "Fin" => Term::Fin(self.number()?),
            "fin" => {
                let k = self.number()?;
                Term::FinEl(k, self.number()?)
            }
            "Id" => {
                let a = self.atom()?;
                let x = self.atom()?;
                Term::id(a, x, self.atom()?)
            }
            "refl" => Term::refl(self.atom()?),
            "Trunc" => Term::trunc(self.atom()?),
            "Quot" => {
                let a = self.atom()?;
                let (ns, r) = self.motive(2)?;
                Term::Quot(rc(a), [Name::new(&ns[0]), Name::new(&ns[1])], rc(r))
            }
            "cls" => {
                let q = self.atom()?;
                Term::Class(rc(q), rc(self.atom()?))
            }
            "ax_quot" => Term::QuotAx(rc(self.atom()?)),
            "tree" => {
                let a = self.atom()?;
                Term::tree(a, self.atom()?)
            }
            "ind_nat" => {
                let (ns, c) = self.motive(1)?;
                let z = self.atom()?;
                Term::ind_nat(&ns[0], c, z, self.atom()?)
            }
            "ind_fin" => {
                let n = self.number()?;
                let (ns, c) = self.motive(1)?;
                let mut cs = Vec::new();
                for _ in 0..n {
                    cs.push(self.atom()?);
                }
                Term::ind_fin(n, &ns[0], c, cs)
            }
            "ind_sig" | "ind_W" => {
                let s = self.atom()?;
                let (ns, c) = self.motive(1)?;
                let f = self.atom()?;
                if kw == "ind_sig" {
                    Term::ind_sigma(s, &ns[0], c, f)
                } else {
                    Term::IndW(rc(s), Name::new(&ns[0]), rc(c), rc(f))
                }
            }
            "ind_eq" => {
                let a = self.atom()?;
                let (ns, c) = self.motive(3)?;
                let f = self.atom()?;
                Term::IndEq(rc(a), [Name::new(&ns[0]), Name::new(&ns[1]), Name::new(&ns[2])], rc(c), rc(f))
            }
            "ind_trunc" | "ind_quot" | "transport" => {
                let a = self.atom()?;
                let (ns, c) = self.motive(1)?;
                let x = self.atom()?;
                let y = self.atom()?;
                let n = Name::new(&ns[0]);
                match kw {
                    "ind_trunc" => Term::IndTrunc(rc(a), n, rc(c), rc(x), rc(y)),
                    "ind_quot" => Term::IndQuot(rc(a), n, rc(c), rc(x), rc(y)),
                    _ => Term::Transport(rc(a), n, rc(c), rc(x), rc(y)),
                }
            }
            other => return Err(self.err(format!("`{other}` cannot start a term here"))),
        })
    }

    fn atom(&mut self) -> Result<Term, KernelError> {
        match self.peek().cloned() {
            Some(Tok::Sym("(")) => {
                self.pos += 1;
                let saved = std::mem::replace(&mut self.bars, 0);
                let r = self.paren_body();
                self.bars = saved;
                r
            }
            Some(Tok::Sym("|")) => {
                self.pos += 1;
                self.bars += 1;
                let inner = self.term();
                self.bars -= 1;
                let inner = inner?;
                self.expect("|")?;
                Ok(Term::trunc_in(inner))
            }
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Term::numeral(n))
            }
            Some(Tok::Ident(x)) => {
                let t = match x.as_str() {
                    "Prop" => Term::Sort(Sort::Prop),
                    "Set" => Term::Sort(Sort::Set),
                    "Type" => Term::Sort(Sort::Type),
                    "Nat" => Term::Nat,
                    "propext" => Term::Propext,
                    _ if KEYWORDS.contains(&x.as_str()) => {
                        return Err(self.err(format!("`{x}` needs parentheses in argument position")))
                    }
                    _ => match self.scope.iter().rev().position(|n| *n == x) {
                        Some(i) => Term::Var(i),
                        None => match self.defs.get(&x) {
                            Some(t) => t.clone(),
                            None => return Err(KernelError::Unbound(x)),
                        },
                    },
                };
                self.pos += 1;
                Ok(t)
            }
            _ => Err(self.err("expected a term")),
        }
    }

    fn paren_body(&mut self) -> Result<Term, KernelError> {
        let t = self.term()?;
        if self.eat(",") {
            let b = self.term()?;
            self.expect(")")?;
            return Ok(Term::pair(t, b));
        }
        if self.eat(":") {
            let ty = self.term()?;
            self.expect(")")?;
            return Ok(Term::ann(t, ty));
        }
        self.expect(")")?;
        Ok(t)
    }

    fn judgment(&mut self) -> Result<Judgment, KernelError> {
        let mut ctx = Vec::new();
        let base = self.scope.len();
        let r = (|| {
            while !self.is_sym("|-") {
                if self.eat("{") {
                    let lhs = self.term()?;
                    self.expect("==")?;
                    let rhs = self.term()?;
                    self.expect(":")?;
                    let ty = self.term()?;
                    if !self.is_kw("by") {
                        return Err(self.err("expected `by`"));
                    }
                    self.pos += 1;
                    let proof = self.term()?;
                    self.expect("}")?;
                    ctx.push(CtxItem::Hint { lhs, rhs, ty, proof });
                } else {
                    let x = self.ident()?;
                    self.expect(":")?;
                    let ty = self.term()?;
                    ctx.push(CtxItem::Var(x.clone(), ty));
                    self.scope.push(x);
                }
                if !self.eat(";") && !self.is_sym("|-") {
                    return Err(self.err("expected `;` or `|-`"));
                }
            }
            self.expect("|-")?;
            let term = self.term()?;
            self.expect(":")?;
            let ty = self.term()?;
            if !self.done() {
                return Err(self.err("trailing input"));
            }
            Ok(Judgment { ctx: ctx.clone(), term, ty })
        })();
        self.scope.truncate(base);
        r
    }
}

/// Parse a closed term.
pub fn parse_term(src: &str, defs: &Defs) -> Result<Term, KernelError> {
    parse_term_in(src, defs, &[])
}

/// Parse a term whose free variables are `names`, outermost first.
pub fn parse_term_in(src: &str, defs: &Defs, names: &[String]) -> Result<Term, KernelError> {
    let mut p = Parser::new(src, defs, names.to_vec())?;
    let t = p.term()?;
    if !p.done() {
        return Err(p.err("trailing input"));
    }
    Ok(t)
}

/// Parse `ctx |- t : T`.
pub fn parse_judgment(src: &str, defs: &Defs) -> Result<Judgment, KernelError> {
    Parser::new(src, defs, Vec::new())?.judgment()
}
