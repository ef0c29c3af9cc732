//! Parser for the text grammar: `0`, `S t`, `t + t`, `t * t`, `t @ t`,
//! `x:n`, `t in X`, `t = t`, `t != t`, `t!`, `R(t, …)`, `~A`, `A /\ B`,
//! `A \/ B`, `A -> B`, `A <-> B`, `exists x. A`, `forall X:1. A`, `bot`, `top`.
//!
//! An unannotated variable takes the sort of the nearest binder of that
//! name, and sort 0 when free.

use super::syntax::{EpsId, Formula, PcaConst, Term, Var};
use super::HologError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(u64),
    Eps(u64),
    Sym(&'static str),
}

const SYMS: [&str; 15] = ["<->", "->", "\\/", "/\\", "!=", "(", ")", ".", ",", ":", "=", "+", "*", "@", "!"];

fn lex(src: &str) -> Result<Vec<(Tok, usize, usize)>, HologError> {
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
        if c == '~' {
            out.push((Tok::Sym("~"), pos.0, pos.1));
            i += 1;
            col += 1;
            continue;
        }
        if let Some(sym) = SYMS.iter().find(|s| chars[i..].starts_with(&s.chars().collect::<Vec<_>>())) {
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
            let n = text.parse().map_err(|_| HologError::Parse { line: pos.0, col: pos.1, msg: format!("numeral `{text}` too large") })?;
            col += i - start;
            out.push((Tok::Num(n), pos.0, pos.1));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            col += i - start;
            if word == "eps" && chars.get(i) == Some(&'#') {
                let hs = i + 1;
                let mut j = hs;
                while j < chars.len() && chars[j].is_ascii_hexdigit() {
                    j += 1;
                }
                let hex: String = chars[hs..j].iter().collect();
                let id = u64::from_str_radix(&hex, 16)
                    .map_err(|_| HologError::Parse { line: pos.0, col: pos.1, msg: "malformed ε identifier".into() })?;
                col += j - i;
                i = j;
                out.push((Tok::Eps(id), pos.0, pos.1));
            } else {
                out.push((Tok::Ident(word), pos.0, pos.1));
            }
            continue;
        }
        return Err(HologError::Parse { line: pos.0, col: pos.1, msg: format!("unexpected character `{c}`") });
    }
    Ok(out)
}

const KEYWORDS: [&str; 10] = ["S", "in", "exists", "forall", "bot", "top", "k", "s", "suc", "rec"];

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    scopes: Vec<Var>,
}

type PResult<T> = Result<T, HologError>;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.0)
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(t)) if *t == s)
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(t)) if t == w)
    }

    fn err(&self, msg: impl Into<String>) -> HologError {
        let (line, col) = match self.toks.get(self.pos) {
            Some(t) => (t.1, t.2),
            None => self.toks.last().map(|t| (t.1, t.2 + 1)).unwrap_or((1, 1)),
        };
        HologError::Parse { line, col, msg: msg.into() }
    }

    fn expect_sym(&mut self, s: &str) -> PResult<()> {
        if self.is_sym(s) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{s}`")))
        }
    }

    fn formula(&mut self) -> PResult<Formula> {
        if self.is_word("exists") || self.is_word("forall") {
            return self.quantifier();
        }
        let lhs = self.or()?;
        if self.is_sym("->") {
            self.pos += 1;
            let rhs = self.formula()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        if self.is_sym("<->") {
            self.pos += 1;
            let rhs = self.formula()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn quantifier(&mut self) -> PResult<Formula> {
        let exists = self.is_word("exists");
        self.pos += 1;
        let mut binders = Vec::new();
        while let Some(Tok::Ident(name)) = self.peek().cloned() {
            if KEYWORDS.contains(&name.as_str()) {
                return Err(self.err(format!("`{name}` cannot be bound")));
            }
            self.pos += 1;
            let sort = self.sort_annotation()?.unwrap_or(0);
            binders.push(Var { name, sort });
        }
        if binders.is_empty() {
            return Err(self.err("expected a bound variable"));
        }
        self.expect_sym(".")?;
        let depth = self.scopes.len();
        self.scopes.extend(binders.iter().cloned());
        let body = self.formula();
        self.scopes.truncate(depth);
        let body = body?;
        Ok(binders.into_iter().rev().fold(body, |acc, v| {
            if exists {
                Formula::exists(v, acc)
            } else {
                Formula::forall(v, acc)
            }
        }))
    }

    fn sort_annotation(&mut self) -> PResult<Option<u32>> {
        if self.is_sym(":") {
            self.pos += 1;
            match self.peek() {
                Some(Tok::Num(n)) => {
                    let n = u32::try_from(*n).map_err(|_| self.err("sort too large"))?;
                    self.pos += 1;
                    Ok(Some(n))
                }
                _ => Err(self.err("expected a sort number")),
            }
        } else {
            Ok(None)
        }
    }

    fn or(&mut self) -> PResult<Formula> {
        let mut acc = self.and()?;
        while self.is_sym("\\/") {
            self.pos += 1;
            let rhs = self.and()?;
            acc = Formula::or(acc, rhs);
        }
        Ok(acc)
    }

    fn and(&mut self) -> PResult<Formula> {
        let mut acc = self.unary()?;
        while self.is_sym("/\\") {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = Formula::and(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> PResult<Formula> {
        if self.is_sym("~") {
            self.pos += 1;
            return Ok(Formula::not(self.unary()?));
        }
        if self.is_word("exists") || self.is_word("forall") {
            return self.quantifier();
        }
        self.atom()
    }

    fn atom(&mut self) -> PResult<Formula> {
        if self.is_word("bot") {
            self.pos += 1;
            return Ok(Formula::Bot);
        }
        if self.is_word("top") {
            self.pos += 1;
            return Ok(Formula::Top);
        }
        if let (Some(Tok::Ident(name)), Some(Tok::Sym("("))) = (self.peek().cloned(), self.peek_at(1)) {
            if !KEYWORDS.contains(&name.as_str()) {
                self.pos += 2;
                let mut args = Vec::new();
                if !self.is_sym(")") {
                    args.push(self.term()?);
                    while self.is_sym(",") {
                        self.pos += 1;
                        args.push(self.term()?);
                    }
                }
                self.expect_sym(")")?;
                return Ok(Formula::Rel(name, args));
            }
        }
        if self.is_sym("(") {
            let save = self.pos;
            self.pos += 1;
            if let Ok(f) = self.formula() {
                if self.is_sym(")") {
                    self.pos += 1;
                    let continues_as_term = ["=", "!=", "in", "!", "+", "*", "@"]
                        .iter()
                        .any(|s| self.is_sym(s) || self.is_word(s));
                    if !continues_as_term {
                        return Ok(f);
                    }
                }
            }
            self.pos = save;
        }
        let lhs = self.term()?;
        if self.is_sym("=") {
            self.pos += 1;
            return Ok(Formula::eq(lhs, self.term()?));
        }
        if self.is_sym("!=") {
            self.pos += 1;
            return Ok(Formula::neq(lhs, self.term()?));
        }
        if self.is_word("in") {
            self.pos += 1;
            return Ok(Formula::elem(lhs, self.term()?));
        }
        if self.is_sym("!") {
            self.pos += 1;
            return Ok(Formula::Defined(lhs));
        }
        Err(self.err("expected `=`, `!=`, `in` or `!` after a term"))
    }

    fn term(&mut self) -> PResult<Term> {
        let mut acc = self.product()?;
        while self.is_sym("+") {
            self.pos += 1;
            acc = Term::add(acc, self.product()?);
        }
        Ok(acc)
    }

    fn product(&mut self) -> PResult<Term> {
        let mut acc = self.application()?;
        while self.is_sym("*") {
            self.pos += 1;
            acc = Term::mul(acc, self.application()?);
        }
        Ok(acc)
    }

    fn application(&mut self) -> PResult<Term> {
        let mut acc = self.unary_term()?;
        while self.is_sym("@") {
            self.pos += 1;
            acc = Term::app(acc, self.unary_term()?);
        }
        Ok(acc)
    }

    fn unary_term(&mut self) -> PResult<Term> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Term::num(n))
            }
            Some(Tok::Eps(id)) => {
                self.pos += 1;
                Ok(Term::Eps(EpsId(id)))
            }
            Some(Tok::Sym("(")) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect_sym(")")?;
                Ok(t)
            }
            Some(Tok::Ident(w)) => {
                self.pos += 1;
                match w.as_str() {
                    "S" => Ok(Term::succ(self.unary_term()?)),
                    "k" => Ok(Term::Const(PcaConst::K)),
                    "s" => Ok(Term::Const(PcaConst::S)),
                    "suc" => Ok(Term::Const(PcaConst::Suc)),
                    "rec" => Ok(Term::Const(PcaConst::Rec)),
                    kw if KEYWORDS.contains(&kw) => {
                        self.pos -= 1;
                        Err(self.err(format!("unexpected keyword `{kw}`")))
                    }
                    _ => {
                        let sort = match self.sort_annotation()? {
                            Some(s) => s,
                            None => self.scopes.iter().rev().find(|v| v.name == w).map(|v| v.sort).unwrap_or(0),
                        };
                        Ok(Term::Var(Var { name: w, sort }))
                    }
                }
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

fn run<T>(src: &str, f: impl FnOnce(&mut Parser) -> PResult<T>) -> PResult<T> {
    let mut p = Parser { toks: lex(src)?, pos: 0, scopes: Vec::new() };
    let out = f(&mut p)?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

pub fn parse_formula(src: &str) -> Result<Formula, HologError> {
    run(src, |p| p.formula())
}

pub fn parse_term(src: &str) -> Result<Term, HologError> {
    run(src, |p| p.term())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Term {
        Term::var("x", 0)
    }

    #[test]
    fn terms_and_precedence() {
        assert_eq!(parse_term("S S 0").unwrap(), Term::num(2));
        assert_eq!(parse_term("x + 1 * x").unwrap(), Term::add(x(), Term::mul(Term::num(1), x())));
        assert_eq!(
            parse_term("k @ x @ 0").unwrap(),
            Term::app(Term::app(Term::Const(PcaConst::K), x()), Term::Zero)
        );
        assert_eq!(parse_term("(x + x) * x").unwrap(), Term::mul(Term::add(x(), x()), x()));
    }

    #[test]
    fn binders_determine_sorts() {
        let f = parse_formula("forall X:1. x in X").unwrap();
        assert_eq!(f, Formula::forall(Var::new("X", 1), Formula::elem(x(), Term::var("X", 1))));
        let free = parse_formula("x in Y:1").unwrap();
        assert_eq!(free.free_vars(), vec![Var::new("x", 0), Var::new("Y", 1)]);
    }

    #[test]
    fn connectives() {
        let f = parse_formula("0 = 0 \\/ bot -> ~(x = 1) /\\ x!").unwrap();
        let expected = Formula::imp(
            Formula::or(Formula::eq(Term::Zero, Term::Zero), Formula::Bot),
            Formula::and(Formula::not(Formula::eq(x(), Term::num(1))), Formula::Defined(x())),
        );
        assert_eq!(f, expected);
        let g = parse_formula("R(x, S x) <-> top").unwrap();
        assert!(matches!(g, Formula::And(..)));
    }

    #[test]
    fn parenthesised_terms_are_not_formulas() {
        let f = parse_formula("(x + 1) = x").unwrap();
        assert_eq!(f, Formula::eq(Term::add(x(), Term::num(1)), x()));
        let g = parse_formula("(x = 1)").unwrap();
        assert_eq!(g, Formula::eq(x(), Term::num(1)));
    }

    #[test]
    fn errors_report_positions() {
        match parse_formula("x = ") {
            Err(HologError::Parse { line, col, .. }) => assert_eq!((line, col), (1, 4)),
            other => panic!("{other:?}"),
        }
        assert!(parse_formula("forall . x = x").is_err());
        assert!(parse_formula("x = x )").is_err());
    }

    mod roundtrip {
        use super::super::*;
        use crate::holog::syntax::PcaConst;
        use proptest::prelude::*;

        fn arb_term() -> impl Strategy<Value = Term> {
            let leaf = prop_oneof![
                Just(Term::Zero),
                (0u64..20).prop_map(Term::num),
                prop::sample::select(vec!["x", "y", "z"]).prop_map(|n| Term::var(n, 0)),
                prop::sample::select(vec![PcaConst::K, PcaConst::S, PcaConst::Suc, PcaConst::Rec]).prop_map(Term::Const),
                any::<u64>().prop_map(|h| Term::Eps(EpsId(h))),
            ];
            leaf.prop_recursive(4, 24, 2, |inner| {
                prop_oneof![
                    inner.clone().prop_map(Term::succ),
                    (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::add(a, b)),
                    (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::mul(a, b)),
                    (inner.clone(), inner).prop_map(|(a, b)| Term::app(a, b)),
                ]
            })
        }

        fn arb_formula() -> impl Strategy<Value = Formula> {
            let set = prop::sample::select(vec!["X", "Y"]).prop_map(|n| Term::var(n, 1));
            let leaf = prop_oneof![
                (arb_term(), arb_term()).prop_map(|(a, b)| Formula::eq(a, b)),
                (arb_term(), set).prop_map(|(a, b)| Formula::elem(a, b)),
                arb_term().prop_map(Formula::Defined),
                prop::collection::vec(arb_term(), 0..3).prop_map(|args| Formula::Rel("R".into(), args)),
                Just(Formula::Bot),
                Just(Formula::Top),
            ];
            leaf.prop_recursive(4, 32, 2, |inner| {
                let var = prop::sample::select(vec!["x", "y", "w"]).prop_map(|n| Var::new(n, 0));
                prop_oneof![
                    (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                    (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                    (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
                    inner.clone().prop_map(Formula::not),
                    (var.clone(), inner.clone()).prop_map(|(v, a)| Formula::exists(v, a)),
                    (var, inner).prop_map(|(v, a)| Formula::forall(v, a)),
                ]
            })
        }

        proptest! {
            #[test]
            fn print_then_parse_is_identity(f in arb_formula()) {
                let printed = f.to_string();
                prop_assert_eq!(parse_formula(&printed).unwrap(), f, "{}", printed);
            }

            #[test]
            fn terms_roundtrip(t in arb_term()) {
                prop_assert_eq!(parse_term(&t.to_string()).unwrap(), t);
            }
        }
    }
}
