//! Surface syntax: `k`, `s`, `suc`, `rec`, numerals, juxtaposition,
//! parentheses and `\x y. body`. The names `add`, `mul`, `pair`, `fst`, `snd`,
//! `pred`, `skk`, `ifz`, `npair`, `nfst` and `nsnd` stand for the library codes.

use thiserror::Error;

use super::comb::Comb;
use super::lambda::{abstract_many, close, Open};
use super::library;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(u64),
    LParen,
    RParen,
    Lambda,
    Dot,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        let (l, c) = (line, col);
        let advance = |i: &mut usize, col: &mut usize| {
            *i += 1;
            *col += 1;
        };
        match ch {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => advance(&mut i, &mut col),
            '(' => {
                out.push((Tok::LParen, l, c));
                advance(&mut i, &mut col);
            }
            ')' => {
                out.push((Tok::RParen, l, c));
                advance(&mut i, &mut col);
            }
            '\\' | 'λ' => {
                out.push((Tok::Lambda, l, c));
                advance(&mut i, &mut col);
            }
            '.' => {
                out.push((Tok::Dot, l, c));
                advance(&mut i, &mut col);
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    advance(&mut i, &mut col);
                }
                let text: String = chars[start..i].iter().collect();
                let n = text.parse().map_err(|_| ParseError { line: l, col: c, msg: format!("numeral `{text}` too large") })?;
                out.push((Tok::Num(n), l, c));
            }
            a if a.is_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    advance(&mut i, &mut col);
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), l, c));
            }
            other => return Err(ParseError { line: l, col: c, msg: format!("unexpected character `{other}`") }),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        let (line, col) = self.toks.get(self.pos).map(|t| (t.1, t.2)).unwrap_or_else(|| {
            self.toks.last().map(|t| (t.1, t.2 + 1)).unwrap_or((1, 1))
        });
        ParseError { line, col, msg: msg.into() }
    }

    fn term(&mut self) -> Result<Open, ParseError> {
        if self.peek() == Some(&Tok::Lambda) {
            self.pos += 1;
            let mut vars = Vec::new();
            while let Some(Tok::Ident(x)) = self.peek() {
                vars.push(x.clone());
                self.pos += 1;
            }
            if vars.is_empty() {
                return Err(self.err("expected a variable after `\\`"));
            }
            if self.peek() != Some(&Tok::Dot) {
                return Err(self.err("expected `.`"));
            }
            self.pos += 1;
            let body = self.term()?;
            let refs: Vec<&str> = vars.iter().map(String::as_str).collect();
            return Ok(abstract_many(&refs, &body));
        }
        let mut acc = self.atom()?;
        while matches!(self.peek(), Some(Tok::Ident(_) | Tok::Num(_) | Tok::LParen | Tok::Lambda)) {
            let arg = if self.peek() == Some(&Tok::Lambda) { self.term()? } else { self.atom()? };
            acc = Open::app(acc, arg);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Open, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Open::Const(Comb::Num(n)))
            }
            Some(Tok::Ident(x)) => {
                self.pos += 1;
                Ok(match x.as_str() {
                    "k" => Open::Const(Comb::K),
                    "s" => Open::Const(Comb::S),
                    "suc" => Open::Const(Comb::Suc),
                    "rec" => Open::Const(Comb::Rec),
                    "add" => Open::Const(library::add()),
                    "mul" => Open::Const(library::mul()),
                    "pair" => Open::Const(library::cpair()),
                    "fst" => Open::Const(library::cfst()),
                    "snd" => Open::Const(library::csnd()),
                    "pred" => Open::Const(library::pred()),
                    "skk" => Open::Const(library::skk()),
                    "ifz" => Open::Const(library::ifz()),
                    "npair" => Open::Const(library::num_pair()),
                    "nfst" => Open::Const(library::num_fst()),
                    "nsnd" => Open::Const(library::num_snd()),
                    _ => Open::Var(x),
                })
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(t)
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

/// Parse a possibly open term.
pub fn parse_open(src: &str) -> Result<Open, ParseError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let t = p.term()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(t)
}

/// Parse a closed term.
pub fn parse_comb(src: &str) -> Result<Comb, ParseError> {
    let t = parse_open(src)?;
    close(&t).map_err(|e| ParseError { line: 1, col: 1, msg: e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pca::machine::{eval, EvalOutcome};

    #[test]
    fn lambda_surface_lowers_through_abstraction() {
        let t = parse_comb(r"(\x. suc x) 4").unwrap();
        assert_eq!(eval(&t, 1000).unwrap(), EvalOutcome::Value(Comb::Num(5)));
    }

    #[test]
    fn printed_codes_reparse() {
        let t = parse_comb(r"\x y. add (mul x x) y").unwrap();
        assert_eq!(parse_comb(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_comb("k (s").unwrap_err();
        assert_eq!((e.line, e.col), (1, 5));
        assert!(parse_comb(r"\x. y").is_err());
        assert!(parse_comb("k $").is_err());
    }
}
