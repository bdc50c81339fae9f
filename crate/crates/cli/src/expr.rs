//! The `--f` mini-language.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | number | atom | '(' expr ')' | 'bol(' expr ',' int ')'
//! atom   := G<w> | E<w> | Delta | j | f<w>_<m>
//! ```
//!
//! Numbers are integers or fractions `p/q` and scale forms. Atoms are built
//! up to the run's truncation through the cache.

use cyclelift::exactmath::Rational;
use cyclelift::qseries::{bol, delta, eisenstein_e, eisenstein_g, j_function, weakly_basis, QSeries};

use crate::cache::Cache;
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Comma,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn lex(src: &str) -> CliResult<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => (out.push(Token::Plus), i += 1).1,
            '-' => (out.push(Token::Minus), i += 1).1,
            '*' => (out.push(Token::Star), i += 1).1,
            '/' => (out.push(Token::Slash), i += 1).1,
            '(' => (out.push(Token::LParen), i += 1).1,
            ')' => (out.push(Token::RParen), i += 1).1,
            ',' => (out.push(Token::Comma), i += 1).1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token::Number(s.parse().map_err(|_| usage(format!("number {s} is too large")))?));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                i += 1;
                // f-2_1: a minus sign directly after the basis prefix is part of the name
                if c == 'f' && i + 1 < chars.len() && chars[i] == '-' && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(usage(format!("unexpected character {other:?} in form expression"))),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Val {
    Scalar(Rational),
    Form(QSeries),
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    truncation: i64,
    cache: &'a Cache,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Token) -> CliResult<()> {
        match self.next() {
            Some(got) if got == t => Ok(()),
            got => Err(usage(format!("expected {t:?}, found {got:?}"))),
        }
    }

    fn expr(&mut self) -> CliResult<Val> {
        let mut acc = self.term()?;
        while let Some(op @ (Token::Plus | Token::Minus)) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = combine(acc, rhs, op == Token::Minus)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> CliResult<Val> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = match (acc, rhs) {
                (Val::Scalar(a), Val::Scalar(b)) => Val::Scalar(a * b),
                (Val::Scalar(a), Val::Form(f)) | (Val::Form(f), Val::Scalar(a)) => Val::Form(f.scale(&a)),
                (Val::Form(f), Val::Form(g)) => Val::Form(f.mul(&g)),
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> CliResult<Val> {
        match self.next() {
            Some(Token::Minus) => Ok(match self.factor()? {
                Val::Scalar(a) => Val::Scalar(-a),
                Val::Form(f) => Val::Form(f.neg()),
            }),
            Some(Token::Number(n)) => {
                if self.peek() == Some(&Token::Slash) {
                    self.pos += 1;
                    match self.next() {
                        Some(Token::Number(0)) => Err(usage("division by zero in form expression")),
                        Some(Token::Number(d)) => Ok(Val::Scalar(Rational::new(n.into(), d.into()))),
                        got => Err(usage(format!("expected a denominator, found {got:?}"))),
                    }
                } else {
                    Ok(Val::Scalar(Rational::from_integer(n.into())))
                }
            }
            Some(Token::LParen) => {
                let v = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(v)
            }
            Some(Token::Ident(name)) if name == "bol" => {
                self.expect(Token::LParen)?;
                let inner = self.expr()?;
                self.expect(Token::Comma)?;
                let k = match self.next() {
                    Some(Token::Number(k)) => k,
                    got => return Err(usage(format!("bol needs an integer k, found {got:?}"))),
                };
                self.expect(Token::RParen)?;
                match inner {
                    Val::Form(f) => Ok(Val::Form(bol(&f, k)?)),
                    Val::Scalar(_) => Err(usage("bol needs a form")),
                }
            }
            Some(Token::Ident(name)) => self.atom(&name).map(Val::Form),
            got => Err(usage(format!("unexpected {got:?} in form expression"))),
        }
    }

    fn atom(&self, name: &str) -> CliResult<QSeries> {
        let n = self.truncation;
        let weight_of = |s: &str| s.parse::<i64>().map_err(|_| usage(format!("bad weight in {name:?}")));
        if name == "Delta" {
            return self.cache.get_or_build("delta", 12, 0, n, || Ok(delta(n)));
        }
        if name == "j" {
            return self.cache.get_or_build("j", 0, 0, n, || Ok(j_function(n).with_weight(Some(0))));
        }
        if let Some(w) = name.strip_prefix('G') {
            let w = weight_of(w)?;
            return self.cache.get_or_build("G", w, 0, n, || eisenstein_g(w, n));
        }
        if let Some(w) = name.strip_prefix('E') {
            let w = weight_of(w)?;
            return self.cache.get_or_build("E", w, 0, n, || eisenstein_e(w, n));
        }
        if let Some(rest) = name.strip_prefix('f') {
            let (w, m) =
                rest.split_once('_').ok_or_else(|| usage(format!("basis element {name:?} needs the form f<w>_<m>")))?;
            let w = weight_of(w)?;
            let m = m.parse::<i64>().map_err(|_| usage(format!("bad order in {name:?}")))?;
            return self.cache.get_or_build("f", w, m, n, || weakly_basis(w, m, n));
        }
        Err(usage(format!("unknown form {name:?}")))
    }
}

fn combine(a: Val, b: Val, subtract: bool) -> CliResult<Val> {
    match (a, b) {
        (Val::Scalar(x), Val::Scalar(y)) => Ok(Val::Scalar(if subtract { x - y } else { x + y })),
        (Val::Form(f), Val::Form(g)) => Ok(Val::Form(if subtract { f.sub(&g)? } else { f.add(&g)? })),
        _ => Err(usage("cannot add a number to a form")),
    }
}

/// Parses and builds the form described by `src`.
pub fn parse_form(src: &str, truncation: i64, cache: &Cache) -> CliResult<QSeries> {
    let tokens = lex(src)?;
    if tokens.is_empty() {
        return Err(usage("empty form expression"));
    }
    let mut p = Parser { tokens, pos: 0, truncation, cache };
    let v = p.expr()?;
    if p.pos < p.tokens.len() {
        return Err(usage(format!("trailing input after position {} in {src:?}", p.pos)));
    }
    match v {
        Val::Form(f) if f.weight().is_some() => Ok(f),
        Val::Form(_) => Err(usage(format!("{src:?} has no definite weight"))),
        Val::Scalar(_) => Err(usage(format!("{src:?} is a number, not a form"))),
    }
}
