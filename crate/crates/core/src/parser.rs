//! Text formats: ring specifications and polynomial expressions.
//!
//! A ring file is a list of `key=value` assignments, one per line or several
//! on one line separated by whitespace:
//!
//! ```text
//! # Example: a cusp-like hypersurface
//! p=7
//! vars=x0 x1 x2 x3
//! order=grevlex
//! f=x0^2 - x1^6*x2^2 + x3^3
//! ```
//!
//! Recognised keys are `p`, `vars`, `order`, and the named polynomials `f`,
//! `eps` and `c`. Everything after `#` on a line is ignored.
//!
//! Polynomial grammar (explicit `*` is required, `^` takes a bare
//! non-negative integer literal):
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary ('*' unary)*
//! unary   := ('+' | '-') unary | power
//! power   := atom ('^' INT)?
//! atom    := INT | IDENT | '(' sum ')'
//! ```

use crate::algebra::field;
use crate::algebra::monomial::{Monomial, MonomialOrder};
use crate::algebra::poly::Polynomial;
use crate::algebra::ring::{Ring, RingSpec};
use crate::error::{Error, Result};

/// Powers of non-monomial expressions above this are rejected rather than
/// expanded.
const MAX_EXPANDED_POWER: u64 = 4096;

/// Parsed abstract syntax of a polynomial expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyExpr {
    /// Decimal literal, kept as text so arbitrarily long literals reduce
    /// exactly modulo p.
    Int(String),
    Var { name: String, line: usize, column: usize },
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u64),
}

impl PolyExpr {
    /// Evaluates the expression in `ring`, reducing coefficients mod p.
    pub fn evaluate(&self, ring: &Ring) -> Result<Polynomial> {
        match self {
            PolyExpr::Int(digits) => {
                let p = ring.p() as u64;
                let c = digits
                    .bytes()
                    .fold(0u64, |acc, b| (acc * 10 + (b - b'0') as u64) % p);
                Ok(Polynomial::constant(ring, c as i64))
            }
            PolyExpr::Var { name, line, column } => match ring.var_index(name) {
                Some(i) => Polynomial::var(ring, i),
                None => Err(Error::UnknownVar {
                    name: name.clone(),
                    line: *line,
                    column: *column,
                }),
            },
            PolyExpr::Neg(a) => Ok(-&a.evaluate(ring)?),
            PolyExpr::Add(a, b) => a.evaluate(ring)?.checked_add(&b.evaluate(ring)?),
            PolyExpr::Sub(a, b) => a.evaluate(ring)?.checked_sub(&b.evaluate(ring)?),
            PolyExpr::Mul(a, b) => a.evaluate(ring)?.checked_mul(&b.evaluate(ring)?),
            PolyExpr::Pow(a, n) => {
                let base = a.evaluate(ring)?;
                if base.len() > 1 && *n > MAX_EXPANDED_POWER {
                    return Err(Error::Overflow(format!(
                        "refusing to expand a {}-term polynomial to the power {n}",
                        base.len()
                    )));
                }
                base.pow(*n)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str, line0: usize, col0: usize) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut line = line0;
    let mut column = col0;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, line: tl, column: tc });
            column += 1;
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            out.push(Token { tok: Tok::Int(s), line: tl, column: tc });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            out.push(Token { tok: Tok::Ident(s), line: tl, column: tc });
            continue;
        }
        return Err(Error::ParseError {
            line: tl,
            column: tc,
            message: format!("unexpected character {c:?}"),
        });
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    depth: usize,
}

const MAX_NESTING: usize = 256;

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, t: &Token, message: impl Into<String>) -> Error {
        Error::ParseError {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn sum(&mut self) -> Result<PolyExpr> {
        let mut acc = self.product()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = PolyExpr::Add(Box::new(acc), Box::new(self.product()?));
                }
                Tok::Minus => {
                    self.bump();
                    acc = PolyExpr::Sub(Box::new(acc), Box::new(self.product()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<PolyExpr> {
        let mut acc = self.unary()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            acc = PolyExpr::Mul(Box::new(acc), Box::new(self.unary()?));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<PolyExpr> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            let t = self.peek().clone();
            return Err(self.error(&t, "expression nested too deeply"));
        }
        let out = match self.peek().tok {
            Tok::Minus => {
                self.bump();
                Ok(PolyExpr::Neg(Box::new(self.unary()?)))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        };
        self.depth -= 1;
        out
    }

    fn power(&mut self) -> Result<PolyExpr> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        match &t.tok {
            Tok::Int(digits) => {
                let n: u64 = digits.parse().ok().filter(|&n: &u64| n < (1u64 << 31)).ok_or(
                    Error::BadExponent {
                        line: t.line,
                        column: t.column,
                        message: format!("exponent {digits} too large"),
                    },
                )?;
                if self.peek().tok == Tok::Caret {
                    let t2 = self.peek().clone();
                    return Err(self.error(&t2, "chained exponents need parentheses"));
                }
                Ok(PolyExpr::Pow(Box::new(base), n))
            }
            Tok::Minus => Err(Error::BadExponent {
                line: t.line,
                column: t.column,
                message: "negative exponent".into(),
            }),
            _ => Err(self.error(&t, "exponent must be a non-negative integer literal")),
        }
    }

    fn atom(&mut self) -> Result<PolyExpr> {
        let t = self.bump();
        match t.tok {
            Tok::Int(s) => Ok(PolyExpr::Int(s)),
            Tok::Ident(name) => Ok(PolyExpr::Var {
                name,
                line: t.line,
                column: t.column,
            }),
            Tok::LParen => {
                let inner = self.sum()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(self.error(&close, "expected `)`"));
                }
                Ok(inner)
            }
            Tok::End => Err(self.error(&t, "unexpected end of input")),
            _ => Err(self.error(&t, "expected a number, variable or `(`")),
        }
    }
}

fn parse_expr_at(text: &str, line: usize, column: usize) -> Result<PolyExpr> {
    let toks = lex(text, line, column)?;
    let mut parser = Parser { toks, pos: 0, depth: 0 };
    let expr = parser.sum()?;
    let t = parser.peek().clone();
    if t.tok != Tok::End {
        return Err(parser.error(&t, "unexpected token (multiplication needs an explicit `*`)"));
    }
    Ok(expr)
}

/// Parses an expression into its syntax tree without resolving variables.
pub fn parse_expr(text: &str) -> Result<PolyExpr> {
    parse_expr_at(text, 1, 1)
}

/// Parses a polynomial expression in `ring`.
pub fn parse_poly(text: &str, ring: &Ring) -> Result<Polynomial> {
    parse_expr(text)?.evaluate(ring)
}

fn parse_poly_at(text: &str, ring: &Ring, line: usize, column: usize) -> Result<Polynomial> {
    parse_expr_at(text, line, column)?.evaluate(ring)
}

const KEYS: [&str; 6] = ["vars", "order", "eps", "p", "f", "c"];

#[derive(Debug, Clone)]
struct Assignment {
    key: &'static str,
    value: String,
    line: usize,
    column: usize,
}

fn split_assignments(text: &str) -> Result<Vec<Assignment>> {
    let mut out: Vec<Assignment> = Vec::new();
    for (li, raw_line) in text.lines().enumerate() {
        let line_no = li + 1;
        let content = match raw_line.find('#') {
            Some(k) => &raw_line[..k],
            None => raw_line,
        };
        let chars: Vec<(usize, char)> = content.char_indices().collect();
        // (char index of key start, key, byte offset of value start)
        let mut starts: Vec<(usize, &'static str, usize)> = Vec::new();
        for (ci, &(bi, _)) in chars.iter().enumerate() {
            if ci > 0 && !chars[ci - 1].1.is_whitespace() {
                continue;
            }
            let rest = &content[bi..];
            if let Some(key) = KEYS.iter().find(|k| {
                rest.starts_with(*k) && rest[k.len()..].trim_start().starts_with('=')
            }) {
                let after_key = &rest[key.len()..];
                let ws = after_key.len() - after_key.trim_start().len();
                starts.push((ci, key, bi + key.len() + ws + 1));
            }
        }
        if starts.is_empty() {
            if let Some((ci, c)) = chars.iter().enumerate().find(|(_, (_, c))| !c.is_whitespace()) {
                return Err(Error::ParseError {
                    line: line_no,
                    column: ci + 1,
                    message: format!("expected `key=value`, found {:?}", c.1),
                });
            }
            continue;
        }
        let first_nonblank = chars.iter().position(|(_, c)| !c.is_whitespace()).unwrap_or(0);
        if starts[0].0 != first_nonblank {
            return Err(Error::ParseError {
                line: line_no,
                column: first_nonblank + 1,
                message: "expected `key=value`".into(),
            });
        }
        for (k, &(_, key, vstart)) in starts.iter().enumerate() {
            let vend = starts
                .get(k + 1)
                .map(|&(ci, _, _)| chars[ci].0)
                .unwrap_or(content.len());
            let value = &content[vstart..vend];
            let column = content[..vstart].chars().count() + 1;
            out.push(Assignment {
                key,
                value: value.to_string(),
                line: line_no,
                column,
            });
        }
    }
    Ok(out)
}

/// Contents of a ring file: the ring plus optional named polynomials.
#[derive(Debug, Clone)]
pub struct RingFile {
    pub ring: Ring,
    pub f: Option<Polynomial>,
    pub eps: Option<Polynomial>,
    pub c: Option<Polynomial>,
}

/// Parses a ring specification. Named polynomials, if present, are checked
/// for syntax but otherwise ignored.
pub fn parse_ring_spec(text: &str) -> Result<Ring> {
    Ok(parse_ring_file(text)?.ring)
}

pub fn parse_ring_file(text: &str) -> Result<RingFile> {
    let assignments = split_assignments(text)?;
    for (i, a) in assignments.iter().enumerate() {
        if assignments[..i].iter().any(|b| b.key == a.key) {
            return Err(Error::ParseError {
                line: a.line,
                column: a.column,
                message: format!("duplicate key `{}`", a.key),
            });
        }
    }
    let get = |key: &str| assignments.iter().find(|a| a.key == key);
    let end_pos = || (text.lines().count().max(1), 1);

    let p_assign = get("p").ok_or_else(|| {
        let (line, column) = end_pos();
        Error::ParseError { line, column, message: "missing `p=`".into() }
    })?;
    let p_text = p_assign.value.trim();
    let p: u64 = p_text.parse().map_err(|_| Error::ParseError {
        line: p_assign.line,
        column: p_assign.column,
        message: format!("characteristic must be an integer, found {p_text:?}"),
    })?;

    let vars_assign = get("vars").ok_or_else(|| {
        let (line, column) = end_pos();
        Error::ParseError { line, column, message: "missing `vars=`".into() }
    })?;
    let vars: Vec<String> = vars_assign
        .value
        .split_whitespace()
        .map(str::to_string)
        .collect();
    if let Some(bad) = vars.iter().find(|v| !crate::algebra::ring::is_identifier(v)) {
        return Err(Error::ParseError {
            line: vars_assign.line,
            column: vars_assign.column,
            message: format!("bad variable name {bad:?}"),
        });
    }

    let order = match get("order") {
        Some(a) => MonomialOrder::parse(a.value.trim())?,
        None => MonomialOrder::Grevlex,
    };
    let ring = RingSpec::new(p, vars, order)?;

    let named = |key: &str| -> Result<Option<Polynomial>> {
        match get(key) {
            Some(a) => parse_poly_at(&a.value, &ring, a.line, a.column).map(Some),
            None => Ok(None),
        }
    };
    Ok(RingFile {
        f: named("f")?,
        eps: named("eps")?,
        c: named("c")?,
        ring: ring.clone(),
    })
}

/// Builds a polynomial from exponent vectors and integer coefficients; a
/// convenience for tests and generated inputs.
pub fn poly_from_exponents(ring: &Ring, terms: &[(&[u32], i64)]) -> Result<Polynomial> {
    let p = ring.p();
    let terms = terms
        .iter()
        .map(|(e, c)| Ok((Monomial::new(e)?, field::reduce_i64(*c, p))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Polynomial::from_terms(ring, terms))
}
