//! Text syntax for polynomials and generator words.
//!
//! Polynomials: sums of terms in `X` with rational coefficients, e.g.
//! `2X^5 - 3*X^2 + X` or `(X^2 + 1)^3 - 1/2`. Named parameters are allowed
//! wherever the target ring supports them.
//!
//! Words: generators joined by `.`, outermost first:
//! `M2.T3.RL(2,1;X^2+1).RR(3,1;X^2+X+1).OP(X^4+X)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::Polynomial;
use crate::rewrite::{Generator, RewriteError, Word};
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Invalid(#[from] RewriteError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    X,
    Param(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Division, positioned for error reporting.
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(text[start..i].parse().expect("digits"))));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = text[start..].chars().next().expect("in range");
                return Err(ParseError::new(start, format!("unexpected character '{ch}'")));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Expr::Neg(Box::new(self.term()?))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let at = self.offset();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?), at);
                }
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen) => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        match self.bump() {
            Some(Tok::Num(n)) => {
                let e = u32::try_from(n)
                    .map_err(|_| ParseError::new(at, "exponent too large"))?;
                Ok(Expr::Pow(Box::new(base), e))
            }
            _ => Err(ParseError::new(at, "expected a non-negative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Expr::Num(Rational::from_integer(n))),
            Some(Tok::Ident(name)) if name == "X" => Ok(Expr::X),
            Some(Tok::Ident(name)) => Ok(Expr::Param(name)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let close = self.offset();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(ParseError::new(close, "expected ')'")),
                }
            }
            Some(_) => Err(ParseError::new(at, "expected a number, X, a name or '('")),
            None => Err(ParseError::new(at, "unexpected end of input")),
        }
    }
}

/// Parses an expression over `X`, rationals and named parameters.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(ParseError::new(0, "empty input"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(ParseError::new(p.offset(), "unexpected token"));
    }
    Ok(e)
}

/// A ring an [`Expr`] can be evaluated in.
pub trait ExprRing: Sized + Clone {
    fn from_rational(c: Rational) -> Self;
    fn x() -> Self;
    fn param(name: &str) -> Option<Self>;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Division by a nonzero constant; `None` otherwise.
    fn div(&self, other: &Self) -> Option<Self>;
    fn pow(&self, e: u32) -> Self;
}

impl ExprRing for Polynomial {
    fn from_rational(c: Rational) -> Self {
        Polynomial::constant(c)
    }
    fn x() -> Self {
        Polynomial::x()
    }
    fn param(_: &str) -> Option<Self> {
        None
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, other: &Self) -> Option<Self> {
        if !other.is_constant() || other.is_zero() {
            return None;
        }
        Some(self.scale(&other.coeff(0).recip()))
    }
    fn pow(&self, e: u32) -> Self {
        Polynomial::pow(self, e)
    }
}

impl Expr {
    pub fn eval<R: ExprRing>(&self) -> Result<R, ParseError> {
        Ok(match self {
            Expr::Num(c) => R::from_rational(c.clone()),
            Expr::X => R::x(),
            Expr::Param(name) => R::param(name)
                .ok_or_else(|| ParseError::new(0, format!("unknown name '{name}'")))?,
            Expr::Neg(a) => a.eval::<R>()?.neg(),
            Expr::Add(a, b) => a.eval::<R>()?.add(&b.eval()?),
            Expr::Sub(a, b) => a.eval::<R>()?.sub(&b.eval()?),
            Expr::Mul(a, b) => a.eval::<R>()?.mul(&b.eval()?),
            Expr::Div(a, b, at) => a
                .eval::<R>()?
                .div(&b.eval()?)
                .ok_or_else(|| ParseError::new(*at, "division by a nonconstant or by zero"))?,
            Expr::Pow(a, e) => a.eval::<R>()?.pow(*e),
        })
    }
}

/// Parses a polynomial in `X` with rational coefficients.
pub fn parse_poly(text: &str) -> Result<Polynomial, ParseError> {
    parse_expr(text)?.eval()
}

/// Canonical text form; `parse_poly` inverts it.
pub fn format_poly(p: &Polynomial) -> String {
    p.to_string()
}

fn parse_generator(text: &str, offset: usize) -> Result<Generator, WordError> {
    let t = text.trim();
    let lead = offset + (text.len() - text.trim_start().len());
    let err = |m: &str| WordError::Parse(ParseError::new(lead, m.to_string()));
    let index = |digits: &str| -> Result<usize, WordError> {
        digits
            .trim()
            .parse::<usize>()
            .map_err(|_| err(&format!("expected an integer, found '{digits}'")))
    };
    let shifted = |e: ParseError, by: usize| ParseError::new(e.position + by, e.message);
    if let Some(rest) = t.strip_prefix("RL(").or_else(|| t.strip_prefix("RR(")) {
        let body = rest
            .strip_suffix(')')
            .ok_or_else(|| err("expected ')' closing the generator"))?;
        let (head, poly) = body
            .split_once(';')
            .ok_or_else(|| err("expected 'p,s;G'"))?;
        let (ptxt, stxt) = head.split_once(',').ok_or_else(|| err("expected 'p,s'"))?;
        let (p, s) = (index(ptxt)?, index(stxt)?);
        let g = parse_poly(poly).map_err(|e| shifted(e, lead + 3 + head.len() + 1))?;
        return Ok(if t.starts_with("RL") {
            Generator::r_lambda(p, s, g)?
        } else {
            Generator::r_rho(p, s, g)?
        });
    }
    if let Some(rest) = t.strip_prefix("OP(") {
        let body = rest
            .strip_suffix(')')
            .ok_or_else(|| err("expected ')' closing the generator"))?;
        let poly = parse_poly(body).map_err(|e| shifted(e, lead + 3))?;
        return Ok(Generator::opaque(poly)?);
    }
    if let Some(d) = t.strip_prefix('M') {
        return Ok(Generator::m(index(d)?)?);
    }
    if let Some(d) = t.strip_prefix('T') {
        return Ok(Generator::t(index(d)?)?);
    }
    Err(err(&format!("unknown generator '{t}'")))
}

/// Parses `g₁.g₂.….g_k`, outermost first. The empty string and `id` give
/// the empty word.
pub fn parse_word(text: &str) -> Result<Word, WordError> {
    if text.trim().is_empty() || text.trim() == "id" {
        return Ok(Word::default());
    }
    let mut gens = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '.' if depth == 0 => {
                gens.push(parse_generator(&text[start..i], start)?);
                start = i + 1;
            }
            _ => {}
        }
    }
    gens.push(parse_generator(&text[start..], start)?);
    Ok(Word::new(gens))
}

pub fn format_word(w: &Word) -> String {
    w.to_string()
}

/// A rational as `p/q`, or `p` for integers.
pub fn format_rational(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Parses `p/q` or `p`, with an optional sign.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let e = parse_expr(text)?;
    let p: Polynomial = e.eval()?;
    if !p.is_constant() {
        return Err(ParseError::new(0, "expected a rational number"));
    }
    Ok(if p.is_zero() { Rational::zero() } else { p.coeff(0) })
}

/// Displays an expression tree with full parenthesization.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(c) => write!(f, "{}", format_rational(c)),
            Expr::X => write!(f, "X"),
            Expr::Param(n) => write!(f, "{n}"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a}*{b})"),
            Expr::Div(a, b, _) => write!(f, "({a}/{b})"),
            Expr::Pow(a, e) => write!(f, "{a}^{e}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn poly_examples() {
        let p = parse_poly("X^6+6*X^4+8*X^2").unwrap();
        assert_eq!(p, Polynomial::from_ints(&[0, 0, 8, 0, 6, 0, 1]));
        let p = parse_poly("2X^5-3X^2+X").unwrap();
        assert_eq!(p, Polynomial::from_ints(&[0, 1, -3, 0, 0, 2]));
        let e = parse_poly("X^^2").unwrap_err();
        assert_eq!(e.position, 2);
    }

    #[test]
    fn rationals_and_grouping() {
        let p = parse_poly("-3/4*X - 1/2").unwrap();
        assert_eq!(p.coeff(1), frac(-3, 4));
        assert_eq!(p.coeff(0), frac(-1, 2));
        let p = parse_poly("(X+1)^2 / 2").unwrap();
        assert_eq!(p.coeff(1), int(1));
        assert!(parse_poly("X/X").is_err());
        assert!(parse_poly("a*X").is_err());
        assert!(parse_poly("(X+1").is_err());
        assert!(parse_poly("").is_err());
        assert!(parse_poly("X $ 2").is_err());
    }

    #[test]
    fn poly_round_trip() {
        for text in ["2*X^5 - 3*X^2 + X", "-3/4*X - 1/2", "0", "X", "-X^3 + 7/2"] {
            let p = parse_poly(text).unwrap();
            assert_eq!(format_poly(&p), text);
        }
    }

    #[test]
    fn word_examples() {
        let w = parse_word("M2.M3").unwrap();
        assert_eq!(w.gens(), &[Generator::M(2), Generator::M(3)]);
        let w = parse_word("RL(2,1;X^2+1).M2").unwrap();
        assert_eq!(
            w.gens()[0],
            Generator::RLambda {
                p: 2,
                s: 1,
                g: parse_poly("X^2+1").unwrap()
            }
        );
        assert!(matches!(
            parse_word("T2"),
            Err(WordError::Invalid(RewriteError::InvalidGenerator(_)))
        ));
        assert!(matches!(parse_word("Q5"), Err(WordError::Parse(_))));
        let w = parse_word("OP(X^4+X).T3").unwrap();
        assert_eq!(parse_word(&format_word(&w)).unwrap(), w);
    }
}
