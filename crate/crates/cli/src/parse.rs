//! Recursive-descent parser for generator expressions.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := "-" factor | power
//! power  := atom ("^" integer)?
//! atom   := integer ("/" integer)? | xI | tI | lambda | "(" expr ")"
//! ```
//!
//! `^` applies only to even operands: `t1^2` is rejected instead of being
//! silently read as zero.

use std::fmt;

use num::{BigInt, One, Zero};
use supersplit_core::{Generator, Parity, Rational, RingSignature, SuperPolynomial};
use thiserror::Error;

/// Exponents above this are rejected to keep expansion bounded.
pub const MAX_EXPONENT: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Even(usize),
    Odd(usize),
    Lambda,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
    End,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Int(n) => write!(f, "{n}"),
            Token::Even(i) => write!(f, "x{i}"),
            Token::Odd(a) => write!(f, "t{a}"),
            Token::Lambda => f.write_str("lambda"),
            Token::Plus => f.write_str("+"),
            Token::Minus => f.write_str("-"),
            Token::Star => f.write_str("*"),
            Token::Slash => f.write_str("/"),
            Token::Caret => f.write_str("^"),
            Token::Open => f.write_str("("),
            Token::Close => f.write_str(")"),
            Token::End => f.write_str("end of input"),
        }
    }
}

/// Token plus its 1-based column.
type Spanned = (Token, usize);

fn lex(text: &str, line: usize) -> Result<Vec<Spanned>, ParseError> {
    let err = |column: usize, message: String| ParseError {
        line,
        column,
        message,
    };
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Token::Plus),
            '-' => Some(Token::Minus),
            '*' => Some(Token::Star),
            '/' => Some(Token::Slash),
            '^' => Some(Token::Caret),
            '(' => Some(Token::Open),
            ')' => Some(Token::Close),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, column));
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Token::Int(digits.parse().expect("ascii digits")), column));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let index = |rest: &str| -> Option<usize> {
                (!rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()))
                    .then(|| rest.parse().ok())
                    .flatten()
            };
            let token = match word.as_str() {
                "lambda" => Token::Lambda,
                w if w.starts_with('x') && index(&w[1..]).is_some() => {
                    Token::Even(index(&w[1..]).expect("checked"))
                }
                w if w.starts_with('t') && index(&w[1..]).is_some() => {
                    Token::Odd(index(&w[1..]).expect("checked"))
                }
                w => return Err(err(column, format!("unknown identifier '{w}'"))),
            };
            out.push((token, column));
            continue;
        }
        return Err(err(column, format!("unexpected character '{c}'")));
    }
    out.push((Token::End, chars.len() + 1));
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Spanned>,
    pos: usize,
    line: usize,
    ring: RingSignature,
    lambda: Option<&'a Rational>,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn column(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> Spanned {
        let t = self.tokens[self.pos].clone();
        if t.0 != Token::End {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<SuperPolynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Token::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Token::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SuperPolynomial, ParseError> {
        let mut acc = self.factor()?;
        while *self.peek() == Token::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SuperPolynomial, ParseError> {
        if *self.peek() == Token::Minus {
            self.bump();
            return Ok(-self.factor()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<SuperPolynomial, ParseError> {
        let column = self.column();
        let base = self.atom()?;
        if *self.peek() != Token::Caret {
            return Ok(base);
        }
        self.bump();
        let (token, exp_column) = self.bump();
        let Token::Int(n) = token else {
            return Err(self.error_at(exp_column, format!("expected an exponent, found {token}")));
        };
        let exponent = u32::try_from(&n)
            .ok()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or_else(|| {
                self.error_at(exp_column, format!("exponent {n} exceeds {MAX_EXPONENT}"))
            })?;
        if !base.has_parity(Parity::Even) {
            return Err(self.error_at(
                column,
                "'^' needs an even operand; odd variables square to zero",
            ));
        }
        Ok(base.pow(exponent))
    }

    fn atom(&mut self) -> Result<SuperPolynomial, ParseError> {
        let ring = self.ring;
        let (token, column) = self.bump();
        match token {
            Token::Int(p) => {
                let mut value = Rational::from_integer(p);
                if *self.peek() == Token::Slash {
                    self.bump();
                    let (den, den_column) = self.bump();
                    let Token::Int(q) = den else {
                        return Err(self
                            .error_at(den_column, "'/' is only allowed between integer literals"));
                    };
                    if q.is_zero() {
                        return Err(self.error_at(den_column, "zero denominator"));
                    }
                    value /= Rational::from_integer(q);
                }
                Ok(SuperPolynomial::constant(ring, value))
            }
            Token::Even(i) => SuperPolynomial::generator(ring, Generator::Even(i))
                .map_err(|_| self.error_at(column, format!("x{i} is not a variable of {ring}"))),
            Token::Odd(a) => SuperPolynomial::generator(ring, Generator::Odd(a))
                .map_err(|_| self.error_at(column, format!("t{a} is not a variable of {ring}"))),
            Token::Lambda => {
                let value = self
                    .lambda
                    .ok_or_else(|| self.error_at(column, "lambda used without a value"))?;
                Ok(SuperPolynomial::constant(ring, value.clone()))
            }
            Token::Open => {
                let inner = self.expr()?;
                let (close, close_column) = self.bump();
                if close != Token::Close {
                    return Err(self.error_at(close_column, format!("expected ')', found {close}")));
                }
                Ok(inner)
            }
            other => Err(self.error_at(column, format!("expected a term, found {other}"))),
        }
    }
}

/// Parses one expression on line `line` of some larger input.
pub fn parse_expression_at(
    text: &str,
    line: usize,
    ring: RingSignature,
    lambda: Option<&Rational>,
) -> Result<SuperPolynomial, ParseError> {
    let mut parser = Parser {
        tokens: lex(text, line)?,
        pos: 0,
        line,
        ring,
        lambda,
    };
    let out = parser.expr()?;
    let (rest, column) = parser.bump();
    if rest != Token::End {
        return Err(parser.error_at(column, format!("unexpected {rest}")));
    }
    Ok(out)
}

pub fn parse_expression(
    text: &str,
    ring: RingSignature,
    lambda: Option<&Rational>,
) -> Result<SuperPolynomial, ParseError> {
    parse_expression_at(text, 1, ring, lambda)
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let (p, q) = match body.split_once('/') {
        Some((p, q)) => (p, q),
        None => (body, "1"),
    };
    if !digits(p) || !digits(q) {
        return None;
    }
    let q: BigInt = q.parse().ok()?;
    if q.is_zero() {
        return None;
    }
    let value = Rational::new(p.parse().ok()?, q);
    Some(if negative { -value } else { value })
}

/// `p/q` in lowest terms, or `p` when `q = 1`.
pub fn render_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
