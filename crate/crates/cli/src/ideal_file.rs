//! Ideal files: a few header directives followed by one generator per line.
//!
//! ```text
//! # superspace quadric
//! ring 2 2
//! degree 2
//! lambda 3/2
//! x0*x2 - x1^2 + lambda*t1*t2
//! ```
//!
//! `ring m n` declares even variables `x0..xm` and odd variables `t1..tn`
//! and must come first. `degree d` asks for every generator to be
//! homogeneous of degree `d`; `affine` switches to affine charts; `lambda`
//! fixes the value of the `lambda` atom. Text after `#` is ignored.

use std::fmt::Write as _;

use supersplit_core::ideals::IdealError;
use supersplit_core::{Ambient, Rational, RingSignature, SuperIdeal, SuperPolynomial};
use thiserror::Error;

use crate::parse::{parse_expression_at, parse_rational, render_rational, ParseError};

/// Default cap on the number of odd variables.
pub const DEFAULT_MAX_ODD: usize = 12;

/// Reads the odd-variable cap from `SUPERSPLIT_MAX_N`.
pub fn max_odd_from_env() -> Result<usize, FileError> {
    match std::env::var("SUPERSPLIT_MAX_N") {
        Ok(v) => v.trim().parse().map_err(|_| FileError::BadLimit(v)),
        Err(_) => Ok(DEFAULT_MAX_ODD),
    }
}

#[derive(Debug, Error)]
pub enum FileError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error("missing 'ring m n' directive")]
    MissingRing,
    #[error("{n} odd variables exceed the limit of {max} (set SUPERSPLIT_MAX_N to raise it)")]
    TooManyOdd { n: usize, max: usize },
    #[error("'degree' and 'affine' cannot be combined")]
    DegreeWithAffine,
    #[error("SUPERSPLIT_MAX_N must be a non-negative integer, got '{0}'")]
    BadLimit(String),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealFile {
    pub ring: RingSignature,
    pub degree: Option<u32>,
    pub lambda: Option<Rational>,
    pub ambient: Ambient,
    /// Generators with `lambda` already substituted.
    pub generators: Vec<SuperPolynomial>,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> FileError {
    FileError::Syntax(ParseError {
        line,
        column,
        message: message.into(),
    })
}

const DIRECTIVES: [&str; 4] = ["ring", "degree", "lambda", "affine"];

/// A line is a directive when its first word is a directive keyword and,
/// for `lambda`, the rest is a rational literal (otherwise it is an
/// expression that starts with the `lambda` atom).
fn directive(body: &str) -> Option<(&str, Vec<&str>)> {
    let mut words = body.split_whitespace();
    let head = words.next()?;
    let args: Vec<&str> = words.collect();
    if head == "lambda" && !(args.len() == 1 && parse_rational(args[0]).is_some()) {
        return None;
    }
    if DIRECTIVES.contains(&head) {
        return Some((head, args));
    }
    // bare words that are not atoms can only be misspelt directives
    let atom = head.starts_with(['x', 't']) && head[1..].bytes().all(|b| b.is_ascii_digit());
    let word = head.bytes().all(|b| b.is_ascii_alphabetic());
    (word && !atom && head.len() > 1).then_some((head, args))
}

impl IdealFile {
    /// Parses a file. `lambda_override` replaces any `lambda` directive.
    pub fn parse(
        text: &str,
        lambda_override: Option<&Rational>,
        max_odd: usize,
    ) -> Result<Self, FileError> {
        let mut ring = None;
        let mut degree = None;
        let mut lambda = lambda_override.cloned();
        let mut ambient = Ambient::Projective;
        let mut generators = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("");
            let indent = body.len() - body.trim_start().len();
            let body = body.trim();
            if body.is_empty() {
                continue;
            }
            let column = indent + 1;
            if let Some((head, args)) = directive(body) {
                if !generators.is_empty() {
                    return Err(syntax(
                        line,
                        column,
                        format!("'{head}' must precede the generators"),
                    ));
                }
                let count = |n: usize| {
                    if args.len() == n {
                        Ok(())
                    } else {
                        Err(syntax(
                            line,
                            column,
                            format!("'{head}' takes {n} argument(s)"),
                        ))
                    }
                };
                let number = |s: &str| {
                    s.parse::<usize>().map_err(|_| {
                        syntax(line, column, format!("'{s}' is not a non-negative integer"))
                    })
                };
                match head {
                    "ring" => {
                        count(2)?;
                        if ring.is_some() {
                            return Err(syntax(line, column, "duplicate 'ring'"));
                        }
                        let (m, n) = (number(args[0])?, number(args[1])?);
                        if n > max_odd {
                            return Err(FileError::TooManyOdd { n, max: max_odd });
                        }
                        let r = RingSignature::projective(m, n)
                            .map_err(|e| syntax(line, column, e.to_string()))?;
                        ring = Some(r);
                    }
                    "degree" => {
                        count(1)?;
                        let d = number(args[0])?;
                        degree = Some(
                            u32::try_from(d)
                                .map_err(|_| syntax(line, column, "degree too large"))?,
                        );
                    }
                    "lambda" => {
                        count(1)?;
                        if lambda_override.is_none() {
                            lambda = parse_rational(args[0]);
                        }
                    }
                    "affine" => {
                        count(0)?;
                        ambient = Ambient::Affine;
                    }
                    other => {
                        return Err(syntax(line, column, format!("unknown directive '{other}'")))
                    }
                }
                continue;
            }
            let r = ring.ok_or(FileError::MissingRing)?;
            // keep columns relative to the raw line
            let padded = format!("{}{}", " ".repeat(indent), body);
            let g = parse_expression_at(&padded, line, r, lambda.as_ref())?;
            if g.is_zero() {
                return Err(syntax(line, column, "generator is zero"));
            }
            generators.push(g);
        }
        let ring = ring.ok_or(FileError::MissingRing)?;
        if ambient == Ambient::Affine && degree.is_some() {
            return Err(FileError::DegreeWithAffine);
        }
        let file = IdealFile {
            ring,
            degree,
            lambda,
            ambient,
            generators,
        };
        file.to_ideal()?;
        Ok(file)
    }

    pub fn to_ideal(&self) -> Result<SuperIdeal, IdealError> {
        SuperIdeal::new(
            self.ring,
            self.generators.clone(),
            self.degree,
            self.ambient,
        )
    }

    /// Canonical text form; parsing it gives back the same file.
    pub fn render(&self) -> String {
        let mut out = format!(
            "ring {} {}\n",
            self.ring.projective_dim(),
            self.ring.odd_count()
        );
        if let Some(d) = self.degree {
            let _ = writeln!(out, "degree {d}");
        }
        if let Some(l) = &self.lambda {
            let _ = writeln!(out, "lambda {}", render_rational(l));
        }
        if self.ambient == Ambient::Affine {
            out.push_str("affine\n");
        }
        for g in &self.generators {
            let _ = writeln!(out, "{g}");
        }
        out
    }
}
