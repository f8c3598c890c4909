//! Batch front end: parses ideal files and flags, runs a command, renders
//! a [`report::Report`].

pub mod commands;
pub mod ideal_file;
pub mod parse;
pub mod report;

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use supersplit_core::ideals::rnc_family_ideal;
use supersplit_core::{Rational, SuperIdeal};

use crate::ideal_file::{max_odd_from_env, IdealFile};
use crate::parse::{parse_rational, render_rational};
use crate::report::Report;

#[derive(Debug, Parser)]
#[command(
    name = "supersplit",
    version,
    about = "Splitting analysis for embedded supermanifolds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Validate an ideal and reduce it modulo J².
    Analyze(Options),
    /// Decide splitness of an ideal or a rational normal curve family member.
    Decide(Options),
    /// Run the lift loop and print the certificate or the residue.
    Normalize(Options),
    /// Obstruction table and twisting bound for a rational normal curve.
    Cohom(Options),
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Degree of the rational normal curve family, used instead of a file.
    #[arg(long, value_name = "D")]
    pub rnc: Option<usize>,
    /// Value of lambda, `p` or `p/q`; overrides a `lambda` directive.
    #[arg(long, value_name = "P/Q", allow_hyphen_values = true, value_parser = lambda_arg)]
    pub lambda: Option<Rational>,
    /// Machine-readable output.
    #[arg(long)]
    pub json: bool,
    #[arg(value_name = "FILE")]
    pub file: Option<PathBuf>,
}

fn lambda_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("'{s}' is not a rational number p or p/q"))
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Analyze(_) => "analyze",
            Command::Decide(_) => "decide",
            Command::Normalize(_) => "normalize",
            Command::Cohom(_) => "cohom",
        }
    }

    fn options(&self) -> &Options {
        match self {
            Command::Analyze(o)
            | Command::Decide(o)
            | Command::Normalize(o)
            | Command::Cohom(o) => o,
        }
    }
}

/// Where the ideal came from, for the command echo and the digest.
struct Source {
    echo: String,
    bytes: Vec<u8>,
}

fn family_source(name: &str, d: usize, lambda: Option<&Rational>) -> Source {
    let mut echo = format!("{name} --rnc {d}");
    let mut canonical = format!("rnc {d}");
    if let Some(l) = lambda {
        let l = render_rational(l);
        echo.push_str(&format!(" --lambda {l}"));
        canonical.push_str(&format!(" lambda {l}"));
    }
    Source {
        echo,
        bytes: canonical.into_bytes(),
    }
}

fn check_family_degree(d: usize) -> Result<()> {
    let max = max_odd_from_env()?;
    if d == 0 {
        bail!("--rnc needs a curve degree of at least 1");
    }
    if d > max {
        bail!("--rnc {d} needs {d} odd variables, above the limit of {max} (set SUPERSPLIT_MAX_N to raise it)");
    }
    Ok(())
}

fn load(name: &str, opts: &Options) -> Result<(SuperIdeal, Source)> {
    match (&opts.file, opts.rnc) {
        (Some(_), Some(_)) => bail!("give either FILE or --rnc, not both"),
        (None, None) => bail!("{name} needs FILE or --rnc D"),
        (None, Some(d)) => {
            check_family_degree(d)?;
            let lambda = opts
                .lambda
                .clone()
                .unwrap_or_else(|| Rational::from_integer(1.into()));
            let source = family_source(name, d, Some(&lambda));
            Ok((rnc_family_ideal(d, &lambda)?, source))
        }
        (Some(path), None) => {
            let bytes =
                std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
            let text = String::from_utf8(bytes.clone())
                .with_context(|| format!("{} is not UTF-8", path.display()))?;
            let file = IdealFile::parse(&text, opts.lambda.as_ref(), max_odd_from_env()?)
                .with_context(|| path.display().to_string())?;
            let mut echo = format!("{name} {}", path.display());
            if let Some(l) = &opts.lambda {
                echo.push_str(&format!(" --lambda {}", render_rational(l)));
            }
            Ok((file.to_ideal()?, Source { echo, bytes }))
        }
    }
}

fn render<T: Serialize>(source: Source, result: T, json: bool) -> String {
    let report = Report::new(source.echo, &source.bytes, result);
    if json {
        report.to_json()
    } else {
        report.to_text()
    }
}

/// Runs one command and returns the rendered report.
pub fn run(command: &Command) -> Result<String> {
    let name = command.name();
    let opts = command.options();
    Ok(match command {
        Command::Analyze(_) => {
            let (ideal, source) = load(name, opts)?;
            render(source, commands::analyze(&ideal), opts.json)
        }
        Command::Normalize(_) => {
            let (ideal, source) = load(name, opts)?;
            render(source, commands::normalize_ideal(&ideal)?, opts.json)
        }
        Command::Decide(_) => match (opts.rnc, &opts.file) {
            (Some(d), None) => {
                check_family_degree(d)?;
                let Some(lambda) = &opts.lambda else {
                    bail!("decide --rnc needs --lambda P/Q");
                };
                let source = family_source(name, d, Some(lambda));
                render(source, commands::decide_rnc(d, lambda)?, opts.json)
            }
            _ => {
                let (ideal, source) = load(name, opts)?;
                render(source, commands::decide(&ideal)?, opts.json)
            }
        },
        Command::Cohom(_) => {
            let Some(d) = opts.rnc else {
                bail!("cohom needs --rnc D");
            };
            if opts.file.is_some() || opts.lambda.is_some() {
                bail!("cohom takes only --rnc D");
            }
            check_family_degree(d)?;
            render(family_source(name, d, None), commands::cohom(d)?, opts.json)
        }
    })
}
