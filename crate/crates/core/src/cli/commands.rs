//! Subcommands and exit codes.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::foliation::{singular_locus, LocusOptions};
use crate::forms::oneform::certificate;
use crate::integrate::{find_first_integral, PipelineOptions};
use crate::resolution::cluster::Cluster;
use crate::resolution::germ::{
    germ_milnor, germ_mult_sequence, germ_tjurina, is_nodal, tangent_multiplicities, type_check_s, Germ, Nodal,
    TypeCheck, DEFAULT_GERM_JET_CAP,
};
use crate::resolution::colength::DEFAULT_JET_CAP;

use super::parse::{parse_foliation_file, parse_int_list, parse_local, parse_projective, FoliationFile};
use super::report::{
    analyze_report, certify_report, error_report, germ_report, integrate_report, render, Format, GermSummary,
    STypeSummary,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "folint", version, about = "Rational first integrals of plane foliations")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: FormatArg,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Singular locus, eigenvalue pairs and the cardinality bound.
    Analyze {
        file: PathBuf,
        /// Truncation cap for Milnor number computations.
        #[arg(long)]
        jet_cap: Option<usize>,
    },
    /// Search for a rational first integral of degree below the bound.
    Integrate {
        file: PathBuf,
        /// Exclusive bound on the degree of numerator and denominator.
        #[arg(long)]
        max_degree: i64,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        #[arg(long)]
        jet_cap: Option<usize>,
        /// Skip the local diagnostics of a found integral.
        #[arg(long)]
        no_diagnostics: bool,
        /// Include per-stage timings (makes the output run-dependent).
        #[arg(long)]
        timings: bool,
    },
    /// Checks `(G dF - F dG) ^ Omega = 0` for a given pair.
    Certify {
        file: PathBuf,
        #[arg(long)]
        numerator: String,
        #[arg(long)]
        denominator: String,
    },
    /// Invariants of a plane curve germ in `u, v` at the origin.
    Germ {
        germ: String,
        /// Further factors multiplied into the germ.
        #[arg(long)]
        times: Vec<String>,
        /// Test the type S(a,b,k), given as `a,b,k`.
        #[arg(long)]
        s: Option<String>,
        #[arg(long)]
        jet_cap: Option<usize>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Analyze { .. } => "analyze",
            Command::Integrate { .. } => "integrate",
            Command::Certify { .. } => "certify",
            Command::Germ { .. } => "germ",
        }
    }
}

/// Parses arguments and runs; usage errors exit with code 3.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let text = e.render().to_string();
            if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Text => Format::Text,
    };
    match execute(&cli.command) {
        Ok((value, code)) => Outcome { stdout: render(&value, format), stderr: String::new(), code },
        Err(e) => {
            let code = e.exit_code();
            match format {
                Format::Json => Outcome {
                    stdout: render(&error_report(cli.command.name(), &e), format),
                    stderr: String::new(),
                    code,
                },
                Format::Text => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code },
            }
        }
    }
}

fn read_file(path: &PathBuf) -> Result<(FoliationFile, String)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    Ok((parse_foliation_file(&text)?, path.display().to_string()))
}

fn execute(cmd: &Command) -> Result<(serde_json::Value, i32)> {
    match cmd {
        Command::Analyze { file, jet_cap } => {
            let (ff, source) = read_file(file)?;
            let fol = ff.foliation()?;
            let opts = LocusOptions { jet_cap: jet_cap.unwrap_or(DEFAULT_JET_CAP), ..LocusOptions::default() };
            let locus = singular_locus(&fol, opts)?;
            Ok((analyze_report(&ff, &source, &fol, &locus), 0))
        }
        Command::Integrate { file, max_degree, parallel, jet_cap, no_diagnostics, timings } => {
            let (ff, source) = read_file(file)?;
            let fol = ff.foliation()?;
            let mut opts = PipelineOptions::new(*max_degree);
            opts.parallel = (*parallel).max(1);
            opts.diagnostics = !no_diagnostics;
            if let Some(cap) = jet_cap {
                opts.locus.jet_cap = *cap;
                opts.germ_jet_cap = *cap;
            }
            let rep = find_first_integral(&fol, &opts)?;
            let code = rep.verdict.exit_code();
            Ok((integrate_report(&ff, &source, &fol, &rep, *timings), code))
        }
        Command::Certify { file, numerator, denominator } => {
            let (ff, source) = read_file(file)?;
            let fol = ff.foliation()?;
            let f = parse_projective(numerator, &ff.field)?;
            let g = parse_projective(denominator, &ff.field)?;
            let w = certificate(&f, &g, fol.form())?;
            let code = if w.is_zero() { 0 } else { 1 };
            Ok((certify_report(&ff, &source, &f, &g, &w), code))
        }
        Command::Germ { germ, times, s, jet_cap } => {
            let cap = jet_cap.unwrap_or(DEFAULT_GERM_JET_CAP);
            let mut factors = vec![germ.clone()];
            factors.extend(times.iter().cloned());
            let mut poly = parse_local(germ)?;
            for t in times {
                poly = poly.mul(&parse_local(t)?);
            }
            let g = Germ::new(poly)?;
            Ok((germ_report(&germ_summary(&g, factors, s.as_deref(), cap)?), 0))
        }
    }
}

fn germ_summary(g: &Germ, factors: Vec<String>, s: Option<&str>, cap: usize) -> Result<GermSummary> {
    let reduced = g.is_reduced();
    let (milnor, tjurina) = if reduced {
        (Some(germ_milnor(g, cap)?), Some(germ_tjurina(g, cap)?))
    } else {
        (None, None)
    };
    let nodal = match is_nodal(g) {
        Nodal::Yes { n, m } => Ok((n, m)),
        Nodal::No(why) => Err(why),
    };
    let s_type = match s {
        None => None,
        Some(spec) => {
            let v = parse_int_list(spec)?;
            let [a, b, k] = v[..] else {
                return Err(Error::InvalidInput("--s expects three integers a,b,k".into()));
            };
            if a < 1 || b < 1 || k < 1 {
                return Err(Error::InvalidInput("--s expects positive integers".into()));
            }
            let cluster = Cluster::model(a, b)?;
            let result = if reduced {
                match type_check_s(g, a, b, k, cap)? {
                    TypeCheck::Match => Ok(()),
                    TypeCheck::Mismatch(why) => Err(why),
                }
            } else {
                Err("germ is not reduced".to_string())
            };
            Some(STypeSummary { a, b, k, multiplicity_sequence: germ_mult_sequence(g, &cluster), result })
        }
    };
    Ok(GermSummary {
        germ: g.poly().render(),
        factors,
        multiplicity: g.multiplicity(),
        reduced,
        milnor,
        tjurina,
        tangent_multiplicities: tangent_multiplicities(g.poly()),
        nodal,
        s_type,
    })
}
