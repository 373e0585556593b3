//! Command-line front end for `koszulkit`.

pub mod commands;
pub mod report;
pub mod verify;

use clap::{Args, Parser, Subcommand, ValueEnum};
use commands::{KoszulCheck, NRepModeArg};
use koszulkit::Result;
use report::{error_code, Report};
use std::path::PathBuf;
use verify::Bounds;

#[derive(Parser, Debug)]
#[command(name = "koszulkit", version, about = "Graded Frobenius algebras, T-Koszulity and n-representation theory")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct Limits {
    #[arg(long, default_value_t = 8)]
    pub i_max: usize,
    #[arg(long, default_value_t = 6)]
    pub degree_max: usize,
    #[arg(long, default_value_t = 6)]
    pub depth: usize,
    #[arg(long, default_value_t = 32)]
    pub orbit_cap: usize,
    #[arg(long, default_value_t = 2)]
    pub l_max: i64,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Algebra file.
    #[arg(long)]
    pub algebra: PathBuf,
    /// Module file, one per indecomposable summand.
    #[arg(long = "module", visible_alias = "tilting")]
    pub modules: Vec<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Load an algebra and report its dimension, Frobenius data and gldim of the degree-zero part.
    Build {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, default_value_t = 8)]
        i_max: usize,
    },
    /// Table of dim Ext^i(M, N<j>).
    Ext {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long = "M", required = true)]
        m: Vec<PathBuf>,
        #[arg(long = "N", required = true)]
        n: Vec<PathBuf>,
        #[arg(long, default_value_t = 8)]
        i_max: usize,
    },
    /// Koszulity checks for a module T.
    Koszul {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = KoszulCheck::NT)]
        check: KoszulCheck,
        #[command(flatten)]
        limits: Limits,
    },
    /// n-representation finiteness or infiniteness of an algebra in degree 0.
    Nrep {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, value_enum)]
        mode: NRepModeArg,
        #[command(flatten)]
        limits: Limits,
    },
    /// Truncated (n+1)-preprojective algebra.
    Preprojective {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        degree_max: usize,
        /// Also print the multiplication table.
        #[arg(long)]
        dump: bool,
    },
    /// Truncated quasi-Veronese algebra.
    Veronese {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 6)]
        degree_max: usize,
        #[arg(long)]
        dump: bool,
    },
    /// Truncated n-T-Koszul dual.
    Dual {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 6)]
        degree_max: usize,
        #[arg(long)]
        dump: bool,
    },
    /// Compute both sides of a theorem and report whether they agree.
    Verify {
        theorem: Theorem,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        limits: Limits,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    Characterization,
    TrivextKoszul,
    PreprojVeronese,
    TrivextDual,
    NrepfinChar,
    ParamConsistency,
    SerreIdentity,
}

fn bounds(l: &Limits, seed: u64) -> Bounds {
    Bounds { i_max: l.i_max, degree_max: l.degree_max, depth: l.depth, orbit_cap: l.orbit_cap, l_max: l.l_max, seed }
}

fn execute(cli: &Cli) -> Result<Report> {
    use commands::*;
    match &cli.command {
        Command::Build { algebra, i_max } => Ok(build(&load_algebra_file(algebra)?, *i_max)),
        Command::Ext { algebra, m, n, i_max } => {
            let alg = load_algebra_file(algebra)?;
            ext(&load_modules(m, &alg)?, &load_modules(n, &alg)?, *i_max)
        }
        Command::Koszul { input, check, limits } => {
            let alg = load_algebra_file(&input.algebra)?;
            let t = if *check == KoszulCheck::Classic { Vec::new() } else { load_modules(&input.modules, &alg)? };
            koszul(&alg, &t, input.n, *check, &bounds(limits, cli.seed))
        }
        Command::Nrep { algebra, n, mode, limits } => nrep(&load_algebra_file(algebra)?, *n, *mode, &bounds(limits, cli.seed)),
        Command::Preprojective { algebra, n, degree_max, dump } => preprojective(&load_algebra_file(algebra)?, *n, *degree_max, *dump),
        Command::Veronese { algebra, r, degree_max, dump } => veronese(&load_algebra_file(algebra)?, *r, *degree_max, *dump),
        Command::Dual { input, degree_max, dump } => {
            let alg = load_algebra_file(&input.algebra)?;
            dual(&load_modules(&input.modules, &alg)?, input.n, *degree_max, *dump)
        }
        Command::Verify { theorem, input, limits } => {
            let alg = load_algebra_file(&input.algebra)?;
            let b = bounds(limits, cli.seed);
            let n = input.n;
            match theorem {
                Theorem::TrivextKoszul => verify::trivext_koszul(&alg, n, &b),
                Theorem::TrivextDual => verify::trivext_dual(&alg, n, &b),
                _ => {
                    let t = load_modules(&input.modules, &alg)?;
                    match theorem {
                        Theorem::Characterization => verify::characterization(&t, n, &b),
                        Theorem::PreprojVeronese => verify::preproj_veronese(&t, n, &b),
                        Theorem::NrepfinChar => verify::nrepfin_char(&t, n, &b),
                        Theorem::ParamConsistency => verify::param_consistency(&t, n, &b),
                        Theorem::SerreIdentity => verify::serre_identity(&t, n, &b),
                        Theorem::TrivextKoszul | Theorem::TrivextDual => unreachable!(),
                    }
                }
            }
        }
    }
}

/// Runs a parsed command line and returns the rendered report and the exit code.
pub fn run(cli: &Cli) -> (String, i32) {
    let (text, code) = match execute(cli) {
        Ok(r) => (if cli.json { r.to_json() } else { r.to_text() }, r.verdict.exit_code()),
        Err(e) => {
            let code = error_code(&e);
            let text = if cli.json {
                serde_json::to_string_pretty(&serde_json::json!({ "error": e.to_string(), "exit_code": code })).expect("json") + "\n"
            } else {
                format!("error: {e}\n")
            };
            (text, code)
        }
    };
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &text) {
            return (format!("error: {}: {e}\n", path.display()), 2);
        }
        return (String::new(), code);
    }
    (text, code)
}
