//! `bigdeg`: degree tables, type catalogs, coding trees, lab runs and verification.
//!
//! Exit codes: 0 success, 1 configuration error, 2 unsupported or flagged result,
//! 3 budget ran out.

mod commands;
mod config;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use bigdeg_core::CoreError;
use bigdeg_lab::{Budget, LabError};
use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::Theorem;
use crate::config::{resolve_class, ConfigError, Format, Resolved, RunConfig};
use crate::verify::Fault;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Config = 1,
    Flagged = 2,
    Inconclusive = 3,
}

#[derive(Parser, Debug)]
#[command(name = "bigdeg", version, about = "Exact big Ramsey degrees via coding trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Builtin class (linear-order, rado, triangle-free, digraph, tournament) or a class document.
    #[arg(long, global = true)]
    class: Option<String>,
    /// Run configuration document.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Degree table for every target up to a size.
    Degrees {
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Similarity-type catalog for all targets of one size.
    Types {
        #[arg(long)]
        size: Option<usize>,
    },
    /// Cross-checks: formula against generation against scans, persistence, lab regressions.
    Verify {
        /// Skip scans deeper than 8.
        #[arg(long)]
        quick: bool,
        #[arg(long, value_enum)]
        inject_fault: Option<Fault>,
    },
    /// Finite Ramsey, Halpern-Lauchli and Milliken checks.
    Lab {
        #[arg(long, value_enum)]
        theorem: Theorem,
        /// e.g. `n=6,k=2,r=2,target=3`, `m=2,r=2,n=3`, `k=1,r=2,n=3[,height=2]`.
        #[arg(long)]
        params: String,
        /// Search-node cap: an integer or `2^k`. Overrides BIGDEG_BUDGET.
        #[arg(long)]
        budget: Option<String>,
        /// Write the counterexample coloring, as JSON, to this file.
        #[arg(long)]
        emit_witness: Option<PathBuf>,
    },
    /// Coding tree of the reference prefix.
    Tree {
        #[arg(long)]
        depth: Option<usize>,
    },
}

fn budget(flag: Option<&str>, cfg: &RunConfig) -> Result<Budget, ConfigError> {
    let bad = |e: LabError| ConfigError::Invalid(e.to_string());
    if let Some(b) = flag {
        return Budget::parse(b).map_err(bad);
    }
    let fallback = match cfg.budget_text() {
        Some(b) => Budget::parse(&b).map_err(bad)?,
        None => Budget::default(),
    };
    Budget::from_env_or(fallback).map_err(bad)
}

fn run(cli: Cli) -> Result<(String, Exit)> {
    let cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let format = cli.format.or(cfg.format).unwrap_or_default();
    let seed = cli.seed.or(cfg.seed).unwrap_or(2024);
    if let Some(jobs) = cli.jobs.or(cfg.jobs) {
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().context("starting worker pool")?;
    }
    let class = || resolve_class(cli.class.as_deref(), &cfg);
    match &cli.command {
        Command::Degrees { max_size } => {
            let spec = class()?;
            let max = max_size.or(cfg.max_size).unwrap_or(2);
            let r = Resolved::new("degrees", Some(&spec), format, seed)?.param("max-size", max);
            commands::degrees(r, &spec, max)
        }
        Command::Types { size } => {
            let spec = class()?;
            let n = size.or(cfg.size).unwrap_or(2);
            let r = Resolved::new("types", Some(&spec), format, seed)?.param("size", n);
            commands::types(r, &spec, n)
        }
        Command::Tree { depth } => {
            let spec = class()?;
            let d = depth.or(cfg.depth).unwrap_or(4);
            let r = Resolved::new("tree", Some(&spec), format, seed)?.depth(Some(d));
            commands::tree(r, &spec, d)
        }
        Command::Verify { quick, inject_fault } => {
            let quick = *quick || cfg.quick;
            let mut r = Resolved::new("verify", None, format, seed)?.param("quick", quick);
            if let Some(f) = inject_fault {
                r = r.param("fault", f.to_possible_value().expect("named").get_name());
            }
            let r = r.depth(quick.then_some(verify::QUICK_DEPTH));
            let checks = verify::run(quick, *inject_fault, seed)?;
            let failed = checks.iter().any(|c| c.status == verify::Status::Fail);
            let out = output::render(&r, &verify::emission(&checks));
            Ok((out, if failed { Exit::Flagged } else { Exit::Ok }))
        }
        Command::Lab { theorem, params, budget: flag, emit_witness } => {
            let b = budget(flag.as_deref(), &cfg)?;
            let parsed = commands::parse_params(params).map_err(|e| ConfigError::Invalid(e.to_string()))?;
            let report = commands::run_lab(*theorem, &parsed, b).map_err(|e| match e.downcast::<LabError>() {
                Ok(lab) => anyhow::Error::new(ConfigError::Invalid(lab.to_string())),
                Err(e) => anyhow::Error::new(ConfigError::Invalid(e.to_string())),
            })?;
            let r = Resolved::new("lab", None, format, seed)?
                .param("theorem", format!("{theorem:?}").to_lowercase())
                .param("params", report.params.clone())
                .param("budget", b.0);
            commands::lab(r, &report, emit_witness.as_deref())
        }
    }
}

fn exit_for(e: &anyhow::Error) -> Exit {
    match e.downcast_ref::<CoreError>() {
        Some(CoreError::Unsupported(_)) => Exit::Flagged,
        _ => Exit::Config,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Exit::Config as u8 } else { Exit::Ok as u8 });
        }
    };
    match run(cli) {
        Ok((out, exit)) => {
            print!("{out}");
            ExitCode::from(exit as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_for(&e) as u8)
        }
    }
}
