use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod config;

use config::RunConfig;

/// Critical curves of the total CR twist functional.
#[derive(Debug, Parser)]
#[command(name = "crtwist", version)]
pub struct Cli {
    /// Output directory for written files.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for the stochastic search.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// TOML run configuration; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct ModulusArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub c1: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub c2: f64,
}

#[derive(Debug, Args, Clone)]
pub struct TargetArgs {
    /// First quantum number as a fraction, e.g. -2/15.
    #[arg(long, allow_hyphen_values = true)]
    pub q1: String,
    /// Third quantum number as a fraction, e.g. -10/21.
    #[arg(long, allow_hyphen_values = true)]
    pub q3: String,
    /// Search rectangle `t0,t1,s0,s1`; pre-screened on a grid when absent.
    #[arg(long, allow_hyphen_values = true)]
    pub rect: Option<String>,
    #[arg(long, value_enum)]
    pub branch: Option<BranchArg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Minus,
    Plus,
}

impl From<BranchArg> for crtwist::closure::Branch {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::Minus => crtwist::closure::Branch::Minus,
            BranchArg::Plus => crtwist::closure::Branch::Plus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Obj,
    Json,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Roots, momentum spectrum, discriminants and classification of a modulus.
    Classify(ModulusArgs),
    /// Twist profile of a modulus.
    Twist {
        #[command(flatten)]
        modulus: ModulusArgs,
        /// Curve class such as B'1; defaults to the canonical class.
        #[arg(long)]
        class: Option<String>,
        /// Number of periods (type B' only).
        #[arg(long)]
        periods: Option<u32>,
        /// Final parameter value (negative integrates backwards).
        #[arg(long, allow_hyphen_values = true)]
        until: Option<f64>,
        /// Initial twist, required when c1 = 0.
        #[arg(long, allow_hyphen_values = true, requires = "dtau0")]
        tau0: Option<f64>,
        #[arg(long, allow_hyphen_values = true, requires = "tau0")]
        dtau0: Option<f64>,
        /// Number of equally spaced output samples.
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// Closed curve from target quantum numbers or from a modulus.
    Curve {
        #[arg(long, allow_hyphen_values = true, requires = "q3", conflicts_with_all = ["c1", "c2"])]
        q1: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "q1")]
        q3: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "c2")]
        c1: Option<f64>,
        #[arg(long, allow_hyphen_values = true, requires = "c1")]
        c2: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        rect: Option<String>,
        #[arg(long, value_enum)]
        branch: Option<BranchArg>,
        /// Samples per twist period.
        #[arg(long)]
        density: Option<usize>,
    },
    /// Differential-evolution search for a modulus with given quantum numbers.
    Search(TargetArgs),
    /// Grid of the closing-integral map over a parameter rectangle.
    Pmap {
        #[arg(long, value_enum, default_value = "minus")]
        branch: BranchArg,
        #[arg(long, default_value_t = 40)]
        nt: usize,
        #[arg(long, default_value_t = 40)]
        ns: usize,
        #[arg(long, allow_hyphen_values = true)]
        rect: Option<String>,
    },
    /// Closed-form discrete invariants of rational quantum numbers.
    Invariants {
        #[arg(long, allow_hyphen_values = true)]
        q1: String,
        #[arg(long, allow_hyphen_values = true)]
        q3: String,
        /// Representative of q2; defaults to -(q1 + q3) reduced into (-1, 0].
        #[arg(long, allow_hyphen_values = true)]
        q2: Option<String>,
        /// Polarization selecting the closed-form branch.
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        eps: i8,
    },
    /// Heisenberg-projected geometry of a curve (or its dual).
    Export {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[arg(long)]
        class: Option<String>,
        #[arg(long)]
        periods: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        until: Option<f64>,
        /// Export the dual curve `[F3]` instead of the curve.
        #[arg(long)]
        dual: bool,
        #[arg(long, value_enum, default_value = "all")]
        format: Format,
        #[arg(long)]
        density: Option<usize>,
    },
}

fn run(cli: Cli) -> Result<ExitCode> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(s) = cli.seed {
        cfg.seed = Some(s);
    }
    let out_given = cli.out.is_some();
    if let Some(o) = cli.out {
        cfg.out = o;
    }
    cfg.validate()?;
    commands::dispatch(cli.command, &cfg, out_given)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
