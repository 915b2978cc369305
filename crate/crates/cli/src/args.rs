use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "bvinf", version, about = "Variable influences of Boolean functions via Bernstein-Vazirani sampling")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact influence of every variable
    Influence(Common),
    /// Exact Walsh spectrum and circuit output law
    Spectrum(Common),
    /// Simulated circuit measurements
    BvSample {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 100)]
        m: usize,
    },
    /// Sampled estimate of every influence from m circuit runs
    Estimate {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = bvinf::estimate::DEFAULT_SAMPLES)]
        m: usize,
        /// Confidence level for the reported accuracy radius
        #[arg(long, default_value_t = 0.95)]
        confidence: f64,
    },
    /// Variables seen at least once in m circuit runs
    ListInfluential {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = bvinf::estimate::DEFAULT_SAMPLES)]
        m: usize,
        #[arg(long, default_value_t = bvinf::estimate::DEFAULT_C)]
        c: f64,
    },
    /// Linear/quadratic classification from rho runs
    Learn2 {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = bvinf::learn::DEFAULT_RHO)]
        rho: usize,
    },
    /// Linear/quadratic/cubic classification from lambda runs
    Learn3 {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = bvinf::learn::DEFAULT_LAMBDA)]
        lambda: usize,
        #[arg(long, default_value_t = bvinf::learn::DEFAULT_WINDOW)]
        epsilon: f64,
    },
    /// Classical estimate from m random input pairs per variable
    Classical {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = bvinf::estimate::DEFAULT_SAMPLES)]
        m: usize,
        /// Single variable to estimate; all variables when omitted
        #[arg(long)]
        i: Option<usize>,
    },
    /// Check every exact identity on the function
    Verify(Common),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Influence(_) => "influence",
            Command::Spectrum(_) => "spectrum",
            Command::BvSample { .. } => "bv-sample",
            Command::Estimate { .. } => "estimate",
            Command::ListInfluential { .. } => "list-influential",
            Command::Learn2 { .. } => "learn2",
            Command::Learn3 { .. } => "learn3",
            Command::Classical { .. } => "classical",
            Command::Verify(_) => "verify",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::Influence(c) | Command::Spectrum(c) | Command::Verify(c) => c,
            Command::BvSample { common, .. }
            | Command::Estimate { common, .. }
            | Command::ListInfluential { common, .. }
            | Command::Learn2 { common, .. }
            | Command::Learn3 { common, .. }
            | Command::Classical { common, .. } => common,
        }
    }
}

#[derive(Args, Debug, Clone)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["anf", "table", "random"]))]
pub struct Common {
    /// ANF expression, e.g. "x1 + x2*x3"
    #[arg(long)]
    pub anf: Option<String>,
    /// Truth-table file (text, or packed binary with extension .ttb)
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Uniformly random function, given as N:SEED
    #[arg(long, value_name = "N:SEED")]
    pub random: Option<String>,
    /// Variable count (required with --anf)
    #[arg(long)]
    pub n: Option<usize>,
    /// Sampling seed; drawn from entropy when omitted and recorded in the report
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}
