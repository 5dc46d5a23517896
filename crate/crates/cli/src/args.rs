use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "sepsplit",
    version,
    about = "Separating and splitting families of finite sets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format for families; tables are CSV unless `json`.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutFormat>,

    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Lift the work limits of the exhaustive routines.
    #[arg(long, global = true)]
    pub unsafe_limits: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Sets,
    Matrix,
    Json,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Params {
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub i: Option<usize>,
    #[arg(long)]
    pub j: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a family.
    Construct {
        #[arg(value_enum)]
        what: ConstructKind,
        #[command(flatten)]
        params: Params,
        /// Input family (for `2-sep`; defaults to `min-sep --k`).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Certify randomized builds with the exhaustive checker.
        #[arg(long)]
        verify: bool,
    },
    /// Check a family for a property; exit code 1 and a counterexample if it fails.
    Verify {
        #[arg(value_enum)]
        what: VerifyKind,
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        input: PathBuf,
    },
    /// Exact counts and volume tables.
    Count {
        #[arg(value_enum)]
        what: CountKind,
        #[command(flatten)]
        params: Params,
        /// Volume mode.
        #[arg(long, value_enum, default_value = "exact")]
        mode: VolumeModeArg,
    },
    /// Exact minimum family size.
    Search {
        #[arg(value_enum)]
        action: SearchAction,
        /// separating | n-separating | splitting | n-splitting
        property: String,
        #[command(flatten)]
        params: Params,
    },
    /// Stress tests and identity checks.
    Check {
        #[arg(value_enum)]
        what: CheckKind,
        #[command(flatten)]
        params: Params,
        /// Random families per positive implication.
        #[arg(long, default_value_t = 200)]
        families: usize,
        /// Random triples for the parity oracle.
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
    /// Run an experiment described by a TOML file.
    Experiment {
        #[arg(value_enum)]
        action: ExperimentAction,
        spec: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    MinSep,
    #[value(name = "2-sep")]
    TwoSep,
    IntervalSplit,
    RandNsep,
    #[value(name = "rand-2split")]
    Rand2Split,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    Sep,
    Nsep,
    Ijsep,
    Split,
    Nsplit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountKind {
    SepCensus,
    Splitters,
    Volume,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VolumeModeArg {
    Exact,
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SearchAction {
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Implications,
    Identities,
    ParityOracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExperimentAction {
    Run,
}
