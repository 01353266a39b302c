//! Command-line definitions and output routing.

use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::experiments;
use crate::report::{Format, Report};
use crate::{LabError, LabResult};

pub const OUT_DIR_ENV: &str = "CARLAB_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "carlab", version, about = "Seeded experiments on product states of M_{2^n}")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub out: Format,
    /// Output file. Takes precedence over --out-dir.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Directory for `<experiment>.<ext>`; stdout when neither this nor
    /// --output is given.
    #[arg(long, env = OUT_DIR_ENV, global = true)]
    pub out_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal ‖I − u‖ with uξ = η: closed form against the brute-force oracle.
    Lemma1Verify(Lemma1Args),
    /// Product-state minimum under state equality against both closed forms.
    Lemma2Adjudicate(Lemma2Args),
    /// Intertwiner chain per level plus the finite-prefix classification.
    Reduce(ReduceArgs),
    /// ‖v_m − v_n‖ against the sign-pattern formula and the product bound.
    CauchyGaps(CauchyArgs),
    /// Tail product states drifting apart in norm.
    Separation(SeparationArgs),
    /// First net unitary with sup gap below 1 for φ = ψ∘Ad v.
    FsigmaSearch(FsigmaArgs),
    /// Partial products against Weierstrass-type lower bounds.
    ProductTest(ProductArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstraintArg {
    Exact,
    StateEquality,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PhasePolicyArg {
    None,
    EigenvalueOne,
}

impl From<PhasePolicyArg> for carlab_core::reduction::PhasePolicy {
    fn from(p: PhasePolicyArg) -> Self {
        match p {
            PhasePolicyArg::None => Self::None,
            PhasePolicyArg::EigenvalueOne => Self::EigenvalueOne,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NetKind {
    Grid,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProductFamily {
    /// t_j = 1 − 2^{−j}.
    Geometric,
    /// t_j = j/(j+1).
    Telescoping,
    /// t_j = cos(α_j − β_j).
    Angles,
}

#[derive(Debug, Clone, Args)]
pub struct Lemma1Args {
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Objective evaluations per oracle run.
    #[arg(long, default_value_t = 10_000)]
    pub budget: usize,
    #[arg(long, value_enum, default_value_t = ConstraintArg::Exact)]
    pub constraint: ConstraintArg,
    #[arg(long, default_value_t = 1e-4)]
    pub tolerance: f64,
}

#[derive(Debug, Clone, Args)]
pub struct Lemma2Args {
    #[arg(long, default_value_t = 50)]
    pub pairs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub budget: usize,
    #[arg(long, default_value_t = 1e-3)]
    pub tolerance: f64,
}

#[derive(Debug, Clone, Args)]
pub struct ReduceArgs {
    #[arg(long)]
    pub alpha: String,
    #[arg(long)]
    pub beta: String,
    /// Chain depth (at most 12).
    #[arg(long, default_value_t = 10)]
    pub levels: u32,
    /// Prefix length used for the convergence classification.
    #[arg(long, default_value_t = 4096)]
    pub length: usize,
    #[arg(long, value_enum, default_value_t = PhasePolicyArg::None)]
    pub phase_policy: PhasePolicyArg,
    /// Levels up to this one get dense gap measurements.
    #[arg(long, default_value_t = 8)]
    pub dense_max_level: u32,
    /// Random Hermitian contractions in the intertwining test set.
    #[arg(long, default_value_t = 25)]
    pub tests: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct CauchyArgs {
    #[arg(long)]
    pub alpha: String,
    #[arg(long)]
    pub beta: String,
    #[arg(long, default_value_t = 8)]
    pub levels: u32,
    #[arg(long, default_value_t = 6)]
    pub max_span: u32,
    #[arg(long, value_enum, default_value_t = PhasePolicyArg::None)]
    pub phase_policy: PhasePolicyArg,
}

#[derive(Debug, Clone, Args)]
pub struct SeparationArgs {
    #[arg(long)]
    pub alpha: String,
    #[arg(long)]
    pub beta: String,
    /// First tensor factor (one-based).
    #[arg(long, default_value_t = 1)]
    pub start: usize,
    /// Last tensor factor.
    #[arg(long, default_value_t = 10)]
    pub levels: usize,
    /// Distance reported as the crossing threshold.
    #[arg(long, default_value_t = 1.9)]
    pub threshold: f64,
}

#[derive(Debug, Clone, Args)]
pub struct FsigmaArgs {
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, default_value_t = 0.4)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 50)]
    pub pairs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random Hermitian contractions (and as many random projections) in the
    /// test net, besides the matrix units.
    #[arg(long, default_value_t = 25)]
    pub tests: usize,
    /// Net positions examined per pair.
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u64,
    #[arg(long, value_enum, default_value_t = NetKind::Grid)]
    pub net: NetKind,
    /// Elements of the random net.
    #[arg(long, default_value_t = 4096)]
    pub net_size: usize,
}

#[derive(Debug, Clone, Args)]
pub struct ProductArgs {
    #[arg(long, value_enum)]
    pub family: ProductFamily,
    #[arg(long, default_value_t = 64)]
    pub length: usize,
    /// Factors kept exactly in the split bound.
    #[arg(long, default_value_t = 1)]
    pub split: usize,
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub beta: Option<String>,
}

/// Runs the experiment and writes its report. An invariant violation is
/// returned after the report has been written.
pub fn run(cli: &Cli) -> LabResult<()> {
    let (report, violation) = experiments::dispatch(&cli.command, cli.out)?;
    emit(cli, &report)?;
    match violation {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn emit(cli: &Cli, report: &Report) -> LabResult<()> {
    let text = report.render(cli.out);
    let path = match (&cli.output, &cli.out_dir) {
        (Some(p), _) => Some(p.clone()),
        (None, Some(dir)) => {
            std::fs::create_dir_all(dir).map_err(|e| LabError::Io(format!("creating {}: {e}", dir.display())))?;
            Some(dir.join(format!("{}.{}", report.experiment, cli.out.extension())))
        }
        (None, None) => None,
    };
    match path {
        Some(p) => std::fs::write(&p, text).map_err(|e| LabError::Io(format!("writing {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}
