use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rbm_sl_core::harness::{Algorithm, SamplerMethod};
use rbm_sl_core::model::ModelKind;

/// Structure learning for restricted Boltzmann machines.
///
/// Set RBM_SL_THREADS to bound the worker pool.
#[derive(Debug, Parser)]
#[command(name = "rbm-sl", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random model and write it as JSON.
    GenModel(GenModelArgs),
    /// Draw samples from a model file into a binary sample file.
    Sample(SampleArgs),
    /// Learn a two-hop graph from a sample file, or run a seeded experiment.
    Learn(LearnArgs),
    /// Sweep the number of visible nodes and fit query-count exponents.
    Sweep(SweepArgs),
    /// Print the theory constants and sample bounds.
    Constants(ConstantsArgs),
    /// Run the built-in property battery.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct ModelArgs {
    #[arg(long)]
    pub kind: Option<ModelKind>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub d2: Option<usize>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    /// Seed of `model.seed`.
    #[arg(long)]
    pub model_seed: Option<u64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SamplerArgs {
    #[arg(long)]
    pub method: Option<SamplerMethod>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub burn_in: Option<usize>,
    #[arg(long)]
    pub thinning: Option<usize>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct LearnerArgs {
    #[arg(long)]
    pub algorithm: Option<Algorithm>,
    #[arg(long)]
    pub eta: Option<f64>,
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub t_max: Option<u64>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub zeta: Option<f64>,
    #[arg(long)]
    pub theory_defaults: bool,
}

#[derive(Debug, Args)]
pub struct GenModelArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Model file to write; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    /// Model JSON file.
    #[arg(long)]
    pub model: PathBuf,
    #[command(flatten)]
    pub sampler: SamplerArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct LearnArgs {
    /// Experiment configuration JSON; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Sample file to learn from directly instead of running trials.
    #[arg(long, conflicts_with = "config")]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub sampler: SamplerArgs,
    #[command(flatten)]
    pub learner: LearnerArgs,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory for trials.jsonl and summary.csv.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepModeArg {
    Synthetic,
    Learner,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Sweep configuration JSON; replaces all other sweep flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "64,128,256,512,1024")]
    pub ns: Vec<usize>,
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = SweepModeArg::Synthetic)]
    pub mode: SweepModeArg,
    #[arg(long, default_value_t = 0.5)]
    pub rho: f64,
    #[arg(long, default_value_t = 1)]
    pub cost: u64,
    #[arg(long, default_value = "ferromagnetic")]
    pub kind: ModelKind,
    #[arg(long, default_value_t = 3)]
    pub d2: usize,
    #[arg(long, default_value_t = 0.4)]
    pub alpha: f64,
    #[arg(long, default_value_t = 2.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 2000)]
    pub samples: usize,
    #[arg(long, default_value_t = 100)]
    pub burn_in: usize,
    #[arg(long, default_value_t = 2)]
    pub thinning: usize,
    /// η or τ, depending on the model kind.
    #[arg(long, default_value_t = 0.05)]
    pub threshold: f64,
    /// k or T_max, depending on the model kind.
    #[arg(long, default_value_t = 4)]
    pub iterations: u64,
    /// δ or ζ, depending on the model kind.
    #[arg(long, default_value_t = 0.1)]
    pub failure: f64,
    /// Write the full result as JSON.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConstantsArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub beta: f64,
    #[arg(long)]
    pub d2: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    #[arg(long, default_value_t = 0.1)]
    pub zeta: f64,
    /// Print JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}
