use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, SamplerMethod};
use crate::error::{Error, Result};
use crate::greedy::learn_full_graph;
use crate::model::{generate_model, two_hop_graph, RbmModel, TwoHopGraph};
use crate::sampling::{exact_sample, gibbs_sample, GibbsConfig, SampleSet};
use crate::seeds::derive_seed;

/// Seeds used by one trial, derived from the master seeds by trial index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialSeeds {
    pub model: u64,
    pub sample: u64,
    pub learner: u64,
}

impl TrialSeeds {
    pub fn for_trial(config: &ExperimentConfig, trial: u64) -> Self {
        Self {
            model: derive_seed(config.model.seed, trial),
            sample: derive_seed(config.seed, 2 * trial),
            learner: derive_seed(config.seed, 2 * trial + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub seeds: TrialSeeds,
    pub truth_edges: Vec<(usize, usize)>,
    pub estimated_edges: Vec<(usize, usize)>,
    pub exact_recovery: bool,
    pub true_positives: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
    pub raw_queries: u64,
    pub score_evals: u64,
    pub grover_iterations: u64,
    pub insufficient_samples: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanStderr {
    pub mean: Option<f64>,
    pub stderr: Option<f64>,
}

impl MeanStderr {
    pub fn of(values: &[f64]) -> Self {
        let n = values.len() as f64;
        if values.is_empty() {
            return Self { mean: None, stderr: None };
        }
        let mean = values.iter().sum::<f64>() / n;
        let stderr = (values.len() > 1).then(|| {
            let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
            (var / n).sqrt()
        });
        Self {
            mean: Some(mean),
            stderr,
        }
    }
}

/// Aggregate over trials. Precision and recall pool edge counts across trials and are
/// absent when their denominator is zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecoveryMetrics {
    pub trials: usize,
    pub exact_recovery: Option<f64>,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub raw_queries: MeanStderr,
    pub score_evals: MeanStderr,
    /// Seconds; never written to result files.
    #[serde(skip)]
    pub wall_time_secs: f64,
}

impl RecoveryMetrics {
    pub fn from_records(records: &[TrialRecord]) -> Self {
        let tp: usize = records.iter().map(|r| r.true_positives).sum();
        let fp: usize = records.iter().map(|r| r.false_positives).sum();
        let fn_: usize = records.iter().map(|r| r.false_negatives).sum();
        let ratio = |a: usize, b: usize| (b > 0).then(|| a as f64 / b as f64);
        let raw: Vec<f64> = records.iter().map(|r| r.raw_queries as f64).collect();
        let evals: Vec<f64> = records.iter().map(|r| r.score_evals as f64).collect();
        Self {
            trials: records.len(),
            exact_recovery: ratio(records.iter().filter(|r| r.exact_recovery).count(), records.len()),
            precision: ratio(tp, tp + fp),
            recall: ratio(tp, tp + fn_),
            raw_queries: MeanStderr::of(&raw),
            score_evals: MeanStderr::of(&evals),
            wall_time_secs: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub records: Vec<TrialRecord>,
    pub metrics: RecoveryMetrics,
}

/// The model and samples of one trial.
pub fn trial_inputs(config: &ExperimentConfig, seeds: &TrialSeeds) -> Result<(RbmModel, SampleSet)> {
    let spec = &config.model;
    let model = generate_model(spec.kind, spec.n, spec.m, spec.d2, &spec.params()?, seeds.model)?;
    let s = &config.sampler;
    let samples = match s.method {
        SamplerMethod::Exact => exact_sample(&model, s.samples, seeds.sample)?,
        SamplerMethod::Gibbs => gibbs_sample(
            &model,
            s.samples,
            &GibbsConfig {
                burn_in: s.burn_in,
                thinning: s.thinning,
                seed: seeds.sample,
            },
        )?,
    };
    Ok((model, samples))
}

pub fn compare_graphs(truth: &TwoHopGraph, estimate: &TwoHopGraph) -> (usize, usize, usize) {
    let tp = estimate.edges().filter(|&(a, b)| truth.contains(a, b)).count();
    (tp, estimate.edge_count() - tp, truth.edge_count() - tp)
}

pub fn run_trial(config: &ExperimentConfig, trial: u64) -> Result<TrialRecord> {
    let seeds = TrialSeeds::for_trial(config, trial);
    let (model, samples) = trial_inputs(config, &seeds)?;
    let learner = config.learner.resolve(&config.model, seeds.learner)?;
    let estimate = learn_full_graph(&samples, &learner)?;
    let truth = two_hop_graph(&model);
    let (tp, fp, fn_) = compare_graphs(&truth, &estimate.graph);
    Ok(TrialRecord {
        trial,
        seeds,
        truth_edges: truth.edges().collect(),
        estimated_edges: estimate.graph.edges().collect(),
        exact_recovery: truth == estimate.graph,
        true_positives: tp,
        false_positives: fp,
        false_negatives: fn_,
        raw_queries: estimate.meter.raw_queries(),
        score_evals: estimate.meter.score_evals(),
        grover_iterations: estimate.meter.grover_iterations(),
        insufficient_samples: estimate.insufficient_samples(),
    })
}

/// Runs every trial (in parallel), aggregates, and writes the result files when
/// `config.output` is set.
pub fn run(config: &ExperimentConfig) -> Result<RunOutput> {
    config.validate()?;
    let start = Instant::now();
    let records = (0..config.trials as u64)
        .into_par_iter()
        .map(|t| run_trial(config, t).map_err(|e| e.context(format!("trial {t}"))))
        .collect::<Result<Vec<_>>>()?;
    let mut metrics = RecoveryMetrics::from_records(&records);
    metrics.wall_time_secs = start.elapsed().as_secs_f64();
    let output = RunOutput { records, metrics };
    if let Some(dir) = &config.output {
        write_outputs(dir, config, &output)?;
    }
    Ok(output)
}

/// Column order of `summary.csv`.
pub const SUMMARY_COLUMNS: [&str; 17] = [
    "algorithm",
    "kind",
    "n",
    "m",
    "d2",
    "alpha",
    "beta",
    "sampler",
    "samples",
    "trials",
    "exact_recovery",
    "precision",
    "recall",
    "raw_queries_mean",
    "raw_queries_stderr",
    "score_evals_mean",
    "score_evals_stderr",
];

fn opt(value: Option<f64>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}

pub fn summary_row(config: &ExperimentConfig, metrics: &RecoveryMetrics) -> Vec<String> {
    let m = &config.model;
    vec![
        config.learner.algorithm.to_string(),
        m.kind.to_string(),
        m.n.to_string(),
        m.m.to_string(),
        m.d2.to_string(),
        m.alpha.to_string(),
        m.beta.to_string(),
        config.sampler.method.as_str().to_string(),
        config.sampler.samples.to_string(),
        metrics.trials.to_string(),
        opt(metrics.exact_recovery),
        opt(metrics.precision),
        opt(metrics.recall),
        opt(metrics.raw_queries.mean),
        opt(metrics.raw_queries.stderr),
        opt(metrics.score_evals.mean),
        opt(metrics.score_evals.stderr),
    ]
}

pub fn write_outputs(dir: &Path, config: &ExperimentConfig, output: &RunOutput) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::from(e).context(format!("creating {}", dir.display())))?;
    let mut trials = fs::File::create(dir.join("trials.jsonl"))?;
    for record in &output.records {
        serde_json::to_writer(&mut trials, record)?;
        trials.write_all(b"\n")?;
    }
    let mut csv = csv::Writer::from_path(dir.join("summary.csv"))?;
    csv.write_record(SUMMARY_COLUMNS)?;
    csv.write_record(summary_row(config, &output.metrics))?;
    csv.flush()?;
    Ok(())
}
