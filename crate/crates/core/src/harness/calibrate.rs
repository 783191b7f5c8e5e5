use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use super::run::{trial_inputs, TrialSeeds};
use crate::error::{Error, Result};
use crate::greedy::learn_full_graph;
use crate::model::two_hop_graph;
use crate::seeds::derive_seed;

/// Copy of `config` whose trials use seed streams disjoint from the original's.
pub fn held_out(config: &ExperimentConfig) -> ExperimentConfig {
    let mut out = config.clone();
    out.model.seed = derive_seed(config.model.seed, u64::MAX);
    out.seed = derive_seed(config.seed, u64::MAX);
    out.output = None;
    out
}

/// `config` with its learner threshold (η or τ) replaced.
pub fn with_threshold(config: &ExperimentConfig, threshold: f64) -> ExperimentConfig {
    let mut out = config.clone();
    if config.learner.algorithm.is_influence() {
        out.learner.eta = Some(threshold);
    } else {
        out.learner.tau = Some(threshold);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationStep {
    pub samples: usize,
    /// Trials recovered exactly, one entry per grid threshold.
    pub recovered: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    pub samples: usize,
    pub threshold: f64,
    pub batch: usize,
    pub grid: Vec<f64>,
    pub history: Vec<CalibrationStep>,
}

/// Exact-recovery counts over `batch` trials of `config` for each threshold in `grid`.
/// Each trial's samples are drawn once and shared by every threshold.
pub fn recovery_by_threshold(config: &ExperimentConfig, grid: &[f64], batch: usize) -> Result<Vec<usize>> {
    let per_trial = (0..batch as u64)
        .into_par_iter()
        .map(|t| {
            let seeds = TrialSeeds::for_trial(config, t);
            let (model, samples) = trial_inputs(config, &seeds)?;
            let truth = two_hop_graph(&model);
            grid.iter()
                .map(|&th| {
                    let learner = with_threshold(config, th).learner.resolve(&config.model, seeds.learner)?;
                    Ok(learn_full_graph(&samples, &learner)?.graph == truth)
                })
                .collect::<Result<Vec<bool>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((0..grid.len()).map(|i| per_trial.iter().filter(|r| r[i]).count()).collect())
}

/// Doubles the sample count from `start` until some threshold of `grid` recovers every
/// one of `batch` held-out trials, then picks the median such threshold.
pub fn calibrate(config: &ExperimentConfig, grid: &[f64], start: usize, max: usize, batch: usize) -> Result<Calibration> {
    if grid.is_empty() || batch == 0 || start == 0 || start > max {
        return Err(Error::InvalidConfig("calibration needs a grid, a batch and 0 < start ≤ max".into()));
    }
    let base = held_out(config);
    let mut history = Vec::new();
    let mut samples = start;
    while samples <= max {
        let mut trial = base.clone();
        trial.sampler.samples = samples;
        let recovered = recovery_by_threshold(&trial, grid, batch)?;
        let perfect: Vec<f64> = grid.iter().zip(&recovered).filter(|(_, &r)| r == batch).map(|(&g, _)| g).collect();
        history.push(CalibrationStep { samples, recovered });
        if !perfect.is_empty() {
            return Ok(Calibration {
                samples,
                threshold: perfect[perfect.len() / 2],
                batch,
                grid: grid.to_vec(),
                history,
            });
        }
        samples *= 2;
    }
    Err(Error::Infeasible(format!(
        "no threshold recovered all {batch} held-out trials with at most {max} samples"
    )))
}
