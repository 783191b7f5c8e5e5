//! Query-count scaling sweeps over the number of visible nodes.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::run::MeanStderr;
use crate::error::{Error, Result};
use crate::greedy::{learn_ferro, learn_lc, ExhaustiveArgmax, ArgmaxSearch};
use crate::model::{generate_model, ModelKind, NonDegeneracyParams};
use crate::qsearch::{dh_max_find, quantum_learn_ferro, quantum_learn_lc, GroverParams, QueryMeter, SampleOracle, ScoreOracle};
use crate::sampling::{gibbs_sample, GibbsConfig};
use crate::seeds::{derive_seed, stream_rng};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum SweepMode {
    /// One argmax over `n` random scores of constant cost.
    Synthetic { rho: f64, cost: u64 },
    /// Full learners on Gibbs samples of generated models; node 0 is learned.
    Learner {
        kind: ModelKind,
        d2: usize,
        alpha: f64,
        beta: f64,
        samples: usize,
        burn_in: usize,
        thinning: usize,
        threshold: f64,
        iterations: u64,
        failure: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub ns: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub grover: GroverParams,
    pub mode: SweepMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub classical: MeanStderr,
    pub quantum: MeanStderr,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub classical_slope: f64,
    pub quantum_slope: f64,
}

/// Least-squares slope of `ln y` against `ln x` over the points with both coordinates
/// positive and finite. Needs at least three such points.
pub fn fit_loglog_slope(points: &[(f64, f64)]) -> Result<f64> {
    let usable: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| x.is_finite() && y.is_finite() && *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if usable.len() < 3 {
        return Err(Error::DegenerateFit {
            points: usable.len(),
            needed: 3,
        });
    }
    let k = usable.len() as f64;
    let mx = usable.iter().map(|p| p.0).sum::<f64>() / k;
    let my = usable.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = usable.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = usable.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit {
            points: 1,
            needed: 3,
        });
    }
    Ok(sxy / sxx)
}

/// Queries spent by argmax searches (score evaluations times their cost) for one trial,
/// classical then quantum.
fn synthetic_trial(n: usize, rho: f64, cost: u64, grover: &GroverParams, seed: u64) -> Result<(f64, f64)> {
    let mut rng = stream_rng(seed, 0);
    let scores: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
    let mut classical = QueryMeter::new();
    ExhaustiveArgmax.select(&scores, cost, &mut classical)?;
    let mut quantum = QueryMeter::new();
    let oracle = ScoreOracle::new(n, cost, |j| scores[j]);
    dh_max_find(&oracle, rho, grover, &mut rng, &mut quantum)?;
    Ok((classical.raw_queries() as f64, quantum.raw_queries() as f64))
}

fn learner_trial(n: usize, mode: &SweepMode, grover: &GroverParams, seed: u64) -> Result<(f64, f64)> {
    let SweepMode::Learner {
        kind,
        d2,
        alpha,
        beta,
        samples,
        burn_in,
        thinning,
        threshold,
        iterations,
        failure,
    } = *mode
    else {
        unreachable!("learner trial on a synthetic sweep")
    };
    let params = NonDegeneracyParams::new(alpha, beta)?;
    let model = generate_model(kind, n, n / 2, d2.min(n - 1), &params, derive_seed(seed, 0))?;
    let gibbs = GibbsConfig {
        burn_in,
        thinning,
        seed: derive_seed(seed, 1),
    };
    let data = gibbs_sample(&model, samples, &gibbs)?;
    let mut rng = stream_rng(seed, 2);
    let (classical, quantum) = if kind == ModelKind::Ferromagnetic {
        (
            learn_ferro(0, &data, threshold, iterations)?,
            quantum_learn_ferro(0, &mut SampleOracle::new(&data), threshold, iterations, failure, grover, &mut rng)?,
        )
    } else {
        (
            learn_lc(0, &data, threshold, iterations)?,
            quantum_learn_lc(0, &mut SampleOracle::new(&data), threshold, iterations, failure, grover, &mut rng)?,
        )
    };
    let cost = data.len() as f64;
    Ok((
        classical.meter.score_evals() as f64 * cost,
        quantum.meter.score_evals() as f64 * cost,
    ))
}

/// Mean argmax-search queries per `n` for the classical and quantum variants, with
/// log-log slopes.
pub fn sweep_scaling(config: &SweepConfig) -> Result<SweepResult> {
    if config.ns.windows(2).any(|w| w[0] >= w[1]) || config.ns.contains(&0) {
        return Err(Error::InvalidConfig("sweep sizes must be positive and strictly ascending".into()));
    }
    if config.trials == 0 {
        return Err(Error::InvalidConfig("sweep needs at least one trial".into()));
    }
    config.grover.validate()?;
    let rows = config
        .ns
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let pairs = (0..config.trials as u64)
                .into_par_iter()
                .map(|t| {
                    let seed = derive_seed(derive_seed(config.seed, i as u64), t);
                    match config.mode {
                        SweepMode::Synthetic { rho, cost } => synthetic_trial(n, rho, cost, &config.grover, seed),
                        SweepMode::Learner { .. } => learner_trial(n, &config.mode, &config.grover, seed),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            let classical: Vec<f64> = pairs.iter().map(|p| p.0).collect();
            let quantum: Vec<f64> = pairs.iter().map(|p| p.1).collect();
            Ok(SweepRow {
                n,
                classical: MeanStderr::of(&classical),
                quantum: MeanStderr::of(&quantum),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let points = |f: fn(&SweepRow) -> Option<f64>| -> Vec<(f64, f64)> {
        rows.iter().filter_map(|r| f(r).map(|y| (r.n as f64, y))).collect()
    };
    Ok(SweepResult {
        classical_slope: fit_loglog_slope(&points(|r| r.classical.mean))?,
        quantum_slope: fit_loglog_slope(&points(|r| r.quantum.mean))?,
        rows,
    })
}
