//! Greedy two-hop neighborhood learners.
//!
//! [`learn_ferro`] grows a conditioning set by maximizing empirical influence for `k`
//! rounds and then prunes it. [`learn_lc`] grows it by maximizing the empirical average
//! conditional covariance while the best value clears `τ`, then prunes.
//!
//! Both are written once against a score source ([`InfluenceSource`] or
//! [`CovarianceSource`]) and an argmax strategy ([`ArgmaxSearch`]). The classical
//! learners use exhaustive argmax; the quantum learners in [`crate::qsearch`] swap in
//! simulated maximum finding.

mod constants;
mod exact_source;
mod full;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::InfluenceValue;
use crate::qsearch::{QueryMeter, SampleOracle};
use crate::sampling::SampleSet;

pub use constants::{
    ferro_constants, ferro_eta, ferro_k, lc_constants, lc_t_star, lc_tau, sigmoid, FerroTheoryConstants,
    LcTheoryConstants,
};
pub use exact_source::ExactSource;
pub use full::{combine_or, learn_full_graph, FullGraphEstimate, LearnerConfig};

/// How a single-node run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LearnStatus {
    Complete,
    /// Every remaining candidate was added before the loop finished.
    CandidatesExhausted,
    /// The best score in some round was undefined.
    InsufficientSamples,
    /// The covariance learner hit its iteration cap.
    IterationCap,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub node: usize,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NeighborhoodResult {
    pub u: usize,
    /// Estimated two-hop neighbors, ascending.
    pub estimate: Vec<usize>,
    pub trace: Vec<TraceStep>,
    /// Trace nodes removed by pruning, ascending.
    pub pruned: Vec<usize>,
    pub status: LearnStatus,
    /// Queries spent by this run.
    pub meter: QueryMeter,
}

/// Influence scores for the ferromagnetic learner.
pub trait InfluenceSource {
    fn node_count(&self) -> usize;
    /// Raw-query cost of one score evaluation.
    fn eval_cost(&self) -> u64;
    fn meter(&self) -> QueryMeter;
    fn meter_mut(&mut self) -> &mut QueryMeter;
    /// `Î_u(S ∪ {j})` for each candidate `j`, charging the index construction for `S`.
    fn extension_scores(&mut self, u: usize, set: &[usize], candidates: &[usize]) -> Result<Vec<InfluenceValue>>;
    /// `Î_u(S)`, charged as one pruning evaluation.
    fn pruning_influence(&mut self, u: usize, set: &[usize]) -> Result<InfluenceValue>;
}

/// Covariance scores for the locally consistent learner.
pub trait CovarianceSource {
    fn node_count(&self) -> usize;
    fn eval_cost(&self) -> u64;
    fn meter(&self) -> QueryMeter;
    fn meter_mut(&mut self) -> &mut QueryMeter;
    /// `Ĉov^avg(u, v | S)` for each candidate `v`, charging the index construction for `S`.
    fn extension_scores(&mut self, u: usize, set: &[usize], candidates: &[usize]) -> Result<Vec<f64>>;
    /// `Ĉov^avg(u, v | S)`, charged as one pruning evaluation.
    fn pruning_covariance(&mut self, u: usize, v: usize, set: &[usize]) -> Result<f64>;
}

/// Picks the position of the largest key. Every strategy charges its own score
/// evaluations at `cost` raw queries each.
pub trait ArgmaxSearch {
    fn select(&mut self, keys: &[f64], cost: u64, meter: &mut QueryMeter) -> Result<usize>;
}

/// Scan every key; ties go to the lowest position.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExhaustiveArgmax;

impl ArgmaxSearch for ExhaustiveArgmax {
    fn select(&mut self, keys: &[f64], cost: u64, meter: &mut QueryMeter) -> Result<usize> {
        if keys.is_empty() {
            return Err(Error::InvalidParameter("argmax of an empty candidate list".into()));
        }
        meter.charge_score_evals(keys.len() as u64, cost);
        let mut best = 0;
        for (i, &key) in keys.iter().enumerate().skip(1) {
            if key > keys[best] {
                best = i;
            }
        }
        Ok(best)
    }
}

fn candidates(n: usize, u: usize, set: &[usize]) -> Vec<usize> {
    (0..n).filter(|&j| j != u && !set.contains(&j)).collect()
}

fn check_node(u: usize, n: usize) -> Result<()> {
    if u >= n {
        return Err(Error::InvalidParameter(format!("node {u} out of range for {n} nodes")));
    }
    Ok(())
}

fn split_pruned(set: &[usize], kept: Vec<usize>) -> (Vec<usize>, Vec<usize>) {
    let mut estimate = kept;
    estimate.sort_unstable();
    let mut pruned: Vec<usize> = set.iter().copied().filter(|j| !estimate.contains(j)).collect();
    pruned.sort_unstable();
    (estimate, pruned)
}

/// Influence-maximization greedy over any source and argmax strategy.
pub fn greedy_ferro<S, A>(source: &mut S, u: usize, eta: f64, k: u64, search: &mut A) -> Result<NeighborhoodResult>
where
    S: InfluenceSource + ?Sized,
    A: ArgmaxSearch + ?Sized,
{
    let n = source.node_count();
    check_node(u, n)?;
    if eta.is_nan() || eta <= 0.0 || k == 0 {
        return Err(Error::InvalidParameter("eta must be positive and k at least 1".into()));
    }
    let start = source.meter();
    let cost = source.eval_cost();
    let mut set: Vec<usize> = Vec::new();
    let mut trace = Vec::new();
    let mut status = LearnStatus::Complete;
    for _ in 0..k {
        let cands = candidates(n, u, &set);
        if cands.is_empty() {
            status = LearnStatus::CandidatesExhausted;
            break;
        }
        let scores = source.extension_scores(u, &set, &cands)?;
        let keys: Vec<f64> = scores.iter().map(InfluenceValue::ranking_key).collect();
        let pick = search.select(&keys, cost, source.meter_mut())?;
        let Some(score) = scores[pick].value else {
            status = LearnStatus::InsufficientSamples;
            break;
        };
        set.push(cands[pick]);
        trace.push(TraceStep { node: cands[pick], score });
    }

    let base = source.pruning_influence(u, &set)?;
    let mut kept = Vec::new();
    for &j in &set {
        let without: Vec<usize> = set.iter().copied().filter(|&x| x != j).collect();
        let reduced = source.pruning_influence(u, &without)?;
        if let (Some(b), Some(r)) = (base.value, reduced.value) {
            if b - r >= eta {
                kept.push(j);
            }
        }
    }
    let (estimate, pruned) = split_pruned(&set, kept);
    Ok(NeighborhoodResult {
        u,
        estimate,
        trace,
        pruned,
        status,
        meter: source.meter().since(&start),
    })
}

/// Covariance-maximization greedy over any source and argmax strategy.
pub fn greedy_lc<S, A>(source: &mut S, u: usize, tau: f64, t_max: u64, search: &mut A) -> Result<NeighborhoodResult>
where
    S: CovarianceSource + ?Sized,
    A: ArgmaxSearch + ?Sized,
{
    let n = source.node_count();
    check_node(u, n)?;
    if tau.is_nan() || tau <= 0.0 || t_max == 0 {
        return Err(Error::InvalidParameter("tau must be positive and t_max at least 1".into()));
    }
    let start = source.meter();
    let cost = source.eval_cost();
    let mut set: Vec<usize> = Vec::new();
    let mut trace = Vec::new();
    let status = loop {
        if set.len() as u64 >= t_max {
            break LearnStatus::IterationCap;
        }
        let cands = candidates(n, u, &set);
        if cands.is_empty() {
            break LearnStatus::CandidatesExhausted;
        }
        let scores = source.extension_scores(u, &set, &cands)?;
        let pick = search.select(&scores, cost, source.meter_mut())?;
        if scores[pick] < tau {
            break LearnStatus::Complete;
        }
        set.push(cands[pick]);
        trace.push(TraceStep {
            node: cands[pick],
            score: scores[pick],
        });
    };

    let mut kept = Vec::new();
    for &v in &set {
        let without: Vec<usize> = set.iter().copied().filter(|&x| x != v).collect();
        if source.pruning_covariance(u, v, &without)? >= tau {
            kept.push(v);
        }
    }
    let (estimate, pruned) = split_pruned(&set, kept);
    Ok(NeighborhoodResult {
        u,
        estimate,
        trace,
        pruned,
        status,
        meter: source.meter().since(&start),
    })
}

/// Classical influence-maximization learner for ferromagnetic models.
pub fn learn_ferro(u: usize, samples: &SampleSet, eta: f64, k: u64) -> Result<NeighborhoodResult> {
    greedy_ferro(&mut SampleOracle::new(samples), u, eta, k, &mut ExhaustiveArgmax)
}

/// Classical covariance-maximization learner for locally consistent models.
pub fn learn_lc(u: usize, samples: &SampleSet, tau: f64, t_max: u64) -> Result<NeighborhoodResult> {
    greedy_lc(&mut SampleOracle::new(samples), u, tau, t_max, &mut ExhaustiveArgmax)
}
