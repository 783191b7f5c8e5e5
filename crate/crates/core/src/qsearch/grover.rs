//! Grover search and maximum finding, simulated through their measurement statistics.
//!
//! A stage of `j` Grover iterations over `N` items with `t` marked measures a marked item
//! with probability `sin²((2j+1)θ)`, `sin²θ = t/N`, and an unmarked item otherwise, each
//! uniformly. The measured item is then checked with one more oracle call, so a stage
//! costs `j + 1` iterations and `j + 1` score evaluations.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{QueryMeter, ScoreOracle};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroverParams {
    /// Growth factor of the exponential-search stage bound.
    pub lambda: f64,
    /// Maximum-finding core budget, in units of `√N` iterations.
    pub core_budget_factor: f64,
    /// Budget of a standalone search, in units of `√N` iterations.
    pub search_budget_factor: f64,
    /// Upper limit on boosting repetitions.
    pub max_repetitions: u32,
}

impl Default for GroverParams {
    fn default() -> Self {
        Self {
            lambda: 6.0 / 5.0,
            core_budget_factor: 22.5,
            search_budget_factor: 9.0,
            max_repetitions: 64,
        }
    }
}

impl GroverParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > 1.0 && self.lambda < 4.0 / 3.0) {
            return Err(Error::InvalidParameter(format!("lambda {} outside (1, 4/3)", self.lambda)));
        }
        if !(self.core_budget_factor > 0.0 && self.search_budget_factor > 0.0) {
            return Err(Error::InvalidParameter("budget factors must be positive".into()));
        }
        if self.max_repetitions == 0 {
            return Err(Error::InvalidParameter("max_repetitions must be at least 1".into()));
        }
        Ok(())
    }

    pub fn stage_cap(&self, n: usize) -> f64 {
        (n as f64).sqrt()
    }

    pub fn core_budget(&self, n: usize) -> u64 {
        (self.core_budget_factor * (n as f64).sqrt()).ceil() as u64
    }

    pub fn search_budget(&self, n: usize) -> u64 {
        (self.search_budget_factor * (n as f64).sqrt()).ceil() as u64
    }

    /// `⌈log₂(1/ρ)⌉`, at least 1 and at most `max_repetitions`.
    pub fn repetitions(&self, rho: f64) -> u32 {
        let r = (1.0 / rho).log2().ceil();
        (r.max(1.0) as u32).min(self.max_repetitions)
    }
}

/// `sin²((2j+1)θ)` with `sin²θ = t/N`.
pub fn stage_success_probability(n: usize, marked: usize, j: u64) -> f64 {
    let theta = (marked as f64 / n as f64).sqrt().asin();
    ((2 * j + 1) as f64 * theta).sin().powi(2)
}

/// One stage with `j` iterations; true when the measurement lands on a marked item.
pub fn simulate_stage<R: Rng + ?Sized>(n: usize, marked: usize, j: u64, rng: &mut R) -> bool {
    rng.random::<f64>() < stage_success_probability(n, marked, j)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOutcome {
    pub found: Option<usize>,
    /// Grover iterations spent, including the final check of each stage.
    pub iterations: u64,
}

/// Exponential search for an item satisfying `marked`, stopping once the next stage would
/// exceed `budget` iterations. Each evaluation is charged at `cost` raw queries.
pub fn qsearch_sim<R: Rng + ?Sized>(
    n: usize,
    marked: impl Fn(usize) -> bool,
    params: &GroverParams,
    budget: u64,
    cost: u64,
    rng: &mut R,
    meter: &mut QueryMeter,
) -> SearchOutcome {
    let (hits, misses): (Vec<usize>, Vec<usize>) = (0..n).partition(|&i| marked(i));
    let cap = params.stage_cap(n);
    let mut bound = 1.0f64;
    let mut used = 0u64;
    loop {
        let j = rng.random_range(0..bound.ceil() as u64);
        if used + j + 1 > budget {
            return SearchOutcome { found: None, iterations: used };
        }
        used += j + 1;
        meter.charge_grover_iterations(j + 1);
        meter.charge_score_evals(j + 1, cost);
        let success = misses.is_empty() || simulate_stage(n, hits.len(), j, rng);
        if success && !hits.is_empty() {
            let pick = hits[rng.random_range(0..hits.len())];
            return SearchOutcome { found: Some(pick), iterations: used };
        }
        bound = (bound * params.lambda).min(cap);
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DhOutcome {
    pub index: usize,
    pub score: f64,
    pub repetitions: u32,
}

/// `a` beats `b` when its score is larger, or equal with a lower index.
fn beats(a: (f64, usize), b: (f64, usize)) -> bool {
    a.0 > b.0 || (a.0 == b.0 && a.1 < b.1)
}

/// Maximum finding by threshold descent, boosted to success probability `1 − ρ` by
/// independent cores that keep the best result. Ties go to the lowest index.
pub fn dh_max_find<F: Fn(usize) -> f64, R: Rng + ?Sized>(
    oracle: &ScoreOracle<F>,
    rho: f64,
    params: &GroverParams,
    rng: &mut R,
    meter: &mut QueryMeter,
) -> Result<DhOutcome> {
    let n = oracle.len();
    if n == 0 {
        return Err(Error::InvalidParameter("maximum of an empty domain".into()));
    }
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::InvalidParameter(format!("rho must lie in (0, 1), got {rho}")));
    }
    params.validate()?;
    let repetitions = params.repetitions(rho);
    let budget = params.core_budget(n);
    let mut best: Option<(f64, usize)> = None;
    for _ in 0..repetitions {
        let start = rng.random_range(0..n);
        let mut y = (oracle.evaluate(start, meter), start);
        let mut used = 0u64;
        while used < budget {
            let threshold = y;
            let outcome = qsearch_sim(
                n,
                |j| beats((oracle.peek(j), j), threshold),
                params,
                budget - used,
                oracle.cost(),
                rng,
                meter,
            );
            used += outcome.iterations;
            match outcome.found {
                Some(j) => y = (oracle.peek(j), j),
                None => break,
            }
        }
        if best.is_none_or(|b| beats(y, b)) {
            best = Some(y);
        }
    }
    let (score, index) = best.expect("at least one repetition");
    Ok(DhOutcome {
        index,
        score,
        repetitions,
    })
}
