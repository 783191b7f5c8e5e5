//! Query-metered simulation of the quantum layer: sample and score oracles, Grover
//! exponential search, Dürr–Høyer maximum finding and the quantum greedy learners.

mod grover;
mod meter;
mod oracle;

use rand::Rng;

use crate::error::{Error, Result};
use crate::greedy::{greedy_ferro, greedy_lc, ArgmaxSearch, NeighborhoodResult};

pub use grover::{
    dh_max_find, qsearch_sim, simulate_stage, stage_success_probability, DhOutcome, GroverParams, SearchOutcome,
};
pub use meter::{AtomicQueryMeter, QueryMeter};
pub use oracle::{SampleOracle, ScoreOracle};

/// Argmax by simulated maximum finding with failure probability `rho`.
pub struct DurrHoyerArgmax<'r, R: ?Sized> {
    pub rho: f64,
    pub params: GroverParams,
    pub rng: &'r mut R,
}

impl<R: Rng + ?Sized> ArgmaxSearch for DurrHoyerArgmax<'_, R> {
    fn select(&mut self, keys: &[f64], cost: u64, meter: &mut QueryMeter) -> Result<usize> {
        let oracle = ScoreOracle::new(keys.len(), cost, |j| keys[j]);
        Ok(dh_max_find(&oracle, self.rho, &self.params, self.rng, meter)?.index)
    }
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must lie in (0, 1), got {p}")))
    }
}

/// Influence-maximization learner whose argmax runs maximum finding with `ρ = δ/(2k)`.
/// Score evaluations cost `M` raw queries; the result carries this run's meter.
pub fn quantum_learn_ferro<R: Rng + ?Sized>(
    u: usize,
    oracle: &mut SampleOracle<'_>,
    eta: f64,
    k: u64,
    delta: f64,
    params: &GroverParams,
    rng: &mut R,
) -> Result<NeighborhoodResult> {
    check_probability("delta", delta)?;
    let mut search = DurrHoyerArgmax {
        rho: delta / (2.0 * k.max(1) as f64),
        params: *params,
        rng,
    };
    greedy_ferro(oracle, u, eta, k, &mut search)
}

/// Covariance-maximization learner whose argmax runs maximum finding with
/// `ρ = ζ/(2 T_max)`. Score evaluations cost `H` raw queries.
pub fn quantum_learn_lc<R: Rng + ?Sized>(
    u: usize,
    oracle: &mut SampleOracle<'_>,
    tau: f64,
    t_max: u64,
    zeta: f64,
    params: &GroverParams,
    rng: &mut R,
) -> Result<NeighborhoodResult> {
    check_probability("zeta", zeta)?;
    let mut search = DurrHoyerArgmax {
        rho: zeta / (2.0 * t_max.max(1) as f64),
        params: *params,
        rng,
    };
    greedy_lc(oracle, u, tau, t_max, &mut search)
}
