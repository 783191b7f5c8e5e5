//! Empirical quantities computed from a [`SampleSet`]: probabilities, conditioning
//! index sets, influence and average conditional covariance.
//!
//! Every count is an exact integer; division happens once, at the end.

mod covariance;
mod index;
mod influence;

use crate::error::{Error, Result};
use crate::sampling::SampleSet;

pub use covariance::{avg_cond_cov_decomposed, avg_cond_cov_direct, CovarianceScorer};
pub use index::{build_index, ConfigIndex};
pub use influence::{empirical_influence, InfluenceScorer, InfluenceValue};

/// Fraction of samples that agree with `assignment` (pairs of node and ±1 value).
pub fn empirical_probability(samples: &SampleSet, assignment: &[(usize, i8)]) -> Result<f64> {
    if assignment.is_empty() {
        return Err(Error::InvalidParameter("assignment must cover at least one node".into()));
    }
    if samples.is_empty() {
        return Err(Error::InvalidParameter("no samples".into()));
    }
    for &(node, value) in assignment {
        if node >= samples.node_count() {
            return Err(Error::InvalidParameter(format!("node {node} out of range")));
        }
        if value != 1 && value != -1 {
            return Err(Error::InvalidParameter(format!("value {value} is not ±1")));
        }
    }
    let hits = (0..samples.len())
        .filter(|&i| assignment.iter().all(|&(node, value)| samples.spin(i, node) == value))
        .count();
    Ok(hits as f64 / samples.len() as f64)
}

/// `a_{j,l} = Σ_{i ∈ F_l} x_j^i`.
pub fn a_coefficient(samples: &SampleSet, j: usize, indices: &[usize]) -> i64 {
    indices.iter().map(|&i| samples.spin(i, j) as i64).sum()
}
