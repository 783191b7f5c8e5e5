use serde::{Deserialize, Serialize};

use super::ConfigIndex;
use crate::error::{Error, Result};
use crate::sampling::SampleSet;

/// Empirical influence `Î_u(S) = 2·|M_{S∪{u}}| / |M_S| − 1`, kept together with its counts.
/// Undefined when no sample has `X_S = 1ˢ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InfluenceValue {
    pub value: Option<f64>,
    pub numer_count: usize,
    pub denom_count: usize,
}

impl InfluenceValue {
    pub fn from_counts(numer_count: usize, denom_count: usize) -> Self {
        debug_assert!(numer_count <= denom_count);
        let value = (denom_count > 0).then(|| 2.0 * numer_count as f64 / denom_count as f64 - 1.0);
        Self {
            value,
            numer_count,
            denom_count,
        }
    }

    /// A value that was computed exactly rather than counted.
    pub fn exact(value: f64) -> Self {
        Self {
            value: Some(value),
            numer_count: 0,
            denom_count: 0,
        }
    }

    pub fn is_defined(&self) -> bool {
        self.value.is_some()
    }

    /// Total order used by the argmax: undefined ranks below every defined value.
    pub fn ranking_key(&self) -> f64 {
        self.value.unwrap_or(f64::NEG_INFINITY)
    }
}

/// `Î_u(S)` from the two index sets `M_S` (in `idx_set`) and `M_{S∪{u}}` (in `idx_with_u`).
pub fn empirical_influence(
    samples: &SampleSet,
    u: usize,
    idx_set: &ConfigIndex,
    idx_with_u: &ConfigIndex,
) -> Result<InfluenceValue> {
    if u >= samples.node_count() {
        return Err(Error::InvalidParameter(format!("node {u} out of range")));
    }
    if idx_set.nodes().contains(&u) {
        return Err(Error::InvalidParameter(format!("node {u} is in the conditioning set")));
    }
    let mut expected: Vec<usize> = idx_set.nodes().to_vec();
    expected.push(u);
    expected.sort_unstable();
    if idx_with_u.nodes() != expected.as_slice() {
        return Err(Error::InvalidParameter("second index must be built on S ∪ {u}".into()));
    }
    if idx_set.sample_count() != samples.len() || idx_with_u.sample_count() != samples.len() {
        return Err(Error::InvalidParameter("index was built on a different sample set".into()));
    }
    Ok(InfluenceValue::from_counts(idx_with_u.all_ones().len(), idx_set.all_ones().len()))
}

/// Influence scores for one greedy step: holds `M_S` and `M_{S∪{u}}` as bitmaps and
/// scores every extension `S ∪ {j}` with two popcounts.
#[derive(Debug, Clone)]
pub struct InfluenceScorer<'a> {
    samples: &'a SampleSet,
    conditioned: Vec<u64>,
    conditioned_up: Vec<u64>,
}

impl<'a> InfluenceScorer<'a> {
    pub fn new(samples: &'a SampleSet, u: usize, set: &[usize]) -> Result<Self> {
        let n = samples.node_count();
        if u >= n || set.iter().any(|&s| s >= n) {
            return Err(Error::InvalidParameter("node out of range".into()));
        }
        if set.contains(&u) {
            return Err(Error::InvalidParameter(format!("node {u} is in the conditioning set")));
        }
        let mut conditioned = full_mask(samples.len());
        for &s in set {
            and_assign(&mut conditioned, samples.column_bits(s));
        }
        let mut conditioned_up = conditioned.clone();
        and_assign(&mut conditioned_up, samples.column_bits(u));
        Ok(Self {
            samples,
            conditioned,
            conditioned_up,
        })
    }

    /// `Î_u(S)`.
    pub fn base(&self) -> InfluenceValue {
        InfluenceValue::from_counts(popcount(&self.conditioned_up), popcount(&self.conditioned))
    }

    /// `Î_u(S ∪ {j})`.
    pub fn extended(&self, j: usize) -> InfluenceValue {
        let column = self.samples.column_bits(j);
        InfluenceValue::from_counts(
            and_popcount(&self.conditioned_up, column),
            and_popcount(&self.conditioned, column),
        )
    }
}

pub(crate) fn full_mask(count: usize) -> Vec<u64> {
    let mut mask = vec![u64::MAX; count.div_ceil(64)];
    if !count.is_multiple_of(64) {
        if let Some(last) = mask.last_mut() {
            *last = (1u64 << (count % 64)) - 1;
        }
    }
    mask
}

pub(crate) fn and_assign(acc: &mut [u64], other: &[u64]) {
    acc.iter_mut().zip(other).for_each(|(a, b)| *a &= b);
}

pub(crate) fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

pub(crate) fn and_popcount(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}
