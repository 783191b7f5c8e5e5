use super::QueryMeter;
use crate::estimators::{ConfigIndex, CovarianceScorer, InfluenceScorer, InfluenceValue};
use crate::error::{Error, Result};
use crate::greedy::{CovarianceSource, InfluenceSource};
use crate::sampling::SampleSet;

/// Metered access to a sample set: each sample entry read costs one raw query.
#[derive(Debug, Clone)]
pub struct SampleOracle<'a> {
    samples: &'a SampleSet,
    meter: QueryMeter,
}

impl<'a> SampleOracle<'a> {
    pub fn new(samples: &'a SampleSet) -> Self {
        Self {
            samples,
            meter: QueryMeter::new(),
        }
    }

    pub fn samples(&self) -> &'a SampleSet {
        self.samples
    }

    pub fn meter(&self) -> QueryMeter {
        self.meter
    }

    pub fn meter_mut(&mut self) -> &mut QueryMeter {
        &mut self.meter
    }

    /// Returns the accumulated counts and starts a fresh meter.
    pub fn take_meter(&mut self) -> QueryMeter {
        std::mem::take(&mut self.meter)
    }

    /// `x_j^i`, charging one raw query.
    pub fn read(&mut self, sample: usize, node: usize) -> i8 {
        self.meter.charge_index_reads(1);
        self.samples.spin(sample, node)
    }

    /// Builds the configuration index on `set`, reading `M · |set|` entries.
    pub fn build_index(&mut self, set: &[usize]) -> Result<ConfigIndex> {
        let n = self.samples.node_count();
        if let Some(&bad) = set.iter().find(|&&s| s >= n) {
            return Err(Error::InvalidParameter(format!("node {bad} out of range")));
        }
        let samples = self.samples;
        let meter = &mut self.meter;
        Ok(ConfigIndex::build_with(samples.len(), set, |i, node| {
            meter.charge_index_reads(1);
            samples.is_up(i, node)
        }))
    }

    fn count(&self) -> u64 {
        self.samples.len() as u64
    }

    fn check_target(&self, u: usize, set: &[usize]) -> Result<()> {
        if self.samples.is_empty() {
            return Err(Error::InvalidParameter("no samples".into()));
        }
        if u >= self.samples.node_count() {
            return Err(Error::InvalidParameter(format!("node {u} out of range")));
        }
        if set.contains(&u) {
            return Err(Error::InvalidParameter(format!("node {u} is in the conditioning set")));
        }
        Ok(())
    }
}

impl InfluenceSource for SampleOracle<'_> {
    fn node_count(&self) -> usize {
        self.samples.node_count()
    }

    fn eval_cost(&self) -> u64 {
        self.count()
    }

    fn meter(&self) -> QueryMeter {
        self.meter
    }

    fn meter_mut(&mut self) -> &mut QueryMeter {
        &mut self.meter
    }

    /// Reads `M · (s + 1)` entries to form `M_S` and `M_{S∪{u}}`.
    fn extension_scores(&mut self, u: usize, set: &[usize], candidates: &[usize]) -> Result<Vec<InfluenceValue>> {
        self.check_target(u, set)?;
        let scorer = InfluenceScorer::new(self.samples, u, set)?;
        self.meter.charge_index_reads(self.count() * (set.len() as u64 + 1));
        Ok(candidates.iter().map(|&j| scorer.extended(j)).collect())
    }

    fn pruning_influence(&mut self, u: usize, set: &[usize]) -> Result<InfluenceValue> {
        self.check_target(u, set)?;
        let value = InfluenceScorer::new(self.samples, u, set)?.base();
        self.meter.charge_pruning_eval(self.count());
        Ok(value)
    }
}

impl CovarianceSource for SampleOracle<'_> {
    fn node_count(&self) -> usize {
        self.samples.node_count()
    }

    fn eval_cost(&self) -> u64 {
        self.count()
    }

    fn meter(&self) -> QueryMeter {
        self.meter
    }

    fn meter_mut(&mut self) -> &mut QueryMeter {
        &mut self.meter
    }

    /// Reads `H · s` entries to form the unique configurations of `S`.
    fn extension_scores(&mut self, u: usize, set: &[usize], candidates: &[usize]) -> Result<Vec<f64>> {
        self.check_target(u, set)?;
        let idx = self.build_index(set)?;
        let scorer = CovarianceScorer::new(self.samples, u, &idx)?;
        Ok(candidates.iter().map(|&v| scorer.score(v)).collect())
    }

    fn pruning_covariance(&mut self, u: usize, v: usize, set: &[usize]) -> Result<f64> {
        self.check_target(u, set)?;
        let idx = crate::estimators::build_index(self.samples, set)?;
        let value = CovarianceScorer::new(self.samples, u, &idx)?.score(v);
        self.meter.charge_pruning_eval(self.count());
        Ok(value)
    }
}

/// Scores over the candidate domain `[N]`; every evaluation costs `cost` raw queries
/// and one score evaluation.
pub struct ScoreOracle<F> {
    len: usize,
    cost: u64,
    score: F,
}

impl<F: Fn(usize) -> f64> ScoreOracle<F> {
    pub fn new(len: usize, cost: u64, score: F) -> Self {
        Self { len, cost, score }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn cost(&self) -> u64 {
        self.cost
    }

    pub fn evaluate(&self, j: usize, meter: &mut QueryMeter) -> f64 {
        meter.charge_score_evals(1, self.cost);
        (self.score)(j)
    }

    /// Uncharged lookup, used only to decide which items a simulated search marks.
    pub(crate) fn peek(&self, j: usize) -> f64 {
        (self.score)(j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimators::{avg_cond_cov_decomposed, build_index};

    fn samples() -> SampleSet {
        let rows: Vec<Vec<i8>> = (0..40u32)
            .map(|i| (0..5).map(|b| if (i * 7 + 3) >> b & 1 == 1 { 1 } else { -1 }).collect())
            .collect();
        SampleSet::from_spins(5, &rows).unwrap()
    }

    #[test]
    fn reads_are_counted_one_by_one() {
        let s = samples();
        let mut oracle = SampleOracle::new(&s);
        assert_eq!(oracle.read(3, 2), s.spin(3, 2));
        oracle.build_index(&[0, 1, 4]).unwrap();
        assert_eq!(oracle.meter().raw_queries(), 1 + 40 * 3);
        assert_eq!(oracle.meter().index_reads(), 1 + 40 * 3);
        assert_eq!(oracle.take_meter().raw_queries(), 121);
        assert_eq!(oracle.meter(), QueryMeter::new());
    }

    #[test]
    fn covariance_scores_match_estimator() {
        let s = samples();
        let mut oracle = SampleOracle::new(&s);
        let got = CovarianceSource::extension_scores(&mut oracle, 0, &[2], &[1, 3, 4]).unwrap();
        let idx = build_index(&s, &[2]).unwrap();
        for (&v, g) in [1, 3, 4].iter().zip(got) {
            assert_eq!(g, avg_cond_cov_decomposed(&s, 0, v, &idx).unwrap());
        }
        assert_eq!(oracle.meter().raw_queries(), 40);
        oracle.pruning_covariance(0, 1, &[2]).unwrap();
        assert_eq!(oracle.meter().raw_queries(), 80);
        assert_eq!(oracle.meter().pruning_evals(), 1);
    }

    #[test]
    fn influence_index_charge() {
        let s = samples();
        let mut oracle = SampleOracle::new(&s);
        InfluenceSource::extension_scores(&mut oracle, 0, &[1, 2], &[3, 4]).unwrap();
        assert_eq!(oracle.meter().index_reads(), 40 * 3);
        assert_eq!(oracle.meter().score_evals(), 0);
    }

    #[test]
    fn score_oracle_charges() {
        let values = [0.5, 0.1];
        let oracle = ScoreOracle::new(2, 9, |j| values[j]);
        let mut meter = QueryMeter::new();
        assert_eq!(oracle.evaluate(1, &mut meter), 0.1);
        assert_eq!((meter.score_evals(), meter.raw_queries()), (1, 9));
        assert_eq!(oracle.peek(0), 0.5);
        assert_eq!(meter.score_evals(), 1);
    }
}
