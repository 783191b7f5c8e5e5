use super::{CovarianceSource, InfluenceSource};
use crate::error::Result;
use crate::estimators::InfluenceValue;
use crate::model::ExactDistribution;
use crate::qsearch::QueryMeter;

/// Scores taken from the enumerated visible marginal instead of samples. Each score
/// costs one unit; nothing is charged for index construction.
#[derive(Debug, Clone)]
pub struct ExactSource<'a> {
    dist: &'a ExactDistribution,
    meter: QueryMeter,
}

impl<'a> ExactSource<'a> {
    pub fn new(dist: &'a ExactDistribution) -> Self {
        Self {
            dist,
            meter: QueryMeter::new(),
        }
    }
}

impl InfluenceSource for ExactSource<'_> {
    fn node_count(&self) -> usize {
        self.dist.visible_count()
    }

    fn eval_cost(&self) -> u64 {
        1
    }

    fn meter(&self) -> QueryMeter {
        self.meter
    }

    fn meter_mut(&mut self) -> &mut QueryMeter {
        &mut self.meter
    }

    fn extension_scores(&mut self, u: usize, set: &[usize], candidates: &[usize]) -> Result<Vec<InfluenceValue>> {
        candidates
            .iter()
            .map(|&j| {
                let mut extended = set.to_vec();
                extended.push(j);
                self.dist.influence(u, &extended).map(InfluenceValue::exact)
            })
            .collect()
    }

    fn pruning_influence(&mut self, u: usize, set: &[usize]) -> Result<InfluenceValue> {
        self.meter.charge_pruning_eval(1);
        self.dist.influence(u, set).map(InfluenceValue::exact)
    }
}

impl CovarianceSource for ExactSource<'_> {
    fn node_count(&self) -> usize {
        self.dist.visible_count()
    }

    fn eval_cost(&self) -> u64 {
        1
    }

    fn meter(&self) -> QueryMeter {
        self.meter
    }

    fn meter_mut(&mut self) -> &mut QueryMeter {
        &mut self.meter
    }

    fn extension_scores(&mut self, u: usize, set: &[usize], candidates: &[usize]) -> Result<Vec<f64>> {
        candidates.iter().map(|&v| self.dist.avg_cond_cov(u, v, set)).collect()
    }

    fn pruning_covariance(&mut self, u: usize, v: usize, set: &[usize]) -> Result<f64> {
        self.meter.charge_pruning_eval(1);
        self.dist.avg_cond_cov(u, v, set)
    }
}
