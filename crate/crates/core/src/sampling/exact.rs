use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{SampleSet, SampleSetBuilder};
use crate::error::Result;
use crate::model::{ExactDistribution, RbmModel};

/// `count` i.i.d. draws from the exact visible marginal, by inverse CDF over the
/// enumerated distribution.
pub fn exact_sample(model: &RbmModel, count: usize, seed: u64) -> Result<SampleSet> {
    let dist = ExactDistribution::new(model)?;
    Ok(sample_from_distribution(&dist, count, &mut ChaCha8Rng::seed_from_u64(seed)))
}

pub(crate) fn sample_from_distribution(dist: &ExactDistribution, count: usize, rng: &mut impl Rng) -> SampleSet {
    let n = dist.visible_count();
    let mut cdf = Vec::with_capacity(dist.probabilities().len());
    let mut acc = 0.0;
    for &p in dist.probabilities() {
        acc += p;
        cdf.push(acc);
    }
    let last = cdf.len() - 1;
    let mut builder = SampleSetBuilder::with_capacity(n, count).expect("n >= 1 for any model");
    for _ in 0..count {
        let target = rng.random::<f64>() * acc;
        let code = cdf.partition_point(|&c| c <= target).min(last);
        builder.push_with(|i| code >> i & 1 == 1);
    }
    builder.finish()
}
