//! Fixtures shared by the benchmarks.

use rand::Rng;
use rbm_sl_core::model::{generate_model, ModelKind, NonDegeneracyParams, RbmModel};
use rbm_sl_core::sampling::{gibbs_sample, GibbsConfig, SampleSet};
use rbm_sl_core::seeds::stream_rng;

/// A generated model with `n / 2` hidden nodes and Gibbs samples drawn from it.
pub fn model_and_samples(kind: ModelKind, n: usize, count: usize, seed: u64) -> (RbmModel, SampleSet) {
    let params = NonDegeneracyParams::new(0.4, 2.0).expect("valid parameters");
    let model = generate_model(kind, n, (n / 2).max(1), 3.min(n - 1), &params, seed).expect("model generates");
    let cfg = GibbsConfig {
        burn_in: 100,
        thinning: 2,
        seed,
    };
    let samples = gibbs_sample(&model, count, &cfg).expect("sampling succeeds");
    (model, samples)
}

/// `len` uniform scores in `[0, 1)`.
pub fn random_scores(len: usize, seed: u64) -> Vec<f64> {
    let mut rng = stream_rng(seed, 0);
    (0..len).map(|_| rng.random::<f64>()).collect()
}
