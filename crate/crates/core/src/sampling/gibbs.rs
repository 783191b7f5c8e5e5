use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{SampleSet, SampleSetBuilder};
use crate::error::{Error, Result};
use crate::model::RbmModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GibbsConfig {
    /// Sweeps discarded before the first retained sample.
    pub burn_in: usize,
    /// Sweeps between retained samples; at least 1.
    pub thinning: usize,
    pub seed: u64,
}

impl Default for GibbsConfig {
    fn default() -> Self {
        Self {
            burn_in: 1000,
            thinning: 10,
            seed: 0,
        }
    }
}

#[inline]
fn sigmoid(a: f64) -> f64 {
    1.0 / (1.0 + (-a).exp())
}

/// Sparse view of `J`, one adjacency list per side.
struct Couplings {
    visible: Vec<Vec<(usize, f64)>>,
    hidden: Vec<Vec<(usize, f64)>>,
}

impl Couplings {
    fn new(model: &RbmModel) -> Self {
        let (n, m) = (model.visible_count(), model.hidden_count());
        let mut visible = vec![Vec::new(); n];
        let mut hidden = vec![Vec::new(); m];
        for i in 0..n {
            for j in 0..m {
                let w = model.weight(i, j);
                if w != 0.0 {
                    visible[i].push((j, w));
                    hidden[j].push((i, w));
                }
            }
        }
        Self { visible, hidden }
    }
}

/// Block Gibbs sampling: each sweep redraws every hidden spin given the visible layer,
/// then every visible spin given the hidden layer, using
/// `P(y_j = +1 | x) = σ(2(g_j + Σ_i J_ij x_i))` and
/// `P(x_i = +1 | y) = σ(2(f_i + Σ_j J_ij y_j))`.
/// After `burn_in` sweeps one sample is kept every `thinning` sweeps.
pub fn gibbs_sample(model: &RbmModel, count: usize, cfg: &GibbsConfig) -> Result<SampleSet> {
    if cfg.thinning == 0 {
        return Err(Error::InvalidParameter("thinning must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let couplings = Couplings::new(model);
    let f = model.visible_field();
    let g = model.hidden_field();
    let mut x: Vec<f64> = (0..model.visible_count())
        .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
        .collect();
    let mut y = vec![0.0; model.hidden_count()];

    let sweep = |x: &mut [f64], y: &mut [f64], rng: &mut ChaCha8Rng| {
        for (j, yj) in y.iter_mut().enumerate() {
            let a = g[j] + couplings.hidden[j].iter().map(|&(i, w)| w * x[i]).sum::<f64>();
            *yj = if rng.random::<f64>() < sigmoid(2.0 * a) { 1.0 } else { -1.0 };
        }
        for (i, xi) in x.iter_mut().enumerate() {
            let a = f[i] + couplings.visible[i].iter().map(|&(j, w)| w * y[j]).sum::<f64>();
            *xi = if rng.random::<f64>() < sigmoid(2.0 * a) { 1.0 } else { -1.0 };
        }
    };

    for _ in 0..cfg.burn_in {
        sweep(&mut x, &mut y, &mut rng);
    }
    let mut builder = SampleSetBuilder::with_capacity(model.visible_count(), count)?;
    for _ in 0..count {
        for _ in 0..cfg.thinning {
            sweep(&mut x, &mut y, &mut rng);
        }
        builder.push_with(|i| x[i] > 0.0);
    }
    Ok(builder.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{config_code, decode_config, ExactDistribution};
    use crate::sampling::exact_sample;

    fn joint_weight(model: &RbmModel, x: &[i8], y: &[i8]) -> f64 {
        let mut e = 0.0;
        for i in 0..model.visible_count() {
            e += model.visible_field()[i] * x[i] as f64;
            for j in 0..model.hidden_count() {
                e += x[i] as f64 * model.weight(i, j) * y[j] as f64;
            }
        }
        for j in 0..model.hidden_count() {
            e += model.hidden_field()[j] * y[j] as f64;
        }
        e.exp()
    }

    fn test_model() -> RbmModel {
        RbmModel::from_rows(&[vec![0.6, 0.0], vec![0.4, -0.5], vec![0.0, 0.7]], vec![0.3, -0.2, 0.1], vec![-0.1, 0.2]).unwrap()
    }

    #[test]
    fn hidden_conditional_matches_enumeration() {
        let model = test_model();
        for xc in 0..8 {
            let x = decode_config(xc, 3);
            for j in 0..2 {
                let (mut up, mut total) = (0.0, 0.0);
                for yc in 0..4 {
                    let y = decode_config(yc, 2);
                    let w = joint_weight(&model, &x, &y);
                    total += w;
                    if y[j] == 1 {
                        up += w;
                    }
                }
                let a = model.hidden_field()[j] + (0..3).map(|i| model.weight(i, j) * x[i] as f64).sum::<f64>();
                assert!((sigmoid(2.0 * a) - up / total).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn visible_conditional_matches_enumeration() {
        let model = test_model();
        for yc in 0..4 {
            let y = decode_config(yc, 2);
            for i in 0..3 {
                let (mut up, mut total) = (0.0, 0.0);
                for xc in 0..8 {
                    let x = decode_config(xc, 3);
                    let w = joint_weight(&model, &x, &y);
                    total += w;
                    if x[i] == 1 {
                        up += w;
                    }
                }
                let a = model.visible_field()[i] + (0..2).map(|j| model.weight(i, j) * y[j] as f64).sum::<f64>();
                assert!((sigmoid(2.0 * a) - up / total).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn free_spins_are_fair() {
        let model = RbmModel::independent(4, 3).unwrap();
        let cfg = GibbsConfig { burn_in: 10, thinning: 1, seed: 4 };
        let samples = gibbs_sample(&model, 100_000, &cfg).unwrap();
        for node in 0..4 {
            let bias: f64 = (0..samples.len()).map(|i| samples.spin(i, node) as f64).sum::<f64>() / 1e5;
            assert!(bias.abs() <= 0.02, "node {node} bias {bias}");
        }
    }

    #[test]
    fn agrees_with_exact_sampler() {
        let model = test_model();
        let cfg = GibbsConfig { burn_in: 1000, thinning: 10, seed: 21 };
        let gibbs = gibbs_sample(&model, 100_000, &cfg).unwrap();
        let exact = exact_sample(&model, 100_000, 22).unwrap();
        let freq = |s: &SampleSet| {
            let mut c = vec![0.0; 8];
            for i in 0..s.len() {
                c[config_code(&s.spins(i))] += 1.0 / s.len() as f64;
            }
            c
        };
        for (a, b) in freq(&gibbs).iter().zip(freq(&exact)) {
            assert!((a - b).abs() < 0.02, "{a} vs {b}");
        }
        let dist = ExactDistribution::new(&model).unwrap();
        assert_eq!(dist.probabilities().len(), 8);
    }

    #[test]
    fn deterministic_given_config() {
        let model = test_model();
        let cfg = GibbsConfig { burn_in: 5, thinning: 2, seed: 9 };
        assert_eq!(gibbs_sample(&model, 300, &cfg).unwrap(), gibbs_sample(&model, 300, &cfg).unwrap());
    }

    #[test]
    fn zero_thinning_rejected() {
        let cfg = GibbsConfig { burn_in: 0, thinning: 0, seed: 0 };
        assert!(gibbs_sample(&test_model(), 1, &cfg).is_err());
    }
}
