//! Exact visible marginal by enumeration.
//!
//! Summing out the hidden layer gives
//! `P(x) ∝ exp(fᵀx) · Π_j 2cosh(g_j + (Jᵀx)_j)`, so only the `2ⁿ` visible
//! configurations need to be enumerated. Configurations are addressed by a code
//! whose bit `i` is set iff `x_i = +1`.

use super::RbmModel;
use crate::error::{Error, Result};

/// Maximum `n + m` accepted by the exact routines.
pub const ENUMERATION_LIMIT: usize = 24;

/// Code of a ±1 configuration: bit `i` set iff `x[i] = +1`.
pub fn config_code(x: &[i8]) -> usize {
    x.iter()
        .enumerate()
        .fold(0usize, |acc, (i, &v)| if v > 0 { acc | (1 << i) } else { acc })
}

pub fn decode_config(code: usize, n: usize) -> Vec<i8> {
    (0..n).map(|i| if code >> i & 1 == 1 { 1 } else { -1 }).collect()
}

#[inline]
fn spin(code: usize, i: usize) -> f64 {
    if code >> i & 1 == 1 {
        1.0
    } else {
        -1.0
    }
}

/// `ln(2 cosh a)` without overflow.
#[inline]
fn ln_two_cosh(a: f64) -> f64 {
    let a = a.abs();
    a + (-2.0 * a).exp().ln_1p()
}

fn check_size(model: &RbmModel) -> Result<()> {
    let (n, m) = (model.visible_count(), model.hidden_count());
    if n + m > ENUMERATION_LIMIT {
        return Err(Error::SizeGuard {
            visible: n,
            hidden: m,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

fn check_node(n: usize, node: usize) -> Result<()> {
    if node >= n {
        return Err(Error::InvalidParameter(format!("node {node} out of range for {n} visible nodes")));
    }
    Ok(())
}

fn set_mask(n: usize, set: &[usize]) -> Result<usize> {
    set.iter().try_fold(0usize, |mask, &s| {
        check_node(n, s)?;
        Ok(mask | 1 << s)
    })
}

/// The full visible distribution of a small model.
#[derive(Debug, Clone)]
pub struct ExactDistribution {
    n: usize,
    probs: Vec<f64>,
}

impl ExactDistribution {
    pub fn new(model: &RbmModel) -> Result<Self> {
        check_size(model)?;
        let n = model.visible_count();
        let m = model.hidden_count();
        let f = model.visible_field();
        let g = model.hidden_field();

        let mut log_weights = Vec::with_capacity(1 << n);
        let mut hidden_input = vec![0.0; m];
        for code in 0..1usize << n {
            hidden_input.copy_from_slice(g);
            let mut lw = 0.0;
            for i in 0..n {
                let xi = spin(code, i);
                lw += f[i] * xi;
                for (acc, &w) in hidden_input.iter_mut().zip(model.weight_row(i)) {
                    *acc += w * xi;
                }
            }
            lw += hidden_input.iter().map(|&a| ln_two_cosh(a)).sum::<f64>();
            log_weights.push(lw);
        }

        let shift = log_weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut probs: Vec<f64> = log_weights.iter().map(|lw| (lw - shift).exp()).collect();
        let z: f64 = probs.iter().sum();
        probs.iter_mut().for_each(|p| *p /= z);
        Ok(Self { n, probs })
    }

    pub fn visible_count(&self) -> usize {
        self.n
    }

    /// Probabilities indexed by [`config_code`].
    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    pub fn probability(&self, x: &[i8]) -> Result<f64> {
        if x.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "configuration has {} entries, expected {}",
                x.len(),
                self.n
            )));
        }
        Ok(self.probs[config_code(x)])
    }

    /// `E[X_u | X_S = 1ˢ]`.
    pub fn influence(&self, u: usize, set: &[usize]) -> Result<f64> {
        check_node(self.n, u)?;
        let mask = set_mask(self.n, set)?;
        if mask >> u & 1 == 1 {
            return Err(Error::InvalidParameter(format!("node {u} is in the conditioning set")));
        }
        let (mut mass, mut acc) = (0.0, 0.0);
        for (code, &p) in self.probs.iter().enumerate() {
            if code & mask == mask {
                mass += p;
                acc += p * spin(code, u);
            }
        }
        if mass <= 0.0 {
            return Err(Error::ZeroProbability);
        }
        Ok(acc / mass)
    }

    /// `E_{x_S}[ Cov(X_u, X_v | x_S) ]`.
    pub fn avg_cond_cov(&self, u: usize, v: usize, set: &[usize]) -> Result<f64> {
        check_node(self.n, u)?;
        check_node(self.n, v)?;
        if u == v {
            return Err(Error::InvalidParameter("u and v must differ".into()));
        }
        let mask = set_mask(self.n, set)?;
        if mask >> u & 1 == 1 || mask >> v & 1 == 1 {
            return Err(Error::InvalidParameter("u and v must lie outside the conditioning set".into()));
        }
        // Cells of x_S, addressed by the raw masked code.
        let mut cells: std::collections::HashMap<usize, [f64; 4]> = std::collections::HashMap::new();
        for (code, &p) in self.probs.iter().enumerate() {
            let (xu, xv) = (spin(code, u), spin(code, v));
            let cell = cells.entry(code & mask).or_insert([0.0; 4]);
            cell[0] += p;
            cell[1] += p * xu;
            cell[2] += p * xv;
            cell[3] += p * xu * xv;
        }
        Ok(cells
            .values()
            .filter(|c| c[0] > 0.0)
            .map(|&[p, pu, pv, puv]| p * (puv / p - (pu / p) * (pv / p)))
            .sum())
    }
}

/// `P(X = x)` for a single configuration.
pub fn visible_marginal(model: &RbmModel, x: &[i8]) -> Result<f64> {
    ExactDistribution::new(model)?.probability(x)
}

pub fn exact_influence(model: &RbmModel, u: usize, set: &[usize]) -> Result<f64> {
    ExactDistribution::new(model)?.influence(u, set)
}

pub fn exact_avg_cond_cov(model: &RbmModel, u: usize, v: usize, set: &[usize]) -> Result<f64> {
    ExactDistribution::new(model)?.avg_cond_cov(u, v, set)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Unnormalized joint weights over (x, y), summed over y by brute force.
    fn joint_marginal_oracle(model: &RbmModel) -> Vec<f64> {
        let (n, m) = (model.visible_count(), model.hidden_count());
        let mut weights = vec![0.0; 1 << n];
        for (xc, slot) in weights.iter_mut().enumerate() {
            for yc in 0..1usize << m {
                let x = decode_config(xc, n);
                let y = decode_config(yc, m);
                let mut energy = 0.0;
                for i in 0..n {
                    energy += model.visible_field()[i] * x[i] as f64;
                    for j in 0..m {
                        energy += x[i] as f64 * model.weight(i, j) * y[j] as f64;
                    }
                }
                for j in 0..m {
                    energy += model.hidden_field()[j] * y[j] as f64;
                }
                *slot += energy.exp();
            }
        }
        let z: f64 = weights.iter().sum();
        weights.into_iter().map(|w| w / z).collect()
    }

    fn pair_model() -> RbmModel {
        RbmModel::from_rows(&[vec![1.0], vec![1.0]], vec![0.0, 0.0], vec![0.0]).unwrap()
    }

    #[test]
    fn single_free_spin_is_fair() {
        let model = RbmModel::independent(1, 0).unwrap();
        assert!((visible_marginal(&model, &[1]).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn pair_model_matches_closed_form() {
        let dist = ExactDistribution::new(&pair_model()).unwrap();
        let c2 = 2f64.cosh();
        let aligned = c2 / (2.0 * c2 + 2.0);
        let opposed = 1.0 / (2.0 * c2 + 2.0);
        assert!((dist.probability(&[1, 1]).unwrap() - aligned).abs() < 1e-15);
        assert!((dist.probability(&[-1, -1]).unwrap() - aligned).abs() < 1e-15);
        assert!((dist.probability(&[1, -1]).unwrap() - opposed).abs() < 1e-15);
        assert!((dist.probability(&[-1, 1]).unwrap() - opposed).abs() < 1e-15);
    }

    #[test]
    fn closed_form_matches_joint_summation() {
        let model = RbmModel::from_rows(
            &[vec![0.7, -0.2, 0.0], vec![0.0, 0.5, 0.3], vec![-0.4, 0.0, 0.9]],
            vec![0.1, -0.3, 0.2],
            vec![0.25, 0.0, -0.6],
        )
        .unwrap();
        let dist = ExactDistribution::new(&model).unwrap();
        for (a, b) in dist.probabilities().iter().zip(joint_marginal_oracle(&model)) {
            assert!((a - b).abs() < 1e-14, "{a} vs {b}");
        }
    }

    #[test]
    fn strong_fields_do_not_overflow() {
        let model = RbmModel::from_rows(&[vec![10.0, 10.0], vec![10.0, 10.0]], vec![8.0, 8.0], vec![9.0, 9.0]).unwrap();
        let dist = ExactDistribution::new(&model).unwrap();
        let total: f64 = dist.probabilities().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!(dist.probabilities().iter().all(|p| p.is_finite()));
    }

    #[test]
    fn pair_influence() {
        let c2 = 2f64.cosh();
        let expected = (2.0 * c2 - 2.0) / (2.0 * c2 + 2.0);
        let got = exact_influence(&pair_model(), 0, &[1]).unwrap();
        assert!((got - expected).abs() < 1e-14);
        assert!((got - 1f64.tanh().powi(2)).abs() < 1e-14);
    }

    #[test]
    fn decoupled_unbiased_node_has_zero_influence() {
        let model = RbmModel::from_rows(
            &[vec![0.0, 0.0], vec![0.8, 0.3], vec![0.6, 0.0]],
            vec![0.0, 0.4, 0.2],
            vec![0.1, 0.3],
        )
        .unwrap();
        let dist = ExactDistribution::new(&model).unwrap();
        for set in [vec![], vec![1], vec![2], vec![1, 2]] {
            assert!(dist.influence(0, &set).unwrap().abs() < 1e-14);
        }
    }

    #[test]
    fn empty_conditioning_is_the_mean() {
        let model = RbmModel::from_rows(&[vec![0.5], vec![0.3]], vec![0.2, 0.0], vec![0.1]).unwrap();
        let dist = ExactDistribution::new(&model).unwrap();
        let mean: f64 = dist
            .probabilities()
            .iter()
            .enumerate()
            .map(|(c, p)| p * spin(c, 0))
            .sum();
        assert!((dist.influence(0, &[]).unwrap() - mean).abs() < 1e-15);
    }

    #[test]
    fn shared_hidden_node_gives_positive_covariance() {
        let cov = exact_avg_cond_cov(&pair_model(), 0, 1, &[]).unwrap();
        // Oracle: E[X0 X1] - E[X0] E[X1] from the joint summation; the means vanish by symmetry.
        let p = joint_marginal_oracle(&pair_model());
        let e01: f64 = p
            .iter()
            .enumerate()
            .map(|(c, q)| q * spin(c, 0) * spin(c, 1))
            .sum();
        assert!(cov > 0.0);
        assert!((cov - e01).abs() < 1e-14);
    }

    #[test]
    fn separated_nodes_have_zero_conditional_covariance() {
        // 0 - h0 - 1 - h1 - 2: node 2 is not a two-hop neighbor of 0 and {1} separates them.
        let model = RbmModel::from_rows(&[vec![0.8, 0.0], vec![0.6, 0.7], vec![0.0, 0.9]], vec![0.1, -0.2, 0.3], vec![0.2, -0.1]).unwrap();
        let dist = ExactDistribution::new(&model).unwrap();
        assert!(dist.avg_cond_cov(0, 2, &[1]).unwrap().abs() < 1e-14);
        assert!(dist.avg_cond_cov(0, 2, &[]).unwrap().abs() > 1e-4);
    }

    #[test]
    fn disjoint_components_are_uncorrelated() {
        let model = RbmModel::from_rows(&[vec![0.8, 0.0], vec![0.0, 0.7], vec![0.5, 0.0]], vec![0.1, 0.0, 0.2], vec![0.0, 0.3]).unwrap();
        let dist = ExactDistribution::new(&model).unwrap();
        assert!(dist.avg_cond_cov(0, 1, &[2]).unwrap().abs() < 1e-14);
    }

    #[test]
    fn size_guard() {
        let model = RbmModel::independent(13, 12).unwrap();
        assert!(matches!(ExactDistribution::new(&model), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn rejects_bad_nodes() {
        let dist = ExactDistribution::new(&pair_model()).unwrap();
        assert!(dist.influence(0, &[0]).is_err());
        assert!(dist.influence(2, &[]).is_err());
        assert!(dist.avg_cond_cov(0, 0, &[]).is_err());
        assert!(dist.avg_cond_cov(0, 1, &[1]).is_err());
    }
}
