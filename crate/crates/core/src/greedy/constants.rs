//! Threshold, iteration and sample-size constants from the learning guarantees.
//! All logarithms are natural.

use serde::Serialize;

use crate::error::{Error, Result};

pub fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FerroTheoryConstants {
    pub eta: f64,
    pub k: u64,
    /// Samples sufficient for the classical learner, failure probability `delta`.
    pub sample_bound: f64,
    /// Same bound with `ln(8/δ)`, for the quantum learner.
    pub quantum_sample_bound: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LcTheoryConstants {
    pub tau: f64,
    /// `⌈8/τ²⌉`, saturating at `u64::MAX`.
    pub t_star: u64,
    pub delta_cond: f64,
    /// `log10` of the sample bound; the bound itself overflows `f64` for most inputs.
    pub sample_bound_log10: f64,
    pub sample_bound: f64,
    pub zeta: f64,
}

fn positive(name: &str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be positive and finite, got {value}")))
    }
}

/// `η = α²σ(−2β)(1 − tanh β)²`.
pub fn ferro_eta(alpha: f64, beta: f64) -> f64 {
    alpha * alpha * sigmoid(-2.0 * beta) * (1.0 - beta.tanh()).powi(2)
}

/// `k = ⌈d₂ ln(4/η)⌉`, at least 1.
pub fn ferro_k(d2: usize, eta: f64) -> u64 {
    ((d2 as f64 * (4.0 / eta).ln()).ceil() as u64).max(1)
}

/// `2^{2k+3} (d₂/η)² (ln n + k ln(en/k)) ln(c/δ)`.
fn ferro_bound(k: u64, d2: usize, eta: f64, n: usize, c: f64, delta: f64) -> f64 {
    let kf = k as f64;
    let nf = n as f64;
    (2.0 * kf + 3.0).exp2()
        * (d2 as f64 / eta).powi(2)
        * (nf.ln() + kf * (std::f64::consts::E * nf / kf).ln())
        * (c / delta).ln()
}

/// Constants for the influence-maximization learner. Meaningful for `n > k`.
pub fn ferro_constants(alpha: f64, beta: f64, d2: usize, delta: f64, n: usize) -> Result<FerroTheoryConstants> {
    positive("alpha", alpha)?;
    positive("delta", delta)?;
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::InvalidParameter(format!("beta must be non-negative, got {beta}")));
    }
    if d2 == 0 || n == 0 {
        return Err(Error::InvalidParameter("d2 and n must be at least 1".into()));
    }
    let eta = ferro_eta(alpha, beta);
    let k = ferro_k(d2, eta);
    Ok(FerroTheoryConstants {
        eta,
        k,
        sample_bound: ferro_bound(k, d2, eta, n, 4.0, delta),
        quantum_sample_bound: ferro_bound(k, d2, eta, n, 8.0, delta),
        delta,
    })
}

/// `τ = α² e^{−12β}`.
pub fn lc_tau(alpha: f64, beta: f64) -> f64 {
    alpha * alpha * (-12.0 * beta).exp()
}

/// `⌈8/τ²⌉`, saturating.
pub fn lc_t_star(tau: f64) -> u64 {
    let t = (8.0 / (tau * tau)).ceil();
    if t >= u64::MAX as f64 {
        u64::MAX
    } else {
        t as u64
    }
}

/// Constants for the covariance-maximization learner.
pub fn lc_constants(alpha: f64, beta: f64, zeta: f64, n: usize) -> Result<LcTheoryConstants> {
    positive("alpha", alpha)?;
    positive("zeta", zeta)?;
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::InvalidParameter(format!("beta must be non-negative, got {beta}")));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let tau = lc_tau(alpha, beta);
    let t_star = lc_t_star(tau);
    let delta_cond = 0.5 * (-2.0 * beta).exp();
    let t = t_star as f64;
    let sample_bound_log10 = ((1.0 / zeta).ln() + t * (n as f64).ln()).log10() + 2.0 * t * 2f64.log10()
        - 2.0 * tau.log10()
        - 2.0 * t * delta_cond.log10();
    Ok(LcTheoryConstants {
        tau,
        t_star,
        delta_cond,
        sample_bound_log10,
        sample_bound: 10f64.powf(sample_bound_log10),
        zeta,
    })
}
