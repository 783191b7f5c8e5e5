//! A quick battery of property checks over the whole pipeline, run by `rbm-sl verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::estimators::{avg_cond_cov_decomposed, avg_cond_cov_direct, build_index, InfluenceScorer};
use crate::greedy::{ferro_eta, lc_tau};
use crate::model::{generate_model, two_hop_graph, ExactDistribution, ModelKind, NonDegeneracyParams, RbmModel};
use crate::qsearch::{dh_max_find, simulate_stage, stage_success_probability, GroverParams, QueryMeter, ScoreOracle};
use crate::sampling::{exact_sample, SampleSet};
use crate::seeds::derive_seed;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check { name, passed, detail }
}

fn random_samples(rng: &mut ChaCha8Rng, n: usize, count: usize) -> SampleSet {
    let rows: Vec<Vec<i8>> = (0..count)
        .map(|_| (0..n).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect())
        .collect();
    SampleSet::from_spins(n, &rows).expect("valid spins")
}

fn covariance_identity(seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let n = rng.random_range(3..9);
        let count = rng.random_range(1..500);
        let samples = random_samples(&mut rng, n, count);
        let u = rng.random_range(0..n);
        let v = (u + rng.random_range(1..n)) % n;
        let set: Vec<usize> = (0..n).filter(|&i| i != u && i != v && rng.random::<bool>()).collect();
        let idx = build_index(&samples, &set)?;
        let gap = avg_cond_cov_direct(&samples, u, v, &idx)? - avg_cond_cov_decomposed(&samples, u, v, &idx)?;
        worst = worst.max(gap.abs());
    }
    Ok(check("covariance decomposition", worst <= 1e-12, format!("max |direct - decomposed| = {worst:e}")))
}

fn influence_identity(seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let n = rng.random_range(2..8);
        let count = rng.random_range(1..300);
        let samples = random_samples(&mut rng, n, count);
        let u = rng.random_range(0..n);
        let set: Vec<usize> = (0..n).filter(|&i| i != u && rng.random::<bool>()).collect();
        let rows: Vec<usize> = (0..samples.len()).filter(|&i| set.iter().all(|&s| samples.is_up(i, s))).collect();
        let value = InfluenceScorer::new(&samples, u, &set)?.base().value;
        if let Some(v) = value {
            let mean = rows.iter().map(|&i| f64::from(samples.spin(i, u))).sum::<f64>() / rows.len() as f64;
            worst = worst.max((v - mean).abs());
        }
    }
    Ok(check("influence identity", worst <= 1e-12, format!("max deviation = {worst:e}")))
}

fn subsets(items: &[usize], max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &x in items {
        let grown: Vec<Vec<usize>> = out.iter().filter(|s| s.len() < max).map(|s| [s.as_slice(), &[x]].concat()).collect();
        out.extend(grown);
    }
    out
}

fn monotone_submodular(seed: u64) -> Result<Check> {
    let params = NonDegeneracyParams::new(0.3, 2.0)?;
    let mut violations = 0usize;
    let mut checked = 0usize;
    for t in 0..10 {
        let model = generate_model(ModelKind::Ferromagnetic, 5, 3, 4, &params, derive_seed(seed, t))?;
        let dist = ExactDistribution::new(&model)?;
        for u in 0..5 {
            let others: Vec<usize> = (0..5).filter(|&x| x != u).collect();
            for tset in subsets(&others, 2) {
                for sset in subsets(&tset, 2) {
                    for j in others.iter().copied().filter(|j| !tset.contains(j)) {
                        let i_s = dist.influence(u, &sset)?;
                        let i_t = dist.influence(u, &tset)?;
                        let i_sj = dist.influence(u, &[sset.as_slice(), &[j]].concat())?;
                        let i_tj = dist.influence(u, &[tset.as_slice(), &[j]].concat())?;
                        checked += 1;
                        if i_sj < i_s - 1e-10 || i_sj - i_s < i_tj - i_t - 1e-10 {
                            violations += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(check(
        "influence monotone and submodular",
        violations == 0,
        format!("{violations} violations in {checked} checks"),
    ))
}

fn separation(seed: u64) -> Result<Check> {
    let params = NonDegeneracyParams::new(0.3, 2.0)?;
    let mut worst_zero = 0.0f64;
    let mut min_signal = f64::INFINITY;
    for t in 0..5 {
        let model = generate_model(ModelKind::LocallyConsistent, 6, 3, 3, &params, derive_seed(seed, t))?;
        let graph = two_hop_graph(&model);
        let dist = ExactDistribution::new(&model)?;
        for u in 0..6 {
            let nbrs = graph.neighbors(u);
            for v in (0..6).filter(|&v| v != u) {
                if nbrs.contains(&v) {
                    min_signal = min_signal.min(dist.avg_cond_cov(u, v, &[])?);
                } else {
                    worst_zero = worst_zero.max(dist.avg_cond_cov(u, v, &nbrs)?.abs());
                }
            }
        }
    }
    Ok(check(
        "covariance separation",
        worst_zero <= 1e-10 && min_signal > 1e-8,
        format!("max |non-neighbor| = {worst_zero:e}, min neighbor = {min_signal:e}"),
    ))
}

fn grover_statistics(seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let reps = 20_000;
    let mut worst_z = 0.0f64;
    for j in 0..6 {
        let p = stage_success_probability(64, 4, j);
        let hits = (0..reps).filter(|_| simulate_stage(64, 4, j, &mut rng)).count();
        let se = (p * (1.0 - p) / reps as f64).sqrt().max(1e-12);
        worst_z = worst_z.max((hits as f64 / reps as f64 - p).abs() / se);
    }
    let params = GroverParams::default();
    let mut wins = 0;
    for _ in 0..200 {
        let scores: Vec<f64> = (0..256).map(|_| rng.random::<f64>()).collect();
        let best = (0..256).fold(0, |b, i| if scores[i] > scores[b] { i } else { b });
        let oracle = ScoreOracle::new(256, 1, |i| scores[i]);
        let mut meter = QueryMeter::new();
        wins += usize::from(dh_max_find(&oracle, 0.1, &params, &mut rng, &mut meter)?.index == best);
    }
    Ok(check(
        "grover statistics",
        worst_z <= 4.0 && wins >= 180,
        format!("max stage z = {worst_z:.2}, max-finding wins {wins}/200"),
    ))
}

fn constants() -> Check {
    let eta = ferro_eta(0.2, 1.0);
    let tau = lc_tau(0.2, 1.0);
    let ok = ((eta - 2.710e-4) / 2.710e-4).abs() < 1e-3 && ((tau - 2.458e-7) / 2.458e-7).abs() < 1e-3;
    check("theory constants", ok, format!("eta = {eta:e}, tau = {tau:e}"))
}

fn round_trips(seed: u64) -> Result<Check> {
    let params = NonDegeneracyParams::new(0.3, 2.0)?;
    let model = generate_model(ModelKind::General, 6, 4, 3, &params, seed)?;
    let model_ok = RbmModel::from_json(&model.to_json())? == model;
    let samples = exact_sample(&model, 333, seed)?;
    let samples_ok = SampleSet::from_bytes(&samples.to_bytes())? == samples;
    Ok(check(
        "file round trips",
        model_ok && samples_ok,
        format!("model {model_ok}, samples {samples_ok}"),
    ))
}

/// Runs every check. Errors inside a check become failed checks.
pub fn verify_battery(seed: u64) -> Vec<Check> {
    let failed = |name: &'static str, e: crate::Error| check(name, false, e.to_string());
    vec![
        covariance_identity(seed).unwrap_or_else(|e| failed("covariance decomposition", e)),
        influence_identity(seed).unwrap_or_else(|e| failed("influence identity", e)),
        monotone_submodular(seed).unwrap_or_else(|e| failed("influence monotone and submodular", e)),
        separation(seed).unwrap_or_else(|e| failed("covariance separation", e)),
        grover_statistics(seed).unwrap_or_else(|e| failed("grover statistics", e)),
        constants(),
        round_trips(seed).unwrap_or_else(|e| failed("file round trips", e)),
    ]
}
