use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::greedy::{ferro_constants, lc_constants, LearnerConfig};
use crate::model::{ModelKind, NonDegeneracyParams};
use crate::qsearch::GroverParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub n: usize,
    pub m: usize,
    /// Upper bound on the two-hop degree.
    pub d2: usize,
    pub alpha: f64,
    pub beta: f64,
    /// Master seed for model generation; trial `t` uses stream `t`.
    pub seed: u64,
}

impl ModelSpec {
    pub fn params(&self) -> Result<NonDegeneracyParams> {
        NonDegeneracyParams::new(self.alpha, self.beta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplerMethod {
    Exact,
    Gibbs,
}

impl SamplerMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Exact => "exact",
            Self::Gibbs => "gibbs",
        }
    }
}

impl FromStr for SamplerMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Self::Exact),
            "gibbs" => Ok(Self::Gibbs),
            other => Err(Error::InvalidConfig(format!("unknown sampler '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplerSpec {
    pub method: SamplerMethod,
    /// Sample count `M` (or `H`).
    pub samples: usize,
    #[serde(default = "default_burn_in")]
    pub burn_in: usize,
    #[serde(default = "default_thinning")]
    pub thinning: usize,
}

fn default_burn_in() -> usize {
    1000
}

fn default_thinning() -> usize {
    10
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Ferro,
    Lc,
    FerroQ,
    LcQ,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Ferro => "ferro",
            Self::Lc => "lc",
            Self::FerroQ => "ferro-q",
            Self::LcQ => "lc-q",
        }
    }

    pub fn is_influence(self) -> bool {
        matches!(self, Self::Ferro | Self::FerroQ)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ferro" => Ok(Self::Ferro),
            "lc" => Ok(Self::Lc),
            "ferro-q" => Ok(Self::FerroQ),
            "lc-q" => Ok(Self::LcQ),
            other => Err(Error::InvalidConfig(format!("unknown algorithm '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LearnerSpec {
    pub algorithm: Algorithm,
    #[serde(default)]
    pub eta: Option<f64>,
    #[serde(default)]
    pub k: Option<u64>,
    #[serde(default)]
    pub tau: Option<f64>,
    #[serde(default)]
    pub t_max: Option<u64>,
    #[serde(default = "default_failure")]
    pub delta: f64,
    #[serde(default = "default_failure")]
    pub zeta: f64,
    /// Fill missing thresholds and iteration counts from the theory formulas.
    #[serde(default)]
    pub theory_defaults: bool,
    #[serde(default)]
    pub grover: GroverParams,
}

fn default_failure() -> f64 {
    0.1
}

impl LearnerSpec {
    pub fn new(algorithm: Algorithm) -> Self {
        Self {
            algorithm,
            eta: None,
            k: None,
            tau: None,
            t_max: None,
            delta: default_failure(),
            zeta: default_failure(),
            theory_defaults: false,
            grover: GroverParams::default(),
        }
    }

    /// Concrete learner parameters for models drawn from `model`. Explicit values win
    /// over theory defaults.
    pub fn resolve(&self, model: &ModelSpec, seed: u64) -> Result<LearnerConfig> {
        let missing = |name: &str| {
            Error::InvalidConfig(format!(
                "{} needs --{name} (or --theory-defaults)",
                self.algorithm
            ))
        };
        if self.algorithm.is_influence() {
            let theory = if self.theory_defaults {
                Some(ferro_constants(model.alpha, model.beta, model.d2.max(1), self.delta, model.n)?)
            } else {
                None
            };
            let eta = self.eta.or(theory.map(|c| c.eta)).ok_or_else(|| missing("eta"))?;
            let k = self.k.or(theory.map(|c| c.k)).ok_or_else(|| missing("k"))?;
            Ok(match self.algorithm {
                Algorithm::Ferro => LearnerConfig::Ferro { eta, k },
                _ => LearnerConfig::FerroQ {
                    eta,
                    k,
                    delta: self.delta,
                    seed,
                    grover: self.grover,
                },
            })
        } else {
            let theory = if self.theory_defaults {
                Some(lc_constants(model.alpha, model.beta, self.zeta, model.n)?)
            } else {
                None
            };
            let tau = self.tau.or(theory.map(|c| c.tau)).ok_or_else(|| missing("tau"))?;
            let t_max = self.t_max.or(theory.map(|c| c.t_star)).ok_or_else(|| missing("t-max"))?;
            Ok(match self.algorithm {
                Algorithm::Lc => LearnerConfig::Lc { tau, t_max },
                _ => LearnerConfig::LcQ {
                    tau,
                    t_max,
                    zeta: self.zeta,
                    seed,
                    grover: self.grover,
                },
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: ModelSpec,
    pub sampler: SamplerSpec,
    pub learner: LearnerSpec,
    pub trials: usize,
    /// Master seed for sampling and learning.
    pub seed: u64,
    /// Directory receiving `trials.jsonl` and `summary.csv`.
    #[serde(default)]
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let m = &self.model;
        if m.n == 0 {
            return Err(Error::InvalidConfig("model.n must be at least 1".into()));
        }
        m.params().map_err(|e| e.context("model"))?;
        if self.sampler.samples == 0 {
            return Err(Error::InvalidConfig("sampler.samples must be at least 1".into()));
        }
        if self.sampler.method == SamplerMethod::Gibbs && self.sampler.thinning == 0 {
            return Err(Error::InvalidConfig("sampler.thinning must be at least 1".into()));
        }
        let l = &self.learner;
        for (name, p) in [("delta", l.delta), ("zeta", l.zeta)] {
            if !(p > 0.0 && p < 1.0) {
                return Err(Error::InvalidConfig(format!("learner.{name} must lie in (0, 1)")));
            }
        }
        l.grover.validate()?;
        l.resolve(m, 0)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())?;
        serde_json::from_str(&text).map_err(|e| Error::InvalidConfig(e.to_string()))
    }
}
