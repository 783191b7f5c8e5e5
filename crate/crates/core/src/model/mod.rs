//! RBM instances and their exact ground truth.
//!
//! An [`RbmModel`] holds the interaction matrix `J` (visible × hidden), the visible
//! fields `f` and the hidden fields `g` of the joint law
//! `P(x, y) ∝ exp(xᵀJy + fᵀx + gᵀy)` over `x ∈ {±1}ⁿ`, `y ∈ {±1}ᵐ`.
//! Everything in [`exact`] is computed by enumerating the visible marginal and is
//! used as the reference that the empirical learners are tested against.
//!
//! Node indices are 0-based throughout the crate.

mod exact;
mod generate;
mod graph;
mod io;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use exact::{
    config_code, decode_config, exact_avg_cond_cov, exact_influence, visible_marginal,
    ExactDistribution, ENUMERATION_LIMIT,
};
pub use generate::generate_model;
pub use graph::{two_hop_graph, TwoHopGraph};

/// Structural class of a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    /// All interactions and fields non-negative.
    Ferromagnetic,
    /// Every hidden node's interaction column is single-signed.
    LocallyConsistent,
    /// No structural guarantee.
    General,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Ferromagnetic => "ferromagnetic",
            ModelKind::LocallyConsistent => "locally-consistent",
            ModelKind::General => "general",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ferromagnetic" | "ferro" => Ok(ModelKind::Ferromagnetic),
            "locally-consistent" | "lc" => Ok(ModelKind::LocallyConsistent),
            "general" => Ok(ModelKind::General),
            other => Err(Error::InvalidParameter(format!("unknown model kind `{other}`"))),
        }
    }
}

/// A restricted Boltzmann machine with `n` visible and `m` hidden ±1 spins.
#[derive(Debug, Clone, PartialEq)]
pub struct RbmModel {
    n: usize,
    m: usize,
    /// Row-major `n × m`.
    weights: Vec<f64>,
    visible_field: Vec<f64>,
    hidden_field: Vec<f64>,
}

impl RbmModel {
    /// Builds a model from a row-major weight matrix.
    pub fn new(
        n: usize,
        m: usize,
        weights: Vec<f64>,
        visible_field: Vec<f64>,
        hidden_field: Vec<f64>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidModel("at least one visible node is required".into()));
        }
        if weights.len() != n * m {
            return Err(Error::InvalidModel(format!(
                "J has {} entries, expected {n}·{m} = {}",
                weights.len(),
                n * m
            )));
        }
        if visible_field.len() != n {
            return Err(Error::InvalidModel(format!(
                "f has length {}, expected {n}",
                visible_field.len()
            )));
        }
        if hidden_field.len() != m {
            return Err(Error::InvalidModel(format!(
                "g has length {}, expected {m}",
                hidden_field.len()
            )));
        }
        let all = weights.iter().chain(&visible_field).chain(&hidden_field);
        if let Some(bad) = all.copied().find(|v| !v.is_finite()) {
            return Err(Error::InvalidModel(format!("non-finite parameter {bad}")));
        }
        Ok(Self {
            n,
            m,
            weights,
            visible_field,
            hidden_field,
        })
    }

    /// Builds a model from nested rows `J[i][j]`.
    pub fn from_rows(rows: &[Vec<f64>], visible_field: Vec<f64>, hidden_field: Vec<f64>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidModel("ragged interaction matrix".into()));
        }
        Self::new(n, m, rows.concat(), visible_field, hidden_field)
    }

    /// The model with no interactions and no fields.
    pub fn independent(n: usize, m: usize) -> Result<Self> {
        Self::new(n, m, vec![0.0; n * m], vec![0.0; n], vec![0.0; m])
    }

    pub fn visible_count(&self) -> usize {
        self.n
    }

    pub fn hidden_count(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn weight(&self, visible: usize, hidden: usize) -> f64 {
        self.weights[visible * self.m + hidden]
    }

    /// Row-major `n × m` interaction matrix.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight_row(&self, visible: usize) -> &[f64] {
        &self.weights[visible * self.m..(visible + 1) * self.m]
    }

    pub fn visible_field(&self) -> &[f64] {
        &self.visible_field
    }

    pub fn hidden_field(&self) -> &[f64] {
        &self.hidden_field
    }

    pub fn is_ferromagnetic(&self) -> bool {
        self.weights
            .iter()
            .chain(&self.visible_field)
            .chain(&self.hidden_field)
            .all(|&v| v >= 0.0)
    }

    pub fn is_locally_consistent(&self) -> bool {
        (0..self.m).all(|j| {
            let column = || (0..self.n).map(move |i| self.weight(i, j));
            column().all(|w| w >= 0.0) || column().all(|w| w <= 0.0)
        })
    }

    /// The most specific class this model belongs to.
    pub fn kind(&self) -> ModelKind {
        if self.is_ferromagnetic() {
            ModelKind::Ferromagnetic
        } else if self.is_locally_consistent() {
            ModelKind::LocallyConsistent
        } else {
            ModelKind::General
        }
    }

    /// Whether the model belongs to `kind` (ferromagnetic models are also locally consistent).
    pub fn satisfies(&self, kind: ModelKind) -> bool {
        match kind {
            ModelKind::Ferromagnetic => self.is_ferromagnetic(),
            ModelKind::LocallyConsistent => self.is_locally_consistent(),
            ModelKind::General => true,
        }
    }

    /// Visible nodes with a nonzero interaction to `hidden`.
    pub fn hidden_neighbors(&self, hidden: usize) -> Vec<usize> {
        (0..self.n).filter(|&i| self.weight(i, hidden) != 0.0).collect()
    }

    /// Four visible and four hidden nodes arranged in a ring: hidden node `h` couples
    /// visible nodes `h` and `h + 1 (mod 4)` with strength `weight`. Visible nodes 0 and
    /// 1 are two-hop neighbors through hidden node 0.
    pub fn ring_of_four(weight: f64) -> Self {
        let mut weights = vec![0.0; 16];
        for h in 0..4 {
            weights[h * 4 + h] = weight;
            weights[((h + 1) % 4) * 4 + h] = weight;
        }
        Self::new(4, 4, weights, vec![0.0; 4], vec![0.0; 4]).expect("finite by construction")
    }
}

/// Bounds of (α, β)-non-degeneracy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NonDegeneracyParams {
    alpha: f64,
    beta: f64,
}

impl NonDegeneracyParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && beta > 0.0 && alpha.is_finite() && beta.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "alpha and beta must be positive and finite (got {alpha}, {beta})"
            )));
        }
        if alpha > beta {
            return Err(Error::InvalidParameter(format!("alpha {alpha} exceeds beta {beta}")));
        }
        Ok(Self { alpha, beta })
    }

    /// Lower bound on every nonzero `|J_ij|`.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Upper bound on every row and column strength (including the field).
    pub fn beta(&self) -> f64 {
        self.beta
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Violation {
    /// A nonzero interaction weaker than α.
    WeakInteraction { visible: usize, hidden: usize, magnitude: f64 },
    /// `Σ_j |J_ij| + |f_i| > β`.
    VisibleStrength { visible: usize, total: f64 },
    /// `Σ_i |J_ij| + |g_j| > β`.
    HiddenStrength { hidden: usize, total: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WeakInteraction { visible, hidden, magnitude } => {
                write!(f, "|J[{visible},{hidden}]| = {magnitude} is below alpha")
            }
            Violation::VisibleStrength { visible, total } => {
                write!(f, "visible row {visible} has strength {total} above beta")
            }
            Violation::HiddenStrength { hidden, total } => {
                write!(f, "hidden column {hidden} has strength {total} above beta")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonDegeneracyReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

/// Checks all three non-degeneracy conditions and lists every violation.
pub fn validate_nondegenerate(model: &RbmModel, params: &NonDegeneracyParams) -> NonDegeneracyReport {
    let mut violations = Vec::new();
    for i in 0..model.n {
        for j in 0..model.m {
            let magnitude = model.weight(i, j).abs();
            if magnitude != 0.0 && magnitude < params.alpha {
                violations.push(Violation::WeakInteraction { visible: i, hidden: j, magnitude });
            }
        }
    }
    for i in 0..model.n {
        let total = model.weight_row(i).iter().map(|w| w.abs()).sum::<f64>() + model.visible_field[i].abs();
        if total > params.beta {
            violations.push(Violation::VisibleStrength { visible: i, total });
        }
    }
    for j in 0..model.m {
        let total = (0..model.n).map(|i| model.weight(i, j).abs()).sum::<f64>() + model.hidden_field[j].abs();
        if total > params.beta {
            violations.push(Violation::HiddenStrength { hidden: j, total });
        }
    }
    NonDegeneracyReport {
        ok: violations.is_empty(),
        violations,
    }
}

pub use io::ModelFile;

#[cfg(test)]
mod tests {
    use super::*;

    fn params(alpha: f64, beta: f64) -> NonDegeneracyParams {
        NonDegeneracyParams::new(alpha, beta).unwrap()
    }

    #[test]
    fn nondegenerate_single_edge_passes() {
        let model = RbmModel::from_rows(&[vec![0.5]], vec![0.1], vec![0.2]).unwrap();
        let report = validate_nondegenerate(&model, &params(0.4, 1.0));
        assert!(report.ok, "{:?}", report.violations);
    }

    #[test]
    fn weak_interaction_is_named() {
        let model = RbmModel::from_rows(&[vec![0.3]], vec![0.0], vec![0.0]).unwrap();
        let report = validate_nondegenerate(&model, &params(0.4, 1.0));
        assert!(!report.ok);
        assert_eq!(
            report.violations,
            vec![Violation::WeakInteraction { visible: 0, hidden: 0, magnitude: 0.3 }]
        );
    }

    #[test]
    fn heavy_visible_row_is_reported() {
        let model = RbmModel::from_rows(&[vec![0.5, 0.6]], vec![0.1], vec![0.0, 0.0]).unwrap();
        let report = validate_nondegenerate(&model, &params(0.4, 1.0));
        assert!(!report.ok);
        assert_eq!(report.violations.len(), 1);
        match report.violations[0] {
            Violation::VisibleStrength { visible, total } => {
                assert_eq!(visible, 0);
                assert!((total - 1.2).abs() < 1e-12);
            }
            ref other => panic!("unexpected violation {other:?}"),
        }
    }

    #[test]
    fn params_reject_alpha_above_beta() {
        assert!(NonDegeneracyParams::new(2.0, 1.0).is_err());
        assert!(NonDegeneracyParams::new(0.0, 1.0).is_err());
    }

    #[test]
    fn model_shape_is_checked() {
        assert!(RbmModel::new(0, 0, vec![], vec![], vec![]).is_err());
        assert!(RbmModel::new(2, 1, vec![1.0], vec![0.0; 2], vec![0.0]).is_err());
        assert!(RbmModel::new(1, 1, vec![f64::NAN], vec![0.0], vec![0.0]).is_err());
        assert!(RbmModel::new(1, 0, vec![], vec![0.0], vec![]).is_ok());
    }

    #[test]
    fn kind_flags() {
        let ferro = RbmModel::from_rows(&[vec![0.5, 0.0], vec![0.2, 0.3]], vec![0.1, 0.0], vec![0.0, 0.1]).unwrap();
        assert_eq!(ferro.kind(), ModelKind::Ferromagnetic);
        assert!(ferro.is_locally_consistent());

        let lc = RbmModel::from_rows(&[vec![0.5, -0.4], vec![0.2, -0.3]], vec![-0.1, 0.0], vec![0.0, 0.1]).unwrap();
        assert_eq!(lc.kind(), ModelKind::LocallyConsistent);

        let general = RbmModel::from_rows(&[vec![0.5], vec![-0.2]], vec![0.0, 0.0], vec![0.0]).unwrap();
        assert_eq!(general.kind(), ModelKind::General);
        assert!(general.satisfies(ModelKind::General));
        assert!(!general.satisfies(ModelKind::LocallyConsistent));
    }
}
