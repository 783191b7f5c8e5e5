//! Empirical average conditional covariance
//! `Ĉov^avg(u, v | S) = Ê_{x_S}[ Ĉov(u, v | x_S) ]`.
//!
//! Two routes are provided. [`avg_cond_cov_direct`] evaluates the definition cell by
//! cell. [`avg_cond_cov_decomposed`] uses the total-expectation identity
//!
//! ```text
//! Ĉov^avg(u, v | S) = (1/H) · ( Σ_i z_uv^i − Σ_l a_{u,l} · a_{v,l} / |F_l| )
//! ```
//!
//! with `z_uv^i = x_u^i x_v^i` and `a_{j,l} = Σ_{i ∈ F_l} x_j^i`. All sums are exact
//! integers; only the final ratio is taken in floating point.

use super::{a_coefficient, ConfigIndex};
use crate::error::{Error, Result};
use crate::sampling::SampleSet;

fn check(samples: &SampleSet, u: usize, v: usize, idx: &ConfigIndex) -> Result<()> {
    let n = samples.node_count();
    if u >= n || v >= n {
        return Err(Error::InvalidParameter("node out of range".into()));
    }
    if u == v {
        return Err(Error::InvalidParameter("u and v must differ".into()));
    }
    if idx.nodes().contains(&u) || idx.nodes().contains(&v) {
        return Err(Error::InvalidParameter("u and v must lie outside the conditioning set".into()));
    }
    if idx.sample_count() != samples.len() {
        return Err(Error::InvalidParameter("index was built on a different sample set".into()));
    }
    if samples.is_empty() {
        return Err(Error::InvalidParameter("covariance of an empty sample set".into()));
    }
    Ok(())
}

/// `Σ_l (|F_l| / H) · [ mean(x_u x_v) − mean(x_u) · mean(x_v) ]` over the cells of `idx`.
pub fn avg_cond_cov_direct(samples: &SampleSet, u: usize, v: usize, idx: &ConfigIndex) -> Result<f64> {
    check(samples, u, v, idx)?;
    let total = samples.len() as f64;
    let mut acc = 0.0;
    for group in idx.groups() {
        let size = group.len() as f64;
        let (mut su, mut sv, mut suv) = (0.0, 0.0, 0.0);
        for &i in group {
            let (xu, xv) = (samples.spin(i, u) as f64, samples.spin(i, v) as f64);
            su += xu;
            sv += xv;
            suv += xu * xv;
        }
        acc += (size / total) * (suv / size - (su / size) * (sv / size));
    }
    Ok(acc)
}

/// The decomposed form via `z_uv` and [`a_coefficient`].
pub fn avg_cond_cov_decomposed(samples: &SampleSet, u: usize, v: usize, idx: &ConfigIndex) -> Result<f64> {
    check(samples, u, v, idx)?;
    let z_sum: i64 = (0..samples.len())
        .map(|i| (samples.spin(i, u) * samples.spin(i, v)) as i64)
        .sum();
    let cells = idx
        .groups()
        .iter()
        .map(|g| (a_coefficient(samples, u, g), a_coefficient(samples, v, g), g.len()));
    Ok(decomposed_value(z_sum, cells, samples.len()))
}

/// Shared final arithmetic so every caller of the decomposed form produces bit-identical values.
pub(crate) fn decomposed_value(z_sum: i64, cells: impl Iterator<Item = (i64, i64, usize)>, count: usize) -> f64 {
    let correction: f64 = cells.map(|(au, av, size)| (au * av) as f64 / size as f64).sum();
    (z_sum as f64 - correction) / count as f64
}

/// Covariance scores `v ↦ Ĉov^avg(u, v | S)` for one greedy step, sharing the cell
/// structure and the `a_{u,l}` coefficients across candidates.
#[derive(Debug, Clone)]
pub struct CovarianceScorer<'a> {
    samples: &'a SampleSet,
    u: usize,
    excluded: Vec<usize>,
    cell_sizes: Vec<usize>,
    a_u: Vec<i64>,
    layout: CellLayout,
}

#[derive(Debug, Clone)]
enum CellLayout {
    /// One bitmap per cell; used while cells are few.
    Bitmaps(Vec<Vec<u64>>),
    /// Cell label per sample.
    Labels(Vec<u32>),
}

const BITMAP_CELL_LIMIT: usize = 64;

impl<'a> CovarianceScorer<'a> {
    pub fn new(samples: &'a SampleSet, u: usize, idx: &ConfigIndex) -> Result<Self> {
        if u >= samples.node_count() || idx.nodes().contains(&u) {
            return Err(Error::InvalidParameter(format!("node {u} is not a valid target")));
        }
        if idx.sample_count() != samples.len() || samples.is_empty() {
            return Err(Error::InvalidParameter("index does not match a non-empty sample set".into()));
        }
        let cell_sizes: Vec<usize> = idx.groups().iter().map(Vec::len).collect();
        let a_u: Vec<i64> = idx.groups().iter().map(|g| a_coefficient(samples, u, g)).collect();
        let layout = if idx.len() <= BITMAP_CELL_LIMIT {
            let words = samples.column_words();
            CellLayout::Bitmaps(
                idx.groups()
                    .iter()
                    .map(|g| {
                        let mut bits = vec![0u64; words];
                        for &i in g {
                            bits[i / 64] |= 1 << (i % 64);
                        }
                        bits
                    })
                    .collect(),
            )
        } else {
            let mut labels = vec![0u32; samples.len()];
            for (l, g) in idx.groups().iter().enumerate() {
                for &i in g {
                    labels[i] = l as u32;
                }
            }
            CellLayout::Labels(labels)
        };
        Ok(Self {
            samples,
            u,
            excluded: idx.nodes().to_vec(),
            cell_sizes,
            a_u,
            layout,
        })
    }

    pub fn score(&self, v: usize) -> f64 {
        assert!(v != self.u && !self.excluded.contains(&v), "candidate {v} is not admissible");
        let col_u = self.samples.column_bits(self.u);
        let col_v = self.samples.column_bits(v);
        let count = self.samples.len();
        let disagree: usize = col_u.iter().zip(col_v).map(|(a, b)| (a ^ b).count_ones() as usize).sum();
        let z_sum = count as i64 - 2 * disagree as i64;

        let up_counts: Vec<usize> = match &self.layout {
            CellLayout::Bitmaps(cells) => cells
                .iter()
                .map(|bits| bits.iter().zip(col_v).map(|(a, b)| (a & b).count_ones() as usize).sum())
                .collect(),
            CellLayout::Labels(labels) => {
                let mut up = vec![0usize; self.cell_sizes.len()];
                for (i, &l) in labels.iter().enumerate() {
                    up[l as usize] += (col_v[i / 64] >> (i % 64) & 1) as usize;
                }
                up
            }
        };
        let cells = self
            .cell_sizes
            .iter()
            .zip(&self.a_u)
            .zip(up_counts)
            .map(|((&size, &au), up)| (au, 2 * up as i64 - size as i64, size));
        decomposed_value(z_sum, cells, count)
    }
}
