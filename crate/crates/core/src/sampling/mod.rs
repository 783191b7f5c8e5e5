//! Visible-layer sample sets and the samplers that produce them.

mod exact;
mod gibbs;
mod io;

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub use exact::exact_sample;
pub use gibbs::{gibbs_sample, GibbsConfig};
pub use io::{load, save, MAGIC, VERSION};

/// `M` configurations in `{±1}ⁿ`, bit-packed row by row.
///
/// Each row takes `⌈n/8⌉` bytes; node `i` lives in byte `i / 8` at bit `7 - i % 8`
/// (MSB first), a set bit meaning `+1`. Trailing pad bits are always zero.
pub struct SampleSet {
    n: usize,
    count: usize,
    rows: Vec<u8>,
    columns: OnceLock<Vec<Vec<u64>>>,
}

impl SampleSet {
    pub fn row_bytes_for(n: usize) -> usize {
        n.div_ceil(8)
    }

    /// Wraps already-packed rows, rejecting nonzero padding.
    pub fn from_packed(n: usize, count: usize, rows: Vec<u8>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("samples need at least one node".into()));
        }
        let row_bytes = Self::row_bytes_for(n);
        if rows.len() != row_bytes * count {
            return Err(Error::InvalidParameter(format!(
                "{} packed bytes for {count} rows of {row_bytes}",
                rows.len()
            )));
        }
        let pad_mask = pad_mask(n);
        if pad_mask != 0 {
            if let Some(row) = rows.chunks_exact(row_bytes).position(|r| r[row_bytes - 1] & pad_mask != 0) {
                return Err(Error::NonzeroPadding { row });
            }
        }
        Ok(Self {
            n,
            count,
            rows,
            columns: OnceLock::new(),
        })
    }

    /// Builds a set from ±1 rows.
    pub fn from_spins<R: AsRef<[i8]>>(n: usize, rows: &[R]) -> Result<Self> {
        let mut builder = SampleSetBuilder::new(n)?;
        for row in rows {
            builder.push_spins(row.as_ref())?;
        }
        Ok(builder.finish())
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::from_packed(n, 0, Vec::new())
    }

    /// Nodes per sample.
    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Number of samples `M`.
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn row_bytes(&self) -> usize {
        Self::row_bytes_for(self.n)
    }

    pub fn packed_rows(&self) -> &[u8] {
        &self.rows
    }

    pub fn row(&self, sample: usize) -> &[u8] {
        let rb = self.row_bytes();
        &self.rows[sample * rb..(sample + 1) * rb]
    }

    #[inline]
    pub fn is_up(&self, sample: usize, node: usize) -> bool {
        debug_assert!(node < self.n);
        self.rows[sample * self.row_bytes() + node / 8] >> (7 - node % 8) & 1 == 1
    }

    /// `x_node` of the given sample, as ±1.
    #[inline]
    pub fn spin(&self, sample: usize, node: usize) -> i8 {
        if self.is_up(sample, node) {
            1
        } else {
            -1
        }
    }

    pub fn spins(&self, sample: usize) -> Vec<i8> {
        (0..self.n).map(|node| self.spin(sample, node)).collect()
    }

    /// Column of `node` as a bitmap over samples: bit `i % 64` of word `i / 64` is set
    /// iff sample `i` has `x_node = +1`. Built once, on first use.
    pub fn column_bits(&self, node: usize) -> &[u64] {
        &self.columns.get_or_init(|| self.transpose())[node]
    }

    /// Number of 64-bit words in a column bitmap.
    pub fn column_words(&self) -> usize {
        self.count.div_ceil(64)
    }

    fn transpose(&self) -> Vec<Vec<u64>> {
        let words = self.column_words();
        let mut columns = vec![vec![0u64; words]; self.n];
        for sample in 0..self.count {
            let row = self.row(sample);
            for (node, column) in columns.iter_mut().enumerate() {
                if row[node / 8] >> (7 - node % 8) & 1 == 1 {
                    column[sample / 64] |= 1 << (sample % 64);
                }
            }
        }
        columns
    }
}

fn pad_mask(n: usize) -> u8 {
    match n % 8 {
        0 => 0,
        used => 0xffu8 >> used,
    }
}

impl Clone for SampleSet {
    fn clone(&self) -> Self {
        Self {
            n: self.n,
            count: self.count,
            rows: self.rows.clone(),
            columns: OnceLock::new(),
        }
    }
}

impl PartialEq for SampleSet {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.count == other.count && self.rows == other.rows
    }
}

impl Eq for SampleSet {}

impl fmt::Debug for SampleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SampleSet")
            .field("n", &self.n)
            .field("count", &self.count)
            .finish_non_exhaustive()
    }
}

/// Incremental construction of a [`SampleSet`].
#[derive(Debug)]
pub struct SampleSetBuilder {
    n: usize,
    count: usize,
    rows: Vec<u8>,
}

impl SampleSetBuilder {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("samples need at least one node".into()));
        }
        Ok(Self { n, count: 0, rows: Vec::new() })
    }

    pub fn with_capacity(n: usize, count: usize) -> Result<Self> {
        let mut builder = Self::new(n)?;
        builder.rows.reserve(count * SampleSet::row_bytes_for(n));
        Ok(builder)
    }

    pub fn push_spins(&mut self, spins: &[i8]) -> Result<()> {
        if spins.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "row has {} entries, expected {}",
                spins.len(),
                self.n
            )));
        }
        if let Some(bad) = spins.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidParameter(format!("spin value {bad} is not ±1")));
        }
        self.push_with(|i| spins[i] > 0);
        Ok(())
    }

    /// Appends a row whose node `i` is `+1` iff `up(i)`.
    pub fn push_with(&mut self, mut up: impl FnMut(usize) -> bool) {
        let start = self.rows.len();
        self.rows.resize(start + SampleSet::row_bytes_for(self.n), 0);
        for i in 0..self.n {
            if up(i) {
                self.rows[start + i / 8] |= 0x80 >> (i % 8);
            }
        }
        self.count += 1;
    }

    pub fn finish(self) -> SampleSet {
        SampleSet {
            n: self.n,
            count: self.count,
            rows: self.rows,
            columns: OnceLock::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn msb_first_layout() {
        let set = SampleSet::from_spins(10, &[[1i8, -1, -1, -1, -1, -1, -1, 1, -1, 1]]).unwrap();
        assert_eq!(set.row(0), &[0b1000_0001, 0b0100_0000]);
        assert_eq!(set.spins(0), vec![1, -1, -1, -1, -1, -1, -1, 1, -1, 1]);
    }

    #[test]
    fn padding_must_be_zero() {
        assert!(matches!(
            SampleSet::from_packed(3, 2, vec![0b1110_0000, 0b0001_0000]),
            Err(Error::NonzeroPadding { row: 1 })
        ));
        assert!(SampleSet::from_packed(8, 1, vec![0xff]).is_ok());
    }

    #[test]
    fn rejects_non_spin_values() {
        assert!(SampleSet::from_spins(2, &[[1i8, 0]]).is_err());
        assert!(SampleSet::from_spins(2, &[vec![1i8]]).is_err());
    }

    #[test]
    fn column_bitmaps_match_rows() {
        let rows: Vec<Vec<i8>> = (0..130)
            .map(|i| (0..5).map(|j| if (i * 7 + j * 3) % 4 == 0 { 1 } else { -1 }).collect())
            .collect();
        let set = SampleSet::from_spins(5, &rows).unwrap();
        assert_eq!(set.column_words(), 3);
        for node in 0..5 {
            let column = set.column_bits(node);
            for (i, row) in rows.iter().enumerate() {
                assert_eq!(column[i / 64] >> (i % 64) & 1 == 1, row[node] == 1);
            }
        }
    }

    #[test]
    fn clone_is_equal() {
        let set = SampleSet::from_spins(3, &[[1i8, -1, 1], [-1, -1, 1]]).unwrap();
        let _ = set.column_bits(0);
        assert_eq!(set.clone(), set);
    }
}
