use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::sampling::SampleSet;

/// The distinct configurations `L_S` observed on a node set `S`, each with the sample
/// indices `F(x_S^l)` that carry it.
///
/// Configurations are keyed by their bit pattern over `S` in ascending node order and
/// numbered by first occurrence, so `l` is deterministic for a given sample set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigIndex {
    nodes: Vec<usize>,
    configs: Vec<Vec<u8>>,
    groups: Vec<Vec<usize>>,
    all_ones: Option<usize>,
    sample_count: usize,
}

impl ConfigIndex {
    /// Builds the index by asking `is_up(sample, node)` for every `sample < count` and
    /// every node of `set`.
    pub fn build_with(count: usize, set: &[usize], mut is_up: impl FnMut(usize, usize) -> bool) -> Self {
        let mut nodes = set.to_vec();
        nodes.sort_unstable();
        nodes.dedup();
        let key_bytes = nodes.len().div_ceil(8);
        let all_ones_key: Vec<u8> = {
            let mut key = vec![0u8; key_bytes];
            for k in 0..nodes.len() {
                key[k / 8] |= 0x80 >> (k % 8);
            }
            key
        };

        let mut lookup: HashMap<Vec<u8>, usize> = HashMap::new();
        let mut configs = Vec::new();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut key = vec![0u8; key_bytes];
        for sample in 0..count {
            key.iter_mut().for_each(|b| *b = 0);
            for (k, &node) in nodes.iter().enumerate() {
                if is_up(sample, node) {
                    key[k / 8] |= 0x80 >> (k % 8);
                }
            }
            let l = match lookup.get(&key) {
                Some(&l) => l,
                None => {
                    let l = configs.len();
                    lookup.insert(key.clone(), l);
                    configs.push(key.clone());
                    groups.push(Vec::new());
                    l
                }
            };
            groups[l].push(sample);
        }
        let all_ones = lookup.get(&all_ones_key).copied();
        Self {
            nodes,
            configs,
            groups,
            all_ones,
            sample_count: count,
        }
    }

    /// Conditioning nodes, ascending.
    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    /// `|L_S|`.
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn sample_count(&self) -> usize {
        self.sample_count
    }

    /// The `l`-th distinct configuration as ±1 values over [`nodes`](Self::nodes).
    pub fn config(&self, l: usize) -> Vec<i8> {
        let key = &self.configs[l];
        (0..self.nodes.len())
            .map(|k| if key[k / 8] & (0x80 >> (k % 8)) != 0 { 1 } else { -1 })
            .collect()
    }

    /// `F(x_S^l)`, ascending.
    pub fn group(&self, l: usize) -> &[usize] {
        &self.groups[l]
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    /// `M_S`: the samples with every node of `S` at `+1`.
    pub fn all_ones(&self) -> &[usize] {
        self.all_ones.map_or(&[], |l| &self.groups[l])
    }

    /// Sample entries read to build the index (`M · s`).
    pub fn element_reads(&self) -> u64 {
        (self.sample_count * self.nodes.len()) as u64
    }
}

/// Groups the samples by their configuration on `set`.
pub fn build_index(samples: &SampleSet, set: &[usize]) -> Result<ConfigIndex> {
    if let Some(&bad) = set.iter().find(|&&s| s >= samples.node_count()) {
        return Err(Error::InvalidParameter(format!(
            "node {bad} out of range for {} nodes",
            samples.node_count()
        )));
    }
    Ok(ConfigIndex::build_with(samples.len(), set, |i, node| samples.is_up(i, node)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_set_has_one_cell() {
        let samples = SampleSet::from_spins(2, &[[1i8, 1], [-1, 1], [1, -1]]).unwrap();
        let idx = build_index(&samples, &[]).unwrap();
        assert_eq!(idx.len(), 1);
        assert_eq!(idx.group(0), &[0, 1, 2]);
        assert_eq!(idx.all_ones(), &[0, 1, 2]);
        assert!(idx.config(0).is_empty());
    }

    #[test]
    fn two_configurations() {
        let samples = SampleSet::from_spins(2, &[[1i8, 1], [1, -1], [1, 1]]).unwrap();
        let idx = build_index(&samples, &[0, 1]).unwrap();
        assert_eq!(idx.len(), 2);
        assert_eq!(idx.config(0), vec![1, 1]);
        assert_eq!(idx.config(1), vec![1, -1]);
        assert_eq!(idx.group(0), &[0, 2]);
        assert_eq!(idx.group(1), &[1]);
        // M_S in 1-based terms is {1, 3}.
        assert_eq!(idx.all_ones(), &[0, 2]);
        assert_eq!(idx.element_reads(), 6);
    }

    #[test]
    fn identical_samples_single_cell() {
        let samples = SampleSet::from_spins(3, &[[1i8, -1, 1]; 10]).unwrap();
        let idx = build_index(&samples, &[0, 1, 2]).unwrap();
        assert_eq!(idx.len(), 1);
        assert!(idx.all_ones().is_empty());
    }

    #[test]
    fn node_order_is_normalized() {
        let samples = SampleSet::from_spins(3, &[[1i8, -1, 1], [-1, 1, 1]]).unwrap();
        assert_eq!(build_index(&samples, &[2, 0]).unwrap(), build_index(&samples, &[0, 2, 2]).unwrap());
        assert!(build_index(&samples, &[3]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn groups_partition_the_samples(
            n in 1usize..8,
            rows in proptest::collection::vec(any::<u8>(), 1..60),
            set_bits in any::<u8>(),
        ) {
            let spins: Vec<Vec<i8>> = rows.iter().map(|r| (0..n).map(|i| if r >> i & 1 == 1 { 1 } else { -1 }).collect()).collect();
            let samples = SampleSet::from_spins(n, &spins).unwrap();
            let set: Vec<usize> = (0..n).filter(|i| set_bits >> i & 1 == 1).collect();
            let idx = build_index(&samples, &set).unwrap();

            let mut seen = vec![0usize; samples.len()];
            for (l, group) in idx.groups().iter().enumerate() {
                prop_assert!(!group.is_empty());
                for &i in group {
                    seen[i] += 1;
                    let on_set: Vec<i8> = set.iter().map(|&s| samples.spin(i, s)).collect();
                    prop_assert_eq!(&on_set, &idx.config(l));
                }
            }
            prop_assert!(seen.iter().all(|&c| c == 1));
            prop_assert!(idx.len() <= samples.len().min(1 << set.len()));
            let ones: Vec<usize> = (0..samples.len()).filter(|&i| set.iter().all(|&s| samples.is_up(i, s))).collect();
            prop_assert_eq!(idx.all_ones(), ones.as_slice());
        }
    }
}
