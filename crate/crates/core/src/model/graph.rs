use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::RbmModel;

/// Undirected graph on the visible nodes; `{i, k}` is an edge when `i` and `k` are
/// two-hop neighbors.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TwoHopGraph {
    n: usize,
    /// Stored with `i < k`.
    edges: BTreeSet<(usize, usize)>,
}

impl TwoHopGraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Adds `{a, b}`. Self-loops are ignored; returns whether the edge is new.
    pub fn insert(&mut self, a: usize, b: usize) -> bool {
        assert!(a < self.n && b < self.n, "edge ({a}, {b}) out of range for {} nodes", self.n);
        if a == b {
            return false;
        }
        self.edges.insert((a.min(b), a.max(b)))
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted neighbors of `u`.
    pub fn neighbors(&self, u: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == u {
                    Some(b)
                } else if b == u {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn degree(&self, u: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == u || b == u).count()
    }

    /// The two-hop degree `d₂`.
    pub fn max_degree(&self) -> usize {
        let mut degree = vec![0usize; self.n];
        for &(a, b) in &self.edges {
            degree[a] += 1;
            degree[b] += 1;
        }
        degree.into_iter().max().unwrap_or(0)
    }
}

/// Graph-theoretic two-hop neighborhoods: `i` and `k` are adjacent when some hidden
/// node couples to both with nonzero weight.
pub fn two_hop_graph(model: &RbmModel) -> TwoHopGraph {
    let mut graph = TwoHopGraph::new(model.visible_count());
    for j in 0..model.hidden_count() {
        let attached = model.hidden_neighbors(j);
        for (idx, &a) in attached.iter().enumerate() {
            for &b in &attached[idx + 1..] {
                graph.insert(a, b);
            }
        }
    }
    graph
}
