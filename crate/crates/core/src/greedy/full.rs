use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{learn_ferro, learn_lc, LearnStatus, NeighborhoodResult};
use crate::error::Result;
use crate::model::TwoHopGraph;
use crate::qsearch::{quantum_learn_ferro, quantum_learn_lc, GroverParams, QueryMeter, SampleOracle};
use crate::sampling::SampleSet;
use crate::seeds::stream_rng;

/// Which per-node learner to run, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "algorithm", rename_all = "kebab-case")]
pub enum LearnerConfig {
    Ferro {
        eta: f64,
        k: u64,
    },
    Lc {
        tau: f64,
        t_max: u64,
    },
    FerroQ {
        eta: f64,
        k: u64,
        delta: f64,
        seed: u64,
        grover: GroverParams,
    },
    LcQ {
        tau: f64,
        t_max: u64,
        zeta: f64,
        seed: u64,
        grover: GroverParams,
    },
}

impl LearnerConfig {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Ferro { .. } => "ferro",
            Self::Lc { .. } => "lc",
            Self::FerroQ { .. } => "ferro-q",
            Self::LcQ { .. } => "lc-q",
        }
    }

    /// Runs the learner for node `u`. Quantum learners draw from stream `u` of their seed.
    pub fn learn_node(&self, u: usize, samples: &SampleSet) -> Result<NeighborhoodResult> {
        match *self {
            Self::Ferro { eta, k } => learn_ferro(u, samples, eta, k),
            Self::Lc { tau, t_max } => learn_lc(u, samples, tau, t_max),
            Self::FerroQ {
                eta,
                k,
                delta,
                seed,
                grover,
            } => {
                let mut rng = stream_rng(seed, u as u64);
                quantum_learn_ferro(u, &mut SampleOracle::new(samples), eta, k, delta, &grover, &mut rng)
            }
            Self::LcQ {
                tau,
                t_max,
                zeta,
                seed,
                grover,
            } => {
                let mut rng = stream_rng(seed, u as u64);
                quantum_learn_lc(u, &mut SampleOracle::new(samples), tau, t_max, zeta, &grover, &mut rng)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FullGraphEstimate {
    pub graph: TwoHopGraph,
    /// One result per visible node, in node order.
    pub nodes: Vec<NeighborhoodResult>,
    /// Sum of the per-node meters.
    pub meter: QueryMeter,
}

impl FullGraphEstimate {
    /// True when some node ran out of usable samples.
    pub fn insufficient_samples(&self) -> bool {
        self.nodes.iter().any(|r| r.status == LearnStatus::InsufficientSamples)
    }
}

/// Edge `{u, v}` is present when either endpoint lists the other.
pub fn combine_or(n: usize, results: &[NeighborhoodResult]) -> TwoHopGraph {
    let mut graph = TwoHopGraph::new(n);
    for r in results {
        for &v in &r.estimate {
            graph.insert(r.u, v);
        }
    }
    graph
}

/// Learns every node's neighborhood (in parallel) and merges them with [`combine_or`].
pub fn learn_full_graph(samples: &SampleSet, config: &LearnerConfig) -> Result<FullGraphEstimate> {
    let n = samples.node_count();
    let nodes = (0..n)
        .into_par_iter()
        .map(|u| config.learn_node(u, samples))
        .collect::<Result<Vec<_>>>()?;
    let mut meter = QueryMeter::new();
    nodes.iter().for_each(|r| meter.absorb(&r.meter));
    Ok(FullGraphEstimate {
        graph: combine_or(n, &nodes),
        nodes,
        meter,
    })
}
