//! Structure learning for restricted Boltzmann machines.
//!
//! Learns the two-hop neighborhood of every visible node of a ferromagnetic RBM
//! (greedy influence maximization) or a locally consistent RBM (greedy conditional
//! covariance maximization) from visible samples, together with quantum-search
//! variants whose argmax step is simulated at the level of Grover outcome
//! statistics and metered in oracle queries.

pub mod error;
pub mod estimators;
pub mod greedy;
pub mod harness;
pub mod model;
pub mod qsearch;
pub mod sampling;
pub mod seeds;

pub use error::{Error, Result};
pub use greedy::{learn_full_graph, FullGraphEstimate, LearnStatus, LearnerConfig, NeighborhoodResult};
pub use harness::{ExperimentConfig, RecoveryMetrics};
pub use model::{ModelKind, NonDegeneracyParams, RbmModel, TwoHopGraph};
pub use qsearch::{GroverParams, QueryMeter};
pub use sampling::SampleSet;
