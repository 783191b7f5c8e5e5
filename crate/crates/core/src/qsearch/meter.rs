use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

/// Query counters. Every field only grows while a meter is live.
///
/// `raw_queries = (score_evals + pruning_evals) · cost + index_reads`, where `cost` is the
/// per-evaluation charge of the oracle that produced the counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QueryMeter {
    raw_queries: u64,
    score_evals: u64,
    grover_iterations: u64,
    index_reads: u64,
    pruning_evals: u64,
}

impl QueryMeter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sample-entry reads.
    pub fn raw_queries(&self) -> u64 {
        self.raw_queries
    }

    /// Score-oracle applications made by an argmax search.
    pub fn score_evals(&self) -> u64 {
        self.score_evals
    }

    pub fn grover_iterations(&self) -> u64 {
        self.grover_iterations
    }

    /// Raw reads spent building conditioning index sets.
    pub fn index_reads(&self) -> u64 {
        self.index_reads
    }

    /// Classical score evaluations made while pruning.
    pub fn pruning_evals(&self) -> u64 {
        self.pruning_evals
    }

    pub fn charge_index_reads(&mut self, reads: u64) {
        self.index_reads += reads;
        self.raw_queries += reads;
    }

    pub fn charge_score_evals(&mut self, count: u64, cost: u64) {
        self.score_evals += count;
        self.raw_queries += count * cost;
    }

    pub fn charge_pruning_eval(&mut self, cost: u64) {
        self.pruning_evals += 1;
        self.raw_queries += cost;
    }

    pub fn charge_grover_iterations(&mut self, count: u64) {
        self.grover_iterations += count;
    }

    /// Counts accumulated since `earlier`, a previous snapshot of the same meter.
    pub fn since(&self, earlier: &QueryMeter) -> QueryMeter {
        QueryMeter {
            raw_queries: self.raw_queries - earlier.raw_queries,
            score_evals: self.score_evals - earlier.score_evals,
            grover_iterations: self.grover_iterations - earlier.grover_iterations,
            index_reads: self.index_reads - earlier.index_reads,
            pruning_evals: self.pruning_evals - earlier.pruning_evals,
        }
    }

    pub fn absorb(&mut self, other: &QueryMeter) {
        self.raw_queries += other.raw_queries;
        self.score_evals += other.score_evals;
        self.grover_iterations += other.grover_iterations;
        self.index_reads += other.index_reads;
        self.pruning_evals += other.pruning_evals;
    }
}

/// A meter that many workers can add into concurrently.
#[derive(Debug, Default)]
pub struct AtomicQueryMeter {
    raw_queries: AtomicU64,
    score_evals: AtomicU64,
    grover_iterations: AtomicU64,
    index_reads: AtomicU64,
    pruning_evals: AtomicU64,
}

impl AtomicQueryMeter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&self, meter: &QueryMeter) {
        self.raw_queries.fetch_add(meter.raw_queries, Ordering::Relaxed);
        self.score_evals.fetch_add(meter.score_evals, Ordering::Relaxed);
        self.grover_iterations.fetch_add(meter.grover_iterations, Ordering::Relaxed);
        self.index_reads.fetch_add(meter.index_reads, Ordering::Relaxed);
        self.pruning_evals.fetch_add(meter.pruning_evals, Ordering::Relaxed);
    }

    pub fn snapshot(&self) -> QueryMeter {
        QueryMeter {
            raw_queries: self.raw_queries.load(Ordering::Relaxed),
            score_evals: self.score_evals.load(Ordering::Relaxed),
            grover_iterations: self.grover_iterations.load(Ordering::Relaxed),
            index_reads: self.index_reads.load(Ordering::Relaxed),
            pruning_evals: self.pruning_evals.load(Ordering::Relaxed),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rayon::prelude::*;

    #[test]
    fn charges_keep_the_identity() {
        let mut meter = QueryMeter::new();
        meter.charge_index_reads(30);
        meter.charge_score_evals(4, 10);
        meter.charge_pruning_eval(10);
        meter.charge_grover_iterations(3);
        assert_eq!(meter.raw_queries(), (4 + 1) * 10 + 30);
        let later = {
            let mut m = meter;
            m.charge_score_evals(2, 10);
            m
        };
        let delta = later.since(&meter);
        assert_eq!((delta.score_evals(), delta.raw_queries()), (2, 20));
    }

    #[test]
    fn atomic_sum_matches_sequential() {
        let atomic = AtomicQueryMeter::new();
        let mut sequential = QueryMeter::new();
        let parts: Vec<QueryMeter> = (0..100u64)
            .map(|i| {
                let mut m = QueryMeter::new();
                m.charge_score_evals(i, 7);
                m.charge_index_reads(i * 3);
                m.charge_grover_iterations(i);
                m
            })
            .collect();
        parts.par_iter().for_each(|m| atomic.add(m));
        parts.iter().for_each(|m| sequential.absorb(m));
        assert_eq!(atomic.snapshot(), sequential);
    }
}
