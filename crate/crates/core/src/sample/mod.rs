//! Finding zero-energy assignments.
//!
//! [`enumerate_exact`] walks all `2^q` assignments in Gray-code order and is
//! the reference for small models. [`zero_set_search`] enumerates the zero
//! level set by depth-first search over the model's penalty terms, pruning
//! any branch in which some term is already forced positive; it reaches
//! models well beyond the brute-force limit. [`anneal`] is a seeded
//! simulated-annealing heuristic.

mod anneal;
mod exact;

pub use anneal::{anneal, AnnealConfig, AnnealOutcome, SampleResult};
pub use exact::{enumerate_exact, zero_set_search, DEFAULT_EXACT_LIMIT};

use crate::qubo::QuboModel;

/// Dense adjacency view of a model for incremental flip costs.
pub(crate) struct Adjacency {
    pub linear: Vec<f64>,
    pub neighbors: Vec<Vec<(usize, f64)>>,
}

impl Adjacency {
    pub fn new(model: &QuboModel) -> Self {
        let q = model.len();
        let mut linear = vec![0.0; q];
        for (&k, &v) in model.linear() {
            linear[k] = v;
        }
        let mut neighbors = vec![Vec::new(); q];
        for (&(a, b), &v) in model.quadratic() {
            neighbors[a].push((b, v));
            neighbors[b].push((a, v));
        }
        Adjacency { linear, neighbors }
    }
}

/// Orders assignments by the integer `Σ x_k 2^k`.
pub(crate) fn cmp_bit_pattern(a: &[bool], b: &[bool]) -> std::cmp::Ordering {
    a.iter().rev().cmp(b.iter().rev())
}
