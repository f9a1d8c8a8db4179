//! Sparse network alignment between two directed graphs.
//!
//! Given graphs `A` and `B`, a sparse set of candidate node correspondences
//! with similarity weights, and weights on overlapping edge pairs, the solver
//! searches for the one-to-one mapping maximizing
//!
//! ```text
//! alpha * (node similarity of matched pairs)
//!     + (1 - alpha) * (similarity of induced overlapping edges)
//! ```
//!
//! The search runs max-product belief propagation over a factor graph built
//! from the candidate support, in log-ratio form. Two mechanisms control
//! convergence on loopy instances: an epsilon margin that penalizes
//! non-maximal row/column messages (borrowed from auction algorithms), and a
//! schedule that grows epsilon while the rounded objective stalls and resets
//! it on improvement. The final partial assignment is completed by an exact
//! auction solver for maximum weight bipartite matching.
//!
//! The crate is `no_std` compatible (requires `alloc`). The `parallel`
//! feature (implies `std`) runs message sweeps on a rayon pool; results are
//! bit-identical for any worker count.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bp;
pub mod candidates;
pub mod config;
pub mod eval;
pub mod graph;
pub mod mapping;
pub mod matching;
pub mod squares;

pub use bp::{solve, IterationStats, MessageState, SolveResult};
pub use candidates::{build_candidates, Candidate, CandidateError, CandidateSet};
pub use config::{ConfigError, FillMode, SolverConfig};
pub use graph::{Graph, GraphError};
pub use mapping::{MappedPair, Mapping, MappingError};
pub use squares::{compute_squares, unit_squares, SquareIndex};

use alloc::vec::Vec;

/// A full alignment instance: the two graphs, the candidate support and the
/// sparse index of overlapping edge pairs.
#[derive(Debug, Clone)]
pub struct Problem {
    pub graph_a: Graph,
    pub graph_b: Graph,
    pub candidates: CandidateSet,
    pub squares: SquareIndex,
}

impl Problem {
    /// Assembles a problem from already-validated parts.
    pub fn new(
        graph_a: Graph,
        graph_b: Graph,
        candidates: CandidateSet,
        squares: SquareIndex,
    ) -> Self {
        debug_assert_eq!(squares.candidate_count(), candidates.len());
        Self {
            graph_a,
            graph_b,
            candidates,
            squares,
        }
    }

    /// Builds a problem from raw candidate triples, with unit edge-pair
    /// weights and a node-similarity penalty `zeta`.
    pub fn build(
        graph_a: Graph,
        graph_b: Graph,
        raw_candidates: &[(u32, u32, f64)],
        zeta: f64,
    ) -> Result<Self, CandidateError> {
        let candidates = build_candidates(&graph_a, &graph_b, raw_candidates, zeta)?;
        let squares = unit_squares(&graph_a, &graph_b, &candidates);
        Ok(Self::new(graph_a, graph_b, candidates, squares))
    }

    pub fn candidate_count(&self) -> usize {
        self.candidates.len()
    }
}

/// Helper used by both sequential and parallel sweeps: recompute every slot
/// of `dst` from a pure per-index function (receiving the old value) and
/// return the largest absolute change. Slots are independent, so the
/// parallel path writes disjoint locations and reduces the change with
/// `f64::max`, which is exact for the finite values stored here; the result
/// does not depend on the worker count.
pub(crate) fn recompute_slots<F>(dst: &mut [f64], f: F) -> f64
where
    F: Fn(usize, f64) -> f64 + Sync,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        dst.par_iter_mut()
            .enumerate()
            .map(|(i, slot)| {
                let v = f(i, *slot);
                let delta = (v - *slot).abs();
                *slot = v;
                delta
            })
            .reduce(|| 0.0, f64::max)
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut max_delta = 0.0f64;
        for (i, slot) in dst.iter_mut().enumerate() {
            let v = f(i, *slot);
            max_delta = max_delta.max((v - *slot).abs());
            *slot = v;
        }
        max_delta
    }
}

/// Fills `dst` (resized to `len`) from a pure per-index function.
pub(crate) fn fill_slots<F>(dst: &mut Vec<f64>, len: usize, f: F)
where
    F: Fn(usize) -> f64 + Sync,
{
    dst.clear();
    dst.resize(len, 0.0);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        dst.par_iter_mut().enumerate().for_each(|(i, slot)| {
            *slot = f(i);
        });
    }
    #[cfg(not(feature = "parallel"))]
    {
        for (i, slot) in dst.iter_mut().enumerate() {
            *slot = f(i);
        }
    }
}
