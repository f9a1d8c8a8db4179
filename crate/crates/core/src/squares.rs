//! The sparse index of overlapping edge pairs ("squares").
//!
//! A square joins candidate `c = (i, i')` to candidate `d = (j, j')` when
//! `(i, j)` is an edge of A and `(i', j')` an edge of B. The entry carries
//! the edge-pair similarity; entries are ordered, so the reverse entry
//! `(d, c)` exists only when the reverse edges exist in both graphs.

use alloc::vec::Vec;

use crate::candidates::CandidateSet;
use crate::graph::Graph;

/// CSR storage of the ordered square entries, grouped by source candidate
/// position and sorted by partner position within each group.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareIndex {
    offsets: Vec<u32>,
    partners: Vec<u32>,
    weights: Vec<f64>,
}

/// Enumerates the square entries induced by the candidate support.
///
/// `sigma_e` maps an A edge and a B edge to their similarity; pairs whose
/// similarity is not strictly positive produce no entry. Passing a constant
/// `1.0` counts plain edge overlaps (see [`unit_squares`]).
pub fn compute_squares<F>(
    graph_a: &Graph,
    graph_b: &Graph,
    cands: &CandidateSet,
    sigma_e: F,
) -> SquareIndex
where
    F: Fn((u32, u32), (u32, u32)) -> f64,
{
    let n = cands.len();
    let mut offsets = alloc::vec![0u32; n + 1];
    let mut partners: Vec<u32> = Vec::new();
    let mut weights: Vec<f64> = Vec::new();

    let mut scratch: Vec<(u32, f64)> = Vec::new();
    for position in 0..n {
        let c = cands.get(position);
        scratch.clear();
        for j in graph_a.out_neighbors(c.a) {
            for jp in graph_b.out_neighbors(c.b) {
                if let Some(partner) = cands.position_of(j, jp) {
                    let w = sigma_e((c.a, j), (c.b, jp));
                    if w > 0.0 {
                        scratch.push((partner, w));
                    }
                }
            }
        }
        // Canonical order by partner position: entry order is then
        // independent of edge input order and of node labels.
        scratch.sort_unstable_by_key(|&(partner, _)| partner);
        for &(partner, w) in &scratch {
            partners.push(partner);
            weights.push(w);
        }
        offsets[position + 1] = partners.len() as u32;
    }

    SquareIndex {
        offsets,
        partners,
        weights,
    }
}

/// [`compute_squares`] with constant edge-pair similarity 1.
pub fn unit_squares(graph_a: &Graph, graph_b: &Graph, cands: &CandidateSet) -> SquareIndex {
    compute_squares(graph_a, graph_b, cands, |_, _| 1.0)
}

impl SquareIndex {
    /// Number of candidates the index was built for.
    pub fn candidate_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Total number of ordered entries.
    pub fn entry_count(&self) -> usize {
        self.partners.len()
    }

    /// Ordered entries `(partner, weight)` of candidate `position`.
    pub fn entries(&self, position: usize) -> impl Iterator<Item = (u32, f64)> + '_ {
        let lo = self.offsets[position] as usize;
        let hi = self.offsets[position + 1] as usize;
        self.partners[lo..hi]
            .iter()
            .copied()
            .zip(self.weights[lo..hi].iter().copied())
    }

    pub fn degree(&self, position: usize) -> usize {
        (self.offsets[position + 1] - self.offsets[position]) as usize
    }

    /// Weight of the ordered entry `(from, to)`, if present.
    pub fn weight_of(&self, from: usize, to: u32) -> Option<f64> {
        let lo = self.offsets[from] as usize;
        let hi = self.offsets[from + 1] as usize;
        self.partners[lo..hi]
            .binary_search(&to)
            .ok()
            .map(|idx| self.weights[lo + idx])
    }
}
