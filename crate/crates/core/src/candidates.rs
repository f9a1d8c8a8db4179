//! The sparse candidate support: which node correspondences are allowed, and
//! with what similarity weight.

use alloc::vec::Vec;
use core::fmt;

use crate::graph::Graph;

/// An allowed correspondence between node `a` of graph A and node `b` of
/// graph B. `p` is the stored similarity after the penalty: `sigma_v - zeta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub a: u32,
    pub b: u32,
    pub p: f64,
}

/// The candidate list plus row/column indexes.
///
/// Candidates keep their input order (entries with zero raw similarity are
/// dropped, see [`build_candidates`]). Positions into the list are the
/// variable indices used throughout the solver.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSet {
    pairs: Vec<Candidate>,
    row_offsets: Vec<u32>,
    row_positions: Vec<u32>,
    col_offsets: Vec<u32>,
    col_positions: Vec<u32>,
    // candidate positions sorted by (a, b) for pair lookup
    sorted: Vec<u32>,
    node_count_a: u32,
    node_count_b: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CandidateError {
    NodeOutOfRange {
        position: usize,
        pair: (u32, u32),
        node_count_a: u32,
        node_count_b: u32,
    },
    DuplicatePair { position: usize, pair: (u32, u32) },
    NegativeSimilarity {
        position: usize,
        pair: (u32, u32),
        sigma_v: f64,
    },
}

impl fmt::Display for CandidateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CandidateError::NodeOutOfRange {
                position,
                pair,
                node_count_a,
                node_count_b,
            } => write!(
                f,
                "candidate #{position} ({}, {}) is outside 0..{node_count_a} x 0..{node_count_b}",
                pair.0, pair.1
            ),
            CandidateError::DuplicatePair { position, pair } => write!(
                f,
                "candidate #{position} ({}, {}) duplicates an earlier pair",
                pair.0, pair.1
            ),
            CandidateError::NegativeSimilarity {
                position,
                pair,
                sigma_v,
            } => write!(
                f,
                "candidate #{position} ({}, {}) has negative similarity {sigma_v}",
                pair.0, pair.1
            ),
        }
    }
}

impl core::error::Error for CandidateError {}

/// Validates raw `(a, b, sigma_v)` triples against the two graphs and builds
/// the candidate set with `p = sigma_v - zeta`.
///
/// Raw similarities must be non-negative. Entries with `sigma_v == 0` are
/// treated as infeasible matches and dropped. Duplicate pairs are rejected
/// even when one of them is a dropped zero entry.
pub fn build_candidates(
    graph_a: &Graph,
    graph_b: &Graph,
    raw: &[(u32, u32, f64)],
    zeta: f64,
) -> Result<CandidateSet, CandidateError> {
    let (na, nb) = (graph_a.node_count(), graph_b.node_count());

    for (position, &(a, b, sigma_v)) in raw.iter().enumerate() {
        if a >= na || b >= nb {
            return Err(CandidateError::NodeOutOfRange {
                position,
                pair: (a, b),
                node_count_a: na,
                node_count_b: nb,
            });
        }
        if sigma_v < 0.0 || !sigma_v.is_finite() {
            return Err(CandidateError::NegativeSimilarity {
                position,
                pair: (a, b),
                sigma_v,
            });
        }
    }

    let mut seen: Vec<(u32, u32, usize)> =
        raw.iter().enumerate().map(|(pos, &(a, b, _))| (a, b, pos)).collect();
    seen.sort_unstable();
    for w in seen.windows(2) {
        if (w[0].0, w[0].1) == (w[1].0, w[1].1) {
            return Err(CandidateError::DuplicatePair {
                position: w[0].2.max(w[1].2),
                pair: (w[0].0, w[0].1),
            });
        }
    }

    let pairs: Vec<Candidate> = raw
        .iter()
        .filter(|&&(_, _, sigma_v)| sigma_v > 0.0)
        .map(|&(a, b, sigma_v)| Candidate {
            a,
            b,
            p: sigma_v - zeta,
        })
        .collect();

    Ok(CandidateSet::from_pairs(pairs, na, nb))
}

impl CandidateSet {
    fn from_pairs(pairs: Vec<Candidate>, node_count_a: u32, node_count_b: u32) -> Self {
        let n = pairs.len();
        let mut row_offsets = alloc::vec![0u32; node_count_a as usize + 1];
        let mut col_offsets = alloc::vec![0u32; node_count_b as usize + 1];
        for c in &pairs {
            row_offsets[c.a as usize + 1] += 1;
            col_offsets[c.b as usize + 1] += 1;
        }
        for i in 0..node_count_a as usize {
            row_offsets[i + 1] += row_offsets[i];
        }
        for i in 0..node_count_b as usize {
            col_offsets[i + 1] += col_offsets[i];
        }

        let mut row_fill = row_offsets.clone();
        let mut col_fill = col_offsets.clone();
        let mut row_positions = alloc::vec![0u32; n];
        let mut col_positions = alloc::vec![0u32; n];
        for (pos, c) in pairs.iter().enumerate() {
            row_positions[row_fill[c.a as usize] as usize] = pos as u32;
            row_fill[c.a as usize] += 1;
            col_positions[col_fill[c.b as usize] as usize] = pos as u32;
            col_fill[c.b as usize] += 1;
        }

        let mut sorted: Vec<u32> = (0..n as u32).collect();
        sorted.sort_unstable_by_key(|&pos| {
            let c = &pairs[pos as usize];
            (c.a, c.b)
        });

        Self {
            pairs,
            row_offsets,
            row_positions,
            col_offsets,
            col_positions,
            sorted,
            node_count_a,
            node_count_b,
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[Candidate] {
        &self.pairs
    }

    pub fn get(&self, position: usize) -> &Candidate {
        &self.pairs[position]
    }

    pub fn node_count_a(&self) -> u32 {
        self.node_count_a
    }

    pub fn node_count_b(&self) -> u32 {
        self.node_count_b
    }

    /// Candidate positions whose first coordinate is `a`, in input order.
    pub fn row(&self, a: u32) -> &[u32] {
        let lo = self.row_offsets[a as usize] as usize;
        let hi = self.row_offsets[a as usize + 1] as usize;
        &self.row_positions[lo..hi]
    }

    /// Candidate positions whose second coordinate is `b`, in input order.
    pub fn col(&self, b: u32) -> &[u32] {
        let lo = self.col_offsets[b as usize] as usize;
        let hi = self.col_offsets[b as usize + 1] as usize;
        &self.col_positions[lo..hi]
    }

    /// Position of the candidate `(a, b)`, if present.
    pub fn position_of(&self, a: u32, b: u32) -> Option<u32> {
        self.sorted
            .binary_search_by_key(&(a, b), |&pos| {
                let c = &self.pairs[pos as usize];
                (c.a, c.b)
            })
            .ok()
            .map(|idx| self.sorted[idx])
    }
}
