//! Directed simple graphs over dense integer node ids.

use alloc::vec::Vec;
use core::fmt;

/// One side of an alignment instance.
///
/// Nodes are `0..node_count`. Edges are ordered pairs without self-loops or
/// duplicates; they are stored sorted, so two graphs built from the same edge
/// set compare equal regardless of input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    node_count: u32,
    edges: Vec<(u32, u32)>,
    out_offsets: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    /// An edge endpoint is not a valid node id. `position` is the index of
    /// the offending edge in the input sequence.
    NodeOutOfRange {
        position: usize,
        edge: (u32, u32),
        node_count: u32,
    },
    SelfLoop { position: usize, node: u32 },
    DuplicateEdge { position: usize, edge: (u32, u32) },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::NodeOutOfRange {
                position,
                edge,
                node_count,
            } => write!(
                f,
                "edge #{position} ({} -> {}) references a node outside 0..{node_count}",
                edge.0, edge.1
            ),
            GraphError::SelfLoop { position, node } => {
                write!(f, "edge #{position} is a self-loop on node {node}")
            }
            GraphError::DuplicateEdge { position, edge } => write!(
                f,
                "edge #{position} ({} -> {}) duplicates an earlier edge",
                edge.0, edge.1
            ),
        }
    }
}

impl core::error::Error for GraphError {}

impl Graph {
    pub fn new(node_count: u32, input_edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        for (position, &(u, v)) in input_edges.iter().enumerate() {
            if u >= node_count || v >= node_count {
                return Err(GraphError::NodeOutOfRange {
                    position,
                    edge: (u, v),
                    node_count,
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop { position, node: u });
            }
        }

        let mut indexed: Vec<(u32, u32, usize)> = input_edges
            .iter()
            .enumerate()
            .map(|(pos, &(u, v))| (u, v, pos))
            .collect();
        indexed.sort_unstable();
        for w in indexed.windows(2) {
            if (w[0].0, w[0].1) == (w[1].0, w[1].1) {
                // Report the later of the two input positions.
                return Err(GraphError::DuplicateEdge {
                    position: w[0].2.max(w[1].2),
                    edge: (w[0].0, w[0].1),
                });
            }
        }

        let edges: Vec<(u32, u32)> = indexed.iter().map(|&(u, v, _)| (u, v)).collect();
        let mut out_offsets = alloc::vec![0u32; node_count as usize + 1];
        for &(u, _) in &edges {
            out_offsets[u as usize + 1] += 1;
        }
        for i in 0..node_count as usize {
            out_offsets[i + 1] += out_offsets[i];
        }

        Ok(Self {
            node_count,
            edges,
            out_offsets,
        })
    }

    /// Graph with no edges.
    pub fn edgeless(node_count: u32) -> Self {
        Self::new(node_count, &[]).expect("edgeless graph is always valid")
    }

    pub fn node_count(&self) -> u32 {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// All edges, sorted by `(source, target)`.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Out-neighbors of `u`, ascending.
    pub fn out_neighbors(&self, u: u32) -> impl Iterator<Item = u32> + '_ {
        let lo = self.out_offsets[u as usize] as usize;
        let hi = self.out_offsets[u as usize + 1] as usize;
        self.edges[lo..hi].iter().map(|&(_, v)| v)
    }

    pub fn out_degree(&self, u: u32) -> usize {
        (self.out_offsets[u as usize + 1] - self.out_offsets[u as usize]) as usize
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        if u >= self.node_count {
            return false;
        }
        let lo = self.out_offsets[u as usize] as usize;
        let hi = self.out_offsets[u as usize + 1] as usize;
        self.edges[lo..hi].binary_search_by_key(&v, |&(_, t)| t).is_ok()
    }
}
