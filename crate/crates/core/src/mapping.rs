//! One-to-one (possibly partial) node correspondences.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

/// A matched pair with the score it was selected at.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MappedPair {
    pub a: u32,
    pub b: u32,
    pub score: f64,
}

/// A feasible assignment: no node of either side appears twice.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Mapping {
    pairs: Vec<MappedPair>,
    a_to_b: BTreeMap<u32, u32>,
    b_to_a: BTreeMap<u32, u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MappingError {
    DuplicateRow { node: u32 },
    DuplicateCol { node: u32 },
}

impl fmt::Display for MappingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MappingError::DuplicateRow { node } => {
                write!(f, "node {node} of graph A is mapped more than once")
            }
            MappingError::DuplicateCol { node } => {
                write!(f, "node {node} of graph B is mapped more than once")
            }
        }
    }
}

impl core::error::Error for MappingError {}

impl Mapping {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(pairs: Vec<MappedPair>) -> Result<Self, MappingError> {
        let mut a_to_b = BTreeMap::new();
        let mut b_to_a = BTreeMap::new();
        for pair in &pairs {
            if a_to_b.insert(pair.a, pair.b).is_some() {
                return Err(MappingError::DuplicateRow { node: pair.a });
            }
            if b_to_a.insert(pair.b, pair.a).is_some() {
                return Err(MappingError::DuplicateCol { node: pair.b });
            }
        }
        Ok(Self {
            pairs,
            a_to_b,
            b_to_a,
        })
    }

    pub fn from_triples(triples: &[(u32, u32, f64)]) -> Result<Self, MappingError> {
        Self::new(
            triples
                .iter()
                .map(|&(a, b, score)| MappedPair { a, b, score })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs in insertion order.
    pub fn pairs(&self) -> &[MappedPair] {
        &self.pairs
    }

    pub fn image_of(&self, a: u32) -> Option<u32> {
        self.a_to_b.get(&a).copied()
    }

    pub fn preimage_of(&self, b: u32) -> Option<u32> {
        self.b_to_a.get(&b).copied()
    }

    pub fn contains_pair(&self, a: u32, b: u32) -> bool {
        self.a_to_b.get(&a) == Some(&b)
    }

    pub fn uses_row(&self, a: u32) -> bool {
        self.a_to_b.contains_key(&a)
    }

    pub fn uses_col(&self, b: u32) -> bool {
        self.b_to_a.contains_key(&b)
    }
}
