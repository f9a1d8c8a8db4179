//! Objective decomposition, accuracy metrics, ground-truth composition, and
//! the brute-force reference oracles used to validate the solver.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::mapping::{Mapping, MappingError};
use crate::Problem;

/// The three reported scores of an assignment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectiveScore {
    pub similarity: f64,
    pub squares: f64,
    pub objective: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EvalError {
    /// The mapping selects a pair that is not in the candidate support.
    InfeasiblePair { a: u32, b: u32 },
    /// The instance exceeds an oracle's enumeration guard.
    TooManyCandidates { count: usize, limit: usize },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::InfeasiblePair { a, b } => {
                write!(f, "mapped pair ({a}, {b}) is not a candidate of the problem")
            }
            EvalError::TooManyCandidates { count, limit } => {
                write!(f, "instance has {count} candidates, oracle limit is {limit}")
            }
        }
    }
}

impl core::error::Error for EvalError {}

/// Scores a feasible mapping: similarity is the sum of candidate weights,
/// squares the sum over ordered square entries with both endpoints mapped,
/// and the objective their alpha blend.
pub fn objective(
    mapping: &Mapping,
    problem: &Problem,
    alpha: f64,
) -> Result<ObjectiveScore, EvalError> {
    let mut positions = Vec::with_capacity(mapping.len());
    for pair in mapping.pairs() {
        match problem.candidates.position_of(pair.a, pair.b) {
            Some(c) => positions.push(c),
            None => return Err(EvalError::InfeasiblePair { a: pair.a, b: pair.b }),
        }
    }
    let mut flags = Vec::new();
    let (similarity, squares, objective) =
        crate::bp::objective_of_positions(problem, &positions, alpha, &mut flags);
    Ok(ObjectiveScore {
        similarity,
        squares,
        objective,
    })
}

/// Like [`objective`], but silently skips pairs outside the candidate
/// support. Used to score reference assignments (for normalization) that
/// may contain correspondences the problem instance cannot express.
pub fn objective_on_support(
    pairs: impl IntoIterator<Item = (u32, u32)>,
    problem: &Problem,
    alpha: f64,
) -> ObjectiveScore {
    let positions: Vec<u32> = pairs
        .into_iter()
        .filter_map(|(a, b)| problem.candidates.position_of(a, b))
        .collect();
    let mut flags = Vec::new();
    let (similarity, squares, objective) =
        crate::bp::objective_of_positions(problem, &positions, alpha, &mut flags);
    ObjectiveScore {
        similarity,
        squares,
        objective,
    }
}

/// A reference one-to-one assignment.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroundTruth {
    forward: BTreeMap<u32, u32>,
    backward: BTreeMap<u32, u32>,
}

impl GroundTruth {
    pub fn new(pairs: &[(u32, u32)]) -> Result<Self, MappingError> {
        let mut forward = BTreeMap::new();
        let mut backward = BTreeMap::new();
        for &(a, b) in pairs {
            if forward.insert(a, b).is_some() {
                return Err(MappingError::DuplicateRow { node: a });
            }
            if backward.insert(b, a).is_some() {
                return Err(MappingError::DuplicateCol { node: b });
            }
        }
        Ok(Self { forward, backward })
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn contains(&self, a: u32, b: u32) -> bool {
        self.forward.get(&a) == Some(&b)
    }

    pub fn image_of(&self, a: u32) -> Option<u32> {
        self.forward.get(&a).copied()
    }

    /// Pairs sorted by the first coordinate.
    pub fn pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.forward.iter().map(|(&a, &b)| (a, b))
    }
}

/// Precision and recall of a predicted mapping against a reference; empty
/// denominators count as perfect (0/0 = 1).
pub fn precision_recall(predicted: &Mapping, truth: &GroundTruth) -> (f64, f64) {
    let hits = predicted
        .pairs()
        .iter()
        .filter(|pair| truth.contains(pair.a, pair.b))
        .count();
    let precision = if predicted.is_empty() {
        1.0
    } else {
        hits as f64 / predicted.len() as f64
    };
    let recall = if truth.is_empty() {
        1.0
    } else {
        hits as f64 / truth.len() as f64
    };
    (precision, recall)
}

/// Chains reference assignments: `(i, k)` survives iff every link maps it
/// forward, exactly the iterated boolean matrix product. An empty chain
/// yields an empty assignment.
pub fn compose_ground_truth(chain: &[GroundTruth]) -> GroundTruth {
    let mut iter = chain.iter();
    let Some(first) = iter.next() else {
        return GroundTruth::default();
    };
    let mut acc = first.clone();
    for next in iter {
        let pairs: Vec<(u32, u32)> = acc
            .pairs()
            .filter_map(|(a, mid)| next.image_of(mid).map(|b| (a, b)))
            .collect();
        acc = GroundTruth::new(&pairs).expect("composition of one-to-one maps is one-to-one");
    }
    acc
}

/// Enumeration guard of [`brute_force_nap`]. Sized so that a full 6x6
/// candidate grid (used by the small-instance optimality checks) is still
/// enumerable in well under a second.
pub const BRUTE_FORCE_CANDIDATE_LIMIT: usize = 40;

/// Exhaustive search for the optimal feasible sub-mapping over the candidate
/// support. Test oracle; rejects instances above
/// [`BRUTE_FORCE_CANDIDATE_LIMIT`] candidates.
pub fn brute_force_nap(problem: &Problem, alpha: f64) -> Result<(Mapping, f64), EvalError> {
    let cands = &problem.candidates;
    let nc = cands.len();
    if nc > BRUTE_FORCE_CANDIDATE_LIMIT {
        return Err(EvalError::TooManyCandidates {
            count: nc,
            limit: BRUTE_FORCE_CANDIDATE_LIMIT,
        });
    }

    // Symmetric square adjacency: adding the later endpoint of an entry
    // contributes the entry's weight exactly once.
    let mut sym: Vec<Vec<(u32, f64)>> = alloc::vec![Vec::new(); nc];
    for c in 0..nc {
        for (d, w) in problem.squares.entries(c) {
            sym[c].push((d, w));
            sym[d as usize].push((c as u32, w));
        }
    }

    let rows: Vec<u32> = (0..cands.node_count_a())
        .filter(|&a| !cands.row(a).is_empty())
        .collect();

    struct Search<'a> {
        problem: &'a Problem,
        sym: &'a [Vec<(u32, f64)>],
        rows: &'a [u32],
        alpha: f64,
        col_used: Vec<bool>,
        selected: Vec<bool>,
        chosen: Vec<u32>,
        best_value: f64,
        best_chosen: Vec<u32>,
    }

    impl Search<'_> {
        fn run(&mut self, row_idx: usize, value: f64) {
            if row_idx == self.rows.len() {
                if value > self.best_value {
                    self.best_value = value;
                    self.best_chosen = self.chosen.clone();
                }
                return;
            }
            // skip this row
            self.run(row_idx + 1, value);
            let row = self.rows[row_idx];
            for &c in self.problem.candidates.row(row) {
                let cand = self.problem.candidates.get(c as usize);
                if self.col_used[cand.b as usize] {
                    continue;
                }
                let mut delta = self.alpha * cand.p;
                for &(d, w) in &self.sym[c as usize] {
                    if self.selected[d as usize] {
                        delta += (1.0 - self.alpha) * w;
                    }
                }
                self.col_used[cand.b as usize] = true;
                self.selected[c as usize] = true;
                self.chosen.push(c);
                self.run(row_idx + 1, value + delta);
                self.chosen.pop();
                self.selected[c as usize] = false;
                self.col_used[cand.b as usize] = false;
            }
        }
    }

    let mut search = Search {
        problem,
        sym: &sym,
        rows: &rows,
        alpha,
        col_used: alloc::vec![false; cands.node_count_b() as usize],
        selected: alloc::vec![false; nc],
        chosen: Vec::new(),
        best_value: 0.0,
        best_chosen: Vec::new(),
    };
    search.run(0, 0.0);

    let pairs = search
        .best_chosen
        .iter()
        .map(|&c| {
            let cand = cands.get(c as usize);
            crate::mapping::MappedPair {
                a: cand.a,
                b: cand.b,
                score: cand.p,
            }
        })
        .collect();
    let mapping = Mapping::new(pairs).expect("search respects one-to-one constraints");
    Ok((mapping, search.best_value))
}

/// Enumeration guard of [`naive_max_product`].
pub const NAIVE_CANDIDATE_LIMIT: usize = 6;

/// Log-ratio snapshot of every message family after one sweep of the
/// unsimplified max-product updates.
#[derive(Debug, Clone, PartialEq)]
pub struct NaiveSweep {
    pub m_f: Vec<f64>,
    pub m_g: Vec<f64>,
    /// Per directed slot `(c -> d)`: factor reply received by `c`.
    pub m_in: Vec<f64>,
    pub m_xf: Vec<f64>,
    pub m_xg: Vec<f64>,
    /// Per directed slot `(c -> d)`: variable message sent by `c`.
    pub m_xc: Vec<f64>,
    pub marginals: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NaiveTrace {
    /// Directed pairwise slots `(from, to)`, sorted.
    pub links: Vec<(u32, u32)>,
    pub sweeps: Vec<NaiveSweep>,
}

/// Reference max-product implementation over explicit two-valued message
/// tables on the factor graph (one unary factor per candidate, one row and
/// one column constraint factor per occupied node, one pairwise factor per
/// linked candidate pair). Messages are stored as log-value tables indexed
/// by the variable's {0,1} assignment; constraint factors are evaluated by
/// literal enumeration of their neighborhood. Emits the log-ratio
/// `table[1] - table[0]` of every message after each sweep.
///
/// No slackness margin and no damping: this is the plain update rule the
/// simplified log-ratio sweeps must reproduce.
pub fn naive_max_product(
    problem: &Problem,
    alpha: f64,
    sweeps: usize,
) -> Result<NaiveTrace, EvalError> {
    let cands = &problem.candidates;
    let nc = cands.len();
    if nc > NAIVE_CANDIDATE_LIMIT {
        return Err(EvalError::TooManyCandidates {
            count: nc,
            limit: NAIVE_CANDIDATE_LIMIT,
        });
    }

    // Merged pairwise factors: both ordered square entries between a pair of
    // candidates multiply into one factor, so their exponents add.
    let mut merged: BTreeMap<(u32, u32), f64> = BTreeMap::new();
    for c in 0..nc {
        for (d, w) in problem.squares.entries(c) {
            *merged.entry((c as u32, d)).or_insert(0.0) += w;
            *merged.entry((d, c as u32)).or_insert(0.0) += w;
        }
    }
    let links: Vec<(u32, u32)> = merged.keys().copied().collect();
    let weights: Vec<f64> = merged.values().copied().collect();
    let slot_of: BTreeMap<(u32, u32), usize> =
        links.iter().enumerate().map(|(k, &cd)| (cd, k)).collect();
    let rev: Vec<usize> = links.iter().map(|&(c, d)| slot_of[&(d, c)]).collect();
    let slots_of = |c: u32| -> Vec<usize> {
        links
            .iter()
            .enumerate()
            .filter(|(_, &(from, _))| from == c)
            .map(|(k, _)| k)
            .collect()
    };

    type Table = [f64; 2];
    let zero: Table = [0.0, 0.0];
    let ratio = |t: &Table| t[1] - t[0];
    let unary = |c: usize| -> Table { [0.0, alpha * cands.get(c).p] };

    let mut mu_f: Vec<Table> = alloc::vec![zero; nc]; // X_c -> row factor
    let mut mu_g: Vec<Table> = alloc::vec![zero; nc]; // X_c -> col factor
    let mut mu_pair: Vec<Table> = alloc::vec![zero; links.len()]; // X_from -> pair factor
    let mut lam_f: Vec<Table> = alloc::vec![zero; nc];
    let mut lam_g: Vec<Table> = alloc::vec![zero; nc];
    let mut lam_pair: Vec<Table> = alloc::vec![zero; links.len()];

    // Literal evaluation of a one-of-at-most-one constraint factor: for each
    // value of the target variable, enumerate every assignment of the other
    // member variables, drop infeasible ones, and maximize the sum of their
    // message tables.
    let constraint_message = |members: &[u32], target: u32, tables: &[Table]| -> Table {
        let others: Vec<u32> = members.iter().copied().filter(|&m| m != target).collect();
        let mut out = [f64::NEG_INFINITY; 2];
        for (x_target, slot) in out.iter_mut().enumerate() {
            for mask in 0u32..(1 << others.len()) {
                let chosen = mask.count_ones() as usize + x_target;
                if chosen > 1 {
                    continue;
                }
                let mut total = 0.0;
                for (bit, &other) in others.iter().enumerate() {
                    let x = ((mask >> bit) & 1) as usize;
                    total += tables[other as usize][x];
                }
                if total > *slot {
                    *slot = total;
                }
            }
        }
        out
    };

    let mut trace = NaiveTrace {
        links: links.clone(),
        sweeps: Vec::with_capacity(sweeps),
    };

    for _ in 0..sweeps {
        // factor messages from current variable messages
        for c in 0..nc {
            let cand = cands.get(c);
            lam_f[c] = constraint_message(cands.row(cand.a), c as u32, &mu_f);
            lam_g[c] = constraint_message(cands.col(cand.b), c as u32, &mu_g);
        }
        for k in 0..links.len() {
            let incoming = &mu_pair[rev[k]];
            let w = (1.0 - alpha) * weights[k];
            let mut out = zero;
            for (x_c, slot) in out.iter_mut().enumerate() {
                *slot = (0..2)
                    .map(|x_d| w * (x_c as f64) * (x_d as f64) + incoming[x_d])
                    .fold(f64::NEG_INFINITY, f64::max);
            }
            lam_pair[k] = out;
        }

        // marginal estimate from the fresh factor messages
        let mut marginals = alloc::vec![0.0; nc];
        for (c, marginal) in marginals.iter_mut().enumerate() {
            let mut table = unary(c);
            for x in 0..2 {
                table[x] += lam_f[c][x] + lam_g[c][x];
                for &k in &slots_of(c as u32) {
                    table[x] += lam_pair[k][x];
                }
            }
            debug_assert!(table.iter().all(|v| v.is_finite()));
            *marginal = ratio(&table);
        }

        // variable messages for the next iteration
        let mut next_mu_f = alloc::vec![zero; nc];
        let mut next_mu_g = alloc::vec![zero; nc];
        let mut next_mu_pair = alloc::vec![zero; links.len()];
        for c in 0..nc {
            let own_slots = slots_of(c as u32);
            for x in 0..2 {
                let u = unary(c)[x];
                let pair_sum: f64 = own_slots.iter().map(|&k| lam_pair[k][x]).sum();
                next_mu_f[c][x] = u + lam_g[c][x] + pair_sum;
                next_mu_g[c][x] = u + lam_f[c][x] + pair_sum;
                for &k in &own_slots {
                    // direct exclusion sum over the other pairwise factors
                    let excl: f64 = own_slots
                        .iter()
                        .filter(|&&e| e != k)
                        .map(|&e| lam_pair[e][x])
                        .sum();
                    next_mu_pair[k][x] = u + lam_f[c][x] + lam_g[c][x] + excl;
                }
            }
        }
        mu_f = next_mu_f;
        mu_g = next_mu_g;
        mu_pair = next_mu_pair;

        trace.sweeps.push(NaiveSweep {
            m_f: lam_f.iter().map(ratio).collect(),
            m_g: lam_g.iter().map(ratio).collect(),
            m_in: lam_pair.iter().map(ratio).collect(),
            m_xf: mu_f.iter().map(ratio).collect(),
            m_xg: mu_g.iter().map(ratio).collect(),
            m_xc: mu_pair.iter().map(ratio).collect(),
            marginals,
        });
    }

    Ok(trace)
}
