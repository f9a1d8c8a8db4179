//! The message-passing solver.
//!
//! All messages are kept as log-ratios `log(lambda(1) / lambda(0))`, which
//! halves the work of the explicit two-valued tables. Per candidate `c` the
//! state holds the messages exchanged with its row factor (`m_xf`, `m_f`)
//! and its column factor (`m_xg`, `m_g`); per pairwise-factor slot it holds
//! the outgoing variable message (`m_xc`) and the incoming factor reply
//! (`m_in`).
//!
//! A sweep is synchronous: factor messages are computed from the current
//! variable messages, then variable messages from those factor messages.
//! The row/column messages carry the slackness penalty: a candidate whose
//! outgoing message is not its row (column) maximum is charged the current
//! epsilon, which breaks ties and forces convergence on loopy instances.

use alloc::vec::Vec;

use crate::candidates::CandidateSet;
use crate::config::{ConfigError, FillMode, SolverConfig};
use crate::mapping::{MappedPair, Mapping};
use crate::matching::{solve_auction, solve_auction_complete, BipartiteInstance};
use crate::squares::SquareIndex;
use crate::{fill_slots, recompute_slots, Problem};

#[inline]
fn pos(x: f64) -> f64 {
    x.max(0.0)
}

/// Factor between the message scale and the epsilon ceiling. Beyond roughly
/// this multiple the slackness penalty dwarfs every energy in the instance
/// and further growth only freezes the sweep, so the schedule wraps around
/// instead.
const EPSILON_CEILING_FACTOR: f64 = 64.0;

/// Pairwise-factor adjacency between candidates, derived from the square
/// index. The two ordered square entries between `c` and `d` (when both
/// exist) describe one pairwise interaction, so their weights are merged;
/// slot `(c -> d)` and its reverse `(d -> c)` both carry the merged weight.
#[derive(Debug, Clone)]
struct PairLinks {
    offsets: Vec<u32>,
    owner: Vec<u32>,
    partner: Vec<u32>,
    weight: Vec<f64>,
    rev: Vec<u32>,
}

impl PairLinks {
    fn build(squares: &SquareIndex) -> Self {
        let n = squares.candidate_count();
        let mut half: Vec<(u32, u32, f64)> = Vec::with_capacity(squares.entry_count() * 2);
        for c in 0..n {
            for (d, w) in squares.entries(c) {
                half.push((c as u32, d, w));
                half.push((d, c as u32, w));
            }
        }
        half.sort_unstable_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));

        let mut owner: Vec<u32> = Vec::new();
        let mut partner: Vec<u32> = Vec::new();
        let mut weight: Vec<f64> = Vec::new();
        for (c, d, w) in half {
            if owner.last() == Some(&c) && partner.last() == Some(&d) {
                let last = weight.len() - 1;
                weight[last] += w;
            } else {
                owner.push(c);
                partner.push(d);
                weight.push(w);
            }
        }

        let mut offsets = alloc::vec![0u32; n + 1];
        for &c in &owner {
            offsets[c as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }

        let mut rev = alloc::vec![0u32; owner.len()];
        for k in 0..owner.len() {
            let (c, d) = (owner[k], partner[k]);
            let lo = offsets[d as usize] as usize;
            let hi = offsets[d as usize + 1] as usize;
            let idx = partner[lo..hi]
                .binary_search(&c)
                .expect("pair adjacency is symmetric");
            rev[k] = (lo + idx) as u32;
        }

        Self {
            offsets,
            owner,
            partner,
            weight,
            rev,
        }
    }

    #[inline]
    fn slots_of(&self, c: usize) -> core::ops::Range<usize> {
        self.offsets[c] as usize..self.offsets[c + 1] as usize
    }

    fn len(&self) -> usize {
        self.owner.len()
    }
}

/// Per-group running maximum, its position, and the best value excluding
/// that position. Empty groups keep negative infinity, realizing the
/// convention that a maximum over no competitors contributes nothing.
#[derive(Debug, Clone, Copy)]
struct GroupTop {
    max: f64,
    argmax: u32,
    second: f64,
}

impl GroupTop {
    const EMPTY: GroupTop = GroupTop {
        max: f64::NEG_INFINITY,
        argmax: u32::MAX,
        second: f64::NEG_INFINITY,
    };
}

/// The iterated log-ratio message state.
#[derive(Debug, Clone)]
pub struct MessageState {
    links: PairLinks,
    m_xf: Vec<f64>,
    m_xg: Vec<f64>,
    m_f: Vec<f64>,
    m_g: Vec<f64>,
    m_xc: Vec<f64>,
    m_in: Vec<f64>,
    incoming_sum: Vec<f64>,
    row_stats: Vec<GroupTop>,
    col_stats: Vec<GroupTop>,
    epsilon: f64,
    iteration: u32,
}

impl MessageState {
    /// All messages start at zero (the neutral log-ratio) and epsilon at its
    /// configured initial value.
    pub fn init(problem: &Problem, config: &SolverConfig) -> Self {
        let nc = problem.candidates.len();
        let links = PairLinks::build(&problem.squares);
        let slots = links.len();
        Self {
            links,
            m_xf: alloc::vec![0.0; nc],
            m_xg: alloc::vec![0.0; nc],
            m_f: alloc::vec![0.0; nc],
            m_g: alloc::vec![0.0; nc],
            m_xc: alloc::vec![0.0; slots],
            m_in: alloc::vec![0.0; slots],
            incoming_sum: alloc::vec![0.0; nc],
            row_stats: alloc::vec![GroupTop::EMPTY; problem.candidates.node_count_a() as usize],
            col_stats: alloc::vec![GroupTop::EMPTY; problem.candidates.node_count_b() as usize],
            epsilon: config.epsilon0,
            iteration: 0,
        }
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn set_epsilon(&mut self, epsilon: f64) {
        self.epsilon = epsilon;
    }

    pub fn iteration(&self) -> u32 {
        self.iteration
    }

    pub fn m_xf(&self) -> &[f64] {
        &self.m_xf
    }

    pub fn m_xg(&self) -> &[f64] {
        &self.m_xg
    }

    pub fn m_f(&self) -> &[f64] {
        &self.m_f
    }

    pub fn m_g(&self) -> &[f64] {
        &self.m_g
    }

    /// Variable-to-pairwise-factor messages, one per directed slot.
    pub fn m_xc(&self) -> &[f64] {
        &self.m_xc
    }

    /// Pairwise-factor replies, one per directed slot `(c -> d)`: the
    /// message candidate `c` receives from the factor it shares with `d`.
    pub fn m_in(&self) -> &[f64] {
        &self.m_in
    }

    /// Directed slots `(owner, partner)` in storage order.
    pub fn link_slots(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.links
            .owner
            .iter()
            .copied()
            .zip(self.links.partner.iter().copied())
    }

    fn compute_group_stats(values: &[f64], groups: &CandidateGroups<'_>, stats: &mut [GroupTop]) {
        for (g, stat) in stats.iter_mut().enumerate() {
            let mut top = GroupTop::EMPTY;
            for &pos in groups.members(g as u32) {
                let v = values[pos as usize];
                if v > top.max {
                    top.second = top.max;
                    top.max = v;
                    top.argmax = pos;
                } else if v > top.second {
                    top.second = v;
                }
            }
            *stat = top;
        }
    }

    /// Recomputes the factor-to-variable messages from the current variable
    /// messages; returns the largest absolute change.
    ///
    /// Row message for candidate `c` in row `i`:
    /// `-(max over other row members of m_xf)+` minus epsilon when `m_xf[c]`
    /// is not the row maximum; columns are symmetric. Pairwise reply on slot
    /// `(c -> d)` with merged weight `w`:
    /// `((1 - alpha) w + m_xc[d -> c])+ - (m_xc[d -> c])+`.
    pub fn factor_sweep(&mut self, problem: &Problem, config: &SolverConfig) -> f64 {
        let cands = &problem.candidates;
        let alpha = config.alpha;
        let eps = self.epsilon;

        Self::compute_group_stats(&self.m_xf, &CandidateGroups::rows(cands), &mut self.row_stats);
        Self::compute_group_stats(&self.m_xg, &CandidateGroups::cols(cands), &mut self.col_stats);

        let mut max_delta;
        {
            let row_stats = &self.row_stats;
            let m_xf = &self.m_xf;
            max_delta = recompute_slots(&mut self.m_f, |c, _| {
                let top = row_stats[cands.get(c).a as usize];
                let others = if c as u32 == top.argmax { top.second } else { top.max };
                let penalty = if m_xf[c] < top.max { eps } else { 0.0 };
                -pos(others) - penalty
            });
        }
        {
            let col_stats = &self.col_stats;
            let m_xg = &self.m_xg;
            max_delta = max_delta.max(recompute_slots(&mut self.m_g, |c, _| {
                let top = col_stats[cands.get(c).b as usize];
                let others = if c as u32 == top.argmax { top.second } else { top.max };
                let penalty = if m_xg[c] < top.max { eps } else { 0.0 };
                -pos(others) - penalty
            }));
        }
        {
            let links = &self.links;
            let m_xc = &self.m_xc;
            max_delta = max_delta.max(recompute_slots(&mut self.m_in, |k, _| {
                let w = (1.0 - alpha) * links.weight[k];
                let from_partner = m_xc[links.rev[k] as usize];
                pos(w + from_partner) - pos(from_partner)
            }));
        }
        {
            let links = &self.links;
            let m_in = &self.m_in;
            fill_slots(&mut self.incoming_sum, cands.len(), |c| {
                m_in[links.slots_of(c)].iter().sum()
            });
        }
        max_delta
    }

    /// Recomputes the variable-to-factor messages from the current factor
    /// messages; returns the largest absolute change. With damping `g > 0`
    /// every stored message is `g * old + (1 - g) * new`.
    pub fn variable_sweep(&mut self, problem: &Problem, config: &SolverConfig) -> f64 {
        let cands = &problem.candidates;
        let alpha = config.alpha;
        let damping = config.damping;
        let mix = move |old: f64, new: f64| {
            if damping > 0.0 {
                damping * old + (1.0 - damping) * new
            } else {
                new
            }
        };

        let mut max_delta;
        {
            let m_g = &self.m_g;
            let sum = &self.incoming_sum;
            max_delta = recompute_slots(&mut self.m_xf, |c, old| {
                mix(old, alpha * cands.get(c).p + m_g[c] + sum[c])
            });
        }
        {
            let m_f = &self.m_f;
            let sum = &self.incoming_sum;
            max_delta = max_delta.max(recompute_slots(&mut self.m_xg, |c, old| {
                mix(old, alpha * cands.get(c).p + m_f[c] + sum[c])
            }));
        }
        {
            let links = &self.links;
            let m_f = &self.m_f;
            let m_g = &self.m_g;
            let m_in = &self.m_in;
            let sum = &self.incoming_sum;
            max_delta = max_delta.max(recompute_slots(&mut self.m_xc, |k, old| {
                let c = links.owner[k] as usize;
                // The sum over all other partners is the full sum minus this
                // slot's own incoming message.
                let excl = sum[c] - m_in[k];
                mix(old, alpha * cands.get(c).p + m_f[c] + m_g[c] + excl)
            }));
        }
        self.iteration += 1;
        max_delta
    }

    /// Max-marginal log-ratio of candidate `c`; its sign drives rounding.
    pub fn max_marginal(&self, problem: &Problem, config: &SolverConfig, c: usize) -> f64 {
        let cand = problem.candidates.get(c);
        config.alpha * cand.p + self.m_f[c] + self.m_g[c] + self.incoming_sum[c]
    }

    /// Writes every candidate's max-marginal log-ratio into `out`.
    pub fn marginals_into(&self, problem: &Problem, config: &SolverConfig, out: &mut Vec<f64>) {
        let cands = &problem.candidates;
        let alpha = config.alpha;
        let m_f = &self.m_f;
        let m_g = &self.m_g;
        let sum = &self.incoming_sum;
        fill_slots(out, cands.len(), |c| {
            alpha * cands.get(c).p + m_f[c] + m_g[c] + sum[c]
        });
    }
}

/// Borrow of either the row or the column grouping of a candidate set.
struct CandidateGroups<'a> {
    cands: &'a CandidateSet,
    rows: bool,
}

impl<'a> CandidateGroups<'a> {
    fn rows(cands: &'a CandidateSet) -> Self {
        Self { cands, rows: true }
    }

    fn cols(cands: &'a CandidateSet) -> Self {
        Self { cands, rows: false }
    }

    fn members(&self, g: u32) -> &[u32] {
        if self.rows {
            self.cands.row(g)
        } else {
            self.cands.col(g)
        }
    }
}

/// Converts the current max-marginals into a feasible partial mapping.
///
/// A candidate is kept only when its log-ratio is strictly positive and is
/// the unique strict maximum of both its row and its column. Ties select
/// nothing; conflicts are left to later iterations or the final matching
/// pass.
pub fn round_assignment(state: &MessageState, problem: &Problem, config: &SolverConfig) -> Mapping {
    let mut marginals = Vec::new();
    state.marginals_into(problem, config, &mut marginals);
    let mut positions = Vec::new();
    round_positions(&problem.candidates, &marginals, &mut positions);
    let pairs = positions
        .iter()
        .map(|&c| {
            let cand = problem.candidates.get(c as usize);
            MappedPair {
                a: cand.a,
                b: cand.b,
                score: marginals[c as usize],
            }
        })
        .collect();
    Mapping::new(pairs).expect("strict row/column maxima cannot collide")
}

/// Candidate positions selected by the rounding rule, in position order.
fn round_positions(cands: &CandidateSet, marginals: &[f64], out: &mut Vec<u32>) {
    out.clear();
    for (c, &value) in marginals.iter().enumerate() {
        if value <= 0.0 {
            continue;
        }
        let cand = cands.get(c);
        let row_ok = cands
            .row(cand.a)
            .iter()
            .all(|&k| k as usize == c || marginals[k as usize] < value);
        if !row_ok {
            continue;
        }
        let col_ok = cands
            .col(cand.b)
            .iter()
            .all(|&k| k as usize == c || marginals[k as usize] < value);
        if col_ok {
            out.push(c as u32);
        }
    }
}

/// The stall-driven epsilon schedule: epsilon is reset to its initial value
/// whenever the best rounded objective improves, and multiplied by the
/// growth factor after `patience` consecutive iterations without
/// improvement. Once epsilon outgrows every message magnitude the dynamics
/// carry no more information, so the schedule wraps back to the initial
/// value instead of growing without bound, sweeping the useful range again
/// from the evolved message state.
#[derive(Debug, Clone)]
pub struct EpsilonSchedule {
    epsilon0: f64,
    growth: f64,
    patience: u32,
    ceiling: f64,
    best: f64,
    stall: u32,
}

impl EpsilonSchedule {
    pub fn new(config: &SolverConfig) -> Self {
        Self::with_ceiling(config, f64::INFINITY)
    }

    /// `ceiling` bounds the grown epsilon; crossing it wraps the value back
    /// to the initial epsilon.
    pub fn with_ceiling(config: &SolverConfig, ceiling: f64) -> Self {
        Self {
            epsilon0: config.epsilon0,
            growth: config.epsilon_growth,
            patience: config.patience,
            ceiling,
            best: f64::NEG_INFINITY,
            stall: 0,
        }
    }

    pub fn best_objective(&self) -> f64 {
        self.best
    }

    /// Feeds the objective of the iteration's rounded assignment and adapts
    /// the epsilon in place. Returns whether the objective improved.
    pub fn observe(&mut self, objective: f64, epsilon: &mut f64) -> bool {
        if objective > self.best {
            self.best = objective;
            self.stall = 0;
            *epsilon = self.epsilon0;
            true
        } else {
            self.stall += 1;
            if self.stall >= self.patience {
                self.stall = 0;
                *epsilon *= self.growth;
                if *epsilon > self.ceiling {
                    *epsilon = self.epsilon0;
                }
            }
            false
        }
    }
}

/// Per-iteration trace entry: the rounded objective and the epsilon in force
/// during the iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationStats {
    pub objective: f64,
    pub epsilon: f64,
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub mapping: Mapping,
    pub similarity: f64,
    pub squares: f64,
    pub objective: f64,
    pub iterations_used: u32,
    pub converged: bool,
    pub history: Vec<IterationStats>,
}

/// Runs the solver: synchronous sweeps with rounding after each one, the
/// best rounded assignment tracked across iterations, and a final exact
/// matching pass over candidates whose row and column both remained
/// unmatched (weighted by their max-marginal log-ratios).
pub fn solve(problem: &Problem, config: &SolverConfig) -> Result<SolveResult, ConfigError> {
    config.validate()?;
    let cands = &problem.candidates;
    let nc = cands.len();
    if nc == 0 {
        return Ok(SolveResult {
            mapping: Mapping::empty(),
            similarity: 0.0,
            squares: 0.0,
            objective: 0.0,
            iterations_used: 0,
            converged: true,
            history: Vec::new(),
        });
    }

    let mut state = MessageState::init(problem, config);
    // Messages live on the scale of the unary and pairwise energies; an
    // epsilon far beyond that scale only freezes the dynamics.
    let p_scale = cands
        .pairs()
        .iter()
        .fold(0.0f64, |acc, c| acc.max(c.p.abs()));
    let w_scale = state
        .links
        .weight
        .iter()
        .fold(0.0f64, |acc, &w| acc.max(w.abs()));
    let scale = config.alpha * p_scale + (1.0 - config.alpha) * w_scale;
    let ceiling = EPSILON_CEILING_FACTOR * scale.max(config.epsilon0);
    let mut schedule = EpsilonSchedule::with_ceiling(config, ceiling);
    let mut history = Vec::new();
    let mut marginals: Vec<f64> = Vec::new();
    let mut positions: Vec<u32> = Vec::new();
    let mut flags: Vec<bool> = Vec::new();

    let mut best_positions: Vec<u32> = Vec::new();
    let mut best_scores: Vec<f64> = Vec::new();
    let mut best_marginals: Vec<f64> = Vec::new();
    let mut converged = false;
    let mut iterations_used = 0;

    for _ in 0..config.max_iterations {
        let delta_factor = state.factor_sweep(problem, config);
        state.marginals_into(problem, config, &mut marginals);
        round_positions(cands, &marginals, &mut positions);
        let (_, _, objective) =
            objective_of_positions(problem, &positions, config.alpha, &mut flags);
        history.push(IterationStats {
            objective,
            epsilon: state.epsilon,
        });
        let mut epsilon = state.epsilon;
        if schedule.observe(objective, &mut epsilon) {
            best_positions.clear();
            best_positions.extend_from_slice(&positions);
            best_scores.clear();
            best_scores.extend(positions.iter().map(|&c| marginals[c as usize]));
            best_marginals.clear();
            best_marginals.extend_from_slice(&marginals);
        }
        state.set_epsilon(epsilon);

        let delta_variable = state.variable_sweep(problem, config);
        iterations_used += 1;
        if delta_factor.max(delta_variable) < config.message_tolerance {
            converged = true;
            break;
        }
    }

    if best_marginals.is_empty() {
        best_marginals = marginals.clone();
    }

    // Complete the best assignment by exact matching over the untouched
    // rows and columns. Which sweep's max-marginal estimate should weight
    // the completion is a free choice, so three completions are built and
    // the highest-scoring mapping wins: the best assignment filled with the
    // marginals of the iteration it was found at, the same filled with the
    // final marginals, and a completion of the empty assignment from the
    // zero-state marginals (alpha * p). The last one makes the solver never
    // worse than the exact matching over node similarities alone, which is
    // the whole problem when alpha = 1.
    let base_pairs: Vec<MappedPair> = best_positions
        .iter()
        .zip(best_scores.iter())
        .map(|(&c, &score)| {
            let cand = cands.get(c as usize);
            MappedPair {
                a: cand.a,
                b: cand.b,
                score,
            }
        })
        .collect();
    let unary_marginals: Vec<f64> = cands.pairs().iter().map(|c| config.alpha * c.p).collect();
    let empty_base: Vec<u32> = Vec::new();
    let mut completions: Vec<(&[u32], &[MappedPair], &[f64])> = alloc::vec![
        (&best_positions, base_pairs.as_slice(), best_marginals.as_slice()),
        (&empty_base, &[], &best_marginals),
        (&empty_base, &[], &unary_marginals),
    ];
    if marginals != best_marginals {
        completions.push((&best_positions, &base_pairs, &marginals));
    }

    let mut chosen: Option<(Vec<MappedPair>, (f64, f64, f64))> = None;
    for (base, pairs, weights) in completions {
        let fill = fill_in(problem, base, weights, config);
        let mut pairs = pairs.to_vec();
        let mut positions = base.to_vec();
        for (c, pair) in fill {
            positions.push(c);
            pairs.push(pair);
        }
        let scores = objective_of_positions(problem, &positions, config.alpha, &mut flags);
        if chosen.as_ref().is_none_or(|(_, best)| scores.2 > best.2) {
            chosen = Some((pairs, scores));
        }
    }
    let (pairs, (similarity, squares, objective)) = chosen.expect("at least one completion");
    let mapping = Mapping::new(pairs).expect("fill-in pairs are disjoint from the best rounding");

    Ok(SolveResult {
        mapping,
        similarity,
        squares,
        objective,
        iterations_used,
        converged,
        history,
    })
}

/// Exact matching over the candidates between unmatched rows and columns.
/// Returns `(candidate position, pair)` for every added correspondence.
fn fill_in(
    problem: &Problem,
    taken: &[u32],
    marginals: &[f64],
    config: &SolverConfig,
) -> Vec<(u32, MappedPair)> {
    let cands = &problem.candidates;
    let mut row_used = alloc::vec![false; cands.node_count_a() as usize];
    let mut col_used = alloc::vec![false; cands.node_count_b() as usize];
    for &c in taken {
        let cand = cands.get(c as usize);
        row_used[cand.a as usize] = true;
        col_used[cand.b as usize] = true;
    }

    // Dense re-indexing of the unmatched rows/columns, in candidate order.
    let mut open: Vec<u32> = Vec::new();
    let mut row_id = alloc::vec![u32::MAX; row_used.len()];
    let mut col_id = alloc::vec![u32::MAX; col_used.len()];
    let mut rows = 0u32;
    let mut cols = 0u32;
    for c in 0..cands.len() {
        let cand = cands.get(c);
        if row_used[cand.a as usize] || col_used[cand.b as usize] {
            continue;
        }
        if config.fill == FillMode::Positive && marginals[c] <= 0.0 {
            continue;
        }
        if row_id[cand.a as usize] == u32::MAX {
            row_id[cand.a as usize] = rows;
            rows += 1;
        }
        if col_id[cand.b as usize] == u32::MAX {
            col_id[cand.b as usize] = cols;
            cols += 1;
        }
        open.push(c as u32);
    }
    if open.is_empty() {
        return Vec::new();
    }

    let weighted: Vec<(u32, u32, f64)> = open
        .iter()
        .map(|&c| {
            let cand = cands.get(c as usize);
            (
                row_id[cand.a as usize],
                col_id[cand.b as usize],
                marginals[c as usize],
            )
        })
        .collect();
    let max_abs = weighted
        .iter()
        .fold(0.0f64, |acc, &(_, _, w)| acc.max(w.abs()));
    let inst = BipartiteInstance::new(rows, cols, weighted)
        .expect("fill-in instance is valid by construction");
    let eps_final = 1e-9 * max_abs.max(1.0);
    let (matched, _) = match config.fill {
        FillMode::Complete => solve_auction_complete(&inst, eps_final),
        FillMode::Positive => solve_auction(&inst, eps_final),
    };

    open.iter()
        .filter_map(|&c| {
            let cand = cands.get(c as usize);
            let (r, k) = (row_id[cand.a as usize], col_id[cand.b as usize]);
            if matched.contains_pair(r, k) {
                Some((
                    c,
                    MappedPair {
                        a: cand.a,
                        b: cand.b,
                        score: marginals[c as usize],
                    },
                ))
            } else {
                None
            }
        })
        .collect()
}

/// Objective triple of a set of selected candidate positions: the node
/// similarity sum, the square weight sum over ordered entries with both
/// endpoints selected, and their alpha blend.
pub(crate) fn objective_of_positions(
    problem: &Problem,
    positions: &[u32],
    alpha: f64,
    flags: &mut Vec<bool>,
) -> (f64, f64, f64) {
    let cands = &problem.candidates;
    flags.clear();
    flags.resize(cands.len(), false);
    for &c in positions {
        flags[c as usize] = true;
    }
    let mut similarity = 0.0f64;
    let mut squares = 0.0f64;
    for &c in positions {
        similarity += cands.get(c as usize).p;
        for (d, w) in problem.squares.entries(c as usize) {
            if flags[d as usize] {
                squares += w;
            }
        }
    }
    (
        similarity,
        squares,
        alpha * similarity + (1.0 - alpha) * squares,
    )
}
