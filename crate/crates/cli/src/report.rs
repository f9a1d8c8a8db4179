//! Machine-readable run reports.

use bpalign_core::{FillMode, IterationStats, SolveResult, SolverConfig};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub alpha: f64,
    pub epsilon: f64,
    pub epsilon_growth: f64,
    pub patience: u32,
    pub max_iterations: u32,
    pub tolerance: f64,
    pub damping: f64,
    pub zeta: f64,
    pub fill: String,
}

impl From<&SolverConfig> for ConfigEcho {
    fn from(config: &SolverConfig) -> Self {
        Self {
            alpha: config.alpha,
            epsilon: config.epsilon0,
            epsilon_growth: config.epsilon_growth,
            patience: config.patience,
            max_iterations: config.max_iterations,
            tolerance: config.message_tolerance,
            damping: config.damping,
            zeta: config.zeta,
            fill: match config.fill {
                FillMode::Complete => "complete".to_string(),
                FillMode::Positive => "positive".to_string(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceStats {
    pub nodes_a: u32,
    pub nodes_b: u32,
    pub edges_a: usize,
    pub edges_b: usize,
    pub candidates: usize,
    pub squares: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultStats {
    pub similarity: f64,
    pub squares: f64,
    pub objective: f64,
    pub mapped_pairs: usize,
    pub iterations: u32,
    pub converged: bool,
    pub wall_time_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizedScores {
    pub similarity: f64,
    pub squares: f64,
    pub objective: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub precision: f64,
    pub recall: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalized: Option<NormalizedScores>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub objective: f64,
    pub epsilon: f64,
}

impl From<&IterationStats> for TracePoint {
    fn from(stats: &IterationStats) -> Self {
        Self {
            objective: stats.objective,
            epsilon: stats.epsilon,
        }
    }
}

/// Everything a run writes besides the mapping file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: ConfigEcho,
    pub instance: InstanceStats,
    pub result: ResultStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metrics: Option<Metrics>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TracePoint>>,
}

impl RunReport {
    pub fn new(
        config: &SolverConfig,
        problem: &bpalign_core::Problem,
        result: &SolveResult,
        wall_time_seconds: f64,
        with_trace: bool,
    ) -> Self {
        Self {
            config: config.into(),
            instance: InstanceStats {
                nodes_a: problem.graph_a.node_count(),
                nodes_b: problem.graph_b.node_count(),
                edges_a: problem.graph_a.edge_count(),
                edges_b: problem.graph_b.edge_count(),
                candidates: problem.candidates.len(),
                squares: problem.squares.entry_count(),
            },
            result: ResultStats {
                similarity: result.similarity,
                squares: result.squares,
                objective: result.objective,
                mapped_pairs: result.mapping.len(),
                iterations: result.iterations_used,
                converged: result.converged,
                wall_time_seconds,
            },
            metrics: None,
            trace: with_trace.then(|| result.history.iter().map(TracePoint::from).collect()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
