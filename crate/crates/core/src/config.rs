//! Solver configuration.

use core::fmt;

/// How the final matching pass treats candidates between unmatched rows and
/// columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FillMode {
    /// Match as many remaining pairs as possible, regardless of the sign of
    /// their max-marginal log-ratio. Biases toward complete assignments.
    #[default]
    Complete,
    /// Only consider pairs with strictly positive log-ratio; remaining nodes
    /// may stay unmatched. Biases toward precision.
    Positive,
}

/// Parameters of [`crate::solve`].
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Trade-off between node similarity (1) and edge overlap (0).
    pub alpha: f64,
    /// Initial value of the slackness margin.
    pub epsilon0: f64,
    pub max_iterations: u32,
    /// Stalled iterations tolerated before epsilon grows.
    pub patience: u32,
    /// Multiplier applied to epsilon after a stall; 1 disables the schedule.
    pub epsilon_growth: f64,
    /// Sweep-to-sweep message change below which the run counts as converged.
    pub message_tolerance: f64,
    /// Convex mixing weight of old messages; 0 disables damping.
    pub damping: f64,
    /// Penalty subtracted from raw node similarities when candidates are
    /// built. Recorded here so a run can be reproduced from its config echo.
    pub zeta: f64,
    pub fill: FillMode,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            alpha: 0.75,
            epsilon0: 0.5,
            max_iterations: 1000,
            patience: 10,
            epsilon_growth: 2.0,
            message_tolerance: 1e-6,
            damping: 0.0,
            zeta: 0.0,
            fill: FillMode::Complete,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub field: &'static str,
    pub message: &'static str,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid config value for `{}`: {}", self.field, self.message)
    }
}

impl core::error::Error for ConfigError {}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        fn err(field: &'static str, message: &'static str) -> Result<(), ConfigError> {
            Err(ConfigError { field, message })
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return err("alpha", "must lie in [0, 1]");
        }
        if !(self.epsilon0 > 0.0) || !self.epsilon0.is_finite() {
            return err("epsilon0", "must be a positive finite number");
        }
        if self.max_iterations == 0 {
            return err("max_iterations", "must be at least 1");
        }
        if self.patience == 0 {
            return err("patience", "must be at least 1");
        }
        if !(self.epsilon_growth >= 1.0) || !self.epsilon_growth.is_finite() {
            return err("epsilon_growth", "must be >= 1 (1 disables the schedule)");
        }
        if !(self.message_tolerance > 0.0) {
            return err("message_tolerance", "must be positive");
        }
        if !(0.0..1.0).contains(&self.damping) {
            return err("damping", "must lie in [0, 1)");
        }
        if !(self.zeta >= 0.0) || !self.zeta.is_finite() {
            return err("zeta", "must be non-negative");
        }
        Ok(())
    }
}
