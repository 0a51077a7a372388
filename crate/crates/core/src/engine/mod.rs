//! Search-tree max-flow solvers running directly on a [`WordStore`].

mod adopt;
pub mod check;
mod cut;
mod fcbk;
mod state;

#[cfg(test)]
mod tests;

use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use check::{conservation_errors, reconstruct_edge_flows};
pub use cut::{extract_cut, CutAssignment};
pub use state::{Bridge, GrowthOutcome, RootSearch, SolverState};

use crate::graph::WordStore;

/// Environment variable that turns on invariant checking for every solve.
pub const DEBUG_ENV: &str = "BKFLOW_DEBUG_INVARIANTS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Boykov-Kolmogorov with timestamp/distance heuristics.
    Cbk,
    /// As `Cbk`, plus orphan-path flags during adoption.
    Fcbk,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Cbk => "cbk",
            Algorithm::Fcbk => "fcbk",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveConfig {
    pub algorithm: Algorithm,
    /// Validate the forest after every stage (and the flag invariant after
    /// every orphan for `Fcbk`). Violations are counted in the stats.
    pub debug_invariants: bool,
}

impl SolveConfig {
    pub fn new(algorithm: Algorithm) -> Self {
        Self {
            algorithm,
            debug_invariants: debug_from_env(),
        }
    }

    pub fn debug(algorithm: Algorithm) -> Self {
        Self {
            algorithm,
            debug_invariants: true,
        }
    }
}

fn debug_from_env() -> bool {
    std::env::var(DEBUG_ENV).is_ok_and(|v| !v.is_empty() && v != "0")
}

/// Counters and timings of one solve.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SolveStats {
    pub flow: i64,
    pub initial_flow: i64,
    pub augmentations: u64,
    pub orphans_processed: u64,
    pub growth_stages: u64,
    pub growth_edge_scans: u64,
    pub growth_edge_scans_max_stage: u64,
    pub adoption_stages: u64,
    pub findroot_traversals: u64,
    pub findroot_traversals_max_stage: u64,
    pub flags_set: u64,
    pub flags_cleared: u64,
    pub flag_dfs_visits: u64,
    pub flag_dfs_visits_max_stage: u64,
    pub timestamp_resets: u64,
    pub external_links: u64,
    pub external_queue_peak: u64,
    pub invariant_violations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_violation: Option<String>,
    pub solve_seconds: f64,
}

/// Solves with invariant checking taken from the environment.
pub fn solve(store: &mut WordStore, algorithm: Algorithm) -> SolveStats {
    solve_with(store, &SolveConfig::new(algorithm))
}

pub fn solve_with(store: &mut WordStore, config: &SolveConfig) -> SolveStats {
    let start = Instant::now();
    let mut state = SolverState::new(store, *config);
    state.run();
    let mut stats = state.into_stats();
    stats.solve_seconds = start.elapsed().as_secs_f64();
    stats
}
