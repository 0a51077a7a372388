//! Run statistics as JSON.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::engine::SolveStats;
use crate::graph::{Problem, RefMode, WordStore};

/// One solve, as written by `--stats`. Field order is the output order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    pub flow: i64,
    pub memory_bytes: u64,
    pub n: u64,
    /// Directed internal residual edges after merging.
    pub m_i: u64,
    /// Directed internal residual edges before merging.
    pub m_i_plus: u64,
    pub algorithm: String,
    pub mode: Option<RefMode>,
    pub repeat: u32,
    pub build_seconds: f64,
    /// Median over the repeats.
    pub solve_seconds: f64,
    /// Median of build + solve per repeat.
    #[serde(default)]
    pub total_seconds: f64,
    /// Absent for the reference solver.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counters: Option<SolveStats>,
}

impl StatsReport {
    pub fn for_store(
        problem: &Problem,
        store: &WordStore,
        algorithm: &str,
        stats: SolveStats,
    ) -> Self {
        Self {
            flow: stats.flow,
            memory_bytes: store.memory_bytes(),
            n: store.n() as u64,
            m_i: store.m_i() as u64,
            m_i_plus: problem.unmerged_residual_edges() as u64,
            algorithm: algorithm.to_string(),
            mode: Some(store.mode()),
            repeat: 1,
            build_seconds: 0.0,
            solve_seconds: stats.solve_seconds,
            total_seconds: stats.solve_seconds,
            counters: Some(stats),
        }
    }
}

/// Writes `report` as one compact JSON line.
pub fn write_stats_json<W: Write>(report: &StatsReport, mut w: W) -> std::io::Result<()> {
    serde_json::to_writer(&mut w, report)?;
    writeln!(w)
}
