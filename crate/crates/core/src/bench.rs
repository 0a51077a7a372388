//! Repeated build + solve runs with median timings.

use std::time::Instant;

use thiserror::Error;

use crate::engine::{extract_cut, solve_with, Algorithm, CutAssignment, SolveConfig};
use crate::graph::{build, GraphError, ModeRequest, Problem};
use crate::io::StatsReport;
use crate::oracle::oracle_min_cut;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solver {
    Engine(Algorithm),
    /// The reference augmenting-path solver; the graph is still built to
    /// report its size.
    Oracle,
}

impl Solver {
    pub fn name(self) -> &'static str {
        match self {
            Solver::Engine(a) => a.name(),
            Solver::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub solver: Solver,
    pub mode: ModeRequest,
    /// Forces invariant checks on; they are also on when the environment
    /// asks for them.
    pub debug_invariants: bool,
    pub repeat: u32,
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("repeat count must be at least 1")]
    NoRuns,
    #[error("building the graph: {0}")]
    Build(#[from] GraphError),
    #[error("{count} invariant violations, first: {first}")]
    Invariant { count: u64, first: String },
}

pub struct Measured {
    pub report: StatsReport,
    pub cut: CutAssignment,
}

/// Builds and solves `problem` `repeat` times. Timings in the report are
/// medians; counters come from the last run (they do not vary).
pub fn measure(problem: &Problem, options: &RunOptions) -> Result<Measured, RunError> {
    if options.repeat == 0 {
        return Err(RunError::NoRuns);
    }
    let mut builds = Vec::new();
    let mut solves = Vec::new();
    let mut last = None;
    for _ in 0..options.repeat {
        let start = Instant::now();
        let (mut store, _) = build(problem, options.mode)?;
        builds.push(start.elapsed().as_secs_f64());
        let (report, cut) = match options.solver {
            Solver::Engine(algorithm) => {
                let mut config = SolveConfig::new(algorithm);
                config.debug_invariants |= options.debug_invariants;
                let stats = solve_with(&mut store, &config);
                if let Some(first) = &stats.first_violation {
                    return Err(RunError::Invariant {
                        count: stats.invariant_violations,
                        first: first.clone(),
                    });
                }
                solves.push(stats.solve_seconds);
                let cut = extract_cut(&store)?;
                (
                    StatsReport::for_store(problem, &store, algorithm.name(), stats),
                    cut,
                )
            }
            Solver::Oracle => {
                let start = Instant::now();
                let cut = oracle_min_cut(problem);
                solves.push(start.elapsed().as_secs_f64());
                let mut report =
                    StatsReport::for_store(problem, &store, "oracle", Default::default());
                report.flow = cut.flow;
                report.counters = None;
                (report, cut)
            }
        };
        last = Some((report, cut));
    }
    let (mut report, cut) = last.expect("at least one run");
    let totals: Vec<f64> = builds.iter().zip(&solves).map(|(b, s)| b + s).collect();
    report.repeat = options.repeat;
    report.build_seconds = median(&builds);
    report.solve_seconds = median(&solves);
    report.total_seconds = median(&totals);
    Ok(Measured { report, cut })
}

/// Median; the mean of the two middle samples for an even count.
pub fn median(samples: &[f64]) -> f64 {
    let mut s = samples.to_vec();
    s.sort_by(f64::total_cmp);
    match s.len() {
        0 => 0.0,
        n if n % 2 == 1 => s[n / 2],
        n => (s[n / 2 - 1] + s[n / 2]) / 2.0,
    }
}
