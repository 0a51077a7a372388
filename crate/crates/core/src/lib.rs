//! Max-flow / min-cut on a compact residual graph.
//!
//! The residual graph lives in one flat array of 32-bit words (see
//! [`graph::layout`]). Two solvers run on it: [`Algorithm::Cbk`], the
//! Boykov-Kolmogorov search-tree algorithm, and [`Algorithm::Fcbk`], the same
//! algorithm with orphan-path flags that bound the work of each adoption
//! stage. [`oracle`] holds an independent reference solver.

pub mod bench;
pub mod engine;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod memory;
pub mod oracle;
pub mod surface;

pub use engine::{
    extract_cut, solve, solve_with, Algorithm, CutAssignment, SolveConfig, SolveStats,
};
pub use graph::{
    build, build_with, BuildOptions, GraphError, ModeRequest, Problem, RefMode, WordStore,
};
