//! Compact interleaved residual graph.

mod active;
mod build;
pub mod layout;
mod problem;
mod store;


use thiserror::Error;

pub use active::ActiveList;
pub use build::{build, build_with, BuildOptions, ModeRequest};
pub use layout::{EdgeView, ParentState, Side, VertexView};
pub use problem::{Edge, Problem};
pub use store::{LogicalGraph, LogicalVertex, RefMode, VertexIter, WordStore, DEFAULT_LINK_LIMIT};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {index} ({u}, {v}) references a vertex outside 0..n")]
    TerminalEdgeInInternalList { index: usize, u: u32, v: u32 },
    #[error("self-loop on vertex {vertex}")]
    SelfLoop { vertex: u32 },
    #[error("expected {expected} terminal capacity pairs, found {found}")]
    TerminalCapsLength { expected: usize, found: usize },
    #[error("merged capacity between {u} and {v} does not fit 31 bits")]
    CapacityOverflow { u: u32, v: u32 },
    #[error("vertex {vertex} has degree {degree}, above the supported maximum")]
    DegreeOverflow { vertex: u32, degree: usize },
    #[error("offset between vertices {u} and {v} does not fit a signed 32-bit reference")]
    RelativeIndexOverflow { u: u32, v: u32 },
    #[error("{words} words cannot be addressed with absolute 32-bit indices")]
    AbsoluteIndexOverflow { words: usize },
    #[error("parallel edges between {u} and {v} in an edge list declared merged")]
    ParallelEdge { u: u32, v: u32 },
    #[error("edge slot {slot} of vertex at word {tail} has no mirror")]
    MirrorMissing { tail: usize, slot: usize },
    #[error("vertex at word {vertex} has no internal parent")]
    InvalidParentState { vertex: usize },
    #[error("the store has not been solved")]
    NotSolved,
}
