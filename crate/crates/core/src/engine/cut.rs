use serde::{Deserialize, Serialize};

use crate::graph::{GraphError, Side, WordStore};

/// Side of the minimum cut for every vertex, by id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutAssignment {
    pub sides: Vec<Side>,
    pub flow: i64,
}

impl CutAssignment {
    pub fn is_source(&self, id: usize) -> bool {
        self.sides[id] == Side::Source
    }

    /// Ids on the source side, ascending.
    pub fn source_set(&self) -> Vec<usize> {
        (0..self.sides.len())
            .filter(|&v| self.is_source(v))
            .collect()
    }
}

/// Reads the cut off a solved store: a vertex is on the source side iff it
/// belongs to the source tree. Free vertices go to the sink side.
pub fn extract_cut(store: &WordStore) -> Result<CutAssignment, GraphError> {
    if !store.is_solved() {
        return Err(GraphError::NotSolved);
    }
    let sides = store
        .iterate_vertices()
        .map(|(_, v)| {
            if !store.is_free(v) && store.side(v) == Side::Source {
                Side::Source
            } else {
                Side::Sink
            }
        })
        .collect();
    Ok(CutAssignment {
        sides,
        flow: store.flow(),
    })
}
