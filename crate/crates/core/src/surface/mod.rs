//! Surface detection on voxel grids as a minimum cut.
//!
//! Each voxel `(x, y, z)` of a column becomes one vertex. The source side of
//! the cut is closed downward along every column, so it describes a height
//! per column: the highest source-side voxel. Costs are scores to be
//! maximised; the surface of a column sits where its cost peaks, subject to
//! the smoothness and margin constraints.
//!
//! Vertex ids put `x` fastest, then `z`, then the surface index, then `y`:
//! `id = x + X * (z + Z * (i + k * y))`. With one surface this is
//! `x + X * (z + Z * y)`. Every edge joins ids whose difference is bounded by
//! `X * Z * k` plus a small constant, whatever `Y` is.

mod build;
mod extract;
mod io;
mod synth;

#[cfg(test)]
mod tests;

use thiserror::Error;

pub use build::{build_multi_surface, build_single_surface, MarginSpec, INF};
pub use extract::extract_surface;
pub use io::{
    read_heightmaps, read_volume, sidecar_path, write_heightmaps, write_volume, Dtype, VolumeError,
    VolumeHeader,
};
pub use synth::{synth_volume, BOUNDARY_SCORE, NOISE_SPAN};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("a column needs at least two voxels, got Z = {0}")]
    TooShallow(usize),
    #[error("{0} voxels do not fit 32-bit vertex ids")]
    TooManyVertices(u64),
    #[error("source capacities add up to {total}, which does not stay below the infinite weight")]
    WeightOverflow { total: u64 },
    #[error("multi-surface problems need at least two volumes")]
    TooFewSurfaces,
    #[error("volume {index} has dimensions {found:?}, expected {expected:?}")]
    DimsMismatch {
        index: usize,
        expected: Dims,
        found: Dims,
    },
    #[error("margins {min}..={max} cannot hold {k} surfaces in {z} layers")]
    InfeasibleMargins {
        min: usize,
        max: usize,
        k: usize,
        z: usize,
    },
    #[error("cut has {found} vertices, expected {expected}")]
    AssignmentLength { expected: usize, found: usize },
    #[error("source side not closed downward at column ({x}, {y}) of surface {surface}")]
    BrokenMonotonicity { x: usize, y: usize, surface: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Dims {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl Dims {
    pub fn new(x: usize, y: usize, z: usize) -> Self {
        Self { x, y, z }
    }

    pub fn voxels(&self) -> usize {
        self.x * self.y * self.z
    }

    pub fn columns(&self) -> usize {
        self.x * self.y
    }

    /// Vertex id of voxel `(x, y, z)` of surface `i` out of `k`.
    pub fn vertex_id(&self, k: usize, i: usize, x: usize, y: usize, z: usize) -> usize {
        x + self.x * (z + self.z * (i + k * y))
    }
}

/// Integer score per voxel plus a mask of excluded columns.
///
/// Costs are stored with `x` fastest, then `y`, then `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostVolume {
    dims: Dims,
    costs: Vec<i32>,
    excluded: Vec<bool>,
}

impl CostVolume {
    pub fn zeros(dims: Dims) -> Self {
        Self {
            dims,
            costs: vec![0; dims.voxels()],
            excluded: vec![false; dims.columns()],
        }
    }

    /// `costs` in `x`, `y`, `z` order. Panics on a length mismatch.
    pub fn from_costs(dims: Dims, costs: Vec<i32>) -> Self {
        assert_eq!(costs.len(), dims.voxels(), "cost array does not match dims");
        Self {
            dims,
            costs,
            excluded: vec![false; dims.columns()],
        }
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn costs(&self) -> &[i32] {
        &self.costs
    }

    fn index(&self, x: usize, y: usize, z: usize) -> usize {
        x + self.dims.x * (y + self.dims.y * z)
    }

    pub fn cost(&self, x: usize, y: usize, z: usize) -> i32 {
        self.costs[self.index(x, y, z)]
    }

    pub fn set_cost(&mut self, x: usize, y: usize, z: usize, cost: i32) {
        let i = self.index(x, y, z);
        self.costs[i] = cost;
    }

    pub fn exclude(&mut self, x: usize, y: usize) {
        self.excluded[x + self.dims.x * y] = true;
    }

    pub fn is_excluded(&self, x: usize, y: usize) -> bool {
        self.excluded[x + self.dims.x * y]
    }
}

/// Surface height per column, `None` where the column has no surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightMap {
    pub x: usize,
    pub y: usize,
    heights: Vec<Option<usize>>,
}

impl HeightMap {
    pub fn new(x: usize, y: usize) -> Self {
        Self {
            x,
            y,
            heights: vec![None; x * y],
        }
    }

    pub fn filled(x: usize, y: usize, h: usize) -> Self {
        Self {
            x,
            y,
            heights: vec![Some(h); x * y],
        }
    }

    pub fn get(&self, x: usize, y: usize) -> Option<usize> {
        self.heights[x + self.x * y]
    }

    pub fn set(&mut self, x: usize, y: usize, h: Option<usize>) {
        self.heights[x + self.x * y] = h;
    }

    pub fn heights(&self) -> &[Option<usize>] {
        &self.heights
    }

    /// Largest height step between 4-neighbour columns that both have a
    /// surface.
    pub fn max_step(&self) -> usize {
        let mut step = 0;
        for y in 0..self.y {
            for x in 0..self.x {
                let Some(h) = self.get(x, y) else { continue };
                let right = (x + 1 < self.x).then(|| self.get(x + 1, y)).flatten();
                let down = (y + 1 < self.y).then(|| self.get(x, y + 1)).flatten();
                for g in [right, down].into_iter().flatten() {
                    step = step.max(h.abs_diff(g));
                }
            }
        }
        step
    }

    pub fn is_flat(&self) -> bool {
        let mut hs = self.heights.iter().flatten();
        match hs.next() {
            Some(first) => hs.all(|h| h == first),
            None => true,
        }
    }
}
