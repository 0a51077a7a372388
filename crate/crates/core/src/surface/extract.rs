use super::{Dims, HeightMap, SurfaceError};
use crate::engine::CutAssignment;

/// Height maps of the `k` surfaces encoded by `cut`: the highest source-side
/// voxel of each column, `None` for a column entirely on the sink side.
pub fn extract_surface(
    cut: &CutAssignment,
    dims: Dims,
    k: usize,
) -> Result<Vec<HeightMap>, SurfaceError> {
    let expected = dims.voxels() * k;
    if cut.sides.len() != expected {
        return Err(SurfaceError::AssignmentLength {
            expected,
            found: cut.sides.len(),
        });
    }
    let mut maps = vec![HeightMap::new(dims.x, dims.y); k];
    for (i, map) in maps.iter_mut().enumerate() {
        for y in 0..dims.y {
            for x in 0..dims.x {
                let source = |z| cut.is_source(dims.vertex_id(k, i, x, y, z));
                let top = (0..dims.z).rev().find(|&z| source(z));
                if let Some(h) = top {
                    if !(0..h).all(source) {
                        return Err(SurfaceError::BrokenMonotonicity { x, y, surface: i });
                    }
                }
                map.set(x, y, top);
            }
        }
    }
    Ok(maps)
}
