use super::{CostVolume, Dims, SurfaceError};
use crate::graph::Problem;

/// Weight of the structural edges, the largest capacity an edge can hold.
pub const INF: u32 = (1 << 31) - 1;

/// Allowed height difference `h[i + 1] - h[i]` between consecutive surfaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MarginSpec {
    pub min: usize,
    pub max: usize,
}

/// One surface. See the module docs for the vertex numbering.
///
/// Column base `z = 0` carries source capacity `c(0) - min c + 1`, the
/// minimum taken below the top layer, so that every column is better off
/// with a surface than without. Above it, voxel `z` gets `c(z) - c(z - 1)`
/// as a source capacity when positive and its magnitude as a sink capacity
/// when negative. The top layer and excluded columns are tied to the sink
/// with [`INF`]. Every voxel points at the one below it, and at
/// `(q, max(0, z - delta))` for each 4-neighbour column `q`.
pub fn build_single_surface(volume: &CostVolume, delta: usize) -> Result<Problem, SurfaceError> {
    build_stack(std::slice::from_ref(volume), delta, None)
}

/// `k = volumes.len()` surfaces, each built as in [`build_single_surface`],
/// tied by margin edges `(i, z) -> (i + 1, min(z + min, Z - 1))` and
/// `(i + 1, z) -> (i, max(0, z - max))`.
pub fn build_multi_surface(
    volumes: &[CostVolume],
    delta: usize,
    margins: MarginSpec,
) -> Result<Problem, SurfaceError> {
    if volumes.len() < 2 {
        return Err(SurfaceError::TooFewSurfaces);
    }
    let z = volumes[0].dims().z;
    let k = volumes.len();
    // the top layer is always sink-side, so the highest surface tops out at Z - 2
    if margins.min > margins.max || margins.min.saturating_mul(k - 1) > z.saturating_sub(2) {
        return Err(SurfaceError::InfeasibleMargins {
            min: margins.min,
            max: margins.max,
            k,
            z,
        });
    }
    build_stack(volumes, delta, Some(margins))
}

fn build_stack(
    volumes: &[CostVolume],
    delta: usize,
    margins: Option<MarginSpec>,
) -> Result<Problem, SurfaceError> {
    let dims = volumes[0].dims();
    for (index, v) in volumes.iter().enumerate() {
        if v.dims() != dims {
            return Err(SurfaceError::DimsMismatch {
                index,
                expected: dims,
                found: v.dims(),
            });
        }
    }
    if dims.z < 2 {
        return Err(SurfaceError::TooShallow(dims.z));
    }
    let k = volumes.len();
    let total = dims.voxels() as u64 * k as u64;
    if total > u32::MAX as u64 {
        return Err(SurfaceError::TooManyVertices(total));
    }

    let Dims {
        x: nx,
        y: ny,
        z: nz,
    } = dims;
    let id = |i: usize, x: usize, y: usize, z: usize| dims.vertex_id(k, i, x, y, z) as u32;
    let mut p = Problem::new(total as usize);
    let mut source_total = 0u64;

    for y in 0..ny {
        for (i, vol) in volumes.iter().enumerate() {
            for z in 0..nz {
                for x in 0..nx {
                    let v = id(i, x, y, z);
                    if vol.is_excluded(x, y) {
                        p.terminal_caps[v as usize] = (0, INF);
                        continue;
                    }
                    let caps = if z + 1 == nz {
                        (0, INF)
                    } else {
                        let w = if z == 0 {
                            let floor = (0..nz - 1)
                                .map(|z| vol.cost(x, y, z))
                                .min()
                                .expect("Z >= 2");
                            vol.cost(x, y, 0) as i64 - floor as i64 + 1
                        } else {
                            vol.cost(x, y, z) as i64 - vol.cost(x, y, z - 1) as i64
                        };
                        if w >= 0 {
                            source_total += w as u64;
                            (u32::try_from(w).unwrap_or(u32::MAX), 0)
                        } else {
                            (0, u32::try_from(-w).unwrap_or(u32::MAX))
                        }
                    };
                    p.terminal_caps[v as usize] = caps;
                    if z > 0 {
                        p.add_edge(v, id(i, x, y, z - 1), INF, 0);
                    }
                    if z == 0 || z >= delta {
                        let below = z.saturating_sub(delta);
                        let neighbours = [
                            (x > 0).then(|| (x - 1, y)),
                            (x + 1 < nx).then(|| (x + 1, y)),
                            (y > 0).then(|| (x, y - 1)),
                            (y + 1 < ny).then(|| (x, y + 1)),
                        ];
                        for (qx, qy) in neighbours.into_iter().flatten() {
                            if !vol.is_excluded(qx, qy) {
                                p.add_edge(v, id(i, qx, qy, below), INF, 0);
                            }
                        }
                    }
                    if let Some(m) = margins {
                        if i + 1 < k && !volumes[i + 1].is_excluded(x, y) {
                            p.add_edge(v, id(i + 1, x, y, (z + m.min).min(nz - 1)), INF, 0);
                        }
                        if i > 0 && !volumes[i - 1].is_excluded(x, y) {
                            p.add_edge(v, id(i - 1, x, y, z.saturating_sub(m.max)), INF, 0);
                        }
                    }
                }
            }
        }
    }
    if source_total >= INF as u64 {
        return Err(SurfaceError::WeightOverflow {
            total: source_total,
        });
    }
    Ok(p)
}
