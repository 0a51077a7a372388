use super::{CostVolume, Dims, HeightMap};
use crate::oracle::InstanceRng;

/// Cost of the planted surface voxel in each column.
pub const BOUNDARY_SCORE: i32 = 1000;
/// Other voxels draw their cost from `0..NOISE_SPAN`.
pub const NOISE_SPAN: u64 = 100;

/// A volume with a planted surface `h*`.
///
/// `h*` takes values in `0..=Z-2` and changes by at most `delta_truth`
/// between 4-neighbour columns. Columns are filled row by row, each height
/// drawn uniformly from the range its left and upper neighbours allow. The
/// planted voxel scores [`BOUNDARY_SCORE`], every other voxel scores below
/// [`NOISE_SPAN`], so for any smoothness bound `>= delta_truth` the plant is
/// the unique optimum.
pub fn synth_volume(seed: u64, dims: Dims, delta_truth: usize) -> (CostVolume, HeightMap) {
    assert!(dims.z >= 2, "a column needs at least two voxels");
    let mut rng = InstanceRng::new(seed);
    let top = dims.z - 2;
    let mut truth = HeightMap::new(dims.x, dims.y);
    for y in 0..dims.y {
        for x in 0..dims.x {
            let mut lo = 0;
            let mut hi = top;
            let left = (x > 0).then(|| truth.get(x - 1, y)).flatten();
            let up = (y > 0).then(|| truth.get(x, y - 1)).flatten();
            for g in [left, up].into_iter().flatten() {
                lo = lo.max(g.saturating_sub(delta_truth));
                hi = hi.min(g + delta_truth);
            }
            let h = lo + rng.below((hi - lo + 1) as u64) as usize;
            truth.set(x, y, Some(h));
        }
    }
    let mut volume = CostVolume::zeros(dims);
    for z in 0..dims.z {
        for y in 0..dims.y {
            for x in 0..dims.x {
                let cost = if truth.get(x, y) == Some(z) {
                    BOUNDARY_SCORE
                } else {
                    rng.below(NOISE_SPAN) as i32
                };
                volume.set_cost(x, y, z, cost);
            }
        }
    }
    (volume, truth)
}
