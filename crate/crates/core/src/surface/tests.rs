use std::io::Cursor;

use proptest::prelude::*;

use super::*;
use crate::engine::{extract_cut, solve_with, Algorithm, CutAssignment, SolveConfig};
use crate::graph::{build, ModeRequest, Problem, Side};
use crate::oracle::{oracle_cut_value, oracle_max_flow, InstanceRng};

fn solve(p: &Problem, algo: Algorithm) -> CutAssignment {
    let (mut store, _) = build(p, ModeRequest::Auto).unwrap();
    let stats = solve_with(&mut store, &SolveConfig::debug(algo));
    assert_eq!(stats.invariant_violations, 0, "{:?}", stats.first_violation);
    extract_cut(&store).unwrap()
}

fn column(costs: &[i32]) -> CostVolume {
    CostVolume::from_costs(Dims::new(1, 1, costs.len()), costs.to_vec())
}

fn random_volume(seed: u64, dims: Dims, span: u64) -> CostVolume {
    let mut rng = InstanceRng::new(seed);
    let costs = (0..dims.voxels()).map(|_| rng.below(span) as i32).collect();
    CostVolume::from_costs(dims, costs)
}

/// Assignment putting voxels `z <= h[i]` of surface `i` on the source side.
fn column_assignment(dims: Dims, heights: &[usize]) -> CutAssignment {
    let k = heights.len();
    let mut sides = vec![Side::Sink; dims.voxels() * k];
    for (i, &h) in heights.iter().enumerate() {
        for z in 0..=h {
            sides[dims.vertex_id(k, i, 0, 0, z)] = Side::Source;
        }
    }
    CutAssignment { sides, flow: 0 }
}

#[test]
fn three_voxel_column() {
    let p = build_single_surface(&column(&[0, 10, 0]), 0).unwrap();
    assert_eq!(p.terminal_caps, vec![(1, 0), (10, 0), (0, INF)]);
    let cut = solve(&p, Algorithm::Fcbk);
    assert_eq!(cut.flow, oracle_max_flow(&p));
    let maps = extract_surface(&cut, Dims::new(1, 1, 3), 1).unwrap();
    assert_eq!(maps[0].get(0, 0), Some(1));
}

#[test]
fn negative_step_goes_to_sink() {
    let p = build_single_surface(&column(&[0, 10, 4, 0]), 0).unwrap();
    assert_eq!(p.terminal_caps[2], (0, 6));
}

#[test]
fn unconstrained_matches_column_argmax() {
    // smallest maximiser over the layers below the top
    for seed in 0..20 {
        let dims = Dims::new(4, 3, 7);
        let vol = random_volume(seed, dims, 30);
        let p = build_single_surface(&vol, dims.z).unwrap();
        let cut = solve(&p, Algorithm::Cbk);
        assert_eq!(cut.flow, oracle_max_flow(&p));
        let map = &extract_surface(&cut, dims, 1).unwrap()[0];
        for y in 0..dims.y {
            for x in 0..dims.x {
                let best = (0..dims.z - 1).map(|z| vol.cost(x, y, z)).max().unwrap();
                let want = (0..dims.z - 1).find(|&z| vol.cost(x, y, z) == best);
                assert_eq!(map.get(x, y), want, "seed {seed} column ({x}, {y})");
            }
        }
    }
}

#[test]
fn zero_volume_sits_on_the_floor() {
    let dims = Dims::new(3, 2, 4);
    let p = build_single_surface(&CostVolume::zeros(dims), 1).unwrap();
    let cut = solve(&p, Algorithm::Fcbk);
    assert_eq!(cut.flow, 0);
    let map = &extract_surface(&cut, dims, 1).unwrap()[0];
    assert_eq!(map, &HeightMap::filled(3, 2, 0));
}

#[test]
fn excluded_columns_have_no_surface() {
    let dims = Dims::new(3, 1, 5);
    let mut vol = random_volume(4, dims, 20);
    vol.exclude(1, 0);
    let p = build_single_surface(&vol, 1).unwrap();
    let map = &extract_surface(&solve(&p, Algorithm::Fcbk), dims, 1).unwrap()[0];
    assert_eq!(map.get(1, 0), None);
    assert!(map.get(0, 0).is_some() && map.get(2, 0).is_some());
}

#[test]
fn all_source_column_is_full_height() {
    let dims = Dims::new(1, 1, 4);
    let cut = CutAssignment {
        sides: vec![Side::Source; 4],
        flow: 0,
    };
    assert_eq!(
        extract_surface(&cut, dims, 1).unwrap()[0].get(0, 0),
        Some(3)
    );
}

#[test]
fn hole_in_column_is_reported() {
    let sides = vec![Side::Source, Side::Sink, Side::Source];
    let err =
        extract_surface(&CutAssignment { sides, flow: 0 }, Dims::new(1, 1, 3), 1).unwrap_err();
    assert_eq!(
        err,
        SurfaceError::BrokenMonotonicity {
            x: 0,
            y: 0,
            surface: 0
        }
    );
}

#[test]
fn two_surfaces_exhaustive() {
    // surface 0 peaks at 1; surface 1 would peak at 4 but may sit only 1..=2 above
    let dims = Dims::new(1, 1, 6);
    let vols = [column(&[0, 50, 0, 0, 0, 0]), column(&[0, 0, 20, 30, 40, 0])];
    let margins = MarginSpec { min: 1, max: 2 };
    let p = build_multi_surface(&vols, 0, margins).unwrap();
    let cut = solve(&p, Algorithm::Fcbk);
    let mut best = (i64::MAX, vec![]);
    for h0 in 0..6 {
        for h1 in 0..6 {
            let value = oracle_cut_value(&p, &column_assignment(dims, &[h0, h1]));
            let feasible = h0 < 5 && h1 < 5 && (1..=2).contains(&(h1 as i64 - h0 as i64));
            assert_eq!(value >= INF as i64, !feasible, "({h0}, {h1})");
            if value < best.0 {
                best = (value, vec![h0, h1]);
            }
        }
    }
    assert_eq!(cut.flow, best.0);
    assert_eq!(best.1, vec![1, 3]);
    let maps = extract_surface(&cut, dims, 2).unwrap();
    assert_eq!((maps[0].get(0, 0), maps[1].get(0, 0)), (Some(1), Some(3)));
}

#[test]
fn margins_must_fit() {
    let vols = [column(&[0; 6]), column(&[0; 6]), column(&[0; 6])];
    assert!(build_multi_surface(&vols, 0, MarginSpec { min: 2, max: 3 }).is_ok());
    assert!(matches!(
        build_multi_surface(&vols, 0, MarginSpec { min: 3, max: 3 }),
        Err(SurfaceError::InfeasibleMargins { .. })
    ));
    assert!(matches!(
        build_multi_surface(&vols, 0, MarginSpec { min: 2, max: 1 }),
        Err(SurfaceError::InfeasibleMargins { .. })
    ));
    assert_eq!(
        build_multi_surface(&vols[..1], 0, MarginSpec { min: 0, max: 1 }),
        Err(SurfaceError::TooFewSurfaces)
    );
}

#[test]
fn construction_errors() {
    assert_eq!(
        build_single_surface(&column(&[3]), 0),
        Err(SurfaceError::TooShallow(1))
    );
    let big = column(&[0, i32::MAX, i32::MIN, i32::MAX, 0]);
    assert!(matches!(
        build_single_surface(&big, 0),
        Err(SurfaceError::WeightOverflow { .. })
    ));
    let vols = [column(&[0; 4]), column(&[0; 5])];
    assert!(matches!(
        build_multi_surface(&vols, 0, MarginSpec { min: 0, max: 1 }),
        Err(SurfaceError::DimsMismatch { index: 1, .. })
    ));
}

#[test]
fn decoupled_surfaces_match_single() {
    let dims = Dims::new(3, 3, 6);
    let vol = random_volume(11, dims, 40);
    let single = extract_surface(
        &solve(&build_single_surface(&vol, 2).unwrap(), Algorithm::Fcbk),
        dims,
        1,
    )
    .unwrap();
    let margins = MarginSpec {
        min: 0,
        max: dims.z - 1,
    };
    let p = build_multi_surface(&[vol.clone(), vol], 2, margins).unwrap();
    let multi = extract_surface(&solve(&p, Algorithm::Fcbk), dims, 2).unwrap();
    assert_eq!(multi[0], single[0]);
    assert_eq!(multi[1], single[0]);
}

#[test]
fn id_offsets_do_not_grow_with_y() {
    let spread = |y: usize| {
        let dims = Dims::new(4, y, 8);
        let vols: Vec<_> = (0..3).map(|s| random_volume(s, dims, 10)).collect();
        let p = build_multi_surface(&vols, 2, MarginSpec { min: 1, max: 3 }).unwrap();
        p.edges.iter().map(|e| e.u.abs_diff(e.v)).max().unwrap()
    };
    assert_eq!(spread(8), spread(64));
    assert!(spread(8) <= 4 * 8 * 3 + 4 * 2);
}

#[test]
fn planted_surface_is_recovered() {
    let dims = Dims::new(6, 6, 6);
    let (vol, truth) = synth_volume(0, dims, 1);
    assert!(truth.max_step() <= 1);
    let p = build_single_surface(&vol, 1).unwrap();
    let cut = solve(&p, Algorithm::Fcbk);
    assert_eq!(cut.flow, oracle_max_flow(&p));
    assert_eq!(extract_surface(&cut, dims, 1).unwrap()[0], truth);
}

#[test]
fn flat_plant_stays_flat() {
    let dims = Dims::new(4, 4, 6);
    let mut vol = random_volume(2, dims, NOISE_SPAN);
    for y in 0..4 {
        for x in 0..4 {
            vol.set_cost(x, y, 3, BOUNDARY_SCORE);
        }
    }
    for delta in [0, 1, 5] {
        let cut = solve(&build_single_surface(&vol, delta).unwrap(), Algorithm::Cbk);
        assert_eq!(
            extract_surface(&cut, dims, 1).unwrap()[0],
            HeightMap::filled(4, 4, 3)
        );
    }
}

#[test]
fn zero_smoothness_flattens() {
    let dims = Dims::new(5, 5, 8);
    let (vol, truth) = synth_volume(3, dims, 2);
    assert!(!truth.is_flat());
    let loose = solve(&build_single_surface(&vol, 2).unwrap(), Algorithm::Fcbk);
    let tight = solve(&build_single_surface(&vol, 0).unwrap(), Algorithm::Fcbk);
    assert!(extract_surface(&tight, dims, 1).unwrap()[0].is_flat());
    assert!(tight.flow >= loose.flow);
}

#[test]
fn volume_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let raw = dir.path().join("v.raw");
    let mut vol = random_volume(5, Dims::new(3, 2, 4), 1000);
    vol.set_cost(0, 0, 0, -7);
    vol.exclude(2, 1);
    write_volume(&vol, &raw).unwrap();
    assert_eq!(read_volume(&raw).unwrap(), vol);
}

#[test]
fn narrow_voxels_decode() {
    let dir = tempfile::tempdir().unwrap();
    let raw = dir.path().join("v.raw");
    std::fs::write(&raw, [1u8, 2, 0xff, 0x00]).unwrap();
    std::fs::write(sidecar_path(&raw), r#"{"x":2,"y":1,"z":2,"dtype":"i16"}"#).unwrap();
    assert!(matches!(
        read_volume(&raw),
        Err(VolumeError::SizeMismatch { .. })
    ));
    std::fs::write(sidecar_path(&raw), r#"{"x":2,"y":1,"z":2,"dtype":"u8"}"#).unwrap();
    assert_eq!(read_volume(&raw).unwrap().costs(), &[1, 2, 255, 0]);
}

#[test]
fn heightmap_text_round_trip() {
    let mut a = HeightMap::filled(3, 2, 4);
    a.set(1, 1, None);
    let b = HeightMap::filled(3, 2, 7);
    let mut buf = Vec::new();
    write_heightmaps(&[a.clone(), b.clone()], &mut buf).unwrap();
    assert_eq!(
        String::from_utf8(buf.clone()).unwrap(),
        "4 4 4\n4 - 4\n\n7 7 7\n7 7 7\n"
    );
    assert_eq!(read_heightmaps(Cursor::new(buf)).unwrap(), vec![a, b]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn surfaces_respect_smoothness(seed in any::<u64>(), delta in 0usize..3, x in 1usize..5, y in 1usize..4, z in 2usize..6) {
        let dims = Dims::new(x, y, z);
        let vol = random_volume(seed, dims, 25);
        let p = build_single_surface(&vol, delta).unwrap();
        let cut = solve(&p, Algorithm::Fcbk);
        prop_assert_eq!(cut.flow, oracle_max_flow(&p));
        let map = &extract_surface(&cut, dims, 1).unwrap()[0];
        prop_assert!(map.max_step() <= delta);
        prop_assert!(map.heights().iter().all(|h| h.is_some_and(|h| h + 1 < z)));
    }

    #[test]
    fn two_surface_columns_match_enumeration(seed in any::<u64>(), min in 0usize..3, extra in 0usize..3) {
        let dims = Dims::new(1, 1, 6);
        let vols = [random_volume(seed, dims, 30), random_volume(!seed, dims, 30)];
        let margins = MarginSpec { min, max: min + extra };
        let p = build_multi_surface(&vols, 0, margins).unwrap();
        let cut = solve(&p, Algorithm::Cbk);
        let best = (0..36)
            .map(|c| oracle_cut_value(&p, &column_assignment(dims, &[c / 6, c % 6])))
            .min()
            .unwrap();
        prop_assert_eq!(cut.flow, best);
        let maps = extract_surface(&cut, dims, 2).unwrap();
        let (h0, h1) = (maps[0].get(0, 0).unwrap(), maps[1].get(0, 0).unwrap());
        prop_assert!(h1 >= h0 + min && h1 <= h0 + min + extra);
    }
}
