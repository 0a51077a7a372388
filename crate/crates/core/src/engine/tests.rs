use super::*;
use crate::engine::check::{check_flagged_chains, check_forest, count_flags};
use crate::fixtures;
use crate::graph::layout::ORPHAN_PATH_FLAG;
use crate::graph::{build, ModeRequest, ParentState, Problem, Side};
use crate::oracle::{differential_instance, oracle_cut_value, oracle_max_flow};

const BOTH: [Algorithm; 2] = [Algorithm::Cbk, Algorithm::Fcbk];

fn solve_problem(p: &Problem, algo: Algorithm) -> (WordStore, SolveStats) {
    let (mut store, _) = build(p, ModeRequest::Auto).unwrap();
    let stats = solve_with(&mut store, &SolveConfig::debug(algo));
    (store, stats)
}

#[test]
fn four_vertex_flow_and_cut() {
    for algo in BOTH {
        let (store, stats) = solve_problem(&fixtures::four_vertex(), algo);
        assert_eq!(stats.flow, 9);
        assert_eq!(stats.invariant_violations, 0, "{:?}", stats.first_violation);
        let cut = extract_cut(&store).unwrap();
        assert_eq!(cut.source_set(), vec![0, 2]);
        assert_eq!(cut.flow, 9);
        assert_eq!(oracle_cut_value(&fixtures::four_vertex(), &cut), 9);
    }
}

#[test]
fn terminal_only_instance_needs_no_augmentation() {
    let mut p = Problem::new(3);
    p.terminal_caps = vec![(4, 1), (2, 7), (0, 3)];
    for algo in BOTH {
        let (_, stats) = solve_problem(&p, algo);
        assert_eq!(stats.flow, 3);
        assert_eq!(stats.augmentations, 0);
    }
}

#[test]
fn cut_before_solve_is_an_error() {
    let (store, _) = build(&fixtures::four_vertex(), ModeRequest::Auto).unwrap();
    assert_eq!(
        extract_cut(&store),
        Err(crate::graph::GraphError::NotSolved)
    );
}

#[test]
fn zero_flow_puts_everything_on_sink_side() {
    let mut p = Problem::new(3);
    p.terminal_caps = vec![(0, 4), (0, 0), (0, 1)];
    p.add_edge(0, 1, 3, 3);
    let (store, stats) = solve_problem(&p, Algorithm::Fcbk);
    assert_eq!(stats.flow, 0);
    let cut = extract_cut(&store).unwrap();
    assert!(cut.sides.iter().all(|&s| s == Side::Sink));
}

#[test]
fn saturated_frontier_is_exhausted() {
    let mut p = Problem::new(2);
    p.terminal_caps = vec![(5, 0), (0, 5)];
    p.add_edge(0, 1, 0, 5);
    let (mut store, _) = build(&p, ModeRequest::Auto).unwrap();
    let mut state = SolverState::new(&mut store, SolveConfig::debug(Algorithm::Cbk));
    assert_eq!(state.growth_stage(), GrowthOutcome::Exhausted);
}

#[test]
fn first_growth_finds_a_valid_bridge() {
    let (mut store, _) = build(&fixtures::four_vertex(), ModeRequest::Auto).unwrap();
    let mut state = SolverState::new(&mut store, SolveConfig::debug(Algorithm::Cbk));
    let GrowthOutcome::Bridge(b) = state.growth_stage() else {
        panic!("expected a bridge");
    };
    let s = state.store();
    let head = s.resolve_head(b.tail, b.slot);
    assert_eq!(s.side(b.tail), Side::Source);
    assert_eq!(s.side(head), Side::Sink);
    assert!(!s.is_free(b.tail) && !s.is_free(head));
    assert!(s.residual(b.tail, b.slot) > 0);
}

#[test]
fn star_grows_in_one_stage() {
    let mut p = Problem::new(6);
    p.terminal_caps[0] = (3, 0);
    for leaf in 1..6 {
        p.add_edge(0, leaf, 2, 0);
    }
    let (mut store, _) = build(&p, ModeRequest::Auto).unwrap();
    let mut state = SolverState::new(&mut store, SolveConfig::debug(Algorithm::Cbk));
    assert_eq!(state.growth_stage(), GrowthOutcome::Exhausted);
    let s = state.store();
    for (id, v) in s.iterate_vertices().skip(1) {
        assert_eq!(s.side(v), Side::Source, "leaf {id}");
        assert_eq!(s.distance(v), 2);
        assert_eq!(
            s.mirror_by_parent_code(v).unwrap(),
            s.mirror_scan(v, 0).unwrap()
        );
    }
    // five edges at the centre, one at each leaf
    assert_eq!(state.stats().growth_edge_scans, 10);
}

#[test]
fn augment_through_mirror_edge() {
    // c -> b only has capacity through the reverse direction of (b, c)
    let mut p = Problem::new(2);
    p.terminal_caps = vec![(0, 4), (4, 0)];
    p.add_edge(0, 1, 5, 3);
    let (mut store, _) = build(&p, ModeRequest::Auto).unwrap();
    let mut state = SolverState::new(&mut store, SolveConfig::debug(Algorithm::Cbk));
    let GrowthOutcome::Bridge(b) = state.growth_stage() else {
        panic!("expected a bridge");
    };
    assert_eq!(state.bottleneck(b), 3);
    assert_eq!(state.augment(b), 3);
    assert_eq!(state.store().flow(), 3);
}

#[test]
fn unique_bottleneck_orphans_once() {
    let mut p = fixtures::path(6, 5);
    p.edges[0].cap_uv = 1;
    let (mut store, _) = build(&p, ModeRequest::Auto).unwrap();
    let mut state = SolverState::new(&mut store, SolveConfig::debug(Algorithm::Cbk));
    let bridge = loop {
        if let GrowthOutcome::Bridge(b) = state.growth_stage() {
            break b;
        }
    };
    assert_eq!(state.augment(bridge), 1);
    assert_eq!(state.orphans.len(), 1);
}

/// Source-rooted chain `0 <- 1 <- ... <- len-1`, vertex 0 terminal.
fn chain(len: usize) -> Problem {
    let mut p = Problem::new(len);
    p.terminal_caps[0] = (10, 0);
    for v in 1..len {
        p.add_edge(v as u32 - 1, v as u32, 10, 10);
    }
    p
}

fn link_chain(store: &mut WordStore, ids: &[usize]) {
    let o = store.vertex_offsets();
    for w in ids.windows(2) {
        let (parent, child) = (o[w[0]], o[w[1]]);
        let slot = store.find_slot(child, parent).unwrap();
        store.set_parent(child, slot).unwrap();
        let d = store.distance(parent) + 1;
        store.set_distance(child, d);
        store.set_ts(child, 0);
    }
}

#[test]
fn findroot_marks_and_reuses() {
    let (mut store, _) = build(&chain(5), ModeRequest::Auto).unwrap();
    link_chain(&mut store, &[0, 1, 2, 3, 4]);
    let o = store.vertex_offsets();
    let mut state = SolverState::new(&mut store, SolveConfig::debug(Algorithm::Cbk));
    state.set_global_time(7);
    assert_eq!(state.findroot(o[0]), RootSearch::ReachedTerminal(1));
    assert_eq!(state.stats().findroot_traversals, 0);
    assert_eq!(state.findroot(o[4]), RootSearch::ReachedTerminal(5));
    assert_eq!(state.stats().findroot_traversals, 4);
    assert_eq!(state.findroot(o[4]), RootSearch::ReachedTerminal(5));
    assert_eq!(state.stats().findroot_traversals, 4);
    assert_eq!(state.store().ts(o[2]), 7);
    assert_eq!(state.store().distance(o[2]), 3);
}

#[test]
fn findroot_into_orphan_marks_nothing() {
    let (mut store, _) = build(&chain(5), ModeRequest::Auto).unwrap();
    link_chain(&mut store, &[0, 1, 2, 3, 4]);
    let o = store.vertex_offsets();
    store.set_parent_state(o[1], ParentState::Orphan);
    let mut state = SolverState::new(&mut store, SolveConfig::debug(Algorithm::Cbk));
    state.set_global_time(3);
    assert_eq!(state.findroot(o[4]), RootSearch::Disconnected);
    for &v in &o[2..] {
        assert_ne!(state.store().ts(v), 3);
        assert_ne!(state.store().ts(v), ORPHAN_PATH_FLAG);
    }
}

#[test]
fn flagging_search_flags_path_once() {
    let (mut store, _) = build(&chain(5), ModeRequest::Auto).unwrap();
    link_chain(&mut store, &[0, 1, 2, 3, 4]);
    let o = store.vertex_offsets();
    store.set_parent_state(o[1], ParentState::Orphan);
    let mut state = SolverState::new(&mut store, SolveConfig::debug(Algorithm::Fcbk));
    state.set_global_time(3);
    assert_eq!(state.findroot_flagging(o[4]), RootSearch::Disconnected);
    assert_eq!(state.stats().findroot_traversals, 3);
    assert_eq!(state.stats().flags_set, 3);
    for &v in &o[2..] {
        assert_eq!(state.store().ts(v), ORPHAN_PATH_FLAG);
    }
    assert_ne!(state.store().ts(o[1]), ORPHAN_PATH_FLAG);
    check_flagged_chains(state.store()).unwrap();
    for &start in &o[2..] {
        assert_eq!(state.findroot_flagging(start), RootSearch::Disconnected);
    }
    assert_eq!(state.stats().findroot_traversals, 3);
}

#[test]
fn flagging_search_success_sets_no_flags() {
    let (mut store, _) = build(&chain(4), ModeRequest::Auto).unwrap();
    link_chain(&mut store, &[0, 1, 2, 3]);
    let o = store.vertex_offsets();
    let mut state = SolverState::new(&mut store, SolveConfig::debug(Algorithm::Fcbk));
    state.set_global_time(2);
    assert_eq!(
        state.findroot_flagging(o[3]),
        RootSearch::ReachedTerminal(4)
    );
    assert_eq!(state.stats().flags_set, 0);
}

#[test]
fn reconnected_orphan_clears_flagged_subtree() {
    // 0 (terminal) - 1 - 2 - 3 - 4 - 5 with a side edge 0 - 2
    let mut p = chain(6);
    p.add_edge(0, 2, 10, 10);
    let (mut store, _) = build(&p, ModeRequest::Auto).unwrap();
    link_chain(&mut store, &[0, 1, 2, 3, 4, 5]);
    let o = store.vertex_offsets();
    let mut state = SolverState::new(&mut store, SolveConfig::debug(Algorithm::Fcbk));
    state.set_global_time(4);
    state
        .store_mut()
        .set_parent_state(o[2], ParentState::Orphan);
    assert_eq!(state.findroot_flagging(o[5]), RootSearch::Disconnected);
    assert_eq!(state.stats().flags_set, 3);
    state.flagged = 3;
    state.stats.orphans_processed = 0;
    state.process_orphan(o[2]);
    let s = state.store();
    assert_eq!(s.resolve_head(o[2], 0), o[0]);
    assert_eq!(s.distance(o[2]), 2);
    for (k, &v) in o[3..].iter().enumerate() {
        assert_eq!(s.ts(v), 4);
        assert_eq!(s.distance(v), 3 + k as u32);
    }
    assert_eq!(state.stats().flags_cleared, 3);
    assert_eq!(state.stats().flag_dfs_visits, 3);
    assert_eq!(count_flags(state.store()), 0);
    let before = state.stats().findroot_traversals;
    assert_eq!(
        state.findroot_flagging(o[5]),
        RootSearch::ReachedTerminal(5)
    );
    assert_eq!(state.stats().findroot_traversals, before);
}

#[test]
fn reconnect_without_flags_visits_nothing() {
    // 3 cannot push back into 2, so it is never searched from
    let mut p = chain(4);
    p.edges[2].cap_vu = 0;
    p.add_edge(0, 2, 10, 10);
    let (mut store, _) = build(&p, ModeRequest::Auto).unwrap();
    link_chain(&mut store, &[0, 1, 2, 3]);
    let o = store.vertex_offsets();
    let mut state = SolverState::new(&mut store, SolveConfig::debug(Algorithm::Fcbk));
    state.set_global_time(2);
    state
        .store_mut()
        .set_parent_state(o[2], ParentState::Orphan);
    state.process_orphan(o[2]);
    assert_eq!(state.stats().flag_dfs_visits, 0);
    assert_eq!(state.store().resolve_head(o[3], 0), o[2]);
}

#[test]
fn orphan_picks_closest_parent() {
    // 0 terminal; long arm 0-1-2-3-4 (4 at distance 5); short arm 0-5
    // (distance 2); orphan 6 touches 4 first, then 5
    let mut p = Problem::new(7);
    p.terminal_caps[0] = (10, 0);
    for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 4), (0, 5), (4, 6), (5, 6)] {
        p.add_edge(u, v, 10, 10);
    }
    let (mut store, _) = build(&p, ModeRequest::Auto).unwrap();
    link_chain(&mut store, &[0, 1, 2, 3, 4, 6]);
    link_chain(&mut store, &[0, 5]);
    let o = store.vertex_offsets();
    assert_eq!(store.resolve_head(o[6], 0), o[4]);
    let mut state = SolverState::new(&mut store, SolveConfig::debug(Algorithm::Cbk));
    state.push_orphan(o[6]);
    state.adopt();
    let s = state.store();
    assert_eq!(s.resolve_head(o[6], 0), o[5]);
    assert_eq!(s.distance(o[6]), 3);
    assert_eq!(
        state.stats().invariant_violations,
        0,
        "{:?}",
        state.stats().first_violation
    );
}

#[test]
fn single_potential_parent_readopts() {
    let mut p = chain(3);
    p.add_edge(0, 2, 10, 10);
    let (mut store, _) = build(&p, ModeRequest::Auto).unwrap();
    link_chain(&mut store, &[0, 1, 2]);
    let o = store.vertex_offsets();
    let mut state = SolverState::new(&mut store, SolveConfig::debug(Algorithm::Cbk));
    // saturate 1 -> 2 so 2 must find another parent
    let s = state.store_mut();
    let slot = s.find_slot(o[1], o[2]).unwrap();
    let (h, ms) = s.mirror_scan(o[1], slot).unwrap();
    s.push_along(o[1], slot, h, ms, 10);
    state.push_orphan(o[2]);
    state.adopt();
    assert_eq!(state.store().resolve_head(o[2], 0), o[0]);
    assert_eq!(state.store().distance(o[2]), 2);
}

#[test]
fn pendant_subtree_dissolves() {
    // r=0 -> o=1 one way only, then 1 - 2 - 3 - 1 in both directions
    let mut p = Problem::new(4);
    p.terminal_caps[0] = (5, 0);
    p.add_edge(0, 1, 1, 0);
    p.add_edge(1, 2, 5, 5);
    p.add_edge(2, 3, 5, 5);
    p.add_edge(3, 1, 5, 5);
    for algo in BOTH {
        let (mut store, _) = build(&p, ModeRequest::Auto).unwrap();
        link_chain(&mut store, &[0, 1, 2, 3]);
        let o = store.vertex_offsets();
        let mut state = SolverState::new(&mut store, SolveConfig::debug(algo));
        let s = state.store_mut();
        let slot = s.find_slot(o[0], o[1]).unwrap();
        let (h, ms) = s.mirror_scan(o[0], slot).unwrap();
        s.push_along(o[0], slot, h, ms, 1);
        state.push_orphan(o[1]);
        state.adopt();
        for &v in &o[1..] {
            assert!(state.store().is_free(v));
        }
        assert_eq!(state.stats().orphans_processed, 3);
        assert_eq!(
            state.stats().invariant_violations,
            0,
            "{:?}",
            state.stats().first_violation
        );
    }
}

#[test]
fn differential_small_family() {
    for seed in 0..300 {
        let p = differential_instance(seed);
        let want = oracle_max_flow(&p);
        for algo in BOTH {
            let (store, stats) = solve_problem(&p, algo);
            assert_eq!(stats.flow, want, "seed {seed} {algo:?}");
            assert_eq!(
                stats.invariant_violations, 0,
                "seed {seed}: {:?}",
                stats.first_violation
            );
            let cut = extract_cut(&store).unwrap();
            assert_eq!(oracle_cut_value(&p, &cut), want, "seed {seed}");
            assert!(
                check::conservation_errors(&p, &store).is_empty(),
                "seed {seed}"
            );
            assert!(stats.augmentations as i64 <= stats.flow - stats.initial_flow);
            assert!(stats.growth_edge_scans_max_stage <= (store.m_i() + store.n()) as u64);
            check_forest(&store).unwrap();
        }
    }
}

#[test]
fn timestamp_wraparound_resets() {
    for seed in 0..40 {
        let p = differential_instance(seed);
        for algo in BOTH {
            let (mut store, _) = build(&p, ModeRequest::Auto).unwrap();
            let mut state = SolverState::new(&mut store, SolveConfig::debug(algo));
            state.set_global_time(u32::MAX - 3);
            state.run();
            let stats = state.into_stats();
            assert_eq!(stats.flow, oracle_max_flow(&p), "seed {seed}");
            assert_eq!(stats.invariant_violations, 0, "{:?}", stats.first_violation);
            if stats.adoption_stages >= 3 {
                assert_eq!(stats.timestamp_resets, 1);
            }
        }
    }
}

#[test]
fn relative_mode_matches_absolute() {
    for seed in 0..50 {
        let p = differential_instance(seed);
        for algo in BOTH {
            let (mut a, _) = build(&p, ModeRequest::Absolute).unwrap();
            let (mut r, _) = build(&p, ModeRequest::Relative).unwrap();
            r.set_link_limit(16);
            let sa = solve_with(&mut a, &SolveConfig::debug(algo));
            let sr = solve_with(&mut r, &SolveConfig::debug(algo));
            assert_eq!(sa.flow, sr.flow);
            assert_eq!(sa.augmentations, sr.augmentations);
            assert_eq!(extract_cut(&a).unwrap(), extract_cut(&r).unwrap());
            assert_eq!(a.logical_graph(), r.logical_graph());
        }
    }
}

#[test]
fn comb_separates_the_engines() {
    let p = fixtures::orphan_comb(200);
    let n = p.n as u64;
    let (_, c) = solve_problem(&p, Algorithm::Cbk);
    let (_, f) = solve_problem(&p, Algorithm::Fcbk);
    assert_eq!((c.flow, f.flow), (1, 1));
    assert_eq!(f.invariant_violations, 0, "{:?}", f.first_violation);
    assert!(f.findroot_traversals_max_stage <= n);
    assert!(f.flag_dfs_visits_max_stage <= n);
    assert!(
        c.findroot_traversals_max_stage > 10 * n,
        "{}",
        c.findroot_traversals_max_stage
    );
}
