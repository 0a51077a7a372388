use bkflow::fixtures::orphan_comb;
use bkflow::{build, solve_with, Algorithm, ModeRequest, SolveConfig, SolveStats};

fn run(len: usize, algo: Algorithm, debug: bool) -> SolveStats {
    let p = orphan_comb(len);
    let (mut store, _) = build(&p, ModeRequest::Auto).unwrap();
    let config = SolveConfig {
        algorithm: algo,
        debug_invariants: debug,
    };
    solve_with(&mut store, &config)
}

#[test]
fn flagged_search_stays_linear_per_stage() {
    for len in [50, 100, 400] {
        let n = orphan_comb(len).n as u64;
        let fast = run(len, Algorithm::Fcbk, len <= 100);
        let slow = run(len, Algorithm::Cbk, false);
        assert_eq!((fast.flow, slow.flow), (1, 1));
        assert_eq!(fast.invariant_violations, 0, "{:?}", fast.first_violation);
        assert!(fast.findroot_traversals_max_stage <= n, "len {len}");
        assert!(slow.findroot_traversals_max_stage > fast.findroot_traversals_max_stage);
        if len >= 100 {
            assert!(slow.findroot_traversals_max_stage > 10 * n, "len {len}");
        }
    }
}
