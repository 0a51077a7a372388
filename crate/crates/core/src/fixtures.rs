//! Small hand-checked problems shared by tests, examples and the CLI.

use crate::graph::Problem;

/// Vertex ids of [`four_vertex`].
pub const A: u32 = 0;
pub const B: u32 = 1;
pub const C: u32 = 2;
pub const D: u32 = 3;

/// Four-vertex network with maximum flow 9 and minimum cut `{a, c} | {b, d}`.
///
/// The edge order is chosen so that packing yields the per-vertex edge
/// orders a: (a,b),(a,c); b: (b,c),(b,a),(b,d); c: (c,b),(c,d),(c,a);
/// d: (d,c),(d,b).
pub fn four_vertex() -> Problem {
    let mut p = Problem::new(4);
    p.terminal_caps = vec![(5, 0), (0, 9), (5, 0), (0, 2)];
    p.add_edge(B, C, 5, 0);
    p.add_edge(A, B, 7, 0);
    p.add_edge(C, D, 2, 3);
    p.add_edge(C, A, 4, 0);
    p.add_edge(D, B, 4, 0);
    p
}

/// Vertices `0..len` in a line, source at 0 and sink at the end.
pub fn path(len: usize, cap: u32) -> Problem {
    let mut p = Problem::new(len);
    if len == 0 {
        return p;
    }
    p.terminal_caps[0].0 = cap;
    p.terminal_caps[len - 1].1 = cap;
    for v in 1..len {
        p.add_edge(v as u32 - 1, v as u32, cap, 0);
    }
    p
}

/// Instance on which one augmentation orphans the head of a long source-side
/// chain whose only way back is through `len - 3` unit back edges from the
/// chain's tail.
///
/// Vertices: chain `0..len` (0 is source-connected), then a detour of
/// `2 len + 20` vertices from chain vertex 1, then the sink-connected end of
/// the detour. The detour is long enough that the chain is fully grown before
/// the two trees meet. The maximum flow is 1.
///
/// Without orphan-path flags, re-checking every chain vertex walks the chain
/// again from its tail, about `len^2 / 2` parent edges in one adoption stage.
pub fn orphan_comb(len: usize) -> Problem {
    assert!(len >= 4, "comb needs at least four chain vertices");
    const BIG: u32 = 1 << 20;
    let detour = 2 * len + 20;
    let n = len + detour + 1;
    let mut p = Problem::new(n);
    let sink_end = (n - 1) as u32;
    p.terminal_caps[0].0 = BIG;
    p.terminal_caps[n - 1].1 = BIG;
    p.add_edge(0, 1, 1, 0);
    for v in 2..len {
        p.add_edge(v as u32 - 1, v as u32, BIG, 0);
    }
    let last = len as u32 - 1;
    for v in 1..len - 2 {
        p.add_edge(last, v as u32, 1, 0);
    }
    let mut prev = 1u32;
    for k in 0..detour {
        let x = (len + k) as u32;
        p.add_edge(prev, x, BIG, 0);
        prev = x;
    }
    p.add_edge(prev, sink_end, BIG, 0);
    p
}
