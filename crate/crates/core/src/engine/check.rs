//! Structural checks on a store, used in debug mode and by tests.

use std::collections::HashMap;

use crate::graph::layout::ORPHAN_PATH_FLAG;
use crate::graph::{ParentState, Problem, Side, WordStore};

/// Checks the search forest between stages: no orphans or flags, every
/// tree edge non-saturated in its tree direction, parent codes agreeing with
/// a mirror scan, every chain ending at a terminal root, and every mirror
/// flag coherent.
pub fn check_forest(store: &WordStore) -> Result<(), String> {
    let ids: HashMap<usize, usize> = store.iterate_vertices().map(|(id, v)| (v, id)).collect();
    // 0 = unknown, 1 = reaches a terminal, 2 = on the current walk
    let mut reach = vec![0u8; store.n()];
    let mut walk = Vec::new();
    for (id, v) in store.iterate_vertices() {
        for s in 0..store.degree(v) {
            let (h, ms) = store.mirror_scan(v, s).map_err(|e| e.to_string())?;
            if store.mirror_saturated(v, s) != (store.residual(h, ms) == 0) {
                return Err(format!(
                    "mirror flag of edge {id}:{s} disagrees with its mirror"
                ));
            }
        }
        match store.parent_state(v) {
            ParentState::Free => continue,
            ParentState::Orphan => return Err(format!("vertex {id} is an orphan between stages")),
            ParentState::Terminal => {
                if store.ts(v) == 0 {
                    return Err(format!("terminal root {id} has no terminal capacity"));
                }
                reach[id] = 1;
                continue;
            }
            ParentState::Internal { .. } => {}
        }
        if store.ts(v) == ORPHAN_PATH_FLAG {
            return Err(format!("vertex {id} is flagged between stages"));
        }
        let (p, ms) = store.mirror_by_parent_code(v).map_err(|e| e.to_string())?;
        let scanned = store.mirror_scan(v, 0).map_err(|e| e.to_string())?;
        if (p, ms) != scanned {
            return Err(format!("parent code of {id} disagrees with a mirror scan"));
        }
        if matches!(
            store.parent_state(p),
            ParentState::Free | ParentState::Orphan
        ) {
            return Err(format!("parent of {id} is not in a tree"));
        }
        if store.side(p) != store.side(v) {
            return Err(format!("vertex {id} and its parent are in different trees"));
        }
        let open = match store.side(v) {
            Side::Source => store.residual(p, ms) > 0,
            Side::Sink => store.residual(v, 0) > 0,
        };
        if !open {
            return Err(format!("tree edge of {id} is saturated"));
        }

        walk.clear();
        let mut x = v;
        loop {
            let xi = ids[&x];
            match reach[xi] {
                1 => break,
                2 => return Err(format!("parent chain through {xi} is a cycle")),
                _ => {}
            }
            match store.parent_state(x) {
                ParentState::Terminal => break,
                ParentState::Internal { .. } => {
                    reach[xi] = 2;
                    walk.push(xi);
                    x = store.resolve_head(x, 0);
                }
                _ => return Err(format!("parent chain of {id} does not reach a terminal")),
            }
        }
        for &w in &walk {
            reach[w] = 1;
        }
    }
    Ok(())
}

/// Every flagged vertex must hang below an orphan: its parent chain reaches
/// an ORPHAN without passing a terminal root.
pub fn check_flagged_chains(store: &WordStore) -> Result<(), String> {
    let n = store.n();
    for (id, v) in store.iterate_vertices() {
        if store.ts(v) != ORPHAN_PATH_FLAG {
            continue;
        }
        match store.parent_state(v) {
            ParentState::Terminal => continue,
            ParentState::Free => return Err(format!("free vertex {id} carries a flag")),
            _ => {}
        }
        let mut x = v;
        let mut steps = 0;
        loop {
            match store.parent_state(x) {
                ParentState::Orphan => break,
                ParentState::Internal { .. } => {
                    x = store.resolve_head(x, 0);
                    steps += 1;
                    if steps > n {
                        return Err(format!("parent chain of flagged vertex {id} is a cycle"));
                    }
                }
                _ => return Err(format!("flagged vertex {id} is not below an orphan")),
            }
        }
    }
    Ok(())
}

/// Number of flagged tree vertices.
pub fn count_flags(store: &WordStore) -> usize {
    store
        .iterate_vertices()
        .filter(|&(_, v)| {
            store.ts(v) == ORPHAN_PATH_FLAG && store.parent_state(v) != ParentState::Terminal
        })
        .count()
}

/// Flow on every problem edge as `(u -> v, v -> u)`, recovered from the
/// residual capacities. The net flow of a merged pair is spread over its
/// original edges in list order.
pub fn reconstruct_edge_flows(
    problem: &Problem,
    store: &WordStore,
) -> Result<Vec<(u64, u64)>, String> {
    let offsets = store.vertex_offsets();
    let mut caps: HashMap<(u32, u32), (u64, u64)> = HashMap::new();
    for e in &problem.edges {
        let (key, fwd, bwd) = if e.u < e.v {
            ((e.u, e.v), e.cap_uv, e.cap_vu)
        } else {
            ((e.v, e.u), e.cap_vu, e.cap_uv)
        };
        let c = caps.entry(key).or_default();
        c.0 += fwd as u64;
        c.1 += bwd as u64;
    }
    // net flow lo -> hi still to be placed on original edges
    let mut left: HashMap<(u32, u32), i64> = HashMap::new();
    for (&(lo, hi), &(c_lh, _)) in &caps {
        let (a, b) = (offsets[lo as usize], offsets[hi as usize]);
        let net = match store.find_slot(a, b) {
            Some(s) => c_lh as i64 - store.residual(a, s) as i64,
            None => 0,
        };
        left.insert((lo, hi), net);
    }
    let mut flows = Vec::with_capacity(problem.edges.len());
    for e in &problem.edges {
        let key = (e.u.min(e.v), e.u.max(e.v));
        let net = left.get_mut(&key).expect("pair present");
        let forward_is_lo_hi = e.u < e.v;
        let (cap_lh, cap_hl) = if forward_is_lo_hi {
            (e.cap_uv, e.cap_vu)
        } else {
            (e.cap_vu, e.cap_uv)
        };
        let (f_lh, f_hl) = if *net > 0 {
            let f = (*net).min(cap_lh as i64);
            *net -= f;
            (f as u64, 0)
        } else {
            let f = (-*net).min(cap_hl as i64);
            *net += f;
            (0, f as u64)
        };
        flows.push(if forward_is_lo_hi {
            (f_lh, f_hl)
        } else {
            (f_hl, f_lh)
        });
    }
    if let Some((k, net)) = left.iter().find(|(_, &net)| net != 0) {
        return Err(format!(
            "net flow {net} between {} and {} exceeds capacity",
            k.0, k.1
        ));
    }
    Ok(flows)
}

/// Per-vertex conservation and capacity violations of the flow encoded in a
/// solved store. Empty when the flow is valid.
pub fn conservation_errors(problem: &Problem, store: &WordStore) -> Vec<String> {
    let flows = match reconstruct_edge_flows(problem, store) {
        Ok(f) => f,
        Err(e) => return vec![e],
    };
    let mut errors = Vec::new();
    let mut excess = vec![0i64; problem.n];
    for (e, &(f, b)) in problem.edges.iter().zip(&flows) {
        if f > e.cap_uv as u64 || b > e.cap_vu as u64 {
            errors.push(format!(
                "edge ({}, {}) carries more than its capacity",
                e.u, e.v
            ));
        }
        let net = f as i64 - b as i64;
        excess[e.u as usize] -= net;
        excess[e.v as usize] += net;
    }
    let mut total = 0i64;
    for (id, v) in store.iterate_vertices() {
        let (cs, ct) = problem.terminal_caps[id];
        let (rs, rt) = store.terminal_residual(v);
        let pushed = cs.min(ct);
        let from_source = cs as i64 - rs as i64;
        let to_sink = ct as i64 - rt as i64;
        if from_source < 0 || to_sink < 0 || from_source < pushed as i64 {
            errors.push(format!("terminal flow of vertex {id} is out of range"));
        }
        total += from_source;
        excess[id] += from_source - to_sink;
        if excess[id] != 0 {
            errors.push(format!("vertex {id} has excess {}", excess[id]));
        }
    }
    if total != store.flow() {
        errors.push(format!(
            "source outflow {total} differs from flow {}",
            store.flow()
        ));
    }
    errors
}
