use std::collections::HashMap;

use super::layout::*;
use super::store::{RefMode, WordStore, DEFAULT_LINK_LIMIT};
use super::{GraphError, Problem};

/// Reference mode requested at build time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ModeRequest {
    /// Absolute when every word index fits 32 bits, relative otherwise.
    #[default]
    Auto,
    Absolute,
    Relative,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct BuildOptions {
    pub mode: ModeRequest,
    /// Treat the edge list as already merged: a repeated vertex pair is an
    /// error instead of being summed.
    pub assume_merged: bool,
}

impl BuildOptions {
    pub fn with_mode(mode: ModeRequest) -> Self {
        Self {
            mode,
            ..Self::default()
        }
    }
}

/// Both directions of one merged vertex pair, `lo < hi`.
#[derive(Debug, Clone, Copy)]
struct Pair {
    lo: usize,
    hi: usize,
    cap_lo_hi: u64,
    cap_hi_lo: u64,
}

/// Builds the packed residual graph. Returns the store and the flow pushed
/// through terminal-only paths.
pub fn build(problem: &Problem, mode: ModeRequest) -> Result<(WordStore, i64), GraphError> {
    build_with(problem, &BuildOptions::with_mode(mode))
}

pub fn build_with(
    problem: &Problem,
    options: &BuildOptions,
) -> Result<(WordStore, i64), GraphError> {
    problem.validate()?;
    let n = problem.n;
    let pairs = merge_pairs(problem, options.assume_merged)?;

    let mut degree = vec![0usize; n];
    for p in &pairs {
        degree[p.lo] += 1;
        degree[p.hi] += 1;
    }
    if let Some(v) = degree.iter().position(|&d| d > MAX_DEGREE) {
        return Err(GraphError::DegreeOverflow {
            vertex: v as u32,
            degree: degree[v],
        });
    }

    let mut offset = Vec::with_capacity(n);
    let mut total = 0usize;
    for &d in &degree {
        offset.push(total);
        total += VERTEX_WORDS + EDGE_WORDS * d;
    }
    let m_i = 2 * pairs.len();

    let fits_absolute = (total as u64) < (1u64 << 32);
    let mode = match options.mode {
        ModeRequest::Auto if fits_absolute => RefMode::Absolute,
        ModeRequest::Auto => RefMode::Relative,
        ModeRequest::Absolute if fits_absolute => RefMode::Absolute,
        ModeRequest::Absolute => return Err(GraphError::AbsoluteIndexOverflow { words: total }),
        ModeRequest::Relative => RefMode::Relative,
    };
    if mode == RefMode::Relative {
        for p in &pairs {
            let diff = offset[p.hi] as i64 - offset[p.lo] as i64;
            if diff > i32::MAX as i64 {
                return Err(GraphError::RelativeIndexOverflow {
                    u: p.lo as u32,
                    v: p.hi as u32,
                });
            }
        }
    }

    let mut words = vec![0u32; total];
    let head_ref = |tail: usize, head: usize| -> u32 {
        match mode {
            RefMode::Absolute => head as u32,
            RefMode::Relative => (head as i64 - tail as i64) as i32 as u32,
        }
    };
    let mut cursor: Vec<usize> = offset.iter().map(|&o| o + VERTEX_WORDS).collect();
    for p in &pairs {
        let (a, b) = (offset[p.lo], offset[p.hi]);
        let e = EdgeView {
            head_ref: head_ref(a, b),
            mirror_saturated: p.cap_hi_lo == 0,
            residual: p.cap_lo_hi as u32,
        };
        words[cursor[p.lo]..cursor[p.lo] + 2].copy_from_slice(&e.encode());
        cursor[p.lo] += EDGE_WORDS;
        let e = EdgeView {
            head_ref: head_ref(b, a),
            mirror_saturated: p.cap_lo_hi == 0,
            residual: p.cap_hi_lo as u32,
        };
        words[cursor[p.hi]..cursor[p.hi] + 2].copy_from_slice(&e.encode());
        cursor[p.hi] += EDGE_WORDS;
    }

    let unlinked = match mode {
        RefMode::Absolute => super::store::LINK_NONE_ABSOLUTE,
        RefMode::Relative => super::store::LINK_NONE_RELATIVE,
    };
    let mut initial_flow = 0i64;
    for v in 0..n {
        let (cs, ct) = problem.terminal_caps[v];
        let pushed = cs.min(ct);
        initial_flow += pushed as i64;
        let (net_s, net_t) = (cs - pushed, ct - pushed);
        let (parent, side, trcap, distance) = if net_s > 0 {
            (ParentState::Terminal, Side::Source, net_s, 1)
        } else if net_t > 0 {
            (ParentState::Terminal, Side::Sink, net_t, 1)
        } else {
            (ParentState::Free, Side::Source, 0, 0)
        };
        let view = VertexView {
            next_active: unlinked,
            ts_or_trcap: trcap,
            distance,
            degree: degree[v] as u32,
            parent,
            side,
        };
        words[offset[v]..offset[v] + VERTEX_WORDS].copy_from_slice(&view.encode());
    }

    let store = WordStore {
        words,
        n,
        m_i,
        mode,
        initial_flow,
        flow: initial_flow,
        link_limit: DEFAULT_LINK_LIMIT,
        solved: false,
    };
    Ok((store, initial_flow))
}

fn merge_pairs(problem: &Problem, assume_merged: bool) -> Result<Vec<Pair>, GraphError> {
    let mut index: HashMap<(u32, u32), usize> = HashMap::with_capacity(problem.edges.len());
    let mut pairs: Vec<Pair> = Vec::with_capacity(problem.edges.len());
    for e in &problem.edges {
        let (lo, hi, fwd, bwd) = if e.u < e.v {
            (e.u, e.v, e.cap_uv, e.cap_vu)
        } else {
            (e.v, e.u, e.cap_vu, e.cap_uv)
        };
        match index.get(&(lo, hi)) {
            Some(&k) => {
                if assume_merged {
                    return Err(GraphError::ParallelEdge { u: lo, v: hi });
                }
                pairs[k].cap_lo_hi += fwd as u64;
                pairs[k].cap_hi_lo += bwd as u64;
            }
            None => {
                index.insert((lo, hi), pairs.len());
                pairs.push(Pair {
                    lo: lo as usize,
                    hi: hi as usize,
                    cap_lo_hi: fwd as u64,
                    cap_hi_lo: bwd as u64,
                });
            }
        }
    }
    pairs.retain(|p| p.cap_lo_hi > 0 || p.cap_hi_lo > 0);
    for p in &pairs {
        if p.cap_lo_hi > MAX_CAPACITY as u64 || p.cap_hi_lo > MAX_CAPACITY as u64 {
            return Err(GraphError::CapacityOverflow {
                u: p.lo as u32,
                v: p.hi as u32,
            });
        }
    }
    Ok(pairs)
}
