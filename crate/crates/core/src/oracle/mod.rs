//! Reference solver and instance generators for differential testing.
//!
//! The reference is plain shortest-augmenting-path max-flow over an explicit
//! adjacency list with the source and sink as real vertices. It shares no
//! code with the engines and does not merge parallel edges.

mod generate;

use std::collections::VecDeque;

pub use generate::{differential_instance, gen_random, InstanceRng};

use crate::engine::CutAssignment;
use crate::graph::{Problem, Side};

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: u64,
    rev: usize,
}

/// Residual network over `n + 2` vertices; the source is `n`, the sink
/// `n + 1`.
#[derive(Debug, Clone)]
pub struct OracleGraph {
    adj: Vec<Vec<Arc>>,
    source: usize,
    sink: usize,
}

impl OracleGraph {
    pub fn from_problem(problem: &Problem) -> Self {
        let n = problem.n;
        let mut g = Self {
            adj: vec![Vec::new(); n + 2],
            source: n,
            sink: n + 1,
        };
        for (v, &(cs, ct)) in problem.terminal_caps.iter().enumerate() {
            g.add_arc(n, v, cs as u64);
            g.add_arc(v, n + 1, ct as u64);
        }
        for e in &problem.edges {
            g.add_arc(e.u as usize, e.v as usize, e.cap_uv as u64);
            g.add_arc(e.v as usize, e.u as usize, e.cap_vu as u64);
        }
        g
    }

    fn add_arc(&mut self, u: usize, v: usize, cap: u64) {
        let (ru, rv) = (self.adj[v].len(), self.adj[u].len());
        self.adj[u].push(Arc {
            to: v,
            cap,
            rev: ru,
        });
        self.adj[v].push(Arc {
            to: u,
            cap: 0,
            rev: rv,
        });
    }

    /// Runs breadth-first augmentation to completion and returns the flow.
    pub fn max_flow(&mut self) -> i64 {
        let mut flow = 0i64;
        let mut pred: Vec<Option<(usize, usize)>> = vec![None; self.adj.len()];
        loop {
            pred.iter_mut().for_each(|p| *p = None);
            let mut queue = VecDeque::from([self.source]);
            let mut seen = vec![false; self.adj.len()];
            seen[self.source] = true;
            while let Some(u) = queue.pop_front() {
                if u == self.sink {
                    break;
                }
                for (i, a) in self.adj[u].iter().enumerate() {
                    if a.cap > 0 && !seen[a.to] {
                        seen[a.to] = true;
                        pred[a.to] = Some((u, i));
                        queue.push_back(a.to);
                    }
                }
            }
            if !seen[self.sink] {
                return flow;
            }
            let mut delta = u64::MAX;
            let mut v = self.sink;
            while let Some((u, i)) = pred[v] {
                delta = delta.min(self.adj[u][i].cap);
                v = u;
            }
            let mut v = self.sink;
            while let Some((u, i)) = pred[v] {
                self.adj[u][i].cap -= delta;
                let (to, rev) = (self.adj[u][i].to, self.adj[u][i].rev);
                self.adj[to][rev].cap += delta;
                v = u;
            }
            flow += delta as i64;
        }
    }

    /// Vertices reachable from the source in the residual network, by id.
    /// Call after [`max_flow`](Self::max_flow) to get a minimum cut.
    pub fn source_reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[self.source] = true;
        let mut queue = VecDeque::from([self.source]);
        while let Some(u) = queue.pop_front() {
            for a in &self.adj[u] {
                if a.cap > 0 && !seen[a.to] {
                    seen[a.to] = true;
                    queue.push_back(a.to);
                }
            }
        }
        seen.truncate(self.source);
        seen
    }
}

/// Maximum flow value of `problem`.
pub fn oracle_max_flow(problem: &Problem) -> i64 {
    OracleGraph::from_problem(problem).max_flow()
}

/// Maximum flow value and a minimum cut (source side = residually
/// reachable from the source).
pub fn oracle_min_cut(problem: &Problem) -> CutAssignment {
    let mut g = OracleGraph::from_problem(problem);
    let flow = g.max_flow();
    let sides = g
        .source_reachable()
        .into_iter()
        .map(|r| if r { Side::Source } else { Side::Sink })
        .collect();
    CutAssignment { sides, flow }
}

/// Capacity of the cut described by `assignment` over the original edges.
pub fn oracle_cut_value(problem: &Problem, assignment: &CutAssignment) -> i64 {
    cut_value_by(problem, |v| assignment.sides[v] == Side::Source)
}

fn cut_value_by(problem: &Problem, in_source: impl Fn(usize) -> bool) -> i64 {
    let mut total = 0i64;
    for (v, &(cs, ct)) in problem.terminal_caps.iter().enumerate() {
        total += if in_source(v) { ct as i64 } else { cs as i64 };
    }
    for e in &problem.edges {
        let (a, b) = (in_source(e.u as usize), in_source(e.v as usize));
        if a && !b {
            total += e.cap_uv as i64;
        } else if b && !a {
            total += e.cap_vu as i64;
        }
    }
    total
}

/// Smallest cut value over all `2^n` assignments. Only for small `n`.
pub fn exhaustive_min_cut(problem: &Problem) -> i64 {
    assert!(
        problem.n <= 24,
        "exhaustive enumeration is limited to 24 vertices"
    );
    (0u32..1 << problem.n)
        .map(|mask| cut_value_by(problem, |v| mask >> v & 1 == 1))
        .min()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn four_vertex_flow_and_cut() {
        let p = fixtures::four_vertex();
        assert_eq!(oracle_max_flow(&p), 9);
        let cut = CutAssignment {
            sides: vec![Side::Source, Side::Sink, Side::Source, Side::Sink],
            flow: 9,
        };
        assert_eq!(oracle_cut_value(&p, &cut), 9);
        assert_eq!(exhaustive_min_cut(&p), 9);
        assert_eq!(oracle_min_cut(&p).source_set(), vec![0, 2]);
    }

    #[test]
    fn no_terminals_no_flow() {
        let mut p = Problem::new(3);
        p.add_edge(0, 1, 5, 5);
        assert_eq!(oracle_max_flow(&p), 0);
    }

    #[test]
    fn two_disjoint_paths() {
        let mut p = Problem::new(4);
        p.terminal_caps = vec![(2, 0), (0, 2), (5, 0), (0, 5)];
        p.add_edge(0, 1, 2, 0);
        p.add_edge(2, 3, 5, 0);
        assert_eq!(oracle_max_flow(&p), 7);
    }

    #[test]
    fn all_sink_cut_is_source_caps() {
        let p = fixtures::four_vertex();
        let cut = CutAssignment {
            sides: vec![Side::Sink; 4],
            flow: 0,
        };
        assert_eq!(oracle_cut_value(&p, &cut), 10);
    }

    #[test]
    fn edge_order_does_not_matter() {
        for seed in 0..20 {
            let p = gen_random(seed, 12, 40, 9, 0.4);
            let mut q = p.clone();
            q.edges.reverse();
            assert_eq!(oracle_max_flow(&p), oracle_max_flow(&q));
        }
    }

    #[test]
    fn min_cut_matches_enumeration() {
        for seed in 0..50 {
            let p = gen_random(seed, 1 + (seed as usize % 10), 25, 7, 0.5);
            let flow = oracle_max_flow(&p);
            assert_eq!(exhaustive_min_cut(&p), flow, "seed {seed}");
            assert_eq!(oracle_cut_value(&p, &oracle_min_cut(&p)), flow);
        }
    }
}
