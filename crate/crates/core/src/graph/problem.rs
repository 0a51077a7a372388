use super::GraphError;

/// An internal edge between two non-terminal vertices, with a capacity in
/// each direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: u32,
    pub v: u32,
    pub cap_uv: u32,
    pub cap_vu: u32,
}

impl Edge {
    pub fn new(u: u32, v: u32, cap_uv: u32, cap_vu: u32) -> Self {
        Self {
            u,
            v,
            cap_uv,
            cap_vu,
        }
    }
}

/// Portable description of an s-t cut problem.
///
/// Vertices are `0..n`. The source and sink are implicit: a vertex connects
/// to them only through `terminal_caps[v] = (cap_from_source, cap_to_sink)`.
/// Parallel and duplicate edges are allowed; they are merged at build time.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Problem {
    pub n: usize,
    pub terminal_caps: Vec<(u32, u32)>,
    pub edges: Vec<Edge>,
}

impl Problem {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            terminal_caps: vec![(0, 0); n],
            edges: Vec::new(),
        }
    }

    pub fn add_edge(&mut self, u: u32, v: u32, cap_uv: u32, cap_vu: u32) {
        self.edges.push(Edge::new(u, v, cap_uv, cap_vu));
    }

    /// Adds to the terminal capacities of `v`, saturating at `u32::MAX`.
    pub fn add_terminal(&mut self, v: u32, cap_source: u32, cap_sink: u32) {
        let caps = &mut self.terminal_caps[v as usize];
        caps.0 = caps.0.saturating_add(cap_source);
        caps.1 = caps.1.saturating_add(cap_sink);
    }

    /// Number of directed residual edges before merging: two per listed edge.
    pub fn unmerged_residual_edges(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        if self.terminal_caps.len() != self.n {
            return Err(GraphError::TerminalCapsLength {
                expected: self.n,
                found: self.terminal_caps.len(),
            });
        }
        for (index, e) in self.edges.iter().enumerate() {
            if e.u as usize >= self.n || e.v as usize >= self.n {
                return Err(GraphError::TerminalEdgeInInternalList {
                    index,
                    u: e.u,
                    v: e.v,
                });
            }
            if e.u == e.v {
                return Err(GraphError::SelfLoop { vertex: e.u });
            }
        }
        Ok(())
    }
}
