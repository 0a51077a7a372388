//! Orphan-path flags.
//!
//! A failed root search flags every vertex it walked. A flagged vertex is in
//! a tree rooted at an orphan, so later searches stop there instead of
//! walking the same chain again. Flags are stored as the reserved timestamp
//! and are all gone by the end of the adoption stage: a freed orphan clears
//! its own flag, and a reconnected orphan clears its flagged descendants.

use super::state::{hop, RootSearch, SolverState};
use crate::graph::layout::ORPHAN_PATH_FLAG;
use crate::graph::ParentState;

impl SolverState<'_> {
    /// [`findroot`](SolverState::findroot) that also stops at flagged
    /// vertices and flags the walked path when the search fails.
    pub fn findroot_flagging(&mut self, start: usize) -> RootSearch {
        self.path.clear();
        let mut x = start;
        let base = loop {
            match self.store.parent_state(x) {
                ParentState::Terminal => break Some(1),
                ParentState::Orphan | ParentState::Free => break None,
                ParentState::Internal { .. } => {
                    let ts = self.store.ts(x);
                    if ts == self.time {
                        break Some(self.store.distance(x));
                    }
                    if ts == ORPHAN_PATH_FLAG {
                        break None;
                    }
                    self.path.push(x);
                    x = self.store.resolve_head(x, 0);
                    self.count_traversal();
                }
            }
        };
        match base {
            Some(d) => RootSearch::ReachedTerminal(self.mark_path(d)),
            None => {
                for i in 0..self.path.len() {
                    let v = self.path[i];
                    self.store.set_ts(v, ORPHAN_PATH_FLAG);
                }
                self.flagged += self.path.len() as u64;
                self.stats.flags_set += self.path.len() as u64;
                RootSearch::Disconnected
            }
        }
    }

    /// Depth-first walk from a just-reconnected orphan over flagged children,
    /// clearing their flags and marking them terminal-connected.
    pub(crate) fn unflag_subtree(&mut self, o: usize) {
        self.dfs.clear();
        self.dfs.push(o);
        while let Some(x) = self.dfs.pop() {
            let dx = self.store.distance(x);
            for slot in 0..self.store.degree(x) {
                let u = self.store.resolve_head(x, slot);
                if self.store.ts(u) != ORPHAN_PATH_FLAG {
                    continue;
                }
                if !matches!(self.store.parent_state(u), ParentState::Internal { .. }) {
                    continue;
                }
                if self.store.resolve_head(u, 0) != x {
                    continue;
                }
                self.store.set_ts(u, self.time);
                self.store.set_distance(u, hop(dx));
                self.flagged -= 1;
                self.stats.flags_cleared += 1;
                self.stats.flag_dfs_visits += 1;
                self.stage_dfs_visits += 1;
                self.dfs.push(u);
            }
        }
    }
}
