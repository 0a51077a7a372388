use super::state::{hop, RootSearch, SolverState};
use crate::graph::layout::ORPHAN_PATH_FLAG;
use crate::graph::{ParentState, Side};

impl SolverState<'_> {
    /// Adoption stage: re-parents or frees every queued orphan. Orphans that
    /// appear while an orphan is freed are handled first, newest first.
    pub fn adopt(&mut self) {
        self.tick();
        self.stats.adoption_stages += 1;
        self.stage_traversals = 0;
        self.stage_dfs_visits = 0;
        loop {
            let o = match self.immediate.pop() {
                Some(o) => o,
                None => match self.orphans.pop_front() {
                    Some(o) => o,
                    None => break,
                },
            };
            if self.store.parent_state(o) != ParentState::Orphan {
                continue;
            }
            self.process_orphan(o);
            if self.config.debug_invariants && self.is_fc() {
                if let Err(msg) = super::check::check_flagged_chains(self.store) {
                    self.record_violation(format!(
                        "adoption stage {}: {msg}",
                        self.stats.adoption_stages
                    ));
                }
            }
        }
        self.stats.findroot_traversals_max_stage = self
            .stats
            .findroot_traversals_max_stage
            .max(self.stage_traversals);
        self.stats.flag_dfs_visits_max_stage = self
            .stats
            .flag_dfs_visits_max_stage
            .max(self.stage_dfs_visits);
        if self.config.debug_invariants {
            if self.flagged != 0 {
                let msg = format!("{} flags left after adoption stage", self.flagged);
                self.record_violation(msg);
            }
            let when = format!("after adoption stage {}", self.stats.adoption_stages);
            self.validate(&when);
        }
    }

    /// Whether the edge between orphan `o` and its neighbor in `slot` can
    /// carry a tree edge toward `o`'s side.
    #[inline]
    pub(crate) fn usable_toward(&self, o: usize, slot: usize, side: Side) -> bool {
        match side {
            Side::Source => !self.store.mirror_saturated(o, slot),
            Side::Sink => self.store.residual(o, slot) > 0,
        }
    }

    /// Finds a terminal-connected potential parent for `o` (smallest
    /// distance, first slot on ties) or frees it.
    pub fn process_orphan(&mut self, o: usize) {
        self.stats.orphans_processed += 1;
        let fc = self.is_fc();
        let side = self.store.side(o);
        let mut best: Option<(usize, u32)> = None;
        for slot in 0..self.store.degree(o) {
            if !self.usable_toward(o, slot, side) {
                continue;
            }
            let u = self.store.resolve_head(o, slot);
            if self.store.is_free(u) || self.store.side(u) != side {
                continue;
            }
            let found = if fc {
                self.findroot_flagging(u)
            } else {
                self.findroot(u)
            };
            if let RootSearch::ReachedTerminal(d) = found {
                if best.is_none_or(|(_, bd)| d < bd) {
                    best = Some((slot, d));
                }
            }
        }
        match best {
            Some((slot, d)) => {
                let p = self.store.resolve_head(o, slot);
                let j = self.slot_to(p, o);
                self.store.attach(o, slot, p, j);
                self.clear_flag(o);
                self.store.set_ts(o, self.time);
                self.store.set_distance(o, hop(d));
                if fc {
                    self.unflag_subtree(o);
                }
            }
            None => self.free_orphan(o),
        }
    }

    /// Follows parent edges from `start`. On success every vertex walked is
    /// marked with the current time and its exact distance.
    pub fn findroot(&mut self, start: usize) -> RootSearch {
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
            None => RootSearch::Disconnected,
        }
    }

    #[inline]
    pub(crate) fn count_traversal(&mut self) {
        self.stage_traversals += 1;
        self.stats.findroot_traversals += 1;
    }

    /// Marks the walked path given the distance of the vertex it ended on.
    /// Returns the distance of the start.
    pub(crate) fn mark_path(&mut self, mut d: u32) -> u32 {
        for i in (0..self.path.len()).rev() {
            let v = self.path[i];
            d = hop(d);
            self.store.set_ts(v, self.time);
            self.store.set_distance(v, d);
        }
        d
    }

    /// Frees `o`: its children become orphans and neighbors that could adopt
    /// it later are activated.
    pub(crate) fn free_orphan(&mut self, o: usize) {
        let side = self.store.side(o);
        self.clear_flag(o);
        self.store.set_parent_state(o, ParentState::Free);
        self.store.set_ts(o, 0);
        for slot in 0..self.store.degree(o) {
            let u = self.store.resolve_head(o, slot);
            if self.store.is_free(u) || self.store.side(u) != side {
                continue;
            }
            if self.usable_toward(o, slot, side) {
                self.active.push(self.store, u);
            }
            if let ParentState::Internal { .. } = self.store.parent_state(u) {
                if self.store.resolve_head(u, 0) == o {
                    self.store.set_parent_state(u, ParentState::Orphan);
                    self.immediate.push(u);
                }
            }
        }
    }

    #[inline]
    pub(crate) fn clear_flag(&mut self, v: usize) {
        if self.store.ts(v) == ORPHAN_PATH_FLAG
            && self.store.parent_state(v) != ParentState::Terminal
        {
            self.store.set_ts(v, 0);
            self.flagged -= 1;
            self.stats.flags_cleared += 1;
        }
    }
}
