use std::collections::VecDeque;

use super::{check, Algorithm, SolveConfig, SolveStats};
use crate::graph::layout::{MAX_DISTANCE, ORPHAN_PATH_FLAG};
use crate::graph::{ActiveList, ParentState, Side, WordStore};

/// A non-saturated edge from the source tree into the sink tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bridge {
    /// Source-side endpoint.
    pub tail: usize,
    /// Slot of the bridge edge in `tail`'s list.
    pub slot: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthOutcome {
    Bridge(Bridge),
    Exhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootSearch {
    /// The chain is terminal-connected; the start is this many hops from
    /// the terminal.
    ReachedTerminal(u32),
    Disconnected,
}

/// Mutable state of one solve over a borrowed store.
pub struct SolverState<'a> {
    pub(crate) store: &'a mut WordStore,
    pub(crate) config: SolveConfig,
    pub(crate) active: ActiveList,
    pub(crate) orphans: VecDeque<usize>,
    pub(crate) immediate: Vec<usize>,
    pub(crate) time: u32,
    pub(crate) stats: SolveStats,
    pub(crate) stage_traversals: u64,
    pub(crate) stage_dfs_visits: u64,
    pub(crate) flagged: u64,
    pub(crate) path: Vec<usize>,
    pub(crate) dfs: Vec<usize>,
    current: Option<usize>,
    started: bool,
}

#[inline]
pub(crate) fn hop(d: u32) -> u32 {
    (d + 1).min(MAX_DISTANCE)
}

impl<'a> SolverState<'a> {
    pub fn new(store: &'a mut WordStore, config: SolveConfig) -> Self {
        let initial_flow = store.initial_flow();
        Self {
            store,
            config,
            active: ActiveList::new(),
            orphans: VecDeque::new(),
            immediate: Vec::new(),
            time: 0,
            stats: SolveStats {
                initial_flow,
                flow: initial_flow,
                ..SolveStats::default()
            },
            stage_traversals: 0,
            stage_dfs_visits: 0,
            flagged: 0,
            path: Vec::new(),
            dfs: Vec::new(),
            current: None,
            started: false,
        }
    }

    pub fn store(&self) -> &WordStore {
        self.store
    }

    pub fn store_mut(&mut self) -> &mut WordStore {
        self.store
    }

    pub fn stats(&self) -> &SolveStats {
        &self.stats
    }

    pub fn global_time(&self) -> u32 {
        self.time
    }

    pub fn set_global_time(&mut self, time: u32) {
        self.time = time;
    }

    pub fn into_stats(self) -> SolveStats {
        self.stats
    }

    pub(crate) fn is_fc(&self) -> bool {
        self.config.algorithm == Algorithm::Fcbk
    }

    /// Queues every terminal-connected vertex. Called once before growth.
    pub fn activate_terminals(&mut self) {
        if self.started {
            return;
        }
        self.started = true;
        let roots: Vec<usize> = self
            .store
            .iterate_vertices()
            .map(|(_, v)| v)
            .filter(|&v| self.store.parent_state(v) == ParentState::Terminal)
            .collect();
        for v in roots {
            self.active.push(self.store, v);
        }
    }

    /// Runs growth, augmentation and adoption stages until no bridge is left.
    pub fn run(&mut self) {
        self.activate_terminals();
        if self.config.debug_invariants {
            self.validate("after build");
        }
        while let GrowthOutcome::Bridge(bridge) = self.growth_stage() {
            self.augment(bridge);
            self.adopt();
            if let Some(v) = self.current.take() {
                if !self.store.is_free(v) {
                    self.active.push_front(self.store, v);
                }
            }
        }
        self.stats.external_links = self.active.external_total();
        self.stats.external_queue_peak = self.active.external_peak() as u64;
        self.stats.flow = self.store.flow;
        self.store.solved = true;
    }

    /// Timestamp a vertex is treated as having: the current time for
    /// terminal-connected roots.
    #[inline]
    pub(crate) fn effective_ts(&self, v: usize) -> u32 {
        if self.store.parent_state(v) == ParentState::Terminal {
            self.time
        } else {
            self.store.ts(v)
        }
    }

    /// Grows both trees breadth-first until a bridge appears or no active
    /// vertex is left.
    pub fn growth_stage(&mut self) -> GrowthOutcome {
        self.activate_terminals();
        self.stats.growth_stages += 1;
        let mut scans = 0u64;
        let outcome = 'outer: loop {
            let Some(v) = self.active.pop(self.store) else {
                break GrowthOutcome::Exhausted;
            };
            let state = self.store.parent_state(v);
            if matches!(state, ParentState::Free | ParentState::Orphan) {
                continue;
            }
            let side = self.store.side(v);
            for slot in 0..self.store.degree(v) {
                scans += 1;
                let usable = match side {
                    Side::Source => self.store.residual(v, slot) > 0,
                    Side::Sink => !self.store.mirror_saturated(v, slot),
                };
                if !usable {
                    continue;
                }
                let u = self.store.resolve_head(v, slot);
                match self.store.parent_state(u) {
                    ParentState::Free => {
                        let k = self.slot_to(u, v);
                        self.store.attach(u, k, v, slot);
                        self.store.set_ts(u, self.effective_ts(v));
                        self.store.set_distance(u, hop(self.store.distance(v)));
                        self.active.push(self.store, u);
                    }
                    _ if self.store.side(u) != side => {
                        self.current = Some(v);
                        let bridge = match side {
                            Side::Source => Bridge { tail: v, slot },
                            Side::Sink => Bridge {
                                tail: u,
                                slot: self.slot_to(u, v),
                            },
                        };
                        break 'outer GrowthOutcome::Bridge(bridge);
                    }
                    ParentState::Internal { .. } => {
                        let dv = self.store.distance(v);
                        if self.effective_ts(v) == self.time
                            && self.store.ts(u) == self.time
                            && hop(dv) < self.store.distance(u)
                        {
                            let k = self.slot_to(u, v);
                            self.store.attach(u, k, v, slot);
                            self.store.set_distance(u, hop(dv));
                        }
                    }
                    _ => {}
                }
            }
        };
        self.stats.growth_edge_scans += scans;
        self.stats.growth_edge_scans_max_stage = self.stats.growth_edge_scans_max_stage.max(scans);
        outcome
    }

    #[inline]
    pub(crate) fn slot_to(&self, v: usize, head: usize) -> usize {
        self.store
            .find_slot(v, head)
            .expect("residual edge without a mirror")
    }

    /// Bottleneck of the path through `bridge`.
    pub fn bottleneck(&self, bridge: Bridge) -> u32 {
        let s = &*self.store;
        let mut delta = s.residual(bridge.tail, bridge.slot);
        let mut v = bridge.tail;
        loop {
            match s.parent_state(v) {
                ParentState::Internal { mirror_slot } => {
                    let p = s.resolve_head(v, 0);
                    delta = delta.min(s.residual(p, mirror_slot as usize));
                    v = p;
                }
                ParentState::Terminal => {
                    delta = delta.min(s.ts(v));
                    break;
                }
                _ => unreachable!("source chain does not reach a terminal"),
            }
        }
        let mut v = s.resolve_head(bridge.tail, bridge.slot);
        loop {
            match s.parent_state(v) {
                ParentState::Internal { .. } => {
                    delta = delta.min(s.residual(v, 0));
                    v = s.resolve_head(v, 0);
                }
                ParentState::Terminal => {
                    delta = delta.min(s.ts(v));
                    break;
                }
                _ => unreachable!("sink chain does not reach a terminal"),
            }
        }
        delta
    }

    /// Pushes the bottleneck along the path through `bridge`, queueing every
    /// vertex whose tree edge saturates as an orphan. Returns the amount
    /// pushed.
    pub fn augment(&mut self, bridge: Bridge) -> u32 {
        let delta = self.bottleneck(bridge);
        debug_assert!(delta > 0);
        let (q, ms) = self
            .store
            .mirror_scan(bridge.tail, bridge.slot)
            .expect("bridge without a mirror");
        self.store
            .push_along(bridge.tail, bridge.slot, q, ms, delta);

        let mut v = bridge.tail;
        loop {
            match self.store.parent_state(v) {
                ParentState::Internal { mirror_slot } => {
                    let p = self.store.resolve_head(v, 0);
                    let j = mirror_slot as usize;
                    self.store.push_along(p, j, v, 0, delta);
                    if self.store.residual(p, j) == 0 {
                        self.make_orphan(v);
                    }
                    v = p;
                }
                _ => {
                    self.drain_terminal(v, delta);
                    break;
                }
            }
        }
        let mut v = q;
        loop {
            match self.store.parent_state(v) {
                ParentState::Internal { mirror_slot } => {
                    let p = self.store.resolve_head(v, 0);
                    self.store.push_along(v, 0, p, mirror_slot as usize, delta);
                    if self.store.residual(v, 0) == 0 {
                        self.make_orphan(v);
                    }
                    v = p;
                }
                _ => {
                    self.drain_terminal(v, delta);
                    break;
                }
            }
        }
        self.store.flow += delta as i64;
        self.stats.flow = self.store.flow;
        self.stats.augmentations += 1;
        delta
    }

    fn drain_terminal(&mut self, v: usize, delta: u32) {
        let left = self.store.ts(v) - delta;
        self.store.set_ts(v, left);
        if left == 0 {
            self.make_orphan(v);
        }
    }

    pub(crate) fn make_orphan(&mut self, v: usize) {
        self.store.set_parent_state(v, ParentState::Orphan);
        self.orphans.push_back(v);
    }

    /// Marks an orphan created by hand; used to script adoption scenarios.
    pub fn push_orphan(&mut self, v: usize) {
        self.make_orphan(v);
    }

    /// Queues `v` for growth.
    pub fn activate(&mut self, v: usize) {
        self.active.push(self.store, v);
    }

    /// Advances the timestamp, skipping the reserved flag value and
    /// resetting every timestamp on wraparound.
    pub(crate) fn tick(&mut self) {
        self.time = self.time.wrapping_add(1);
        if self.time == ORPHAN_PATH_FLAG || self.time == 0 {
            let vs: Vec<usize> = self.store.iterate_vertices().map(|(_, v)| v).collect();
            for v in vs {
                if self.store.parent_state(v) != ParentState::Terminal {
                    self.store.set_ts(v, 0);
                }
            }
            self.time = 1;
            self.stats.timestamp_resets += 1;
        }
    }

    pub(crate) fn validate(&mut self, when: &str) {
        if let Err(msg) = check::check_forest(self.store) {
            self.record_violation(format!("{when}: {msg}"));
        }
    }

    pub(crate) fn record_violation(&mut self, msg: String) {
        self.stats.invariant_violations += 1;
        if self.stats.first_violation.is_none() {
            self.stats.first_violation = Some(msg);
        }
    }
}
