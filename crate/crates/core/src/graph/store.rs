use std::collections::HashMap;

use super::layout::*;
use super::GraphError;

/// How edge heads and active-list links refer to other vertex records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RefMode {
    /// Word index of the target record.
    Absolute,
    /// Signed word offset from the referring vertex record.
    Relative,
}

pub(crate) const LINK_NONE_ABSOLUTE: u32 = u32::MAX;
pub(crate) const LINK_NONE_RELATIVE: u32 = 0x8000_0000;
pub(crate) const LINK_EXTERNAL_RELATIVE: u32 = 0x8000_0001;
/// Largest relative link offset that does not collide with the sentinels.
pub const DEFAULT_LINK_LIMIT: i64 = i32::MAX as i64 - 1;

/// Decoded next-active word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Link {
    Unlinked,
    End,
    External,
    Next(usize),
}

/// The whole residual graph as one flat array of 32-bit words.
///
/// Vertex records appear in id order, each immediately followed by its
/// outgoing edge records. Vertices are addressed by the word index of their
/// record, not by id.
#[derive(Debug, Clone)]
pub struct WordStore {
    pub(crate) words: Vec<u32>,
    pub(crate) n: usize,
    pub(crate) m_i: usize,
    pub(crate) mode: RefMode,
    pub(crate) initial_flow: i64,
    pub(crate) flow: i64,
    pub(crate) link_limit: i64,
    pub(crate) solved: bool,
}

/// Per-vertex decoded contents, keyed by vertex id. Used to compare stores
/// built in different reference modes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicalGraph {
    pub vertices: Vec<LogicalVertex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicalVertex {
    pub parent: ParentState,
    pub side: Side,
    pub ts_or_trcap: u32,
    pub distance: u32,
    /// (head id, residual, mirror saturated) in slot order.
    pub edges: Vec<(usize, u32, bool)>,
}

impl WordStore {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of directed internal residual edges after merging.
    pub fn m_i(&self) -> usize {
        self.m_i
    }

    pub fn mode(&self) -> RefMode {
        self.mode
    }

    pub fn words(&self) -> &[u32] {
        &self.words
    }

    pub fn word_count(&self) -> usize {
        self.words.len()
    }

    /// Bytes occupied by the graph: `16 n + 8 m_i`.
    pub fn memory_bytes(&self) -> u64 {
        16 * self.n as u64 + 8 * self.m_i as u64
    }

    /// Flow pushed at build time through `s -> v -> t` paths.
    pub fn initial_flow(&self) -> i64 {
        self.initial_flow
    }

    /// Flow accumulated so far, including the initial pre-push.
    pub fn flow(&self) -> i64 {
        self.flow
    }

    pub fn is_solved(&self) -> bool {
        self.solved
    }

    /// Narrows the range of relative next-active offsets. Links beyond the
    /// limit go through the external queue. Has no effect in absolute mode.
    pub fn set_link_limit(&mut self, limit: i64) {
        self.link_limit = limit.clamp(0, DEFAULT_LINK_LIMIT);
    }

    /// Vertex ids in order, paired with their word index.
    pub fn iterate_vertices(&self) -> VertexIter<'_> {
        VertexIter {
            store: self,
            id: 0,
            offset: 0,
        }
    }

    /// Word index of every vertex, indexed by id.
    pub fn vertex_offsets(&self) -> Vec<usize> {
        self.iterate_vertices().map(|(_, idx)| idx).collect()
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        unpack_degree(self.words[v + 2], self.words[v + 3]) as usize
    }

    #[inline]
    pub fn parent_code(&self, v: usize) -> u32 {
        unpack_parent_code(self.words[v + 3])
    }

    #[inline]
    pub fn parent_state(&self, v: usize) -> ParentState {
        ParentState::decode(self.parent_code(v))
    }

    #[inline]
    pub fn set_parent_state(&mut self, v: usize, state: ParentState) {
        let w = &mut self.words[v + 3];
        *w = (*w & !(PARENT_MASK << 1)) | (state.encode() << 1);
    }

    #[inline]
    pub fn is_free(&self, v: usize) -> bool {
        self.parent_code(v) == PARENT_FREE
    }

    #[inline]
    pub fn side(&self, v: usize) -> Side {
        Side::from_bit(self.words[v + 3])
    }

    #[inline]
    pub fn set_side(&mut self, v: usize, side: Side) {
        let w = &mut self.words[v + 3];
        *w = (*w & !1) | side.bit();
    }

    /// Timestamp, or terminal residual capacity for TERMINAL vertices.
    #[inline]
    pub fn ts(&self, v: usize) -> u32 {
        self.words[v + 1]
    }

    #[inline]
    pub fn set_ts(&mut self, v: usize, value: u32) {
        self.words[v + 1] = value;
    }

    #[inline]
    pub fn distance(&self, v: usize) -> u32 {
        unpack_distance(self.words[v + 2])
    }

    #[inline]
    pub fn set_distance(&mut self, v: usize, distance: u32) {
        let d = distance.min(MAX_DISTANCE);
        let w = &mut self.words[v + 2];
        *w = (*w & 0x7FFF) | (d << 15);
    }

    /// Remaining capacity of the vertex's terminal edge, split by side.
    /// Zero unless the vertex is TERMINAL.
    pub fn terminal_residual(&self, v: usize) -> (u32, u32) {
        if self.parent_state(v) != ParentState::Terminal {
            return (0, 0);
        }
        match self.side(v) {
            Side::Source => (self.ts(v), 0),
            Side::Sink => (0, self.ts(v)),
        }
    }

    #[inline]
    pub fn edge_index(&self, v: usize, slot: usize) -> usize {
        v + VERTEX_WORDS + EDGE_WORDS * slot
    }

    /// Word index of the head of edge `slot` of vertex `v`.
    #[inline]
    pub fn resolve_head(&self, v: usize, slot: usize) -> usize {
        let head_ref = self.words[self.edge_index(v, slot)];
        match self.mode {
            RefMode::Absolute => head_ref as usize,
            RefMode::Relative => (v as isize + head_ref as i32 as isize) as usize,
        }
    }

    #[inline]
    pub fn residual(&self, v: usize, slot: usize) -> u32 {
        self.words[self.edge_index(v, slot) + 1] & MAX_CAPACITY
    }

    #[inline]
    pub fn set_residual(&mut self, v: usize, slot: usize, cap: u32) {
        let i = self.edge_index(v, slot) + 1;
        self.words[i] = (self.words[i] & MIRROR_SATURATED) | (cap & MAX_CAPACITY);
    }

    #[inline]
    pub fn mirror_saturated(&self, v: usize, slot: usize) -> bool {
        self.words[self.edge_index(v, slot) + 1] & MIRROR_SATURATED != 0
    }

    #[inline]
    pub fn set_mirror_saturated(&mut self, v: usize, slot: usize, saturated: bool) {
        let i = self.edge_index(v, slot) + 1;
        if saturated {
            self.words[i] |= MIRROR_SATURATED;
        } else {
            self.words[i] &= !MIRROR_SATURATED;
        }
    }

    pub fn vertex_view(&self, v: usize) -> VertexView {
        VertexView::decode([
            self.words[v],
            self.words[v + 1],
            self.words[v + 2],
            self.words[v + 3],
        ])
    }

    pub fn edge_view(&self, v: usize, slot: usize) -> EdgeView {
        let i = self.edge_index(v, slot);
        EdgeView::decode([self.words[i], self.words[i + 1]])
    }

    /// Slot of the edge from `v` to `head`, if any.
    #[inline]
    pub fn find_slot(&self, v: usize, head: usize) -> Option<usize> {
        (0..self.degree(v)).find(|&s| self.resolve_head(v, s) == head)
    }

    /// Finds the reverse of edge `slot` of `v` by scanning the head's edges.
    /// Returns the head's word index and the mirror's slot.
    pub fn mirror_scan(&self, v: usize, slot: usize) -> Result<(usize, usize), GraphError> {
        let head = self.resolve_head(v, slot);
        self.find_slot(head, v)
            .map(|s| (head, s))
            .ok_or(GraphError::MirrorMissing { tail: v, slot })
    }

    /// Mirror of the parent edge, located through the stored ordinal.
    pub fn mirror_by_parent_code(&self, v: usize) -> Result<(usize, usize), GraphError> {
        match self.parent_state(v) {
            ParentState::Internal { mirror_slot } if self.degree(v) > 0 => {
                Ok((self.resolve_head(v, 0), mirror_slot as usize))
            }
            _ => Err(GraphError::InvalidParentState { vertex: v }),
        }
    }

    /// Makes the head of edge `slot` the parent of `child`: the edge moves to
    /// slot 0, the parent code records the mirror's ordinal, and the child
    /// joins the parent's tree.
    pub fn set_parent(&mut self, child: usize, slot: usize) -> Result<(), GraphError> {
        let (parent, mirror_slot) = self.mirror_scan(child, slot)?;
        self.attach(child, slot, parent, mirror_slot);
        Ok(())
    }

    /// `set_parent` with the mirror already known.
    #[inline]
    pub(crate) fn attach(&mut self, child: usize, slot: usize, parent: usize, mirror_slot: usize) {
        if slot != 0 {
            self.swap_edges(child, 0, slot);
        }
        let side = self.side(parent);
        self.set_parent_state(
            child,
            ParentState::Internal {
                mirror_slot: mirror_slot as u32,
            },
        );
        self.set_side(child, side);
    }

    /// Swaps two edge records of `v`. Children whose parent code names one of
    /// the two slots are updated to follow the move.
    pub fn swap_edges(&mut self, v: usize, a: usize, b: usize) {
        if a == b {
            return;
        }
        let mut fixes = [None, None];
        for (k, (from, to)) in [(a, b), (b, a)].into_iter().enumerate() {
            let h = self.resolve_head(v, from);
            if let ParentState::Internal { mirror_slot } = self.parent_state(h) {
                if mirror_slot as usize == from
                    && self.degree(h) > 0
                    && self.resolve_head(h, 0) == v
                {
                    fixes[k] = Some((h, to));
                }
            }
        }
        let ia = self.edge_index(v, a);
        let ib = self.edge_index(v, b);
        self.words.swap(ia, ib);
        self.words.swap(ia + 1, ib + 1);
        for (h, to) in fixes.into_iter().flatten() {
            self.set_parent_state(
                h,
                ParentState::Internal {
                    mirror_slot: to as u32,
                },
            );
        }
    }

    /// Pushes `delta` along edge `slot` of `v`, whose mirror is
    /// `(head, mirror_slot)`, keeping both saturation flags coherent. The
    /// mirror's residual saturates at the largest storable capacity.
    #[inline]
    pub(crate) fn push_along(
        &mut self,
        v: usize,
        slot: usize,
        head: usize,
        mirror_slot: usize,
        delta: u32,
    ) {
        let r = self.residual(v, slot) - delta;
        self.set_residual(v, slot, r);
        let back = self
            .residual(head, mirror_slot)
            .saturating_add(delta)
            .min(MAX_CAPACITY);
        self.set_residual(head, mirror_slot, back);
        self.set_mirror_saturated(head, mirror_slot, r == 0);
        self.set_mirror_saturated(v, slot, back == 0);
    }

    #[inline]
    pub(crate) fn next_link(&self, v: usize) -> Link {
        let w = self.words[v];
        match self.mode {
            RefMode::Absolute => match w {
                LINK_NONE_ABSOLUTE => Link::Unlinked,
                _ if w as usize == v => Link::End,
                _ => Link::Next(w as usize),
            },
            RefMode::Relative => match w {
                LINK_NONE_RELATIVE => Link::Unlinked,
                LINK_EXTERNAL_RELATIVE => Link::External,
                0 => Link::End,
                _ => Link::Next((v as isize + w as i32 as isize) as usize),
            },
        }
    }

    #[inline]
    pub(crate) fn is_linked(&self, v: usize) -> bool {
        self.next_link(v) != Link::Unlinked
    }

    #[inline]
    pub(crate) fn set_unlinked(&mut self, v: usize) {
        self.words[v] = match self.mode {
            RefMode::Absolute => LINK_NONE_ABSOLUTE,
            RefMode::Relative => LINK_NONE_RELATIVE,
        };
    }

    #[inline]
    pub(crate) fn set_link_end(&mut self, v: usize) {
        self.words[v] = match self.mode {
            RefMode::Absolute => v as u32,
            RefMode::Relative => 0,
        };
    }

    /// Links `from` to `to`. Returns false, storing the EXTERNAL sentinel,
    /// when the offset does not fit.
    #[inline]
    pub(crate) fn set_link(&mut self, from: usize, to: usize) -> bool {
        match self.mode {
            RefMode::Absolute => {
                self.words[from] = to as u32;
                true
            }
            RefMode::Relative => {
                let off = to as i64 - from as i64;
                if off.abs() <= self.link_limit {
                    self.words[from] = off as i32 as u32;
                    true
                } else {
                    self.words[from] = LINK_EXTERNAL_RELATIVE;
                    false
                }
            }
        }
    }

    /// Decodes the store into a mode-independent form.
    pub fn logical_graph(&self) -> LogicalGraph {
        let ids: HashMap<usize, usize> =
            self.iterate_vertices().map(|(id, idx)| (idx, id)).collect();
        let vertices = self
            .iterate_vertices()
            .map(|(_, v)| LogicalVertex {
                parent: self.parent_state(v),
                side: self.side(v),
                ts_or_trcap: self.ts(v),
                distance: self.distance(v),
                edges: (0..self.degree(v))
                    .map(|s| {
                        (
                            ids[&self.resolve_head(v, s)],
                            self.residual(v, s),
                            self.mirror_saturated(v, s),
                        )
                    })
                    .collect(),
            })
            .collect();
        LogicalGraph { vertices }
    }
}

/// Iterator over `(id, word index)` pairs in id order.
pub struct VertexIter<'a> {
    store: &'a WordStore,
    id: usize,
    offset: usize,
}

impl Iterator for VertexIter<'_> {
    type Item = (usize, usize);

    fn next(&mut self) -> Option<Self::Item> {
        if self.id >= self.store.n {
            return None;
        }
        let item = (self.id, self.offset);
        self.offset += VERTEX_WORDS + EDGE_WORDS * self.store.degree(self.offset);
        self.id += 1;
        Some(item)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.store.n - self.id;
        (left, Some(left))
    }
}

impl ExactSizeIterator for VertexIter<'_> {}
