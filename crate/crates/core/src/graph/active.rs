use std::collections::VecDeque;

use super::store::{Link, WordStore};

/// FIFO of active vertices threaded through the next-active words of the
/// store.
///
/// In relative mode a link whose offset does not fit is stored as the
/// EXTERNAL sentinel and the successor's index goes to an external queue.
/// External entries are consumed in list order, so the wanted successor is
/// always at the queue front.
#[derive(Debug, Default)]
pub struct ActiveList {
    first: Option<usize>,
    last: Option<usize>,
    external: VecDeque<usize>,
    external_peak: usize,
    external_total: u64,
}

impl ActiveList {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.first.is_none()
    }

    /// Appends `v`. A vertex that is already linked is left where it is.
    pub fn push(&mut self, store: &mut WordStore, v: usize) -> bool {
        if store.is_linked(v) {
            return false;
        }
        store.set_link_end(v);
        match self.last {
            None => self.first = Some(v),
            Some(last) => {
                if !store.set_link(last, v) {
                    self.external.push_back(v);
                    self.note_external();
                }
            }
        }
        self.last = Some(v);
        true
    }

    /// Prepends `v`. A vertex that is already linked is left where it is.
    pub fn push_front(&mut self, store: &mut WordStore, v: usize) -> bool {
        if store.is_linked(v) {
            return false;
        }
        match self.first {
            None => {
                store.set_link_end(v);
                self.last = Some(v);
            }
            Some(first) => {
                if !store.set_link(v, first) {
                    self.external.push_front(first);
                    self.note_external();
                }
            }
        }
        self.first = Some(v);
        true
    }

    pub fn pop(&mut self, store: &mut WordStore) -> Option<usize> {
        let v = self.first?;
        self.first = match store.next_link(v) {
            Link::End | Link::Unlinked => None,
            Link::Next(u) => Some(u),
            Link::External => Some(
                self.external
                    .pop_front()
                    .expect("external link without a queued successor"),
            ),
        };
        if self.first.is_none() {
            self.last = None;
        }
        store.set_unlinked(v);
        Some(v)
    }

    /// Largest number of entries the external queue held at once.
    pub fn external_peak(&self) -> usize {
        self.external_peak
    }

    /// Number of links that went through the external queue.
    pub fn external_total(&self) -> u64 {
        self.external_total
    }

    fn note_external(&mut self) {
        self.external_total += 1;
        self.external_peak = self.external_peak.max(self.external.len());
    }
}
