//! Bit layout of the vertex and edge records.
//!
//! A vertex record is four words:
//!
//! | word | bits 31..0                                                  |
//! |------|-------------------------------------------------------------|
//! | 0    | next-active link                                            |
//! | 1    | timestamp, or terminal residual capacity when TERMINAL      |
//! | 2    | distance (17) \| degree bits 22..8 (15)                     |
//! | 3    | degree bits 7..0 (8) \| parent code (23) \| tree bit (1)    |
//!
//! An edge record is two words: the head reference, then the
//! mirror-saturated flag in bit 31 above a 31-bit residual capacity.

pub const VERTEX_WORDS: usize = 4;
pub const EDGE_WORDS: usize = 2;

pub const PARENT_BITS: u32 = 23;
pub const PARENT_MASK: u32 = (1 << PARENT_BITS) - 1;
pub const PARENT_FREE: u32 = PARENT_MASK;
pub const PARENT_ORPHAN: u32 = PARENT_MASK - 1;
pub const PARENT_TERMINAL: u32 = PARENT_MASK - 2;

/// Largest degree a vertex may have; the top three parent codes are sentinels.
pub const MAX_DEGREE: usize = (PARENT_MASK - 3) as usize;

pub const DISTANCE_BITS: u32 = 17;
pub const MAX_DISTANCE: u32 = (1 << DISTANCE_BITS) - 1;

/// Largest residual capacity an edge can hold.
pub const MAX_CAPACITY: u32 = (1 << 31) - 1;
pub const MIRROR_SATURATED: u32 = 1 << 31;

/// Timestamp value reserved for the orphan-path flag.
pub const ORPHAN_PATH_FLAG: u32 = u32::MAX;

/// Which search tree a vertex belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Source,
    Sink,
}

impl Side {
    pub fn bit(self) -> u32 {
        match self {
            Side::Source => 0,
            Side::Sink => 1,
        }
    }

    pub fn from_bit(bit: u32) -> Self {
        if bit & 1 == 0 {
            Side::Source
        } else {
            Side::Sink
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            Side::Source => Side::Sink,
            Side::Sink => Side::Source,
        }
    }
}

/// Decoded parent code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParentState {
    Free,
    Orphan,
    Terminal,
    /// Parent is the head of slot 0; `mirror_slot` is the ordinal of the
    /// parent's edge back to this vertex.
    Internal {
        mirror_slot: u32,
    },
}

impl ParentState {
    pub fn decode(code: u32) -> Self {
        match code {
            PARENT_FREE => ParentState::Free,
            PARENT_ORPHAN => ParentState::Orphan,
            PARENT_TERMINAL => ParentState::Terminal,
            j => ParentState::Internal { mirror_slot: j },
        }
    }

    pub fn encode(self) -> u32 {
        match self {
            ParentState::Free => PARENT_FREE,
            ParentState::Orphan => PARENT_ORPHAN,
            ParentState::Terminal => PARENT_TERMINAL,
            ParentState::Internal { mirror_slot } => mirror_slot,
        }
    }
}

#[inline]
pub fn pack_word2(distance: u32, degree: u32) -> u32 {
    (distance << 15) | (degree >> 8)
}

#[inline]
pub fn pack_word3(degree: u32, parent_code: u32, tree_bit: u32) -> u32 {
    ((degree & 0xFF) << 24) | (parent_code << 1) | (tree_bit & 1)
}

#[inline]
pub fn unpack_degree(word2: u32, word3: u32) -> u32 {
    ((word2 & 0x7FFF) << 8) | (word3 >> 24)
}

#[inline]
pub fn unpack_distance(word2: u32) -> u32 {
    word2 >> 15
}

#[inline]
pub fn unpack_parent_code(word3: u32) -> u32 {
    (word3 >> 1) & PARENT_MASK
}

/// Decoded copy of a vertex record.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexView {
    pub next_active: u32,
    pub ts_or_trcap: u32,
    pub distance: u32,
    pub degree: u32,
    pub parent: ParentState,
    pub side: Side,
}

impl VertexView {
    pub fn decode(words: [u32; 4]) -> Self {
        Self {
            next_active: words[0],
            ts_or_trcap: words[1],
            distance: unpack_distance(words[2]),
            degree: unpack_degree(words[2], words[3]),
            parent: ParentState::decode(unpack_parent_code(words[3])),
            side: Side::from_bit(words[3]),
        }
    }

    pub fn encode(&self) -> [u32; 4] {
        [
            self.next_active,
            self.ts_or_trcap,
            pack_word2(self.distance, self.degree),
            pack_word3(self.degree, self.parent.encode(), self.side.bit()),
        ]
    }
}

/// Decoded copy of an edge record. `head_ref` is stored as-is and must be
/// resolved against the tail index in relative mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeView {
    pub head_ref: u32,
    pub mirror_saturated: bool,
    pub residual: u32,
}

impl EdgeView {
    pub fn decode(words: [u32; 2]) -> Self {
        Self {
            head_ref: words[0],
            mirror_saturated: words[1] & MIRROR_SATURATED != 0,
            residual: words[1] & MAX_CAPACITY,
        }
    }

    pub fn encode(&self) -> [u32; 2] {
        let flag = if self.mirror_saturated {
            MIRROR_SATURATED
        } else {
            0
        };
        [self.head_ref, flag | (self.residual & MAX_CAPACITY)]
    }
}
