//! Graph memory budgets.
//!
//! The compact layout takes `16 n + 8 m_i` bytes regardless of size. The
//! other layouts are reference implementations that are not part of this
//! crate; their budgets are listed for comparison only and are never
//! measured.

use serde::Serialize;

/// Dataset size classes. Small graphs fit a 32-bit program, large graphs
/// need 64-bit pointers but 32-bit indices, extra-large graphs need more.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SizeClass {
    Small,
    Large,
    ExtraLarge,
}

/// Bytes per vertex and per internal residual edge of one layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub per_vertex: u64,
    pub per_edge: u64,
}

impl Budget {
    pub const fn new(per_vertex: u64, per_edge: u64) -> Self {
        Self {
            per_vertex,
            per_edge,
        }
    }

    pub fn bytes(&self, n: u64, m_i: u64) -> u64 {
        self.per_vertex * n + self.per_edge * m_i
    }
}

pub const COMPACT: Budget = Budget::new(16, 8);

/// Budget of a named layout in a size class.
pub fn budget(layout: &str, class: SizeClass) -> Option<Budget> {
    use SizeClass::*;
    let b = match (layout, class) {
        ("compact", _) => COMPACT,
        ("bk", Small) => Budget::new(28, 16),
        ("bk", Large | ExtraLarge) => Budget::new(48, 32),
        ("mbk", Small | Large) => Budget::new(23, 12),
        ("mbk", ExtraLarge) => Budget::new(35, 20),
        ("mbk-r", Small | Large) => Budget::new(23, 13),
        ("mbk-r", ExtraLarge) => Budget::new(35, 21),
        _ => return None,
    };
    Some(b)
}

pub const LAYOUTS: [&str; 4] = ["compact", "bk", "mbk", "mbk-r"];

#[derive(Debug, Clone, Serialize)]
pub struct FootprintRow {
    pub layout: &'static str,
    pub small: u64,
    pub large: u64,
    pub extra_large: u64,
}

/// Bytes every layout would need for a graph with `n` vertices and `m_i`
/// internal residual edges, in each size class.
pub fn comparison(n: u64, m_i: u64) -> Vec<FootprintRow> {
    LAYOUTS
        .iter()
        .map(|&layout| {
            let bytes = |c| budget(layout, c).expect("known layout").bytes(n, m_i);
            FootprintRow {
                layout,
                small: bytes(SizeClass::Small),
                large: bytes(SizeClass::Large),
                extra_large: bytes(SizeClass::ExtraLarge),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_matches_word_count() {
        let n = 4;
        let m = 10;
        assert_eq!(COMPACT.bytes(n, m), 4 * (4 * n + 2 * m));
        assert_eq!(COMPACT.bytes(n, m), 144);
    }

    #[test]
    fn large_volume_budgets() {
        let (n, m) = (804_000_000u64, 7_900_000_000u64);
        let gb = |b: u64| b as f64 / 1e9;
        assert!((gb(COMPACT.bytes(n, m)) - 76.064).abs() < 1e-3);
        let bk = budget("bk", SizeClass::ExtraLarge).unwrap().bytes(n, m);
        assert!((gb(bk) - 292.0).abs() / 292.0 < 0.01);
    }

    #[test]
    fn comparison_covers_all_layouts() {
        let rows = comparison(4, 10);
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[1].small, 28 * 4 + 16 * 10);
        assert_eq!(rows[3].extra_large, 35 * 4 + 21 * 10);
    }
}
