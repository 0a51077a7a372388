//! Seeded random problems.
//!
//! Randomness comes from ChaCha8 seeded with `seed_from_u64(seed)`. Values
//! are drawn from successive 64-bit outputs:
//!
//! * `below(k)` maps an output `x` to `(x * k) >> 64` (128-bit product);
//! * `chance(p)` compares `(x >> 11) / 2^53` against `p`.
//!
//! [`gen_random`] draws, in this order: for each vertex, a source capacity
//! (`chance(density)`, then `below(cap_max + 1)`) and a sink capacity (same
//! rule); then `m` edges. An edge repeats the endpoints of an earlier edge
//! with probability 1/4 (`below(4) == 0`, then `below(len)` picks it and
//! `below(2)` decides whether to swap them), otherwise `u = below(n)` and
//! `v = below(n - 1)`, shifted up by one when `v >= u`. `cap_uv =
//! below(cap_max + 1)`; `cap_vu` is zero when `below(2) == 0`, else
//! `below(cap_max + 1)`. With `n == 1` no edges are produced.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Problem;

/// The draw primitives described in the module docs.
pub struct InstanceRng(ChaCha8Rng);

impl InstanceRng {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `0..k`; `k` must be positive.
    pub fn below(&mut self, k: u64) -> u64 {
        ((self.next_u64() as u128 * k as u128) >> 64) as u64
    }

    pub fn chance(&mut self, p: f64) -> bool {
        ((self.next_u64() >> 11) as f64 / (1u64 << 53) as f64) < p
    }
}

pub fn gen_random(seed: u64, n: usize, m: usize, cap_max: u32, terminal_density: f64) -> Problem {
    assert!(n >= 1, "a random problem needs at least one vertex");
    let mut rng = InstanceRng::new(seed);
    let span = cap_max as u64 + 1;
    let mut p = Problem::new(n);
    for caps in p.terminal_caps.iter_mut() {
        if rng.chance(terminal_density) {
            caps.0 = rng.below(span) as u32;
        }
        if rng.chance(terminal_density) {
            caps.1 = rng.below(span) as u32;
        }
    }
    if n < 2 {
        return p;
    }
    for _ in 0..m {
        let (u, v) = if !p.edges.is_empty() && rng.below(4) == 0 {
            let e = p.edges[rng.below(p.edges.len() as u64) as usize];
            if rng.below(2) == 0 {
                (e.u, e.v)
            } else {
                (e.v, e.u)
            }
        } else {
            let u = rng.below(n as u64) as u32;
            let mut v = rng.below(n as u64 - 1) as u32;
            if v >= u {
                v += 1;
            }
            (u, v)
        };
        let cap_uv = rng.below(span) as u32;
        let cap_vu = if rng.below(2) == 0 {
            0
        } else {
            rng.below(span) as u32
        };
        p.add_edge(u, v, cap_uv, cap_vu);
    }
    p
}

/// Instance `seed` of the differential family: `n` in `1..=50`, `m` in
/// `0..=300`, capacities up to 20, terminal density 0.3. `n` and `m` come
/// from an [`InstanceRng`] seeded with `!seed`.
pub fn differential_instance(seed: u64) -> Problem {
    let mut rng = InstanceRng::new(!seed);
    let n = 1 + rng.below(50) as usize;
    let m = rng.below(301) as usize;
    gen_random(seed, n, m, 20, 0.3)
}
