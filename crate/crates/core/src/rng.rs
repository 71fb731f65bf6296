//! The fixed pseudo-random generator behind every seeded operation.
//!
//! Streams must be reproducible bit-for-bit by other implementations, so the
//! full recipe is pinned here:
//!
//! * state: xoshiro256** (Blackman & Vigna), four 64-bit words;
//! * seeding: the 64-bit seed drives SplitMix64, whose first four outputs
//!   fill the state words in order;
//! * uniform `f64` in `[0, 1)`: `(next_u64() >> 11) * 2^-53`;
//! * uniform index in `0..n`: the high 64 bits of the 128-bit product
//!   `next_u64() * n` (multiply-shift, no rejection).

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

const F64_SCALE: f64 = 1.0 / (1u64 << 53) as f64;

#[derive(Debug, Clone)]
pub struct StreamRng(Xoshiro256StarStar);

impl StreamRng {
    pub fn new(seed: u64) -> Self {
        StreamRng(Xoshiro256StarStar::seed_from_u64(seed))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * F64_SCALE
    }

    #[inline]
    pub fn index(&mut self, n: usize) -> usize {
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }
}
