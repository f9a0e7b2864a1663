//! Deterministic pseudo-random stream for the seeded suites.
//!
//! The generator is xorshift64* with the standard constants (shifts 12, 25,
//! 27 and multiplier 0x2545F4914F6CDD1D); seeds are conditioned through the
//! SplitMix64 finalizer (increment 0x9E3779B97F4A7C15, mixers
//! 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB). Both are fixed-constant
//! shift-register generators, so any other implementation that follows the
//! published recurrences reproduces the exact streams.

/// SplitMix64 finalizer. Used for seed conditioning and per-trial sub-seeds.
pub fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Sub-seed for trial `index` of a run seeded with `seed`. Trials are
/// independent streams, so serial and parallel suite runs agree.
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index.wrapping_add(1)))
}

/// xorshift64* stream.
#[derive(Debug, Clone)]
pub struct Stream {
    state: u64,
}

impl Stream {
    /// The seed is conditioned with SplitMix64 so that 0 is a valid seed
    /// (xorshift state must never be zero).
    pub fn new(seed: u64) -> Self {
        let mut state = splitmix64(seed);
        if state == 0 {
            state = 0x9E37_79B9_7F4A_7C15;
        }
        Stream { state }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform draw in `0..bound`. `bound` must be nonzero.
    pub fn below(&mut self, bound: usize) -> usize {
        assert!(bound > 0);
        (self.next_u64() % bound as u64) as usize
    }

    /// Uniform draw in `lo..=hi`.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below(hi - lo + 1)
    }

    /// True with probability `num / den`.
    pub fn chance(&mut self, num: usize, den: usize) -> bool {
        self.below(den) < num
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len())]
    }
}
