//! Seeded screen-space jitter.

use alloc::vec::Vec;

/// SplitMix64 generator.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub const fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// `z / 2^64`, in `[0, 1)`.
    pub fn next_uniform(&mut self) -> f64 {
        self.next_u64() as f64 / 18_446_744_073_709_551_616.0
    }
}

/// `n` offsets `((2u − 1)·amount, (2u − 1)·amount)` from one generator stream.
pub fn jitter_offsets(n: usize, amount: f64, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = SplitMix64::new(seed);
    (0..n)
        .map(|_| {
            let dx = (2.0 * rng.next_uniform() - 1.0) * amount;
            let dy = (2.0 * rng.next_uniform() - 1.0) * amount;
            (dx, dy)
        })
        .collect()
}
