//! Deterministic pseudo-random numbers for the seeded suites.
//!
//! The generator is the standard splitmix64 step: a 64-bit counter mixed
//! through two multiply-xorshift rounds. It is chosen for reproducibility,
//! not statistical or cryptographic strength — a suite seeded with the same
//! value must produce the same bytes forever, so the whole algorithm lives
//! here rather than behind a dependency whose stream could change between
//! versions.

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-enough draw from `0..n` (`0` when `n == 0`). The modulo
    /// bias is negligible for the single-digit ranges the suites use.
    pub fn pick(&mut self, n: u64) -> u64 {
        if n == 0 {
            0
        } else {
            self.next_u64() % n
        }
    }
}
