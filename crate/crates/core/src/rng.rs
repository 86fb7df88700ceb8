//! Seeded random streams.
//!
//! All randomness in the crate comes from ChaCha8 (`rand_chacha::ChaCha8Rng`).
//! A stream is identified by a 64-bit seed plus a 64-bit stream index; the
//! ChaCha stream counter keeps substreams of the same seed disjoint, so work
//! units (block pairs, probe batches, k-means restarts) can draw in any order
//! or in parallel and still reproduce bit-for-bit.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator type used throughout the crate.
pub type Rng = ChaCha8Rng;

/// Stream index tags so independent consumers of one seed never overlap.
pub(crate) mod tag {
    pub const BLOCK_PAIR: u64 = 0;
    pub const LANCZOS: u64 = 1 << 40;
    pub const PROBES: u64 = 2 << 40;
    pub const KMEANS: u64 = 3 << 40;
}

/// Generator for substream `stream` of `seed`.
pub fn stream(seed: u64, stream: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Substream for block pair `(r, s)`, `r <= s`, of a `q`-group model.
pub fn block_pair_stream(seed: u64, q: usize, r: usize, s: usize) -> Rng {
    stream(seed, tag::BLOCK_PAIR + (r * q + s) as u64)
}
