//! Reproducible random streams.
//!
//! All randomness goes through [`SemiRng`], ChaCha with 8 rounds from
//! `rand_chacha` 0.3. A seed plus a stream index fully determines a stream, so
//! independent workers can draw from disjoint streams of one seed and still
//! merge to the same result as a sequential run.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used throughout the crate.
pub type SemiRng = ChaCha8Rng;

/// Stream 0 of `seed`.
pub fn seeded(seed: u64) -> SemiRng {
    SemiRng::seed_from_u64(seed)
}

/// Stream `stream` of `seed`; distinct streams never overlap.
pub fn stream(seed: u64, stream: u64) -> SemiRng {
    let mut rng = SemiRng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
