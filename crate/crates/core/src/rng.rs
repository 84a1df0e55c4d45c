//! Seeding discipline for sampled computations.
//!
//! Work is cut into fixed-size chunks. Chunk `c` of a run with master seed
//! `m` draws from `Xoshiro256++` seeded with
//! `splitmix64(splitmix64(m) + c)`, so results depend only on
//! `(m, sample count)` and never on how chunks are scheduled.

use rand::{RngCore, SeedableRng};
use rand_xoshiro::{SplitMix64, Xoshiro256PlusPlus};

/// Samples per chunk.
pub const CHUNK: u64 = 4096;

pub fn chunk_seed(master: u64, chunk: u64) -> u64 {
    let base = SplitMix64::seed_from_u64(master).next_u64();
    SplitMix64::seed_from_u64(base.wrapping_add(chunk)).next_u64()
}

pub fn chunk_rng(master: u64, chunk: u64) -> Xoshiro256PlusPlus {
    Xoshiro256PlusPlus::seed_from_u64(chunk_seed(master, chunk))
}

/// Generator for a whole (unchunked) run.
pub fn master_rng(master: u64) -> Xoshiro256PlusPlus {
    Xoshiro256PlusPlus::seed_from_u64(master)
}

/// `(chunk index, samples in chunk)` for a run of `samples` draws.
pub fn chunks(samples: u64) -> impl Iterator<Item = (u64, u64)> {
    let count = samples.div_ceil(CHUNK);
    (0..count).map(move |c| (c, CHUNK.min(samples - c * CHUNK)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunk_seeds_are_stable_and_distinct() {
        assert_eq!(chunk_seed(7, 3), chunk_seed(7, 3));
        assert_ne!(chunk_seed(7, 3), chunk_seed(7, 4));
        assert_ne!(chunk_seed(7, 3), chunk_seed(8, 3));
    }

    #[test]
    fn chunks_cover_samples() {
        let v: Vec<_> = chunks(2 * CHUNK + 5).collect();
        assert_eq!(v, vec![(0, CHUNK), (1, CHUNK), (2, 5)]);
        assert_eq!(chunks(0).count(), 0);
    }
}
