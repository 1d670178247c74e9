//! Seeded board sampling shared by the law checkers and the sweeps.
//!
//! Samples are drawn in fixed-size chunks; chunk `k` uses a ChaCha8 stream
//! keyed by `(seed, k)`, so a sample's value depends only on its position and
//! never on how chunks are distributed over threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grid::{BoardSize, CellSet};

pub const CHUNK: u64 = 4096;

pub fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

/// A random board with a random fill density, so sparse, dense and
/// near-spanning boards are all well represented.
pub fn random_board<R: Rng + ?Sized>(size: BoardSize, rng: &mut R) -> CellSet {
    let density: f64 = rng.random();
    let mut bits = 0u128;
    for i in 0..size.cell_count() {
        if rng.random_bool(density) {
            bits |= 1 << i;
        }
    }
    CellSet::from_bits_unchecked(size, bits)
}

/// A random subset of `set`, again with a random keep rate.
pub fn random_subset<R: Rng + ?Sized>(set: &CellSet, rng: &mut R) -> CellSet {
    let keep: f64 = rng.random();
    let mut bits = 0u128;
    for cell in set.cells() {
        if rng.random_bool(keep) {
            bits |= 1 << cell.index(set.size());
        }
    }
    CellSet::from_bits_unchecked(set.size(), bits)
}

/// Ranges of sample indices, one per chunk.
pub fn chunks(samples: u64) -> impl Iterator<Item = (u64, std::ops::Range<u64>)> {
    (0..samples.div_ceil(CHUNK)).map(move |k| (k, k * CHUNK..((k + 1) * CHUNK).min(samples)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let size = BoardSize::new(6).unwrap();
        let a: Vec<_> = (0..8).map(|_| random_board(size, &mut chunk_rng(7, 3))).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        let mut r1 = chunk_rng(7, 3);
        let mut r2 = chunk_rng(7, 4);
        let x: Vec<_> = (0..8).map(|_| random_board(size, &mut r1)).collect();
        let y: Vec<_> = (0..8).map(|_| random_board(size, &mut r2)).collect();
        assert_ne!(x, y);
    }

    #[test]
    fn chunk_ranges_cover_samples() {
        let ranges: Vec<_> = chunks(10_000).collect();
        assert_eq!(ranges.len(), 3);
        assert_eq!(ranges[2].1, 8192..10_000);
        assert_eq!(chunks(0).count(), 0);
    }

    #[test]
    fn subsets_stay_inside() {
        let size = BoardSize::new(5).unwrap();
        let mut rng = chunk_rng(1, 0);
        for _ in 0..100 {
            let b = random_board(size, &mut rng);
            assert!(random_subset(&b, &mut rng).is_subset(&b));
        }
    }
}
