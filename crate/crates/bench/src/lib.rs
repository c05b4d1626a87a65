//! Shared fixtures for the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uted_core::eval::synth::random_alkane;
use uted_core::Tree;

/// Seeded pairs of alkane-like skeletons with `lo..=hi` carbons.
pub fn alkane_pairs(count: usize, lo: usize, hi: usize, seed: u64) -> Vec<(Tree, Tree)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        let carbons = rng.gen_range(lo..=hi);
        random_alkane(rng, carbons)
    };
    (0..count)
        .map(|_| (draw(&mut rng), draw(&mut rng)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_are_seeded() {
        let a = alkane_pairs(3, 4, 6, 1);
        assert_eq!(a, alkane_pairs(3, 4, 6, 1));
        assert!(a
            .iter()
            .all(|(x, y)| (4..=6).contains(&x.len()) && (4..=6).contains(&y.len())));
    }
}
