//! Seeded inputs shared by the benchmarks.

use cyclic_sort::cosets::{canonicalize, CosetIndex};
use cyclic_sort::reference::random_permutation;
use cyclic_sort::Permutation;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed;

/// `count` uniform permutations of size `n`, identical across runs.
pub fn sample_permutations(n: usize, count: usize) -> Vec<Permutation> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ n as u64);
    (0..count)
        .map(|_| random_permutation(&mut rng, n))
        .collect()
}

pub fn sample_indices(n: usize, count: usize) -> Vec<CosetIndex> {
    sample_permutations(n, count)
        .iter()
        .map(|p| canonicalize(p).rank())
        .collect()
}
