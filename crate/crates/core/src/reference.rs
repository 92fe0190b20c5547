//! Definitional evaluations of the statistics.
//!
//! Every function here follows the textbook definition directly (pair
//! counts, full enumeration of a coset or double coset) and shares no code
//! with the fast routes in [`crate::permutation`] and [`crate::cosets`].
//! The verification suites compare the two.

use itertools::Itertools;
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::permutation::Permutation;

/// `|{i < j : π(i) > π(j)}|`, by checking every pair.
pub fn inv_by_pairs(p: &Permutation) -> u64 {
    let w = p.word();
    w.iter().tuple_combinations().filter(|(a, b)| a > b).count() as u64
}

/// `Σ (π(i) − π(j))` over inversion pairs.
pub fn winv_by_pairs(p: &Permutation) -> u64 {
    let w = p.word();
    w.iter()
        .tuple_combinations()
        .filter(|(a, b)| a > b)
        .map(|(&a, &b)| (a - b) as u64)
        .sum()
}

/// The `n` rotations `π·cₙʲ` of a word.
pub fn rotations(p: &Permutation) -> Vec<Vec<u8>> {
    let w = p.word();
    (0..w.len())
        .map(|j| w[j..].iter().chain(&w[..j]).copied().collect())
        .collect()
}

fn inv_of_word(w: &[u8]) -> u64 {
    w.iter().tuple_combinations().filter(|(a, b)| a > b).count() as u64
}

/// `min inv` over the coset, recomputing every rotation from scratch.
pub fn minv_by_rotations(p: &Permutation) -> u64 {
    rotations(p)
        .iter()
        .map(|w| inv_of_word(w))
        .min()
        .unwrap_or(0)
}

/// Arithmetic mean of `inv` over the coset.
pub fn mean_inv_by_rotations(p: &Permutation) -> Ratio<u64> {
    let total: u64 = rotations(p).iter().map(|w| inv_of_word(w)).sum();
    Ratio::new(total, p.n() as u64)
}

/// Every element `π₁·cₙʲ·π₂⁻¹` of the double coset, as plain words.
pub fn double_coset(p1: &Permutation, p2: &Permutation) -> Vec<Vec<u8>> {
    let n = p1.n();
    let mut p2_inv = vec![0u8; n];
    for (i, &v) in p2.word().iter().enumerate() {
        p2_inv[v as usize - 1] = i as u8 + 1;
    }
    rotations(p1)
        .into_iter()
        .map(|rot| p2_inv.iter().map(|&x| rot[x as usize - 1]).collect())
        .collect()
}

/// `min inv` over `π₁ℤₙπ₂⁻¹`.
pub fn double_coset_min_inv(p1: &Permutation, p2: &Permutation) -> u64 {
    double_coset(p1, p2)
        .iter()
        .map(|w| inv_of_word(w))
        .min()
        .unwrap_or(0)
}

/// All of `Sₙ` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    (1..=n as u8)
        .permutations(n)
        .map(|w| Permutation::new(&w).expect("valid"))
}

pub fn random_permutation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Permutation {
    let mut word: Vec<u8> = (1..=n as u8).collect();
    word.shuffle(rng);
    Permutation::new(&word).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(word: &[u8]) -> Permutation {
        Permutation::new(word).unwrap()
    }

    #[test]
    fn definitions_on_examples() {
        assert_eq!(inv_by_pairs(&p(&[3, 5, 6, 1, 2, 4])), 8);
        assert_eq!(winv_by_pairs(&p(&[3, 1, 2])), 3);
        assert_eq!(minv_by_rotations(&p(&[5, 4, 3, 2, 1])), 4);
        assert_eq!(mean_inv_by_rotations(&p(&[1, 2, 3, 4])), Ratio::new(10, 4));
        assert_eq!(rotations(&p(&[3, 1, 2]))[1], vec![1, 2, 3]);
        assert_eq!(all_permutations(4).count(), 24);
    }

    #[test]
    fn double_coset_matches_group_operations() {
        let a = p(&[2, 4, 1, 3]);
        let b = p(&[3, 1, 4, 2]);
        let b_inv = b.inverse();
        let expected: Vec<Vec<u8>> = (0..4)
            .map(|j| {
                a.rotate(j)
                    .unwrap()
                    .compose(&b_inv)
                    .unwrap()
                    .word()
                    .to_vec()
            })
            .collect();
        assert_eq!(double_coset(&a, &b), expected);
    }
}
