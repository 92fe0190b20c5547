//! Neighbor generation directly on coset indices.
//!
//! Words are handled 0-based here: a canonical word starts with letter 0 and
//! its suffix is a permutation of `1..n`, ranked lexicographically with
//! weights `(n−1−r)!` for suffix position `r`.
//!
//! Swapping two consecutive letters `x, x+1` with `x ≥ 1` keeps the word
//! canonical and changes a single Lehmer digit, at the earlier of the two
//! positions, by ±1. Those neighbors therefore cost O(1) once the word is
//! decoded. Generators that move letter 0 need a rotation and a full
//! re-rank.

use crate::combinatorics::factorial;
use crate::cosets::select_bit;
use crate::permutation::MAX_N;

use super::{GeneratorKind, GeneratorSet};

pub(crate) struct Expander {
    n: usize,
    cyclic: bool,
    weights: [u64; MAX_N],
    full_mask: u32,
}

impl Expander {
    pub(crate) fn new(gens: &GeneratorSet) -> Self {
        let n = gens.n;
        let mut weights = [0u64; MAX_N];
        for (r, w) in weights.iter_mut().enumerate().take(n).skip(1) {
            *w = factorial(n - 1 - r);
        }
        Self {
            n,
            cyclic: gens.kind == GeneratorKind::Cyclic && n >= 3,
            weights,
            full_mask: ((1u32 << n) - 1) & !1,
        }
    }

    /// Number of neighbors emitted per vertex, self-loops included.
    pub(crate) fn degree(&self) -> usize {
        self.n.saturating_sub(1) + self.cyclic as usize
    }

    #[inline]
    fn decode(&self, index: u64, word: &mut [u8; MAX_N], pos: &mut [u8; MAX_N]) {
        let mut avail = self.full_mask;
        let mut rest = index;
        word[0] = 0;
        pos[0] = 0;
        for (r, &weight) in self.weights.iter().enumerate().take(self.n).skip(1) {
            let digit = (rest / weight) as u32;
            rest -= digit as u64 * weight;
            let letter = select_bit(avail, digit);
            avail &= !(1 << letter);
            word[r] = letter as u8;
            pos[letter as usize] = r as u8;
        }
    }

    /// Index of the coset of `word` after exchanging letters `a` and `b`,
    /// where one of them is 0.
    #[inline]
    fn swap_through_zero(&self, word: &[u8; MAX_N], a: u8, b: u8) -> u64 {
        let n = self.n;
        let other = if a == 0 { b } else { a };
        // after the swap, letter 0 sits where `other` was
        let start = word
            .iter()
            .take(n)
            .position(|&v| v == other)
            .expect("present");
        let mut avail = self.full_mask;
        let mut index = 0u64;
        for r in 1..n {
            let mut letter = word[(start + r) % n];
            if letter == 0 {
                letter = other;
            }
            let smaller = (avail & ((1u32 << letter) - 1)).count_ones() as u64;
            index += smaller * self.weights[r];
            avail &= !(1 << letter);
        }
        index
    }

    /// Calls `f` once per generator with the neighbor's index. Self-loops
    /// are reported like any other edge.
    #[inline]
    pub(crate) fn for_each_neighbor(&self, index: u64, mut f: impl FnMut(u64)) {
        let n = self.n;
        if n < 2 {
            return;
        }
        let mut word = [0u8; MAX_N];
        let mut pos = [0u8; MAX_N];
        self.decode(index, &mut word, &mut pos);

        // s₁ exchanges letters 0 and 1
        f(self.swap_through_zero(&word, 0, 1));
        for x in 1..n - 1 {
            let (p, q) = (pos[x] as usize, pos[x + 1] as usize);
            let first = p.min(q);
            if word[first] as usize == x + 1 {
                f(index - self.weights[first]);
            } else {
                f(index + self.weights[first]);
            }
        }
        if self.cyclic {
            f(self.swap_through_zero(&word, n as u8 - 1, 0));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosets::{canonicalize, coset_count, CosetIndex, CosetRep};

    // the slow route: unrank, multiply, canonicalize, rank
    fn reference_neighbors(gens: &GeneratorSet, index: u64) -> Vec<u64> {
        let rep = CosetRep::unrank(CosetIndex(index), gens.n).unwrap();
        let mut out: Vec<u64> = gens
            .transpositions()
            .into_iter()
            .map(|(a, b)| canonicalize(&rep.permutation().swap_values(a, b)).rank().0)
            .collect();
        out.sort_unstable();
        out
    }

    #[test]
    fn kernel_matches_reference_exhaustive() {
        for n in 1..=8 {
            for gens in [GeneratorSet::adjacent(n), GeneratorSet::cyclic(n)] {
                let expander = Expander::new(&gens);
                assert_eq!(expander.degree(), gens.len());
                for index in 0..coset_count(n) {
                    let mut got = Vec::new();
                    expander.for_each_neighbor(index, |nb| got.push(nb));
                    got.sort_unstable();
                    assert_eq!(got, reference_neighbors(&gens, index), "n = {n}, {index}");
                }
            }
        }
    }

    #[test]
    fn kernel_matches_reference_sampled_large() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in [12usize, 14, 16] {
            for gens in [GeneratorSet::adjacent(n), GeneratorSet::cyclic(n)] {
                let expander = Expander::new(&gens);
                for _ in 0..500 {
                    let index = rng.gen_range(0..coset_count(n));
                    let mut got = Vec::new();
                    expander.for_each_neighbor(index, |nb| got.push(nb));
                    got.sort_unstable();
                    assert_eq!(got, reference_neighbors(&gens, index));
                }
            }
        }
    }
}
