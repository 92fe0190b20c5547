//! Left cosets `πℤₙ` of the cyclic subgroup generated by `cₙ = (1,2,…,n)`.
//!
//! The coset of `π` is the set of rotations of its one-line word. Each
//! coset is represented by the rotation that starts with the letter 1
//! ([`CosetRep`]) and indexed densely by the lexicographic rank of the
//! remaining `n - 1` letters ([`CosetIndex`]).
//!
//! n-cycles `γ = (a₁,…,aₙ)` correspond one-to-one with cosets through
//! `γ ↦ [a₁,…,aₙ]ℤₙ`, which turns graph distances between n-cycles into
//! minima of `inv` over double cosets.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::Serialize;

use crate::combinatorics::{binomial, factorial};
use crate::error::{Error, Result};
use crate::permutation::{parse_letters, Permutation, MAX_N};

/// Canonical representative of a coset: the rotation whose first letter is 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetRep(Permutation);

/// Dense index of a coset in `0..(n-1)!`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CosetIndex(pub u64);

/// Number of cosets of `ℤₙ` in `Sₙ`, i.e. `(n-1)!`.
pub fn coset_count(n: usize) -> u64 {
    factorial(n.saturating_sub(1))
}

/// Rotates `p` so that the letter 1 comes first.
pub fn canonicalize(p: &Permutation) -> CosetRep {
    let shift = p.position_of(1) - 1;
    CosetRep(p.rotate_unchecked(shift))
}

impl CosetRep {
    pub fn new(p: Permutation) -> Result<Self> {
        if p.at(1) != 1 {
            return Err(Error::domain(format!(
                "{p:?} is not a canonical coset representative (must start with 1)"
            )));
        }
        Ok(Self(p))
    }

    pub fn identity(n: usize) -> Result<Self> {
        Ok(Self(Permutation::identity(n)?))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.0.n()
    }

    #[inline]
    pub fn permutation(&self) -> &Permutation {
        &self.0
    }

    /// Lehmer rank of the suffix `π(2)…π(n)` over the alphabet `{2..n}`.
    pub fn rank(&self) -> CosetIndex {
        let n = self.n();
        let word = self.0.word();
        let mut avail: u32 = 0;
        for v in 2..=n {
            avail |= 1 << v;
        }
        let mut index = 0u64;
        for (r, &letter) in word.iter().enumerate().skip(1) {
            let smaller = (avail & ((1u32 << letter) - 1)).count_ones() as u64;
            index += smaller * factorial(n - 1 - r);
            avail &= !(1 << letter);
        }
        CosetIndex(index)
    }

    pub fn unrank(index: CosetIndex, n: usize) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::domain(format!(
                "coset size must be in 1..={MAX_N}, got {n}"
            )));
        }
        let count = coset_count(n);
        if index.0 >= count {
            return Err(Error::domain(format!(
                "coset index {} out of range 0..{count} for n = {n}",
                index.0
            )));
        }
        let mut word = [0u8; MAX_N];
        word[0] = 1;
        let mut avail: u32 = 0;
        for v in 2..=n {
            avail |= 1 << v;
        }
        let mut rest = index.0;
        for (r, slot) in word.iter_mut().enumerate().take(n).skip(1) {
            let weight = factorial(n - 1 - r);
            let digit = (rest / weight) as u32;
            rest %= weight;
            let letter = select_bit(avail, digit);
            *slot = letter as u8;
            avail &= !(1 << letter);
        }
        Ok(Self(Permutation::from_word_unchecked(&word[..n])))
    }
}

/// Position of the `k`-th (0-based) set bit of `mask`.
#[inline]
pub(crate) fn select_bit(mut mask: u32, k: u32) -> u32 {
    for _ in 0..k {
        mask &= mask - 1;
    }
    mask.trailing_zeros()
}

impl fmt::Display for CosetRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for CosetRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]ℤ", self.0)
    }
}

impl Serialize for CosetRep {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

/// An n-cycle `(a₁,…,aₙ)`, stored with `a₁ = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle(CosetRep);

impl Cycle {
    /// Builds the cycle `(labels[0], labels[1], …)`; any rotation of the
    /// labels denotes the same cycle.
    pub fn new(labels: &[u8]) -> Result<Self> {
        let word = Permutation::new(labels)?;
        Ok(Self(canonicalize(&word)))
    }

    pub fn from_coset(rep: CosetRep) -> Self {
        Self(rep)
    }

    /// The canonical cycle `cₙ = (1,2,…,n)`.
    pub fn canonical(n: usize) -> Result<Self> {
        Ok(Self(CosetRep::identity(n)?))
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn labels(&self) -> &[u8] {
        self.0 .0.word()
    }

    /// `γ̄ = [a₁,…,aₙ]`, normalized so that `a₁ = 1`.
    pub fn coset_word(&self) -> Permutation {
        self.0 .0
    }

    pub fn coset(&self) -> CosetRep {
        self.0
    }

    /// The cycle as a permutation of `[n]`: `aᵢ ↦ aᵢ₊₁`.
    pub fn as_permutation(&self) -> Permutation {
        let labels = self.labels();
        let n = labels.len();
        let mut map = [0u8; MAX_N];
        for i in 0..n {
            map[labels[i] as usize - 1] = labels[(i + 1) % n];
        }
        Permutation::from_word_unchecked(&map[..n])
    }

    /// Reads the cycle structure of `p`, if `p` is a single n-cycle.
    pub fn from_permutation(p: &Permutation) -> Result<Self> {
        let n = p.n();
        let mut labels = Vec::with_capacity(n);
        let mut x = 1u8;
        loop {
            labels.push(x);
            x = p.at(x as usize);
            if x == 1 {
                break;
            }
        }
        if labels.len() != n {
            return Err(Error::domain(format!("{p:?} is not an n-cycle")));
        }
        Self::new(&labels)
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0 .0)
    }
}

impl fmt::Debug for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Cycle {
    type Err = Error;

    /// Parses `(1,4,3,2)` or the digit form `(1432)`.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let body = trimmed
            .strip_prefix('(')
            .and_then(|rest| rest.strip_suffix(')'))
            .ok_or_else(|| Error::parse(s, "cycle notation must be enclosed in parentheses"))?;
        let letters = parse_letters(body)?;
        Cycle::new(&letters).map_err(|e| match e {
            Error::Domain(reason) => Error::parse(s, reason),
            other => other,
        })
    }
}

/// `min { inv(π·cₙʲ) : 0 ≤ j < n }`.
pub fn minv(p: &Permutation) -> u64 {
    minv_with_argmin(p).0
}

/// `minv` together with the smallest shift attaining it.
pub fn minv_with_argmin(p: &Permutation) -> (u64, usize) {
    let start = p.inv();
    let mut best = (start, 0);
    for_each_rotation_inv(p, start, |j, inv| {
        if inv < best.0 {
            best = (inv, j);
        }
    });
    best
}

/// Every shift `j` with `inv(π·cₙʲ) = minv(π)`, in increasing order.
pub fn minv_shifts(p: &Permutation) -> (u64, Vec<usize>) {
    let mut invs = Vec::with_capacity(p.n());
    let start = p.inv();
    invs.push(start);
    for_each_rotation_inv(p, start, |_, inv| invs.push(inv));
    let min = *invs.iter().min().expect("nonempty");
    let shifts = (0..invs.len()).filter(|&j| invs[j] == min).collect();
    (min, shifts)
}

/// Calls `f(j, inv(π·cₙʲ))` for `j = 1..n`, updating the inversion count by
/// `n + 1 − 2·(leading letter)` per shift.
fn for_each_rotation_inv(p: &Permutation, start: u64, mut f: impl FnMut(usize, u64)) {
    let n = p.n() as i64;
    let word = p.word();
    let mut inv = start as i64;
    for (j, &lead) in word.iter().enumerate().take(word.len() - 1) {
        inv += n + 1 - 2 * lead as i64;
        f(j + 1, inv as u64);
    }
}

/// Whether every prefix satisfies `Σ_{j≤k} π(j) ≤ k(n+1)/2`.
pub fn is_heavy_tailed(p: &Permutation) -> bool {
    let n1 = p.n() as u64 + 1;
    let mut sum = 0u64;
    p.word().iter().enumerate().all(|(i, &v)| {
        sum += v as u64;
        2 * sum <= (i as u64 + 1) * n1
    })
}

fn check_same_size(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::domain(format!("size mismatch: {a} vs {b}")));
    }
    Ok(())
}

/// A minimal-inversion element of the double coset `γ̄₁ℤₙγ̄₂⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DistanceWitness {
    pub distance: u64,
    /// Smallest `j` with `inv(γ̄₁·cₙʲ·γ̄₂⁻¹) = distance`.
    pub shift: usize,
    pub tau: Permutation,
}

/// Graph distance between two n-cycles, `min inv` over `γ̄₁ℤₙγ̄₂⁻¹`.
pub fn distance(g1: &Cycle, g2: &Cycle) -> Result<u64> {
    distance_witness(g1, g2).map(|w| w.distance)
}

pub fn distance_witness(g1: &Cycle, g2: &Cycle) -> Result<DistanceWitness> {
    check_same_size(g1.n(), g2.n())?;
    let a = g1.coset_word();
    let b_inv = g2.coset_word().inverse();
    let mut best: Option<DistanceWitness> = None;
    for j in 0..a.n() {
        let tau = a.rotate_unchecked(j).compose(&b_inv)?;
        let inv = tau.inv();
        if best.map_or(true, |b| inv < b.distance) {
            best = Some(DistanceWitness {
                distance: inv,
                shift: j,
                tau,
            });
        }
    }
    Ok(best.expect("n >= 1"))
}

/// Mean of `inv` over the coset `πℤₙ`, as the exact fraction
/// `(cwinv(π) + C(n+1,3)) / n`.
pub fn coset_mean_inv(p: &Permutation) -> Ratio<u64> {
    let n = p.n() as u64;
    Ratio::new(p.cwinv() + binomial(n + 1, 3), n)
}

/// Smallest-shift `τ = π₁·cₙʲ·π₂⁻¹` whose first `k` letters sum to at most
/// `k(n+1)/2`. Such a `τ` exists for every input: each position of the
/// double coset takes every value exactly once, so the prefix sum averages
/// to `k(n+1)/2`.
pub fn prefix_sum_witness(p1: &Permutation, p2: &Permutation, k: usize) -> Result<Permutation> {
    check_same_size(p1.n(), p2.n())?;
    let n = p1.n();
    if k > n {
        return Err(Error::domain(format!("prefix length {k} exceeds n = {n}")));
    }
    let p2_inv = p2.inverse();
    let bound = k as u64 * (n as u64 + 1);
    for j in 0..n {
        let tau = p1.rotate_unchecked(j).compose(&p2_inv)?;
        if 2 * tau.prefix_sum(k) <= bound {
            return Ok(tau);
        }
    }
    unreachable!("the prefix sum over a double coset averages to k(n+1)/2")
}

/// `C(n−k, 2) − k + Σ_{i≤k} τ(i)`, an upper bound on `inv(τ)` for every `k`.
pub fn prefix_inv_bound(t: &Permutation, k: usize) -> Result<u64> {
    let n = t.n();
    if k > n {
        return Err(Error::domain(format!("prefix length {k} exceeds n = {n}")));
    }
    // Σ_{i≤k} τ(i) ≥ k(k+1)/2 ≥ k, so the subtraction cannot underflow
    Ok(binomial((n - k) as u64, 2) + t.prefix_sum(k) - k as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn p(word: &[u8]) -> Permutation {
        Permutation::new(word).unwrap()
    }

    fn all_perms(n: usize) -> impl Iterator<Item = Permutation> {
        (1..=n as u8)
            .permutations(n)
            .map(|w| Permutation::new(&w).unwrap())
    }

    fn minv_naive(q: &Permutation) -> u64 {
        (0..q.n())
            .map(|j| q.rotate(j).unwrap().inv())
            .min()
            .unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(canonicalize(&p(&[3, 1, 2])).permutation(), &p(&[1, 2, 3]));
        assert_eq!(
            canonicalize(&p(&[1, 4, 2, 3])).permutation(),
            &p(&[1, 4, 2, 3])
        );
        assert_eq!(
            canonicalize(&p(&[2, 1, 4, 3])).permutation(),
            &p(&[1, 4, 3, 2])
        );
    }

    #[test]
    fn same_coset_iff_same_rep() {
        for q in all_perms(5) {
            for j in 0..5 {
                assert_eq!(canonicalize(&q), canonicalize(&q.rotate(j).unwrap()));
            }
        }
        let distinct: std::collections::HashSet<_> =
            all_perms(5).map(|q| canonicalize(&q)).collect();
        assert_eq!(distinct.len() as u64, coset_count(5));
    }

    #[test]
    fn rank_examples() {
        for n in 1..=10 {
            assert_eq!(CosetRep::identity(n).unwrap().rank(), CosetIndex(0));
        }
        let r0 = CosetRep::new(p(&[1, 2, 3])).unwrap();
        let r1 = CosetRep::new(p(&[1, 3, 2])).unwrap();
        assert_eq!(r0.rank(), CosetIndex(0));
        assert_eq!(r1.rank(), CosetIndex(1));
        assert!(CosetRep::unrank(CosetIndex(2), 3).is_err());
        assert!(CosetRep::new(p(&[2, 1, 3])).is_err());
    }

    #[test]
    fn rank_unrank_exhaustive() {
        for n in 1..=7 {
            let mut prev: Option<CosetRep> = None;
            for k in 0..coset_count(n) {
                let rep = CosetRep::unrank(CosetIndex(k), n).unwrap();
                assert_eq!(rep.rank(), CosetIndex(k));
                // lexicographic order of the words
                if let Some(prev) = prev {
                    assert!(prev < rep);
                }
                prev = Some(rep);
            }
        }
        for q in all_perms(5) {
            let rep = canonicalize(&q);
            assert_eq!(CosetRep::unrank(rep.rank(), 5).unwrap(), rep);
        }
    }

    #[test]
    fn rank_at_max_size() {
        let word: Vec<u8> = std::iter::once(1).chain((2..=16).rev()).collect();
        let rep = CosetRep::new(p(&word)).unwrap();
        assert_eq!(rep.rank(), CosetIndex(coset_count(16) - 1));
        assert_eq!(CosetRep::unrank(rep.rank(), 16).unwrap(), rep);
    }

    #[test]
    fn minv_examples() {
        assert_eq!(minv(&p(&[1, 2, 3, 4])), 0);
        assert_eq!(minv(&Permutation::longest(5).unwrap()), 4);
        assert_eq!(minv(&Permutation::longest(12).unwrap()), 30);
        assert_eq!(minv(&Permutation::longest(4).unwrap()), 2);
        assert_eq!(minv(&p(&[1])), 0);
    }

    #[test]
    fn minv_argmin_is_smallest_shift() {
        let w0 = Permutation::longest(4).unwrap();
        let invs: Vec<u64> = (0..4).map(|j| w0.rotate(j).unwrap().inv()).collect();
        // [4,3,2,1], [3,2,1,4], [2,1,4,3], [1,4,3,2]
        assert_eq!(invs, vec![6, 3, 2, 3]);
        let (value, shift) = minv_with_argmin(&w0);
        assert_eq!(value, *invs.iter().min().unwrap());
        assert_eq!(shift, invs.iter().position(|&v| v == value).unwrap());
        let (_, shifts) = minv_shifts(&Permutation::identity(3).unwrap());
        assert_eq!(shifts, vec![0]);
    }

    #[test]
    fn minv_incremental_matches_naive_exhaustive() {
        for n in 1..=7 {
            for q in all_perms(n) {
                assert_eq!(minv(&q), minv_naive(&q), "{q:?}");
            }
        }
    }

    #[test]
    fn heavy_tailed_examples() {
        assert!(is_heavy_tailed(&p(&[1, 2, 3])));
        assert!(!is_heavy_tailed(&p(&[3, 2, 1])));
        assert!(is_heavy_tailed(&p(&[
            6, 5, 4, 3, 12, 2, 11, 1, 10, 9, 8, 7
        ])));
    }

    #[test]
    fn heavy_tailed_characterizes_minimal_rotation() {
        for n in 1..=8 {
            for q in all_perms(n) {
                assert_eq!(q.inv() == minv(&q), is_heavy_tailed(&q), "{q:?}");
            }
        }
    }

    #[test]
    fn distance_examples() {
        let c4 = Cycle::canonical(4).unwrap();
        let g: Cycle = "(1,4,3,2)".parse().unwrap();
        assert_eq!(distance(&c4, &c4).unwrap(), 0);
        assert_eq!(distance(&g, &g).unwrap(), 0);
        // brute force over the 4 elements of the double coset
        let a = c4.coset_word();
        let b_inv = g.coset_word().inverse();
        let brute = (0..4)
            .map(|j| a.rotate(j).unwrap().compose(&b_inv).unwrap().inv())
            .min()
            .unwrap();
        assert_eq!(brute, 2);
        assert_eq!(distance(&c4, &g).unwrap(), 2);
        assert!(distance(&c4, &Cycle::canonical(5).unwrap()).is_err());
    }

    #[test]
    fn distance_from_canonical_is_minv() {
        for n in 1..=7 {
            let c = Cycle::canonical(n).unwrap();
            for k in 0..coset_count(n) {
                let rep = CosetRep::unrank(CosetIndex(k), n).unwrap();
                let g = Cycle::from_coset(rep);
                assert_eq!(distance(&c, &g).unwrap(), minv(rep.permutation()));
                assert_eq!(distance(&g, &c).unwrap(), minv(rep.permutation()));
            }
        }
    }

    #[test]
    fn cycle_parsing_and_maps() {
        let g: Cycle = "(1432)".parse().unwrap();
        assert_eq!(g, "(4,3,2,1)".parse().unwrap());
        assert_eq!(g.to_string(), "(1,4,3,2)");
        // (1,4,3,2): 1→4, 4→3, 3→2, 2→1
        assert_eq!(g.as_permutation(), p(&[4, 1, 2, 3]));
        assert_eq!(Cycle::from_permutation(&g.as_permutation()).unwrap(), g);
        assert!(Cycle::from_permutation(&p(&[2, 1, 3])).is_err());
        assert!("1,2,3".parse::<Cycle>().is_err());
        assert!("(1,2,2)".parse::<Cycle>().is_err());
        // [3,5,6,1,2,4] = (1,3,6,4)(2,5) is not a full cycle
        assert!(Cycle::from_permutation(&p(&[3, 5, 6, 1, 2, 4])).is_err());
    }

    #[test]
    fn coset_mean_examples() {
        let id = Permutation::identity(4).unwrap();
        // mean of inv over the rotations of id
        let oracle: u64 = (0..4).map(|j| id.rotate(j).unwrap().inv()).sum();
        assert_eq!(oracle, 10);
        assert_eq!(coset_mean_inv(&id), Ratio::new(10, 4));
        assert_eq!(
            coset_mean_inv(&Permutation::longest(4).unwrap()),
            Ratio::new(14, 4)
        );
        let max = all_perms(5).map(|q| coset_mean_inv(&q)).max().unwrap();
        assert_eq!(max, Ratio::from_integer(6));
    }

    #[test]
    fn coset_mean_matches_rotation_average() {
        for n in 1..=7 {
            for q in all_perms(n) {
                let total: u64 = (0..n).map(|j| q.rotate(j).unwrap().inv()).sum();
                assert_eq!(coset_mean_inv(&q), Ratio::new(total, n as u64));
            }
        }
    }

    #[test]
    fn prefix_witness_examples() {
        let id = Permutation::identity(5).unwrap();
        for k in 0..=5 {
            assert_eq!(prefix_sum_witness(&id, &id, k).unwrap(), id);
        }
        let w0 = Permutation::longest(4).unwrap();
        let id4 = Permutation::identity(4).unwrap();
        let tau = prefix_sum_witness(&w0, &id4, 2).unwrap();
        assert!(tau.at(1) + tau.at(2) <= 5);
        // rotations of w0: [4,3,2,1],[3,2,1,4],...; j = 1 already meets 3+2 <= 5
        assert_eq!(tau, p(&[3, 2, 1, 4]));
        assert!(prefix_sum_witness(&w0, &id4, 5).is_err());
        assert!(prefix_sum_witness(&w0, &id, 1).is_err());
    }

    #[test]
    fn prefix_bound_examples() {
        for n in 1..=8 {
            let id = Permutation::identity(n).unwrap();
            assert_eq!(prefix_inv_bound(&id, 0).unwrap(), binomial(n as u64, 2));
            assert_eq!(prefix_inv_bound(&id, n).unwrap(), binomial(n as u64, 2));
        }
        assert_eq!(prefix_inv_bound(&p(&[2, 1, 4, 3]), 2).unwrap(), 2);
        assert!(prefix_inv_bound(&p(&[2, 1, 4, 3]), 5).is_err());
    }

    #[test]
    fn prefix_bound_dominates_inv_exhaustive() {
        for n in 1..=7 {
            for q in all_perms(n) {
                for k in 0..=n {
                    assert!(q.inv() <= prefix_inv_bound(&q, k).unwrap());
                }
            }
        }
    }
}
