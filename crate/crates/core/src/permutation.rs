//! Permutations in one-line notation and the inversion statistics
//! `inv`, `winv` and `cwinv`.
//!
//! Values are 1-based, as in `[3,5,6,1,2,4]`. A permutation is a `Copy`
//! value holding a fixed-width byte array, so the search code can shuttle
//! words around without touching the heap. Sizes are capped at
//! [`MAX_N`].

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::combinatorics::{binomial, sum_of_squares};
use crate::error::{Error, Result};

/// Largest supported permutation size.
pub const MAX_N: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    len: u8,
    word: [u8; MAX_N],
}

/// The three inversion statistics of one permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StatTriple {
    pub inv: u64,
    pub winv: u64,
    pub cwinv: u64,
}

impl Permutation {
    /// Builds a permutation from its one-line word, checking that it is a
    /// bijection of `{1..n}`.
    pub fn new(word: &[u8]) -> Result<Self> {
        let n = word.len();
        if n == 0 {
            return Err(Error::domain("permutation must have at least one letter"));
        }
        if n > MAX_N {
            return Err(Error::domain(format!(
                "permutation size {n} exceeds the supported maximum {MAX_N}"
            )));
        }
        let mut seen = 0u32;
        for &v in word {
            if v == 0 || v as usize > n {
                return Err(Error::domain(format!("letter {v} is outside 1..={n}")));
            }
            if seen & (1 << v) != 0 {
                return Err(Error::domain(format!("letter {v} appears twice")));
            }
            seen |= 1 << v;
        }
        Ok(Self::from_word_unchecked(word))
    }

    pub(crate) fn from_word_unchecked(word: &[u8]) -> Self {
        debug_assert!(!word.is_empty() && word.len() <= MAX_N);
        let mut buf = [0u8; MAX_N];
        buf[..word.len()].copy_from_slice(word);
        Self {
            len: word.len() as u8,
            word: buf,
        }
    }

    fn check_size(n: usize) -> Result<()> {
        if n == 0 || n > MAX_N {
            return Err(Error::domain(format!(
                "permutation size must be in 1..={MAX_N}, got {n}"
            )));
        }
        Ok(())
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::check_size(n)?;
        let word: Vec<u8> = (1..=n as u8).collect();
        Ok(Self::from_word_unchecked(&word))
    }

    /// The longest element `w₀ = [n, n-1, …, 1]`.
    pub fn longest(n: usize) -> Result<Self> {
        Self::check_size(n)?;
        let word: Vec<u8> = (1..=n as u8).rev().collect();
        Ok(Self::from_word_unchecked(&word))
    }

    /// The long cycle `cₙ = (1,2,…,n)` in one-line notation, `[2,3,…,n,1]`.
    pub fn long_cycle(n: usize) -> Result<Self> {
        Self::check_size(n)?;
        let word: Vec<u8> = (2..=n as u8).chain(std::iter::once(1)).collect();
        Ok(Self::from_word_unchecked(&word))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn word(&self) -> &[u8] {
        &self.word[..self.len as usize]
    }

    /// `π(i)` for a 1-based position `i`.
    #[inline]
    pub fn at(&self, i: usize) -> u8 {
        self.word[i - 1]
    }

    /// 1-based position of `value`.
    pub fn position_of(&self, value: u8) -> usize {
        self.word()
            .iter()
            .position(|&v| v == value)
            .expect("value in range")
            + 1
    }

    pub fn is_identity(&self) -> bool {
        self.word()
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize == i + 1)
    }

    /// Number of inversions, counted by merge sort.
    pub fn inv(&self) -> u64 {
        let n = self.n();
        let mut buf = self.word;
        let mut scratch = [0u8; MAX_N];
        merge_count(&mut buf[..n], &mut scratch[..n])
    }

    /// Weighted inversion number, `Σ (π(i) − π(j))` over inversion pairs,
    /// evaluated through the closed form `Σ i² − Σ i·π(i)`.
    pub fn winv(&self) -> u64 {
        let n = self.n() as u64;
        let dot: u64 = self
            .word()
            .iter()
            .enumerate()
            .map(|(i, &v)| (i as u64 + 1) * v as u64)
            .sum();
        sum_of_squares(n) - dot
    }

    /// Cyclic weighted inversion number, `n·inv − 2·winv`.
    pub fn cwinv(&self) -> u64 {
        let n = self.n() as u64;
        let value = n * self.inv() - 2 * self.winv();
        debug_assert!(value <= binomial(n, 3));
        value
    }

    pub fn stats(&self) -> StatTriple {
        let inv = self.inv();
        let winv = self.winv();
        StatTriple {
            inv,
            winv,
            cwinv: self.n() as u64 * inv - 2 * winv,
        }
    }

    /// `π·cₙʲ`: the word cyclically shifted left by `j` places.
    pub fn rotate(&self, j: usize) -> Result<Self> {
        let n = self.n();
        if j >= n {
            return Err(Error::domain(format!("rotation {j} out of range 0..{n}")));
        }
        Ok(self.rotate_unchecked(j))
    }

    pub(crate) fn rotate_unchecked(&self, j: usize) -> Self {
        let mut out = *self;
        out.word[..self.n()].rotate_left(j);
        out
    }

    /// `inv(π·cₙ) − inv(π) = n + 1 − 2·π(1)`.
    #[inline]
    pub fn inv_rotation_delta(&self) -> i64 {
        self.n() as i64 + 1 - 2 * self.word[0] as i64
    }

    /// Left multiplication by `sᵢ = (i, i+1)`: exchanges the letters `i` and
    /// `i + 1` wherever they sit in the word.
    pub fn left_multiply_adjacent(&self, i: usize) -> Result<Self> {
        let n = self.n();
        if i == 0 || i >= n {
            return Err(Error::domain(format!(
                "adjacent transposition s_{i} requires 1 <= i < {n}"
            )));
        }
        Ok(self.swap_values(i as u8, i as u8 + 1))
    }

    /// Left multiplication by the transposition `(a, b)` of values.
    pub fn swap_values(&self, a: u8, b: u8) -> Self {
        let mut out = *self;
        for v in out.word[..self.n()].iter_mut() {
            if *v == a {
                *v = b;
            } else if *v == b {
                *v = a;
            }
        }
        out
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::domain(format!(
                "cannot compose permutations of sizes {} and {}",
                self.n(),
                other.n()
            )));
        }
        let mut out = *self;
        for (slot, &q) in out.word[..self.n()].iter_mut().zip(other.word()) {
            *slot = self.at(q as usize);
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Self {
        let mut out = *self;
        for (i, &v) in self.word().iter().enumerate() {
            out.word[v as usize - 1] = i as u8 + 1;
        }
        out
    }

    /// Cosine of the angle between `(π(1),…,π(n))` and `(1,…,n)`.
    ///
    /// Undefined (an error) for `n < 2`: with a single coordinate there is
    /// only one permutation and the statistic carries no information.
    pub fn cos_angle(&self) -> Result<f64> {
        if self.n() < 2 {
            return Err(Error::domain("cos_angle requires n >= 2"));
        }
        let (mut dot, mut norm_p, mut norm_id) = (0.0f64, 0.0f64, 0.0f64);
        for (i, &v) in self.word().iter().enumerate() {
            let (x, y) = (v as f64, (i + 1) as f64);
            dot += x * y;
            norm_p += x * x;
            norm_id += y * y;
        }
        Ok(dot / (norm_p.sqrt() * norm_id.sqrt()))
    }

    /// Sum of the first `k` letters.
    pub fn prefix_sum(&self, k: usize) -> u64 {
        self.word()[..k].iter().map(|&v| v as u64).sum()
    }
}

fn merge_count(buf: &mut [u8], scratch: &mut [u8]) -> u64 {
    let len = buf.len();
    if len < 2 {
        return 0;
    }
    let mid = len / 2;
    let mut count = {
        let (left, right) = buf.split_at_mut(mid);
        let (s_left, s_right) = scratch.split_at_mut(mid);
        merge_count(left, s_left) + merge_count(right, s_right)
    };
    let (left, right) = buf.split_at(mid);
    let (mut i, mut j) = (0, 0);
    for slot in scratch.iter_mut() {
        if j == right.len() || (i < left.len() && left[i] <= right[j]) {
            *slot = left[i];
            i += 1;
        } else {
            *slot = right[j];
            j += 1;
            count += (left.len() - i) as u64;
        }
    }
    buf.copy_from_slice(scratch);
    count
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self.word() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.word())
    }
}

/// Splits a list body into letter tokens.
///
/// Comma- or whitespace-separated integers are accepted for any size; a
/// bare run of digits is read one letter per digit.
pub(crate) fn parse_letters(body: &str) -> Result<Vec<u8>> {
    let body = body.trim();
    if body.is_empty() {
        return Err(Error::parse(body, "empty word"));
    }
    let tokens: Vec<&str> = if body.contains(',') {
        body.split(',').map(str::trim).collect()
    } else if body.contains(char::is_whitespace) {
        body.split_whitespace().collect()
    } else if body.chars().all(|c| c.is_ascii_digit()) {
        body.split("").filter(|t| !t.is_empty()).collect()
    } else {
        vec![body]
    };
    tokens
        .into_iter()
        .map(|tok| {
            tok.parse::<u8>()
                .map_err(|_| Error::parse(tok, "expected a positive integer letter"))
        })
        .collect()
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses `3,5,6,1,2,4`, `[3,5,6,1,2,4]` or the digit word `312`.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let body = trimmed
            .strip_prefix('[')
            .and_then(|rest| rest.strip_suffix(']'))
            .unwrap_or(trimmed);
        let letters = parse_letters(body)?;
        Permutation::new(&letters).map_err(|e| match e {
            Error::Domain(reason) => Error::parse(s, reason),
            other => other,
        })
    }
}
