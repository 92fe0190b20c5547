//! The extremal permutation `π₀` and the closed-form bounds on the sorting
//! time and on the diameter.
//!
//! `π₀` starts from `w₀·cₙᵐ = [n−m,…,1,n,…,n−m+1]` (with `m = ⌊n/2⌋`) and
//! pushes each of the large letters `n, n−1, …` as far left as the
//! heavy-tail condition allows. The `t`-th large letter lands at position
//! `k_t + t`, where `k_t` is the smallest integer with `k_t² ≥ t(n−t)` for
//! even `n`, or `k_t² − k_t ≥ t(n−t)` for odd `n`.

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::combinatorics::binomial;
use crate::cosets::is_heavy_tailed;
use crate::error::{Error, Result};
use crate::permutation::{Permutation, MAX_N};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KtSequence {
    pub n: usize,
    pub m: usize,
    pub values: Vec<u64>,
}

impl KtSequence {
    pub fn sum(&self) -> u64 {
        self.values.iter().sum()
    }
}

fn require_at_least_two(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::domain(format!("n must be at least 2, got {n}")));
    }
    Ok(())
}

/// Smallest `k ≥ 0` with `k² ≥ target` (even `n`) or `k² − k ≥ target`
/// (odd `n`), by binary search on exact integers.
fn minimal_offset(target: u64, odd: bool) -> u64 {
    let ok = |k: u64| {
        if odd {
            k * k - k >= target
        } else {
            k * k >= target
        }
    };
    let (mut lo, mut hi) = (0u64, target + 1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

pub fn kt_sequence(n: usize) -> Result<KtSequence> {
    require_at_least_two(n)?;
    let m = n / 2;
    let odd = n % 2 == 1;
    let nn = n as u64;
    let values = (1..=m as u64)
        .map(|t| minimal_offset(t * (nn - t), odd))
        .collect();
    Ok(KtSequence { n, m, values })
}

/// The ceiling forms `⌈√(t(n−t))⌉` (even) and `⌈√(t(n−t)+¼) + ½⌉` (odd),
/// evaluated in floating point. Kept only for comparison with
/// [`kt_sequence`].
pub fn kt_ceiling_form(n: usize) -> Result<Vec<u64>> {
    require_at_least_two(n)?;
    let nf = n as f64;
    Ok((1..=n / 2)
        .map(|t| {
            let t = t as f64;
            let x = t * (nf - t);
            let g = if n % 2 == 0 {
                x.sqrt()
            } else {
                (x + 0.25).sqrt() + 0.5
            };
            g.ceil() as u64
        })
        .collect())
}

/// `π₀`, placed positionally: letter `n+1−t` at position `k_t + t`, and the
/// small letters `n−m, n−m−1, …, 1` filling the remaining positions in
/// order.
pub fn build_pi0(n: usize) -> Result<Permutation> {
    require_at_least_two(n)?;
    if n > MAX_N {
        return Err(Error::domain(format!(
            "n = {n} exceeds the supported maximum {MAX_N}"
        )));
    }
    let kt = kt_sequence(n)?;
    let mut word = vec![0u8; n];
    for (t, &k) in kt.values.iter().enumerate() {
        let t = t + 1;
        word[k as usize + t - 1] = (n + 1 - t) as u8;
    }
    let mut small = (1..=(n - kt.m) as u8).rev();
    for slot in word.iter_mut().filter(|v| **v == 0) {
        *slot = small.next().expect("enough small letters");
    }
    Permutation::new(&word)
}

/// `π₀` built by simulation: starting from `w₀·cₙᵐ`, each large letter
/// `n, n−1, …, n−m+1` moves left one place at a time, past smaller letters
/// only, for as long as the word stays heavy-tailed.
///
/// A move only increases prefix sums, so the first rejected move ends the
/// push for that letter.
pub fn build_pi0_greedy(n: usize) -> Result<Permutation> {
    require_at_least_two(n)?;
    let m = n / 2;
    let start = Permutation::longest(n)?.rotate(m)?;
    let mut word = start.word().to_vec();
    for letter in ((n - m + 1)..=n).rev() {
        let letter = letter as u8;
        let mut pos = word.iter().position(|&v| v == letter).expect("present");
        while pos > 0 && word[pos - 1] < letter {
            word.swap(pos - 1, pos);
            if !is_heavy_tailed(&Permutation::new(&word)?) {
                word.swap(pos - 1, pos);
                break;
            }
            pos -= 1;
        }
    }
    Permutation::new(&word)
}

/// `inv(π₀) = C(n,2) − Σ k_t`.
pub fn inv_pi0(n: usize) -> Result<u64> {
    Ok(binomial(n as u64, 2) - kt_sequence(n)?.sum())
}

/// `minv(w₀ℤₙ) = C(⌈n/2⌉,2) + C(⌊n/2⌋,2)`.
pub fn minv_w0_formula(n: usize) -> u64 {
    let n = n as u64;
    binomial(n.div_ceil(2), 2) + binomial(n / 2, 2)
}

/// `(2n² − 3n + 1)/6`, the upper bound on the sorting time.
pub fn sort_upper_bound(n: usize) -> Ratio<u64> {
    let n = n as u64;
    Ratio::new(2 * n * n + 1 - 3 * n, 6)
}

/// `(3n² − 4n + 1)/8`, the upper bound on the diameter.
pub fn diameter_upper_bound(n: usize) -> Ratio<u64> {
    let n = n as u64;
    Ratio::new(3 * n * n + 1 - 4 * n, 8)
}

/// `(½ − π/16)·n² − (3/2)·n`, the lower bound on the sorting time.
pub fn lower_bound(n: usize) -> f64 {
    let n = n as f64;
    (0.5 - std::f64::consts::PI / 16.0) * n * n - 1.5 * n
}

/// Closed-form bounds and exact extremal values for one `n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    #[serde(serialize_with = "serialize_ratio")]
    pub sort_upper: Ratio<u64>,
    pub sort_upper_floor: u64,
    #[serde(serialize_with = "serialize_ratio")]
    pub diam_upper: Ratio<u64>,
    pub diam_upper_floor: u64,
    pub lower: f64,
    pub inv_pi0: u64,
    pub minv_w0: u64,
}

/// Renders a fraction as `{num, den, decimal}`.
pub fn serialize_ratio<S: Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Exact {
        num: u64,
        den: u64,
        decimal: String,
    }
    Exact {
        num: *r.numer(),
        den: *r.denom(),
        decimal: format_ratio(r),
    }
    .serialize(s)
}

/// Six-decimal rendering of a fraction.
pub fn format_ratio(r: &Ratio<u64>) -> String {
    format!("{:.6}", *r.numer() as f64 / *r.denom() as f64)
}

/// Evaluates every bound for `n`. For `n = 1` the extremal values are 0 by
/// convention (`C₁` is the single trivial cycle).
pub fn bounds(n: usize) -> Result<BoundsReport> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    let sort_upper = sort_upper_bound(n);
    let diam_upper = diameter_upper_bound(n);
    Ok(BoundsReport {
        n,
        sort_upper,
        sort_upper_floor: sort_upper.floor().to_integer(),
        diam_upper,
        diam_upper_floor: diam_upper.floor().to_integer(),
        lower: lower_bound(n),
        inv_pi0: if n >= 2 { inv_pi0(n)? } else { 0 },
        minv_w0: minv_w0_formula(n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosets::minv;

    fn p(word: &[u8]) -> Permutation {
        Permutation::new(word).unwrap()
    }

    // independent linear scan for the smallest admissible offset
    fn kt_scan(n: usize) -> Vec<u64> {
        let nn = n as u64;
        (1..=nn / 2)
            .map(|t| {
                (0..)
                    .find(|&k: &u64| {
                        if n % 2 == 0 {
                            k * k >= t * (nn - t)
                        } else {
                            k * k >= k + t * (nn - t)
                        }
                    })
                    .unwrap()
            })
            .collect()
    }

    #[test]
    fn kt_examples() {
        assert_eq!(kt_scan(12), vec![4, 5, 6, 6, 6, 6]);
        assert_eq!(kt_sequence(12).unwrap().values, vec![4, 5, 6, 6, 6, 6]);
        assert_eq!(kt_scan(5), vec![3, 3]);
        assert_eq!(kt_sequence(5).unwrap().values, vec![3, 3]);
        assert_eq!(kt_sequence(2).unwrap().values, vec![1]);
        assert!(kt_sequence(1).is_err());
    }

    #[test]
    fn kt_binary_search_matches_scan() {
        for n in 2..=200 {
            assert_eq!(kt_sequence(n).unwrap().values, kt_scan(n), "n = {n}");
        }
    }

    #[test]
    fn kt_monotone_and_bounded() {
        for n in 2..=200 {
            let kt = kt_sequence(n).unwrap();
            assert_eq!(kt.values.len(), n / 2);
            assert!(kt.values.windows(2).all(|w| w[0] <= w[1]), "n = {n}");
            assert!(*kt.values.last().unwrap() <= (n - kt.m) as u64);
            assert!(kt.values[0] >= 1);
        }
    }

    #[test]
    fn kt_ceiling_form_agrees() {
        let mismatches: Vec<usize> = (2..=200)
            .filter(|&n| kt_ceiling_form(n).unwrap() != kt_sequence(n).unwrap().values)
            .collect();
        assert!(
            mismatches.is_empty(),
            "ceiling form differs at n = {mismatches:?}"
        );
    }

    #[test]
    fn pi0_examples() {
        assert_eq!(
            build_pi0(12).unwrap(),
            p(&[6, 5, 4, 3, 12, 2, 11, 1, 10, 9, 8, 7])
        );
        assert_eq!(build_pi0(5).unwrap(), p(&[3, 2, 1, 5, 4]));
        assert_eq!(build_pi0(2).unwrap(), p(&[1, 2]));
        assert_eq!(build_pi0_greedy(12).unwrap(), build_pi0(12).unwrap());
        assert_eq!(build_pi0_greedy(5).unwrap(), p(&[3, 2, 1, 5, 4]));
        assert_eq!(build_pi0_greedy(4).unwrap(), build_pi0(4).unwrap());
        assert!(build_pi0(1).is_err());
        assert!(build_pi0_greedy(1).is_err());
        assert!(build_pi0(17).is_err());
    }

    #[test]
    fn pi0_properties_up_to_max_size() {
        for n in 2..=MAX_N {
            let pi0 = build_pi0(n).unwrap();
            assert!(is_heavy_tailed(&pi0), "n = {n}");
            assert_eq!(build_pi0_greedy(n).unwrap(), pi0, "n = {n}");
            let inv = inv_pi0(n).unwrap();
            assert_eq!(pi0.inv(), inv, "n = {n}");
            assert_eq!(minv(&pi0), inv, "n = {n}");
        }
    }

    #[test]
    fn inv_pi0_examples() {
        assert_eq!(inv_pi0(5).unwrap(), 4);
        assert_eq!(inv_pi0(12).unwrap(), 33);
        assert_eq!(inv_pi0(2).unwrap(), 0);
    }

    #[test]
    fn lower_bound_below_inv_pi0() {
        for n in 2..=200 {
            assert!(lower_bound(n) <= inv_pi0(n).unwrap() as f64, "n = {n}");
        }
    }

    #[test]
    fn minv_w0_formula_matches_minv() {
        for n in 1..=MAX_N {
            assert_eq!(minv(&Permutation::longest(n).unwrap()), minv_w0_formula(n));
        }
        assert_eq!(minv_w0_formula(5), 4);
        assert_eq!(minv_w0_formula(12), 30);
    }

    #[test]
    fn bounds_examples() {
        let b5 = bounds(5).unwrap();
        assert_eq!(b5.sort_upper, Ratio::from_integer(6));
        assert_eq!(b5.diam_upper, Ratio::from_integer(7));
        assert_eq!(b5.minv_w0, 4);
        assert_eq!(b5.inv_pi0, 4);

        let b12 = bounds(12).unwrap();
        assert_eq!(b12.sort_upper, Ratio::new(253, 6));
        assert_eq!(b12.sort_upper_floor, 42);
        assert!((b12.lower - 25.7256).abs() < 1e-3);

        let b1 = bounds(1).unwrap();
        assert_eq!(b1.sort_upper, Ratio::from_integer(0));
        assert_eq!(b1.diam_upper, Ratio::from_integer(0));
        assert_eq!(b1.inv_pi0, 0);
        assert_eq!(b1.minv_w0, 0);
        assert!(b1.lower < 0.0);
        assert!(bounds(0).is_err());
    }

    #[test]
    fn bounds_chain() {
        for n in 2..=200 {
            let b = bounds(n).unwrap();
            assert!(b.lower <= b.inv_pi0 as f64);
            assert!(Ratio::from_integer(b.inv_pi0) <= b.sort_upper, "n = {n}");
            assert!(b.sort_upper <= b.diam_upper, "n = {n}");
        }
    }

    #[test]
    fn bounds_serialize_exact_fields() {
        let json = serde_json::to_value(bounds(12).unwrap()).unwrap();
        assert_eq!(json["sort_upper"]["num"], 253);
        assert_eq!(json["sort_upper"]["den"], 6);
        assert_eq!(json["sort_upper"]["decimal"], "42.166667");
        assert_eq!(json["inv_pi0"], 33);
    }
}
