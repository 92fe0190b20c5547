//! Small exact-integer helpers shared by the statistics and bounds code.

/// `k!` for every `k` that fits in a `u64`.
pub const FACTORIALS: [u64; 21] = {
    let mut table = [1u64; 21];
    let mut k = 1;
    while k < 21 {
        table[k] = table[k - 1] * k as u64;
        k += 1;
    }
    table
};

#[inline]
/// `k!`; panics for `k > 20`, where it overflows `u64`.
pub fn factorial(k: usize) -> u64 {
    FACTORIALS[k]
}

pub fn checked_factorial(k: usize) -> Option<u64> {
    FACTORIALS.get(k).copied()
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        // exact at every step: acc * (n - i) is divisible by (i + 1)
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `Σ_{i=1}^{n} i²`.
pub fn sum_of_squares(n: u64) -> u64 {
    n * (n + 1) * (2 * n + 1) / 6
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_table() {
        assert_eq!(factorial(0), 1);
        assert_eq!(factorial(5), 120);
        assert_eq!(factorial(11), 39_916_800);
        assert_eq!(factorial(20), 2_432_902_008_176_640_000);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(5, 3), 10);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(13, 3), 286);
        for n in 0..30u64 {
            let row_sum: u64 = (0..=n).map(|k| binomial(n, k)).sum();
            assert_eq!(row_sum, 1 << n);
        }
    }

    #[test]
    fn squares() {
        assert_eq!(sum_of_squares(1), 1);
        assert_eq!(sum_of_squares(3), 14);
        assert_eq!(sum_of_squares(4), 30);
    }
}
