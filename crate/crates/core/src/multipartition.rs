//! Exact counts of partitions and of `s`-tuples of partitions.
//!
//! `k(s, t)` is the coefficient of `x^t` in `P(x)^s`, where `P` is the
//! partition generating function. Taking the logarithmic derivative gives
//!
//! ```text
//! t * k(s, t) = s * sum_{j=1..t} sigma(j) * k(s, t - j)
//! ```
//!
//! with `sigma` the divisor sum, which is what [`multipartition_row`] runs.

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub type BigCount = BigUint;

fn sigma(j: u32) -> u64 {
    (1..=j)
        .filter(|d| j.is_multiple_of(*d))
        .map(u64::from)
        .sum()
}

/// `[k(s, 0), k(s, 1), ..., k(s, t_max)]`.
pub fn multipartition_row(s: u32, t_max: u32) -> Vec<BigCount> {
    assert!(s >= 1, "s must be positive");
    let sig: Vec<u64> = (0..=t_max)
        .map(|j| if j == 0 { 0 } else { sigma(j) })
        .collect();
    let mut row: Vec<BigCount> = Vec::with_capacity(t_max as usize + 1);
    row.push(BigCount::one());
    for t in 1..=t_max {
        let mut acc = BigCount::zero();
        for j in 1..=t {
            acc += &row[(t - j) as usize] * sig[j as usize];
        }
        acc *= s;
        let (quot, rem) = (&acc / t, &acc % t);
        assert!(rem.is_zero(), "k({s},{t}) recurrence not integral");
        row.push(quot);
    }
    row
}

/// `k(s, t)`: the number of `s`-tuples of partitions with total size `t`.
pub fn count_multipartitions(s: u32, t: u32) -> BigCount {
    multipartition_row(s, t).pop().expect("row is non-empty")
}

/// `p(n)`.
pub fn partition_count(n: u32) -> BigCount {
    count_multipartitions(1, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_of;

    /// Number of `s`-tuples of partitions of total size `t`, built by
    /// explicit enumeration of tuples.
    fn brute_force(s: u32, t: u32) -> u64 {
        let sizes: Vec<u64> = (0..=t).map(|m| partitions_of(m).len() as u64).collect();
        fn rec(slots: u32, rest: u32, sizes: &[u64]) -> u64 {
            if slots == 0 {
                return u64::from(rest == 0);
            }
            (0..=rest)
                .map(|a| sizes[a as usize] * rec(slots - 1, rest - a, sizes))
                .sum()
        }
        rec(s, t, &sizes)
    }

    #[test]
    fn examples() {
        for s in 1..6 {
            assert_eq!(count_multipartitions(s, 0), BigCount::one());
        }
        assert_eq!(count_multipartitions(2, 3), BigCount::from(10u32));
        assert_eq!(count_multipartitions(2, 6), BigCount::from(65u32));
        assert_eq!(count_multipartitions(1, 4), BigCount::from(5u32));
        assert_eq!(count_multipartitions(3, 3), BigCount::from(22u32));
        assert_eq!(count_multipartitions(2, 7), BigCount::from(110u32));
    }

    #[test]
    fn against_tuple_enumeration() {
        for s in 1..=6 {
            for t in 0..=8 {
                assert_eq!(
                    count_multipartitions(s, t),
                    BigCount::from(brute_force(s, t)),
                    "k({s},{t})"
                );
            }
        }
    }

    #[test]
    fn strictly_increasing_in_s() {
        for t in 1..=20 {
            for s in 1..=10 {
                assert!(count_multipartitions(s, t) < count_multipartitions(s + 1, t));
            }
        }
    }

    #[test]
    fn partition_numbers() {
        assert_eq!(partition_count(40), BigCount::from(37338u32));
        assert_eq!(partition_count(100), BigCount::from(190569292u64));
    }
}
