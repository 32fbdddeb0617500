use num_bigint::BigUint;

use super::sieve::PrimeTable;
use crate::error::Result;

/// Exact binomial coefficient C(n, k).
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    // acc = C(n - k + i, i) after step i, always an integer
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// Number of non-negative integer `k`-tuples with sum at most `budget`,
/// i.e. C(budget + k, budget).
pub fn simplex_count(k: u64, budget: u64) -> BigUint {
    binomial(budget + k, budget)
}

/// Direct enumeration of the same tuples; independent of the binomial route.
pub fn count_bounded_tuples(k: u32, budget: u64) -> u64 {
    fn go(slots: u32, left: u64) -> u64 {
        if slots == 0 {
            return 1;
        }
        (0..=left).map(|used| go(slots - 1, left - used)).sum()
    }
    go(k, budget)
}

/// Σ_{p ≤ y} (log p)/p.
pub fn mertens_sum(y: u64, table: &PrimeTable) -> Result<f64> {
    Ok(table
        .up_to(y)?
        .iter()
        .map(|&p| (p as f64).ln() / p as f64)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn simplex_examples() {
        assert_eq!(simplex_count(2, 2), BigUint::from(6u32));
        assert_eq!(count_bounded_tuples(2, 2), 6);
        assert_eq!(simplex_count(3, 2), BigUint::from(10u32));
        assert_eq!(count_bounded_tuples(3, 2), 10);
        for k in 1..6 {
            assert_eq!(simplex_count(k, 0), BigUint::from(1u32));
        }
    }

    #[test]
    fn simplex_matches_enumeration_up_to_8() {
        for k in 1..=8u32 {
            for r in 0..=8u64 {
                assert_eq!(simplex_count(k as u64, r), BigUint::from(count_bounded_tuples(k, r)));
            }
        }
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(10, 3), BigUint::from(120u32));
        assert_eq!(binomial(3, 5), BigUint::from(0u32));
        assert_eq!(binomial(0, 0), BigUint::from(1u32));
        // exceeds 64 bits
        assert_eq!(binomial(100, 50).to_string(), "100891344545564193334812497256");
    }

    proptest! {
        #[test]
        fn binomial_symmetry(a in 0u64..200, b in 0u64..200) {
            prop_assert_eq!(binomial(a + b, a), binomial(a + b, b));
        }

        #[test]
        fn pascal_rule(n in 1u64..300, k in 1u64..300) {
            prop_assume!(k <= n);
            prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
        }
    }
}
