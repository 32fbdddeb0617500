//! Exact natural numbers with a `u128` fast path and a `BigUint` fallback.
//!
//! The enumerators and membership oracles are generic over [`Magnitude`] so
//! one traversal serves both representations. Callers pass `BigUint` and the
//! public entry points pick `u128` whenever the bound fits.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use std::hash::Hash;

pub trait Magnitude: Clone + Ord + Hash + Send + Sync + std::fmt::Debug {
    fn one() -> Self;
    fn from_u64(v: u64) -> Self;
    /// `self * other` if the product does not exceed `bound`.
    fn mul_within(&self, other: &Self, bound: &Self) -> Option<Self>;
    /// `self / d` when `d` divides `self`.
    fn exact_quotient(&self, d: &Self) -> Option<Self>;
    fn to_biguint(&self) -> BigUint;
}

impl Magnitude for u128 {
    fn one() -> Self {
        1
    }

    fn from_u64(v: u64) -> Self {
        v as u128
    }

    fn mul_within(&self, other: &Self, bound: &Self) -> Option<Self> {
        self.checked_mul(*other).filter(|p| p <= bound)
    }

    fn exact_quotient(&self, d: &Self) -> Option<Self> {
        self.is_multiple_of(*d).then(|| self / d)
    }

    fn to_biguint(&self) -> BigUint {
        BigUint::from(*self)
    }
}

impl Magnitude for BigUint {
    fn one() -> Self {
        One::one()
    }

    fn from_u64(v: u64) -> Self {
        BigUint::from(v)
    }

    fn mul_within(&self, other: &Self, bound: &Self) -> Option<Self> {
        let p = self * other;
        (&p <= bound).then_some(p)
    }

    fn exact_quotient(&self, d: &Self) -> Option<Self> {
        let (q, r) = (self / d, self % d);
        r.is_zero().then_some(q)
    }

    fn to_biguint(&self) -> BigUint {
        self.clone()
    }
}

/// Factorials `2!, 3!, …, M!` with `M! <= bound`, as `(m, m!)` pairs.
pub fn factorials_up_to<M: Magnitude>(bound: &M) -> Vec<(u32, M)> {
    let mut out = Vec::new();
    let mut f = M::one();
    let mut m = 2u32;
    while let Some(next) = f.mul_within(&M::from_u64(m as u64), bound) {
        f = next;
        out.push((m, f.clone()));
        m += 1;
    }
    out
}

/// Largest `m` with `m! <= n` (0 for `n = 0`, 1 for `n = 1`).
pub fn max_factorial_index(n: &BigUint) -> u32 {
    if n.is_zero() {
        return 0;
    }
    let mut f = BigUint::from(1u32);
    let mut m = 1u32;
    loop {
        let next = &f * BigUint::from(m + 1);
        if &next > n {
            return m;
        }
        f = next;
        m += 1;
    }
}

pub fn factorial(m: u64) -> BigUint {
    (2..=m).fold(BigUint::from(1u32), |acc, i| acc * i)
}

/// Natural logarithm of an arbitrary-precision natural, accurate to a few ulps.
pub fn ln_biguint(n: &BigUint) -> f64 {
    if let Some(v) = n.to_u64() {
        return (v as f64).ln();
    }
    let bits = n.bits();
    let shift = bits - 64;
    let top = (n >> shift).to_u64().expect("64 leading bits");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Narrow to `u128` when the value fits.
pub fn as_u128(n: &BigUint) -> Option<u128> {
    n.to_u128()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_table_small() {
        let t = factorials_up_to(&24u128);
        assert_eq!(t, vec![(2, 2), (3, 6), (4, 24)]);
        assert!(factorials_up_to(&1u128).is_empty());
    }

    #[test]
    fn largest_u128_factorial() {
        // 34! < 2^128 < 35!
        let t = factorials_up_to(&u128::MAX);
        assert_eq!(t.last().unwrap().0, 34);
    }

    #[test]
    fn max_index() {
        assert_eq!(max_factorial_index(&BigUint::from(1u32)), 1);
        assert_eq!(max_factorial_index(&BigUint::from(23u32)), 3);
        assert_eq!(max_factorial_index(&BigUint::from(24u32)), 4);
        assert_eq!(max_factorial_index(&BigUint::from(10_000u32)), 7);
    }

    #[test]
    fn ln_of_big() {
        let f = factorial(100);
        let exact: f64 = (2..=100).map(|i| (i as f64).ln()).sum();
        assert!((ln_biguint(&f) - exact).abs() < 1e-10);
        assert!((ln_biguint(&BigUint::from(210u32)) - 210f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn big_and_small_agree() {
        let b = BigUint::from(720u32);
        assert_eq!(b.exact_quotient(&BigUint::from(24u32)), Some(BigUint::from(30u32)));
        assert_eq!(720u128.exact_quotient(&7), None);
        assert_eq!(5u128.mul_within(&5, &24), None);
    }
}
