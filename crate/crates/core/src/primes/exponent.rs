use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use super::sieve::PrimeTable;

/// An exact positive integer stored as its prime factorisation.
///
/// Only strictly positive exponents are stored, so the empty map is 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector {
    entries: BTreeMap<u64, u64>,
}

impl ExponentVector {
    pub fn one() -> Self {
        Self::default()
    }

    /// Builds from `(prime, exponent)` pairs, merging repeats and dropping zeros.
    pub fn from_pairs<I: IntoIterator<Item = (u64, u64)>>(pairs: I) -> Self {
        let mut v = Self::default();
        for (p, e) in pairs {
            v.add_power(p, e);
        }
        v
    }

    pub fn entries(&self) -> &BTreeMap<u64, u64> {
        &self.entries
    }

    pub fn exponent(&self, p: u64) -> u64 {
        self.entries.get(&p).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn largest_prime(&self) -> Option<u64> {
        self.entries.keys().next_back().copied()
    }

    pub fn add_power(&mut self, p: u64, e: u64) {
        if e > 0 {
            *self.entries.entry(p).or_insert(0) += e;
        }
    }

    /// Adds `times` copies of `other` (multiplication by `other^times`).
    pub fn add_scaled(&mut self, other: &ExponentVector, times: u64) {
        for (&p, &e) in &other.entries {
            self.add_power(p, e * times);
        }
    }

    /// `true` when `other` divides `self`.
    pub fn divisible_by(&self, other: &ExponentVector) -> bool {
        other
            .entries
            .iter()
            .all(|(p, &e)| self.exponent(*p) >= e)
    }

    /// `self / other^times`, or `None` if that is not an integer.
    pub fn checked_div_scaled(&self, other: &ExponentVector, times: u64) -> Option<ExponentVector> {
        let mut out = self.clone();
        for (&p, &e) in &other.entries {
            let need = e.checked_mul(times)?;
            let have = out.entries.get_mut(&p);
            match have {
                Some(h) if *h > need => *h -= need,
                Some(h) if *h == need => {
                    out.entries.remove(&p);
                }
                _ if need == 0 => {}
                _ => return None,
            }
        }
        Some(out)
    }

    pub fn checked_div(&self, other: &ExponentVector) -> Option<ExponentVector> {
        self.checked_div_scaled(other, 1)
    }

    pub fn value(&self) -> BigUint {
        let mut acc = BigUint::from(1u32);
        for (&p, &e) in &self.entries {
            acc *= BigUint::from(p).pow(e as u32);
        }
        acc
    }

    /// Factorises `n` by trial division over the primes of `table`.
    /// Returns `None` when a cofactor with a prime factor above the table
    /// limit remains.
    pub fn factor_over(n: &BigUint, table: &PrimeTable) -> Option<ExponentVector> {
        if n.is_zero() {
            return None;
        }
        if let Some(small) = n.to_u128() {
            return factor_u128(small, table);
        }
        let mut rest = n.clone();
        let mut out = ExponentVector::default();
        for &p in table.primes() {
            if rest.is_one() {
                break;
            }
            let bp = BigUint::from(p);
            let mut e = 0;
            loop {
                let r = &rest % &bp;
                if !r.is_zero() {
                    break;
                }
                rest /= &bp;
                e += 1;
            }
            out.add_power(p, e);
        }
        rest.is_one().then_some(out)
    }
}

fn factor_u128(mut n: u128, table: &PrimeTable) -> Option<ExponentVector> {
    let mut out = ExponentVector::default();
    for &p in table.primes() {
        if n == 1 {
            break;
        }
        let p128 = p as u128;
        let mut e = 0;
        while n.is_multiple_of(p128) {
            n /= p128;
            e += 1;
        }
        out.add_power(p, e);
    }
    (n == 1).then_some(out)
}

impl Mul for &ExponentVector {
    type Output = ExponentVector;

    fn mul(self, rhs: &ExponentVector) -> ExponentVector {
        let mut out = self.clone();
        out.add_scaled(rhs, 1);
        out
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        f.write_str(&parts.join("·"))
    }
}

/// Exponent of the prime `p` in `m!`: ⌊m/p⌋ + ⌊m/p²⌋ + ⋯.
///
/// Divides `m` repeatedly instead of raising `p` to powers, so nothing
/// overflows.
pub fn legendre_exponent(m: u64, p: u64) -> u64 {
    debug_assert!(p >= 2);
    let mut total = 0;
    let mut q = m / p;
    while q > 0 {
        total += q;
        q /= p;
    }
    total
}

/// Prime factorisation of `m!` over the primes of `table` (which must reach `m`).
pub fn factorial_vector(m: u64, table: &PrimeTable) -> ExponentVector {
    debug_assert!(m <= table.limit(), "prime table too small for {m}!");
    let mut v = ExponentVector::default();
    for &p in table.primes().iter().take_while(|&&p| p <= m) {
        v.add_power(p, legendre_exponent(m, p));
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::natural::factorial;
    use crate::primes::sieve;

    // Repeated division of the explicit factorial.
    fn valuation(mut n: BigUint, p: u64) -> u64 {
        let bp = BigUint::from(p);
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        e
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(valuation(factorial(10), 2), 8);
        assert_eq!(valuation(factorial(10), 3), 4);
        assert_eq!(legendre_exponent(10, 2), 8);
        assert_eq!(legendre_exponent(10, 3), 4);
        assert_eq!(legendre_exponent(10, 11), 0);
        assert_eq!(legendre_exponent(0, 2), 0);
        assert_eq!(legendre_exponent(u64::MAX, 2), u64::MAX - u64::MAX.count_ones() as u64);
    }

    #[test]
    fn factorial_vector_examples() {
        let t = sieve(20).unwrap();
        assert_eq!(factorial_vector(4, &t), ExponentVector::from_pairs([(2, 3), (3, 1)]));
        assert_eq!(factorial_vector(2, &t), ExponentVector::from_pairs([(2, 1)]));
        assert_eq!(
            factorial_vector(10, &t),
            ExponentVector::from_pairs([(2, 8), (3, 4), (5, 2), (7, 1)])
        );
    }

    #[test]
    fn factorial_vector_value_matches_product_to_500() {
        let t = sieve(500).unwrap();
        let mut naive = BigUint::from(1u32);
        for m in 2..=500u64 {
            naive *= m;
            let v = factorial_vector(m, &t);
            assert_eq!(v.value(), naive, "m = {m}");
            assert_eq!(v.entries().len(), t.pi(m).unwrap());
        }
    }

    #[test]
    fn arithmetic() {
        let a = ExponentVector::from_pairs([(2, 3), (3, 1)]);
        let b = ExponentVector::from_pairs([(2, 1), (5, 2)]);
        let ab = &a * &b;
        assert_eq!(ab, ExponentVector::from_pairs([(2, 4), (3, 1), (5, 2)]));
        assert_eq!(ab.checked_div(&b), Some(a.clone()));
        assert_eq!(a.checked_div(&b), None);
        assert!(ab.divisible_by(&a));
        assert_eq!(ab.value(), BigUint::from(24u32 * 50));
        assert_eq!(a.checked_div_scaled(&ExponentVector::from_pairs([(2, 1)]), 3).unwrap().value(), BigUint::from(3u32));
        assert_eq!(ExponentVector::from_pairs([(7, 0)]), ExponentVector::one());
    }

    #[test]
    fn factor_over_table() {
        let t = sieve(13).unwrap();
        let v = ExponentVector::factor_over(&factorial(13), &t).unwrap();
        assert_eq!(v, factorial_vector(13, &t));
        assert!(ExponentVector::factor_over(&BigUint::from(17u32 * 4), &t).is_none());
        let big = factorial(40);
        let t40 = sieve(40).unwrap();
        assert_eq!(ExponentVector::factor_over(&big, &t40).unwrap(), factorial_vector(40, &t40));
        assert_eq!(format!("{}", ExponentVector::factor_over(&BigUint::from(24u32), &t).unwrap()), "2^3·3");
    }
}
