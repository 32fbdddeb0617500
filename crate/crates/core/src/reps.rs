//! Representations of an integer as a product of factorials a₁!⋯a_r! with
//! a₁ ≥ ⋯ ≥ a_r ≥ 2, and the n_k family with many representations.

use std::cmp::Reverse;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::natural::{factorial, max_factorial_index};
use crate::primes::{legendre_exponent, sieve, ExponentVector, PrimeTable};
use crate::report::AuditReport;
use crate::verdict::Verdict;

/// A multiset of factorial arguments, stored non-increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FactorialMultiset {
    parts: Vec<u32>,
}

impl FactorialMultiset {
    /// Sorts `parts`; every part must be at least 2.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if let Some(bad) = parts.iter().find(|&&p| p < 2) {
            return Err(Error::Domain(format!("factorial part {bad} is below 2")));
        }
        parts.sort_unstable_by_key(|&p| Reverse(p));
        Ok(Self { parts })
    }

    pub(crate) fn from_sorted(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Self { parts }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> Option<u32> {
        self.parts.first().copied()
    }

    pub fn value(&self) -> BigUint {
        self.parts.iter().map(|&m| factorial(m as u64)).product()
    }

    /// Prime exponents of the product; `table` must reach the largest part.
    pub fn exponents(&self, table: &PrimeTable) -> ExponentVector {
        let mut v = ExponentVector::one();
        for &m in &self.parts {
            for &p in table.primes().iter().take_while(|&&p| p <= m as u64) {
                v.add_power(p, legendre_exponent(m as u64, p));
            }
        }
        v
    }
}

impl fmt::Display for FactorialMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RepresentationLimits {
    pub max_representations: usize,
}

impl Default for RepresentationLimits {
    fn default() -> Self {
        Self {
            max_representations: 1_000_000,
        }
    }
}

/// Dense exponent vector over the first primes, without trailing zeros.
pub(crate) type Dense = Vec<u32>;

fn trim(mut v: Dense) -> Dense {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Memoised search for factorial products on dense exponent vectors.
///
/// Parts are chosen largest first. A part m is only tried if m is at least
/// the largest prime left in the remainder (nothing smaller contains it) and
/// m! divides the remainder componentwise.
pub(crate) struct RepresentationSearch {
    primes: Vec<u64>,
    factorials: Vec<Dense>,
    lists: HashMap<(Dense, u32), Rc<Vec<Vec<u32>>>>,
    counts: HashMap<(Dense, u32), u128>,
    limits: RepresentationLimits,
}

impl RepresentationSearch {
    /// Supports parts up to `cap`.
    pub(crate) fn new(cap: u32, limits: RepresentationLimits) -> Result<Self> {
        let table = sieve(cap as u64)?;
        let primes = table.primes().to_vec();
        let factorials = (0..=cap as u64)
            .map(|m| {
                primes
                    .iter()
                    .take_while(|&&p| p <= m)
                    .map(|&p| legendre_exponent(m, p) as u32)
                    .collect()
            })
            .collect();
        Ok(Self {
            primes,
            factorials,
            lists: HashMap::new(),
            counts: HashMap::new(),
            limits,
        })
    }

    pub(crate) fn cap(&self) -> u32 {
        self.factorials.len() as u32 - 1
    }

    /// Dense form of a sparse vector; `None` if it uses primes above the cap.
    pub(crate) fn densify(&self, v: &ExponentVector) -> Option<Dense> {
        let mut out = vec![0u32; self.primes.len()];
        for (&p, &e) in v.entries() {
            let idx = self.primes.binary_search(&p).ok()?;
            out[idx] = u32::try_from(e).ok()?;
        }
        Some(trim(out))
    }

    /// `rem / m!` if the division is exact.
    pub(crate) fn divide(&self, rem: &Dense, m: u32) -> Option<Dense> {
        let f = &self.factorials[m as usize];
        if f.len() > rem.len() {
            return None;
        }
        let mut out = rem.clone();
        for (slot, &e) in out.iter_mut().zip(f) {
            *slot = slot.checked_sub(e)?;
        }
        Some(trim(out))
    }

    fn candidates<'a>(&'a self, rem: &'a Dense, max_part: u32) -> impl Iterator<Item = (u32, Dense)> + 'a {
        let lo = rem.len().checked_sub(1).map_or(2, |i| self.primes[i] as u32);
        let hi = max_part.min(self.cap());
        let twos = rem.first().copied().unwrap_or(0) as u64;
        (lo.max(2)..=hi).rev().filter_map(move |m| {
            // cheap 2-adic filter before the full comparison
            if m as u64 - (m.count_ones() as u64) > twos {
                return None;
            }
            self.divide(rem, m).map(|q| (m, q))
        })
    }

    /// All non-increasing part lists with parts ≤ `max_part` whose factorials multiply to `rem`.
    pub(crate) fn enumerate(&mut self, rem: &Dense, max_part: u32) -> Result<Rc<Vec<Vec<u32>>>> {
        if rem.is_empty() {
            return Ok(Rc::new(vec![Vec::new()]));
        }
        let key = (rem.clone(), max_part);
        if let Some(hit) = self.lists.get(&key) {
            return Ok(Rc::clone(hit));
        }
        let choices: Vec<(u32, Dense)> = self.candidates(rem, max_part).collect();
        let mut out = Vec::new();
        for (m, q) in choices {
            for tail in self.enumerate(&q, m)?.iter() {
                let mut parts = Vec::with_capacity(tail.len() + 1);
                parts.push(m);
                parts.extend_from_slice(tail);
                out.push(parts);
            }
            if out.len() > self.limits.max_representations {
                return Err(Error::ResourceLimit {
                    what: "representation count",
                    limit: self.limits.max_representations as u128,
                });
            }
        }
        let out = Rc::new(out);
        self.lists.insert(key, Rc::clone(&out));
        Ok(out)
    }

    pub(crate) fn count(&mut self, rem: &Dense, max_part: u32) -> u128 {
        if rem.is_empty() {
            return 1;
        }
        let key = (rem.clone(), max_part);
        if let Some(&hit) = self.counts.get(&key) {
            return hit;
        }
        let choices: Vec<(u32, Dense)> = self.candidates(rem, max_part).collect();
        let total = choices.into_iter().map(|(m, q)| self.count(&q, m)).sum();
        self.counts.insert(key, total);
        total
    }
}

/// Prepares a search for `n` and its dense vector, or `None` when `n` has a
/// prime factor no admissible factorial contains.
fn prepare(n: &BigUint, max_part: Option<u32>, limits: RepresentationLimits) -> Result<Option<(RepresentationSearch, Dense, u32)>> {
    if n < &BigUint::from(1u32) {
        return Err(Error::Domain("representations need n >= 1".into()));
    }
    let natural_cap = max_factorial_index(n).max(1);
    let cap = max_part.map_or(natural_cap, |m| m.min(natural_cap));
    let search = RepresentationSearch::new(cap.max(1), limits)?;
    let table = sieve(cap as u64)?;
    let Some(v) = ExponentVector::factor_over(n, &table) else {
        return Ok(None);
    };
    let dense = search.densify(&v).expect("factored over the same primes");
    Ok(Some((search, dense, cap)))
}

pub fn enumerate_representations(n: &BigUint, max_part: Option<u32>) -> Result<Vec<FactorialMultiset>> {
    enumerate_representations_with(n, max_part, RepresentationLimits::default())
}

/// Every distinct multiset with parts ≤ `max_part` (default: largest m with
/// m! ≤ n) whose factorials multiply to `n`, largest first. `n = 1` gives
/// exactly the empty multiset.
pub fn enumerate_representations_with(
    n: &BigUint,
    max_part: Option<u32>,
    limits: RepresentationLimits,
) -> Result<Vec<FactorialMultiset>> {
    let Some((mut search, dense, cap)) = prepare(n, max_part, limits)? else {
        return Ok(Vec::new());
    };
    let mut reps: Vec<FactorialMultiset> = search
        .enumerate(&dense, cap)?
        .iter()
        .cloned()
        .map(FactorialMultiset::from_sorted)
        .collect();
    reps.sort_unstable_by(|a, b| b.cmp(a));
    Ok(reps)
}

pub fn count_representations(n: &BigUint) -> Result<u128> {
    let Some((mut search, dense, cap)) = prepare(n, None, RepresentationLimits::default())? else {
        return Ok(0);
    };
    Ok(search.count(&dense, cap))
}

/// n_k = 2^{3k+3}·3^{k+1}.
pub fn nk_value(k: u32) -> BigUint {
    BigUint::from(2u32).pow(3 * k + 3) * BigUint::from(3u32).pow(k + 1)
}

/// The chain member 4!^j·3!^{k+1-j}·2!^{2(k+1-j)} of n_k.
pub fn nk_chain_member(k: u32, j: u32) -> FactorialMultiset {
    let rest = k + 1 - j;
    let mut parts = vec![4; j as usize];
    parts.extend(std::iter::repeat_n(3, rest as usize));
    parts.extend(std::iter::repeat_n(2, 2 * rest as usize));
    FactorialMultiset::from_sorted(parts)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NkRow {
    pub k: u32,
    pub representations: usize,
    /// Every chain member for 1 ≤ j ≤ k is among the enumerated representations.
    pub chain_found: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NkReport {
    pub rows: Vec<NkRow>,
}

pub fn audit_nk_multiplicity(k_max: u32) -> Result<NkReport> {
    if k_max < 1 {
        return Err(Error::Domain("n_k audit needs k_max >= 1".into()));
    }
    let mut rows = Vec::new();
    for k in 1..=k_max {
        let reps = enumerate_representations(&nk_value(k), None)?;
        let chain_found = (1..=k).all(|j| reps.binary_search_by(|r| nk_chain_member(k, j).cmp(r)).is_ok());
        rows.push(NkRow {
            k,
            representations: reps.len(),
            chain_found,
        });
    }
    Ok(NkReport { rows })
}

impl AuditReport for NkReport {
    fn verdict(&self) -> Verdict {
        Verdict::from_bool(
            self.rows
                .iter()
                .all(|r| r.chain_found && r.representations >= r.k as usize),
        )
    }
}

impl fmt::Display for NkReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(
                f,
                "k = {:>2}: n_k = {} has {} representations (>= {}: {}), chain members present: {}",
                r.k,
                nk_value(r.k),
                r.representations,
                r.k,
                r.representations >= r.k as usize,
                r.chain_found
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jp::is_jp;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn ms(parts: &[u32]) -> FactorialMultiset {
        FactorialMultiset::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn twenty_four_has_two() {
        let reps = enumerate_representations(&big(24), None).unwrap();
        assert_eq!(reps, vec![ms(&[4]), ms(&[3, 2, 2])]);
        assert_eq!(count_representations(&big(24)).unwrap(), 2);
    }

    #[test]
    fn five_seventy_six_has_three() {
        let reps = enumerate_representations(&big(576), None).unwrap();
        assert_eq!(reps, vec![ms(&[4, 4]), ms(&[4, 3, 2, 2]), ms(&[3, 3, 2, 2, 2, 2])]);
        assert_eq!(count_representations(&big(576)).unwrap(), 3);
    }

    #[test]
    fn one_and_two() {
        assert_eq!(enumerate_representations(&big(1), None).unwrap(), vec![FactorialMultiset::empty()]);
        assert_eq!(count_representations(&big(1)).unwrap(), 1);
        assert_eq!(count_representations(&big(2)).unwrap(), 1);
        assert_eq!(count_representations(&big(100)).unwrap(), 0);
        assert!(enumerate_representations(&big(0), None).is_err());
    }

    #[test]
    fn max_part_restricts() {
        let reps = enumerate_representations(&big(24), Some(3)).unwrap();
        assert_eq!(reps, vec![ms(&[3, 2, 2])]);
        // 10! = 7!·6! = 7!·5!·3! with parts <= 7
        let ten = factorial(10);
        let reps = enumerate_representations(&ten, Some(7)).unwrap();
        assert!(reps.contains(&ms(&[7, 6])));
        assert!(reps.contains(&ms(&[7, 5, 3])));
        assert!(reps.iter().all(|r| r.largest().unwrap() <= 7));
    }

    #[test]
    fn nk_values_and_chain() {
        assert_eq!(nk_value(1), big(576));
        assert_eq!(nk_value(2), big(13_824));
        assert_eq!(nk_value(5), big(2u64.pow(18) * 3u64.pow(6)));
        for k in 1..=8 {
            for j in 1..=k {
                assert_eq!(nk_chain_member(k, j).value(), nk_value(k), "k={k} j={j}");
            }
        }
    }

    #[test]
    fn nk_audit_passes() {
        let r = audit_nk_multiplicity(8).unwrap();
        assert!(r.verdict().holds(), "{r}");
        assert_eq!(r.rows[0].representations, 3);
    }

    #[test]
    fn reps_and_membership_agree() {
        for n in 1..=5000u64 {
            let c = count_representations(&big(n)).unwrap();
            assert_eq!(c >= 1, is_jp(&big(n)), "n = {n}");
        }
    }

    #[test]
    fn count_equals_enumeration_length() {
        for n in [1u64, 2, 24, 576, 13_824, 3_628_800, 2u64.pow(20) * 3u64.pow(6)] {
            let reps = enumerate_representations(&big(n), None).unwrap();
            assert_eq!(reps.len() as u128, count_representations(&big(n)).unwrap());
            for r in &reps {
                assert_eq!(r.value(), big(n));
            }
            let mut dedup = reps.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), reps.len());
        }
    }

    #[test]
    fn multiset_rules() {
        assert!(FactorialMultiset::new(vec![3, 1]).is_err());
        assert_eq!(ms(&[2, 5, 3]).parts(), &[5, 3, 2]);
        assert_eq!(ms(&[7, 6]).to_string(), "{7,6}");
        let t = sieve(7).unwrap();
        assert_eq!(ms(&[7, 6]).exponents(&t).value(), factorial(10));
    }

    #[test]
    fn representation_cap() {
        let r = enumerate_representations_with(&nk_value(8), None, RepresentationLimits { max_representations: 2 });
        assert!(matches!(r, Err(Error::ResourceLimit { .. })));
    }
}
