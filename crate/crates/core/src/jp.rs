//! Enumeration, counting and membership for Jordan-Pólya numbers and for the
//! subfamily of products of prime factorials.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::natural::{as_u128, factorials_up_to, max_factorial_index, Magnitude};
use crate::primes::{factorial_vector, sieve, ExponentVector};

/// Which set is enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// All products of factorials.
    J,
    /// Products of prime factorials p!.
    JPrime,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::J => "j",
            Family::JPrime => "jp",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "j" => Ok(Family::J),
            "jp" => Ok(Family::JPrime),
            other => Err(Error::Domain(format!("unknown family tag {other:?} (expected j or jp)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    /// Maximum number of distinct values before giving up.
    pub max_values: usize,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        Self {
            max_values: 20_000_000,
        }
    }
}

/// Sorted members of a family up to `bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JpEnumeration {
    pub bound: BigUint,
    pub family: Family,
    pub values: Vec<BigUint>,
}

impl JpEnumeration {
    pub fn count(&self) -> usize {
        self.values.len()
    }

    pub fn contains(&self, n: &BigUint) -> bool {
        self.values.binary_search(n).is_ok()
    }

    /// Checks the structural invariants: strictly increasing, starts at 1,
    /// nothing above the bound.
    pub fn is_well_formed(&self) -> bool {
        self.values.first().is_some_and(|v| v.is_one())
            && self.values.windows(2).all(|w| w[0] < w[1])
            && self.values.last().is_some_and(|v| v <= &self.bound)
    }
}

pub fn enumerate_jp(bound: &BigUint) -> Result<JpEnumeration> {
    enumerate_family(bound, Family::J, EnumerationLimits::default())
}

pub fn enumerate_jp_prime(bound: &BigUint) -> Result<JpEnumeration> {
    enumerate_family(bound, Family::JPrime, EnumerationLimits::default())
}

pub fn count_jp(bound: &BigUint) -> Result<usize> {
    Ok(enumerate_jp(bound)?.count())
}

pub fn count_jp_prime(bound: &BigUint) -> Result<usize> {
    Ok(enumerate_jp_prime(bound)?.count())
}

/// Depth-first search over non-increasing factorial choices with the running
/// product kept at or below `bound`. The largest factorial of each product
/// picks the rayon task, and the per-task sets are merged by value, so the
/// output does not depend on scheduling.
pub fn enumerate_family(
    bound: &BigUint,
    family: Family,
    limits: EnumerationLimits,
) -> Result<JpEnumeration> {
    if bound < &BigUint::from(1u32) {
        return Err(Error::Domain("enumeration bound must be at least 1".into()));
    }
    let values = match as_u128(bound) {
        Some(b) => products_up_to(&b, family, limits)?
            .iter()
            .map(|v| BigUint::from(*v))
            .collect(),
        None => products_up_to(bound, family, limits)?,
    };
    Ok(JpEnumeration {
        bound: bound.clone(),
        family,
        values,
    })
}

fn family_parts<M: Magnitude>(bound: &M, family: Family) -> Vec<M> {
    let all = factorials_up_to(bound);
    match family {
        Family::J => all.into_iter().map(|(_, f)| f).collect(),
        Family::JPrime => {
            let top = all.last().map_or(1, |(m, _)| *m as u64);
            let table = sieve(top).expect("factorial index is tiny");
            all.into_iter()
                .filter(|(m, _)| table.is_prime(*m as u64).unwrap_or(false))
                .map(|(_, f)| f)
                .collect()
        }
    }
}

fn products_up_to<M: Magnitude>(bound: &M, family: Family, limits: EnumerationLimits) -> Result<Vec<M>> {
    let parts = family_parts(bound, family);
    let per_top: Vec<BTreeSet<M>> = (0..parts.len())
        .into_par_iter()
        .map(|top| {
            let mut found = BTreeSet::new();
            found.insert(parts[top].clone());
            extend_products(&parts[top], top, &parts, bound, &mut found, limits.max_values)?;
            Ok(found)
        })
        .collect::<Result<_>>()?;
    let mut all = BTreeSet::new();
    all.insert(M::one());
    for set in per_top {
        all.extend(set);
        if all.len() > limits.max_values {
            return Err(limit_error(limits));
        }
    }
    Ok(all.into_iter().collect())
}

fn extend_products<M: Magnitude>(
    prod: &M,
    top: usize,
    parts: &[M],
    bound: &M,
    found: &mut BTreeSet<M>,
    cap: usize,
) -> Result<()> {
    // parts ascend, so the first overflow ends the loop
    for (i, part) in parts.iter().enumerate().take(top + 1) {
        let Some(next) = prod.mul_within(part, bound) else {
            break;
        };
        extend_products(&next, i, parts, bound, found, cap)?;
        found.insert(next);
        if found.len() > cap {
            return Err(limit_error(EnumerationLimits { max_values: cap }));
        }
    }
    Ok(())
}

fn limit_error(limits: EnumerationLimits) -> Error {
    Error::ResourceLimit {
        what: "enumeration size",
        limit: limits.max_values as u128,
    }
}

/// Memoised membership test: n ∈ J iff n = 1 or some m! | n with n/m! ∈ J.
///
/// Independent of the enumerator; used as its oracle.
#[derive(Debug, Clone)]
pub struct JpOracle<M: Magnitude> {
    factorials: Vec<M>,
    memo: HashMap<M, bool>,
}

impl<M: Magnitude> JpOracle<M> {
    /// Oracle able to answer queries for every `n <= bound`.
    pub fn new(bound: &M) -> Self {
        Self {
            factorials: factorials_up_to(bound).into_iter().map(|(_, f)| f).collect(),
            memo: HashMap::new(),
        }
    }

    pub fn is_jp(&mut self, n: &M) -> bool {
        if *n == M::one() {
            return true;
        }
        if let Some(&known) = self.memo.get(n) {
            return known;
        }
        let mut answer = false;
        for idx in 0..self.factorials.len() {
            let f = self.factorials[idx].clone();
            if &f > n {
                break;
            }
            // m! ∤ n implies (m+1)! ∤ n
            let Some(q) = n.exact_quotient(&f) else { break };
            if self.is_jp(&q) {
                answer = true;
                break;
            }
        }
        self.memo.insert(n.clone(), answer);
        answer
    }
}

pub fn is_jp(n: &BigUint) -> bool {
    if n < &BigUint::from(1u32) {
        return false;
    }
    match as_u128(n) {
        Some(small) => JpOracle::new(&small).is_jp(&small),
        None => JpOracle::new(n).is_jp(n),
    }
}

/// Exponents e_p in n = ∏ (p!)^{e_p} over primes p.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrimeFactorialDecomposition {
    pub exponents: BTreeMap<u64, u64>,
}

impl PrimeFactorialDecomposition {
    pub fn value(&self) -> BigUint {
        self.exponents
            .iter()
            .map(|(&p, &e)| crate::natural::factorial(p).pow(e as u32))
            .product()
    }
}

impl fmt::Display for PrimeFactorialDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .rev()
            .map(|(p, e)| if *e == 1 { format!("{p}!") } else { format!("{p}!^{e}") })
            .collect();
        f.write_str(&parts.join(" * "))
    }
}

/// Greedy peel: the largest prime q dividing n occurs in q! exactly once and
/// in no smaller prime factorial, so the exponent of q! is forced to v_q(n).
/// Any negative remainder means n is not a product of prime factorials.
pub fn jp_prime_decompose(n: &BigUint) -> Option<PrimeFactorialDecomposition> {
    if n < &BigUint::from(1u32) {
        return None;
    }
    let mut out = PrimeFactorialDecomposition::default();
    if n.is_one() {
        return Some(out);
    }
    // every prime factor of a member is at most the largest m with m! <= n
    let table = sieve(max_factorial_index(n) as u64).ok()?;
    let mut rest = ExponentVector::factor_over(n, &table)?;
    while let Some(q) = rest.largest_prime() {
        let e = rest.exponent(q);
        rest = rest.checked_div_scaled(&factorial_vector(q, &table), e)?;
        out.exponents.insert(q, e);
    }
    Some(out)
}

/// Smallest member of J not expressible with prime factorials, searched up to `bound`.
pub fn smallest_non_prime_factorial(bound: &BigUint) -> Result<Option<BigUint>> {
    Ok(enumerate_jp(bound)?
        .values
        .into_iter()
        .find(|v| jp_prime_decompose(v).is_none()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::natural::factorial;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    const BELOW_10K: [u64; 58] = [
        1, 2, 4, 6, 8, 12, 16, 24, 32, 36, 48, 64, 72, 96, 120, 128, 144, 192, 216, 240, 256,
        288, 384, 432, 480, 512, 576, 720, 768, 864, 960, 1024, 1152, 1296, 1440, 1536, 1728,
        1920, 2048, 2304, 2592, 2880, 3072, 3456, 3840, 4096, 4320, 4608, 5040, 5184, 5760, 6144,
        6912, 7680, 7776, 8192, 8640, 9216,
    ];

    #[test]
    fn list_below_ten_thousand() {
        let e = enumerate_jp(&big(10_000)).unwrap();
        let expected: Vec<BigUint> = BELOW_10K.iter().map(|&v| big(v)).collect();
        assert_eq!(e.values, expected);
        assert!(e.is_well_formed());
    }

    #[test]
    fn trivial_bounds() {
        assert_eq!(enumerate_jp(&big(1)).unwrap().values, vec![big(1)]);
        assert_eq!(enumerate_jp_prime(&big(1)).unwrap().values, vec![big(1)]);
        assert_eq!(count_jp(&big(10)).unwrap(), 5);
        assert!(enumerate_jp(&big(0)).is_err());
    }

    #[test]
    fn membership_examples() {
        assert!(is_jp(&big(5040)));
        assert!(is_jp(&big(1)));
        assert!(!is_jp(&big(100)));
        assert!(!is_jp(&big(0)));
        assert!(is_jp(&factorial(40)));
        assert!(!is_jp(&(factorial(40) * 7u32 * 11u32 * 13u32 * 41u32)));
    }

    #[test]
    fn oracle_matches_enumeration_to_1e5() {
        let bound = 100_000u128;
        let e = enumerate_jp(&BigUint::from(bound)).unwrap();
        let mut oracle = JpOracle::new(&bound);
        let swept: Vec<BigUint> = (1..=bound).filter(|n| oracle.is_jp(n)).map(BigUint::from).collect();
        assert_eq!(swept, e.values);
    }

    #[test]
    fn big_path_agrees_with_u128_path() {
        // same bound through both representations
        let bound = big(10u64.pow(12));
        let fast = enumerate_jp(&bound).unwrap();
        let slow = products_up_to(&bound, Family::J, EnumerationLimits::default()).unwrap();
        assert_eq!(fast.values, slow);
        let over = BigUint::from(u128::MAX) * 1000u32;
        let e = enumerate_jp(&over).unwrap();
        assert!(e.is_well_formed());
        assert!(e.contains(&factorial(34)));
        assert!(e.contains(&factorial(35)));
    }

    #[test]
    fn enumeration_cap() {
        let r = enumerate_family(&big(10_000), Family::J, EnumerationLimits { max_values: 10 });
        assert!(matches!(r, Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn prime_family_subset() {
        let j = enumerate_jp(&big(1_000_000)).unwrap();
        let jp = enumerate_jp_prime(&big(1_000_000)).unwrap();
        assert!(jp.is_well_formed());
        assert!(jp.values.iter().all(|v| j.contains(v)));
        assert!(enumerate_jp_prime(&big(24)).unwrap().contains(&big(24)));
    }

    #[test]
    fn decompose_examples() {
        let d = jp_prime_decompose(&big(24)).unwrap();
        assert_eq!(d.exponents, BTreeMap::from([(2, 2), (3, 1)]));
        assert_eq!(d.to_string(), "3! * 2!^2");
        assert!(jp_prime_decompose(&big(1)).unwrap().exponents.is_empty());
        assert!(jp_prime_decompose(&factorial(14)).is_none());
        assert!(jp_prime_decompose(&big(100)).is_none());
        assert!(jp_prime_decompose(&big(0)).is_none());
    }

    #[test]
    fn decompose_round_trip() {
        for v in enumerate_jp_prime(&big(10u64.pow(9))).unwrap().values {
            let d = jp_prime_decompose(&v).expect("member decomposes");
            assert_eq!(d.value(), v);
        }
    }

    #[test]
    fn fourteen_factorial_is_outside_prime_family() {
        let f14 = factorial(14);
        assert!(is_jp(&f14));
        let smallest = smallest_non_prime_factorial(&f14).unwrap().unwrap();
        assert!(smallest <= f14);
        assert!(jp_prime_decompose(&smallest).is_none());
    }

    #[test]
    fn family_tags() {
        assert_eq!("jp".parse::<Family>().unwrap(), Family::JPrime);
        assert_eq!(Family::J.to_string(), "j");
        assert!("x".parse::<Family>().is_err());
    }
}
