//! Solutions of n! = a₁!·a₂!⋯a_r! with n > a₁ ≥ ⋯ ≥ a_r ≥ 2 and r ≥ 2.
//!
//! A solution with a₁ = n − 1 is trivial: it is just n = a₂!⋯a_r!.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::primes::{factorial_vector, sieve};
use crate::reps::{FactorialMultiset, RepresentationLimits, RepresentationSearch};

pub const DEFAULT_MAX_N: u64 = 500;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HickersonSolution {
    pub n: u64,
    pub rep: FactorialMultiset,
    pub trivial: bool,
}

impl HickersonSolution {
    pub fn new(n: u64, rep: FactorialMultiset) -> Self {
        let trivial = rep.largest().is_some_and(|a| a as u64 + 1 == n);
        Self { n, rep, trivial }
    }
}

impl fmt::Display for HickersonSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rhs: Vec<String> = self.rep.parts().iter().map(|a| format!("{a}!")).collect();
        write!(f, "{}! = {}", self.n, rhs.join(" * "))?;
        if self.trivial {
            f.write_str("  (trivial)")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub include_trivial: bool,
    /// Largest accepted `max_n`.
    pub cap: u64,
    /// Try every a₁ instead of starting at the largest prime ≤ n.
    pub exhaustive: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            include_trivial: false,
            cap: DEFAULT_MAX_N,
            exhaustive: false,
        }
    }
}

pub fn search(max_n: u64, include_trivial: bool) -> Result<Vec<HickersonSolution>> {
    search_with(
        max_n,
        SearchOptions {
            include_trivial,
            ..SearchOptions::default()
        },
    )
}

/// All solutions with n ≤ `max_n`, sorted by (n, multiset).
///
/// The largest prime p ≤ n exceeds n/2, so it divides n! exactly once and
/// must come from a₁!; hence a₁ ≥ p. The quotient n!/a₁! is then split into
/// factorials with parts ≤ a₁.
pub fn search_with(max_n: u64, opts: SearchOptions) -> Result<Vec<HickersonSolution>> {
    if max_n < 2 {
        return Err(Error::Domain(format!("max_n must be at least 2, got {max_n}")));
    }
    if max_n > opts.cap {
        return Err(Error::ResourceLimit {
            what: "hickerson max_n",
            limit: opts.cap as u128,
        });
    }
    let table = sieve(max_n)?;
    let mut found: Vec<HickersonSolution> = (3..=max_n)
        .into_par_iter()
        .map(|n| solutions_for(n, &table, opts))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    found.sort();
    Ok(found)
}

fn solutions_for(n: u64, table: &crate::primes::PrimeTable, opts: SearchOptions) -> Result<Vec<HickersonSolution>> {
    let mut search = RepresentationSearch::new(n as u32, RepresentationLimits::default())?;
    let target = search
        .densify(&factorial_vector(n, table))
        .expect("table reaches n");
    let first = if opts.exhaustive {
        2
    } else {
        table.prev_prime(n)?.expect("n >= 3 has a prime below it")
    };
    let last = if opts.include_trivial { n - 1 } else { n - 2 };
    let mut out = Vec::new();
    for a1 in first..=last {
        let Some(quotient) = search.divide(&target, a1 as u32) else {
            continue;
        };
        for tail in search.enumerate(&quotient, a1 as u32)?.iter() {
            let mut parts = Vec::with_capacity(tail.len() + 1);
            parts.push(a1 as u32);
            parts.extend_from_slice(tail);
            out.push(HickersonSolution::new(n, FactorialMultiset::new(parts)?));
        }
    }
    Ok(out)
}

/// Rechecks a solution from scratch with exponent vectors.
pub fn verify(sol: &HickersonSolution) -> bool {
    let parts = sol.rep.parts();
    let Some(&a1) = parts.first() else {
        return false;
    };
    if parts.len() < 2 || a1 as u64 >= sol.n || parts.iter().any(|&a| a < 2) {
        return false;
    }
    if !parts.windows(2).all(|w| w[0] >= w[1]) {
        return false;
    }
    if sol.trivial != (a1 as u64 + 1 == sol.n) {
        return false;
    }
    let Ok(table) = sieve(sol.n) else {
        return false;
    };
    sol.rep.exponents(&table) == factorial_vector(sol.n, &table)
}

/// The trivial solution built from `rest` = (a₂, …, a_r): n = a₂!⋯a_r!, a₁ = n − 1.
/// `None` when the product is too large to be an index.
pub fn trivial_from(rest: &FactorialMultiset) -> Option<HickersonSolution> {
    use num_traits::ToPrimitive;
    let n = rest.value().to_u64()?;
    if rest.is_empty() || n < 3 || rest.largest()? as u64 > n - 1 {
        return None;
    }
    let mut parts = vec![(n - 1) as u32];
    parts.extend_from_slice(rest.parts());
    Some(HickersonSolution::new(n, FactorialMultiset::new(parts).ok()?))
}
