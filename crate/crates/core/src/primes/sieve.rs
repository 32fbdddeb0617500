use crate::error::{Error, Result};

/// Largest sieve limit accepted by [`sieve`].
pub const DEFAULT_SIEVE_CAP: u64 = 2_000_000_000;

/// All primes up to `limit`, in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// The `k`-th prime, 1-based (`nth(1) = 2`).
    pub fn nth(&self, k: usize) -> Option<u64> {
        k.checked_sub(1).and_then(|i| self.primes.get(i).copied())
    }

    /// π(x) for `x <= limit`.
    pub fn pi(&self, x: u64) -> Result<usize> {
        self.check(x)?;
        Ok(self.primes.partition_point(|&p| p <= x))
    }

    pub fn is_prime(&self, x: u64) -> Result<bool> {
        self.check(x)?;
        Ok(self.primes.binary_search(&x).is_ok())
    }

    /// Primes `<= x`.
    pub fn up_to(&self, x: u64) -> Result<&[u64]> {
        let n = self.pi(x)?;
        Ok(&self.primes[..n])
    }

    /// Largest prime `<= x`, if any.
    pub fn prev_prime(&self, x: u64) -> Result<Option<u64>> {
        Ok(self.up_to(x)?.last().copied())
    }

    /// Chebyshev θ(x) = Σ_{p ≤ x} log p.
    pub fn theta(&self, x: u64) -> Result<f64> {
        Ok(self.up_to(x)?.iter().map(|&p| (p as f64).ln()).sum())
    }

    fn check(&self, x: u64) -> Result<()> {
        if x > self.limit {
            Err(Error::OutOfRange(format!(
                "{x} exceeds prime table limit {}",
                self.limit
            )))
        } else {
            Ok(())
        }
    }
}

pub fn sieve(limit: u64) -> Result<PrimeTable> {
    sieve_with_cap(limit, DEFAULT_SIEVE_CAP)
}

/// Odd-only bit sieve of Eratosthenes.
pub fn sieve_with_cap(limit: u64, cap: u64) -> Result<PrimeTable> {
    if limit > cap {
        return Err(Error::ResourceLimit {
            what: "sieve limit",
            limit: cap as u128,
        });
    }
    let mut primes = Vec::new();
    if limit >= 2 {
        primes.push(2);
    }
    if limit >= 3 {
        // bit i <-> odd number 2i + 1; bit 0 (the number 1) is never read
        let n_odd = ((limit - 1) / 2 + 1) as usize;
        let mut composite = vec![0u64; n_odd.div_ceil(64)];
        let mut i = 1usize;
        while (2 * i + 1) as u64 * (2 * i + 1) as u64 <= limit {
            if composite[i / 64] >> (i % 64) & 1 == 0 {
                let p = 2 * i + 1;
                let mut j = (p * p) / 2;
                while j < n_odd {
                    composite[j / 64] |= 1 << (j % 64);
                    j += p;
                }
            }
            i += 1;
        }
        primes.reserve(estimate_pi(limit));
        for (w, &word) in composite.iter().enumerate() {
            let mut free = !word;
            while free != 0 {
                let b = free.trailing_zeros() as usize;
                free &= free - 1;
                let idx = w * 64 + b;
                if idx == 0 || idx >= n_odd {
                    continue;
                }
                primes.push(2 * idx as u64 + 1);
            }
        }
    }
    Ok(PrimeTable { limit, primes })
}

fn estimate_pi(x: u64) -> usize {
    let xf = x as f64;
    (1.26 * xf / xf.ln().max(1.0)) as usize + 8
}

/// A sieve limit guaranteed to contain the first `k` primes.
pub fn nth_prime_upper_bound(k: usize) -> u64 {
    if k < 6 {
        return 13;
    }
    let kf = k as f64;
    (kf * (kf.ln() + kf.ln().ln())).ceil() as u64 + 1
}

/// Table holding at least the first `k` primes.
pub fn first_primes(k: usize) -> Result<PrimeTable> {
    sieve(nth_prime_upper_bound(k))
}

/// π(x) by the floor-quotient sieve: for every distinct value v = ⌊x/i⌋,
/// `small`/`large` hold the count of integers in [2, v] that survive
/// sieving by the primes processed so far. O(x^{3/4}) time, O(√x) space.
pub fn prime_pi(x: u64) -> u64 {
    if x < 2 {
        return 0;
    }
    let r = x.isqrt();
    // small[v] for v <= r, large[i] for v = x / i with i <= r
    let mut small: Vec<u64> = (0..=r).map(|v| v.saturating_sub(1)).collect();
    let mut large: Vec<u64> = (0..=r).map(|i| x.checked_div(i).map_or(0, |q| q - 1)).collect();
    for p in 2..=r {
        if small[p as usize] == small[p as usize - 1] {
            continue;
        }
        let below = small[p as usize - 1];
        let p2 = p * p;
        let lim_large = r.min(x / p2);
        for i in 1..=lim_large {
            let d = i * p;
            let v = if d <= r {
                large[d as usize]
            } else {
                small[(x / d) as usize]
            };
            large[i as usize] -= v - below;
        }
        if p2 <= r {
            for v in (p2..=r).rev() {
                small[v as usize] -= small[(v / p) as usize] - below;
            }
        }
    }
    large[1]
}
