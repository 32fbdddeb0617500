use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::primes::{prime_pi, sieve};

pub const DEFAULT_PSI_CAP: u64 = 1_000_000_000;

/// Counts y-friable integers with Ψ(x, p_j) = Ψ(x, p_{j-1}) + Ψ(⌊x/p_j⌋, p_j).
///
/// The memo is keyed by (x, j) and kept across calls, so sweeping many
/// arguments with one counter shares work.
#[derive(Debug, Clone)]
pub struct PsiCounter {
    primes: Vec<u64>,
    y_max: u64,
    cap: u64,
    memo: HashMap<(u64, usize), u64>,
}

impl PsiCounter {
    /// Counter for y ≤ `y_max` and x ≤ `cap`.
    pub fn new(y_max: u64, cap: u64) -> Result<Self> {
        Ok(Self {
            primes: sieve(y_max)?.primes().to_vec(),
            y_max,
            cap,
            memo: HashMap::new(),
        })
    }

    pub fn psi(&mut self, x: u64, y: u64) -> Result<u64> {
        if x < 1 || y < 1 {
            return Err(Error::Domain(format!("psi needs x, y >= 1, got ({x}, {y})")));
        }
        if x > self.cap {
            return Err(Error::ResourceLimit {
                what: "psi argument x",
                limit: self.cap as u128,
            });
        }
        if y > self.y_max && y < x {
            return Err(Error::OutOfRange(format!("y = {y} above counter limit {}", self.y_max)));
        }
        let j = self.primes.partition_point(|&p| p <= y);
        Ok(self.count(x, j))
    }

    // Unrolled: Ψ(x, p_j) = 1 + Σ_{i ≤ j} Ψ(⌊x/p_i⌋, p_i). Each level divides x
    // by at least 2, so the depth stays below log2 x.
    fn count(&mut self, x: u64, j: usize) -> u64 {
        if x < 2 || j == 0 {
            return x.min(1);
        }
        if self.primes[j - 1] >= x {
            return x;
        }
        if j == 1 {
            return x.ilog2() as u64 + 1;
        }
        if let Some(&v) = self.memo.get(&(x, j)) {
            return v;
        }
        let mut v = 1;
        for i in 1..=j {
            v += self.count(x / self.primes[i - 1], i);
        }
        self.memo.insert((x, j), v);
        v
    }
}

/// Ψ(x, y) = #{n ≤ x : P(n) ≤ y}, with P(1) = 1.
pub fn psi(x: u64, y: u64) -> Result<u64> {
    if x > DEFAULT_PSI_CAP {
        return Err(Error::ResourceLimit {
            what: "psi argument x",
            limit: DEFAULT_PSI_CAP as u128,
        });
    }
    // primes above x never matter
    if y >= x && x >= 1 {
        return Ok(x);
    }
    PsiCounter::new(y, DEFAULT_PSI_CAP)?.psi(x, y)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GranvilleReport {
    pub x: u64,
    pub y: u64,
    pub psi: u64,
    pub pi_y: u64,
    /// log Ψ(x,y) / (π(y)·log(log x / y)), the (1 + o(1)) factor.
    pub ratio: f64,
    /// log x ≥ e·y, so that log(log x / y) ≥ 1.
    pub in_regime: bool,
}

/// Diagnostic only: the o(1) term is unquantified, so nothing is asserted.
pub fn audit_granville(x: u64, y: u64) -> Result<GranvilleReport> {
    let value = psi(x, y)?;
    let pi_y = prime_pi(y);
    let log_x = (x as f64).ln();
    let in_regime = log_x >= std::f64::consts::E * y as f64;
    let ratio = (value as f64).ln() / (pi_y as f64 * (log_x / y as f64).ln());
    Ok(GranvilleReport {
        x,
        y,
        psi: value,
        pi_y,
        ratio,
        in_regime,
    })
}

impl fmt::Display for GranvilleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Psi({}, {}) = {}, pi(y) = {}, log Psi / (pi(y) log(log x / y)) = {:.6}",
            self.x, self.y, self.psi, self.pi_y, self.ratio
        )?;
        if !self.in_regime {
            f.write_str("  [out of asymptotic regime]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn largest_prime_factor(mut n: u64) -> u64 {
        let mut best = 1;
        let mut d = 2;
        while d * d <= n {
            while n.is_multiple_of(d) {
                best = d;
                n /= d;
            }
            d += 1;
        }
        if n > 1 {
            n
        } else {
            best
        }
    }

    #[test]
    fn examples() {
        // 2^a 3^b <= 100
        let oracle = (0..7).map(|a| (0..5).filter(|&b| 2u64.pow(a) * 3u64.pow(b) <= 100).count()).sum::<usize>();
        assert_eq!(oracle, 20);
        assert_eq!(psi(100, 3).unwrap(), 20);
        assert_eq!(psi(12345, 1).unwrap(), 1);
        assert_eq!(psi(100, 101).unwrap(), 100);
        assert_eq!(psi(1, 1).unwrap(), 1);
        assert!(psi(0, 5).is_err());
        assert!(psi(DEFAULT_PSI_CAP + 1, 2).is_err());
    }

    #[test]
    fn matches_naive_sweep_small() {
        let mut counter = PsiCounter::new(50, DEFAULT_PSI_CAP).unwrap();
        let lpf: Vec<u64> = (0..=3000).map(largest_prime_factor).collect();
        for y in 1..=50 {
            let mut running = 0;
            for x in 1..=3000u64 {
                if lpf[x as usize] <= y {
                    running += 1;
                }
                assert_eq!(counter.psi(x, y).unwrap(), running, "x = {x}, y = {y}");
            }
        }
    }

    #[test]
    fn granville_trend() {
        let a = audit_granville(1_000_000, 5).unwrap();
        let b = audit_granville(1_000_000_000, 7).unwrap();
        assert_eq!(a.psi, 507);
        assert!(a.ratio.is_finite() && a.ratio > 0.0);
        assert!(a.in_regime && b.in_regime);
        assert!((b.ratio - 1.0).abs() < (a.ratio - 1.0).abs());
        let c = audit_granville(10, 2).unwrap();
        assert!(!c.in_regime);
        assert!(c.to_string().contains("out of asymptotic regime"));
    }
}
