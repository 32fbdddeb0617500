use std::fmt;

use crate::error::{Error, Result};
use crate::report::AuditReport;
use crate::verdict::{at_most, strictly_less, Verdict};

pub const DEFAULT_LATTICE_CAP: u64 = 100_000_000;

/// Relative slack toward inclusion when testing Σ ν_i a_i ≤ z.
pub const BUDGET_SLACK: f64 = 1e-12;

/// Weights a₁..a_k > 0 and a budget z for counting
/// N_k(z) = #{ν ∈ ℤ^k_{≥0} : Σ ν_i a_i ≤ z}.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeInstance {
    weights: Vec<f64>,
    budget: f64,
}

impl LatticeInstance {
    pub fn new(weights: Vec<f64>, budget: f64) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Domain("lattice instance needs at least one weight".into()));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::Domain(format!("weights must be positive, got {w}")));
        }
        if !(budget.is_finite() && budget >= 0.0) {
            return Err(Error::Domain(format!("budget must be non-negative, got {budget}")));
        }
        Ok(Self { weights, budget })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn budget(&self) -> f64 {
        self.budget
    }

    pub fn dimension(&self) -> usize {
        self.weights.len()
    }
}

pub fn ennola_count(inst: &LatticeInstance) -> Result<u64> {
    ennola_count_with_cap(inst, DEFAULT_LATTICE_CAP)
}

/// Exact N_k(z) by recursion over the last coordinate ν_k = 0..⌊z/a_k⌋.
pub fn ennola_count_with_cap(inst: &LatticeInstance, cap: u64) -> Result<u64> {
    let tol = BUDGET_SLACK * inst.budget.max(1.0);
    let mut total = 0u64;
    count_into(&inst.weights, inst.budget, tol, &mut total, cap)?;
    Ok(total)
}

fn count_into(weights: &[f64], left: f64, tol: f64, total: &mut u64, cap: u64) -> Result<()> {
    let (&last, rest) = weights.split_last().expect("non-empty");
    let steps = ((left + tol) / last).floor() as u64;
    if rest.is_empty() {
        *total += steps + 1;
    } else {
        for nu in 0..=steps {
            count_into(rest, left - nu as f64 * last, tol, total, cap)?;
        }
    }
    if *total > cap {
        return Err(Error::ResourceLimit {
            what: "lattice point count",
            limit: cap as u128,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnnolaReport {
    pub count: u64,
    pub lower: f64,
    pub upper: f64,
    /// z^k/k! ∏ 1/a_i < N_k(z)
    pub lower_verdict: Verdict,
    /// N_k(z) ≤ (z + Σ a_i)^k/k! ∏ 1/a_i
    pub upper_verdict: Verdict,
}

/// Two-sided volume bounds around the exact lattice count, compared in logs.
pub fn audit_ennola(inst: &LatticeInstance) -> Result<EnnolaReport> {
    let count = ennola_count(inst)?;
    let k = inst.dimension();
    let ln_k_fact: f64 = (2..=k).map(|i| (i as f64).ln()).sum();
    let ln_prod: f64 = inst.weights.iter().map(|a| a.ln()).sum();
    let sum_a: f64 = inst.weights.iter().sum();
    let kf = k as f64;
    let ln_lower = kf * inst.budget.ln() - ln_k_fact - ln_prod;
    let ln_upper = kf * (inst.budget + sum_a).ln() - ln_k_fact - ln_prod;
    let ln_count = (count as f64).ln();
    Ok(EnnolaReport {
        count,
        lower: ln_lower.exp(),
        upper: ln_upper.exp(),
        lower_verdict: strictly_less(ln_lower, ln_count),
        upper_verdict: at_most(ln_count, ln_upper),
    })
}

impl AuditReport for EnnolaReport {
    fn verdict(&self) -> Verdict {
        self.lower_verdict.and(self.upper_verdict)
    }
}

impl fmt::Display for EnnolaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:.6} < N = {} <= {:.6}: lower {}, upper {}",
            self.lower, self.count, self.upper, self.lower_verdict, self.upper_verdict
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Exact oracle: weights p_i/q and budget b/q share the denominator q,
    // so Σ ν_i p_i ≤ b is an integer comparison.
    fn brute(numerators: &[u64], budget_num: u64) -> u64 {
        fn go(nums: &[u64], left: u64) -> u64 {
            match nums.split_first() {
                None => 1,
                Some((&a, rest)) => (0..=left / a).map(|nu| go(rest, left - nu * a)).sum(),
            }
        }
        go(numerators, budget_num)
    }

    #[test]
    fn unit_weights() {
        let inst = LatticeInstance::new(vec![1.0, 1.0], 2.0).unwrap();
        assert_eq!(ennola_count(&inst).unwrap(), 6);
        let r = audit_ennola(&inst).unwrap();
        assert!((r.lower - 2.0).abs() < 1e-12 && (r.upper - 8.0).abs() < 1e-12);
        assert!(r.verdict().holds());
    }

    #[test]
    fn budget_below_every_weight() {
        let inst = LatticeInstance::new(vec![2.5, 3.0, 7.0], 1e-6).unwrap();
        assert_eq!(ennola_count(&inst).unwrap(), 1);
        assert!(audit_ennola(&inst).unwrap().verdict().holds());
        let one = LatticeInstance::new(vec![0.7], 1e-6).unwrap();
        assert!(audit_ennola(&one).unwrap().verdict().holds());
    }

    #[test]
    fn tie_on_upper_bound_counts_as_holding() {
        // k = 1 with z/a integral: N = z/a + 1 = upper bound exactly
        let inst = LatticeInstance::new(vec![0.5], 3.0).unwrap();
        let r = audit_ennola(&inst).unwrap();
        assert_eq!(r.count, 7);
        assert!(r.upper_verdict.holds());
    }

    #[test]
    fn invalid_instances() {
        assert!(LatticeInstance::new(vec![], 1.0).is_err());
        assert!(LatticeInstance::new(vec![1.0, 0.0], 1.0).is_err());
        assert!(LatticeInstance::new(vec![1.0], -1.0).is_err());
    }

    #[test]
    fn cap() {
        let inst = LatticeInstance::new(vec![1.0; 4], 40.0).unwrap();
        assert!(matches!(ennola_count_with_cap(&inst, 1000), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn matches_rational_brute_force_exhaustive() {
        for q in 1..=3u64 {
            for budget in 0..=20u64 {
                for nums in [vec![1u64], vec![2, 3], vec![1, 1, 4], vec![3, 5, 2, 7]] {
                    let inst = LatticeInstance::new(
                        nums.iter().map(|&n| n as f64 / q as f64).collect(),
                        budget as f64 / q as f64,
                    )
                    .unwrap();
                    assert_eq!(ennola_count(&inst).unwrap(), brute(&nums, budget));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn rational_instances(
            nums in proptest::collection::vec(1u64..12, 1..=4),
            q in 1u64..7,
            budget in 0u64..=60,
        ) {
            // budgets up to 20 in real units
            prop_assume!(budget <= 20 * q);
            let inst = LatticeInstance::new(
                nums.iter().map(|&n| n as f64 / q as f64).collect(),
                budget as f64 / q as f64,
            ).unwrap();
            prop_assert_eq!(ennola_count(&inst).unwrap(), brute(&nums, budget));
            prop_assert!(!audit_ennola(&inst).unwrap().verdict().failed());
        }
    }
}
