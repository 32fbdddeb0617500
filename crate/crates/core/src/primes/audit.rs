//! Finite-range audits of the factorial and prime inequalities.

use std::f64::consts::{E, PI};
use std::fmt;

use num_bigint::BigUint;

use super::counting::{binomial, count_bounded_tuples, mertens_sum, simplex_count};
use super::exponent::legendre_exponent;
use super::sieve::{first_primes, sieve, PrimeTable};
use crate::error::{Error, Result};
use crate::natural::ln_biguint;
use crate::report::AuditReport;
use crate::verdict::{at_most, strictly_less, Verdict};

#[derive(Debug, Clone, PartialEq)]
pub struct RatioViolation {
    pub p: u64,
    pub q: u64,
    pub alpha_p: u64,
    pub alpha_q: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExponentRatioReport {
    pub m: u64,
    pub pairs_checked: u64,
    pub violation: Option<RatioViolation>,
}

/// Checks α_p ≥ ⌊q/p⌋·α_q in `m!` for every pair of primes p < q ≤ m,
/// in exact integer arithmetic.
pub fn audit_exponent_ratio(m: u64) -> Result<ExponentRatioReport> {
    if m < 3 {
        return Err(Error::Domain(format!("exponent-ratio audit needs m >= 3, got {m}")));
    }
    let table = sieve(m)?;
    Ok(exponent_ratio_with(m, &table))
}

pub(crate) fn exponent_ratio_with(m: u64, table: &PrimeTable) -> ExponentRatioReport {
    let primes = table.up_to(m).expect("table covers m");
    let alpha: Vec<u64> = primes.iter().map(|&p| legendre_exponent(m, p)).collect();
    let mut pairs_checked = 0;
    for (i, &p) in primes.iter().enumerate() {
        for (j, &q) in primes.iter().enumerate().skip(i + 1) {
            pairs_checked += 1;
            if (alpha[i] as u128) < (q / p) as u128 * alpha[j] as u128 {
                return ExponentRatioReport {
                    m,
                    pairs_checked,
                    violation: Some(RatioViolation {
                        p,
                        q,
                        alpha_p: alpha[i],
                        alpha_q: alpha[j],
                    }),
                };
            }
        }
    }
    ExponentRatioReport {
        m,
        pairs_checked,
        violation: None,
    }
}

/// Runs the exponent-ratio audit for every `3 <= m <= m_max`, sharing one table.
pub fn audit_exponent_ratio_range(m_max: u64) -> Result<Vec<ExponentRatioReport>> {
    if m_max < 3 {
        return Err(Error::Domain(format!("exponent-ratio audit needs m >= 3, got {m_max}")));
    }
    let table = sieve(m_max)?;
    Ok((3..=m_max).map(|m| exponent_ratio_with(m, &table)).collect())
}

impl AuditReport for ExponentRatioReport {
    fn verdict(&self) -> Verdict {
        Verdict::from_bool(self.violation.is_none())
    }
}

impl fmt::Display for ExponentRatioReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exponent ratio in {}!: {} prime pairs checked", self.m, self.pairs_checked)?;
        match &self.violation {
            None => write!(f, ", no violations"),
            Some(v) => write!(
                f,
                ", VIOLATION at (p, q) = ({}, {}): alpha_p = {} < {} * {}",
                v.p,
                v.q,
                v.alpha_p,
                v.q / v.p,
                v.alpha_q
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RosserReport {
    pub k_max: usize,
    pub upper: Verdict,
    pub lower: Verdict,
    /// Smallest (bound - p_k) / p_k over the upper-bound range.
    pub min_upper_margin: f64,
    /// Smallest (p_k - k log k) / p_k.
    pub min_lower_margin: f64,
    pub first_failure: Option<(usize, &'static str)>,
}

/// p_k < k log k + k log log k for 6 ≤ k ≤ k_max and p_k > k log k for 1 ≤ k ≤ k_max.
pub fn audit_rosser(k_max: usize) -> Result<RosserReport> {
    if k_max < 6 {
        return Err(Error::Domain(format!("Rosser audit needs k_max >= 6, got {k_max}")));
    }
    let table = first_primes(k_max)?;
    let mut report = RosserReport {
        k_max,
        upper: Verdict::Holds,
        lower: Verdict::Holds,
        min_upper_margin: f64::INFINITY,
        min_lower_margin: f64::INFINITY,
        first_failure: None,
    };
    for (idx, &p) in table.primes()[..k_max].iter().enumerate() {
        let k = idx + 1;
        let kf = k as f64;
        let pf = p as f64;
        let lower_bound = kf * kf.ln();
        let v = strictly_less(lower_bound, pf);
        report.min_lower_margin = report.min_lower_margin.min((pf - lower_bound) / pf);
        if !v.holds() && report.first_failure.is_none() {
            report.first_failure = Some((k, "lower"));
        }
        report.lower = report.lower.and(v);
        if k >= 6 {
            let upper_bound = kf * kf.ln() + kf * kf.ln().ln();
            let v = strictly_less(pf, upper_bound);
            report.min_upper_margin = report.min_upper_margin.min((upper_bound - pf) / pf);
            if !v.holds() && report.first_failure.is_none() {
                report.first_failure = Some((k, "upper"));
            }
            report.upper = report.upper.and(v);
        }
    }
    Ok(report)
}

impl AuditReport for RosserReport {
    fn verdict(&self) -> Verdict {
        self.upper.and(self.lower)
    }
}

impl fmt::Display for RosserReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "p_k < k log k + k log log k (6 <= k <= {}): {} (min relative margin {:.3e})",
            self.k_max, self.upper, self.min_upper_margin
        )?;
        write!(
            f,
            "p_k > k log k (1 <= k <= {}): {} (min relative margin {:.3e})",
            self.k_max, self.lower, self.min_lower_margin
        )?;
        if let Some((k, which)) = self.first_failure {
            write!(f, "\nfirst non-passing k = {k} ({which} bound)")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StirlingReport {
    pub n_max: u64,
    /// n! > (n/e)^n for 1 ≤ n ≤ n_max.
    pub weak_bound: Verdict,
    /// Relative error of (n/e)^n √(2πn)(1 + 1/(12n)) against n!, for 2 ≤ n ≤ n_max.
    pub errors: Vec<(u64, f64)>,
    /// Errors strictly decrease wherever they are above [`STIRLING_RESOLUTION`].
    pub shrinking: bool,
}

/// Below this the f64 evaluation of the relative error is noise-dominated.
pub const STIRLING_RESOLUTION: f64 = 1e-10;

impl StirlingReport {
    pub fn error_at(&self, n: u64) -> Option<f64> {
        self.errors.iter().find(|(m, _)| *m == n).map(|(_, e)| *e)
    }
}

pub fn stirling_relative_error(n: u64, ln_factorial: f64) -> f64 {
    let nf = n as f64;
    let ln_approx = nf * (nf.ln() - 1.0) + 0.5 * (2.0 * PI * nf).ln() + (1.0 / (12.0 * nf)).ln_1p();
    (ln_approx - ln_factorial).exp_m1().abs()
}

pub fn audit_stirling(n_max: u64) -> Result<StirlingReport> {
    if n_max < 2 {
        return Err(Error::Domain(format!("Stirling audit needs n_max >= 2, got {n_max}")));
    }
    let mut fact = BigUint::from(1u32);
    let mut weak_bound = Verdict::Holds;
    let mut errors = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        fact *= n;
        let ln_fact = ln_biguint(&fact);
        let nf = n as f64;
        // (n/e)^n in logs; for n = 1 this is -1 < ln 1 = 0
        weak_bound = weak_bound.and(strictly_less(nf * (nf.ln() - 1.0), ln_fact));
        if n >= 2 {
            errors.push((n, stirling_relative_error(n, ln_fact)));
        }
    }
    let shrinking = errors
        .windows(2)
        .filter(|w| w[1].1 > STIRLING_RESOLUTION)
        .all(|w| w[1].1 < w[0].1);
    Ok(StirlingReport {
        n_max,
        weak_bound,
        errors,
        shrinking,
    })
}

impl AuditReport for StirlingReport {
    fn verdict(&self) -> Verdict {
        let at_100 = self.error_at(100).is_none_or(|e| e < 1e-3);
        self.weak_bound.and(Verdict::from_bool(self.shrinking && at_100))
    }
}

impl fmt::Display for StirlingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n! > (n/e)^n for 1 <= n <= {}: {}", self.n_max, self.weak_bound)?;
        writeln!(f, "relative error of (n/e)^n sqrt(2 pi n)(1 + 1/(12n)):")?;
        let mut n = 2;
        while n <= self.n_max {
            if let Some(e) = self.error_at(n) {
                writeln!(f, "  n = {n:>8}: {e:.3e}")?;
            }
            n *= 10;
        }
        write!(f, "errors shrinking: {}", self.shrinking)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CountingReport {
    pub max: u64,
    /// simplex_count equals direct tuple enumeration for all 1 ≤ k, R ≤ max.
    pub simplex_matches: bool,
    pub simplex_mismatch: Option<(u64, u64)>,
    /// C(a+b, a) ≤ (e(a+b)/a)^a for all 1 ≤ a, b ≤ binomial_max.
    pub binomial_bound: Verdict,
    pub binomial_max: u64,
}

/// Simplex-count identity and the binomial upper bound.
pub fn audit_counting(max: u64, binomial_max: u64) -> CountingReport {
    let mut simplex_mismatch = None;
    'outer: for k in 1..=max {
        for r in 0..=max {
            if simplex_count(k, r) != BigUint::from(count_bounded_tuples(k as u32, r)) {
                simplex_mismatch = Some((k, r));
                break 'outer;
            }
        }
    }
    let mut binomial_bound = Verdict::Holds;
    for a in 1..=binomial_max {
        for b in 1..=binomial_max {
            let lhs = ln_biguint(&binomial(a + b, a));
            let af = a as f64;
            let rhs = af * (E * (a + b) as f64 / af).ln();
            binomial_bound = binomial_bound.and(at_most(lhs, rhs));
        }
    }
    CountingReport {
        max,
        simplex_matches: simplex_mismatch.is_none(),
        simplex_mismatch,
        binomial_bound,
        binomial_max,
    }
}

impl AuditReport for CountingReport {
    fn verdict(&self) -> Verdict {
        Verdict::from_bool(self.simplex_matches).and(self.binomial_bound)
    }
}

impl fmt::Display for CountingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "S_k(R) = C(R+k, R) vs enumeration (k, R <= {}): {}",
            self.max,
            if self.simplex_matches { "match" } else { "MISMATCH" }
        )?;
        if let Some((k, r)) = self.simplex_mismatch {
            write!(f, " at (k, R) = ({k}, {r})")?;
        }
        write!(
            f,
            "\nC(a+b, a) <= (e(a+b)/a)^a (a, b <= {}): {}",
            self.binomial_max, self.binomial_bound
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThetaReport {
    /// (x, θ(x)/x)
    pub ratios: Vec<(u64, f64)>,
}

/// θ(x)/x at x = 10, 100, …, x_max. Trend only; no error envelope asserted.
pub fn theta_trend(x_max: u64) -> Result<ThetaReport> {
    let table = sieve(x_max)?;
    let mut ratios = Vec::new();
    let mut x = 10u64;
    while x <= x_max {
        ratios.push((x, table.theta(x)? / x as f64));
        x = match x.checked_mul(10) {
            Some(v) => v,
            None => break,
        };
    }
    Ok(ThetaReport { ratios })
}

impl fmt::Display for ThetaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "theta(x)/x:")?;
        for (x, r) in &self.ratios {
            writeln!(f, "  x = {x:>14}: {r:.6}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MertensReport {
    pub y: u64,
    pub epsilon: f64,
    pub sum: f64,
    pub threshold: f64,
    pub verdict: Verdict,
}

/// Σ_{p ≤ y} log p / p > (1 - ε) log y.
pub fn audit_mertens(y: u64, epsilon: f64) -> Result<MertensReport> {
    if y < 2 {
        return Err(Error::Domain(format!("Mertens audit needs y >= 2, got {y}")));
    }
    let table = sieve(y)?;
    let sum = mertens_sum(y, &table)?;
    let threshold = (1.0 - epsilon) * (y as f64).ln();
    Ok(MertensReport {
        y,
        epsilon,
        sum,
        threshold,
        verdict: strictly_less(threshold, sum),
    })
}

impl AuditReport for MertensReport {
    fn verdict(&self) -> Verdict {
        self.verdict
    }
}

impl fmt::Display for MertensReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sum_(p <= {}) log p / p = {:.6} vs (1 - {}) log y = {:.6}: {}",
            self.y, self.sum, self.epsilon, self.threshold, self.verdict
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_ratio_small_cases() {
        // 10! = 2^8 3^4 5^2 7: alpha_2 = 8 >= 2 * alpha_5 = 4
        let r = audit_exponent_ratio(10).unwrap();
        assert!(r.violation.is_none());
        assert_eq!(r.pairs_checked, 6);
        let r = audit_exponent_ratio(3).unwrap();
        assert_eq!(r.pairs_checked, 1);
        assert!(r.verdict().holds());
        assert!(audit_exponent_ratio(2).is_err());
    }

    #[test]
    fn exponent_ratio_all_m_to_500() {
        for r in audit_exponent_ratio_range(500).unwrap() {
            assert!(r.violation.is_none(), "m = {}", r.m);
        }
    }

    #[test]
    fn rosser_at_six() {
        let r = audit_rosser(6).unwrap();
        assert!(r.verdict().holds());
        let k = 6f64;
        let upper = k * k.ln() + k * k.ln().ln();
        assert!((upper - 14.24).abs() < 0.01);
        assert!((k * k.ln() - 10.75).abs() < 0.01);
        assert!(audit_rosser(5).is_err());
    }

    #[test]
    fn stirling_small() {
        let r = audit_stirling(100).unwrap();
        assert!(r.weak_bound.holds());
        assert!(r.error_at(10).unwrap() < 1e-3);
        assert!(r.error_at(100).unwrap() < 1e-3);
        assert!(r.shrinking);
        assert!(r.verdict().holds());
    }

    #[test]
    fn stirling_error_matches_exact_10_factorial() {
        let exact = 3_628_800f64;
        let approx = (10f64 / E).powi(10) * (20.0 * PI).sqrt() * (1.0 + 1.0 / 120.0);
        let oracle = (approx / exact - 1.0).abs();
        let got = stirling_relative_error(10, exact.ln());
        assert!((got - oracle).abs() < 1e-12, "{got} vs {oracle}");
    }

    #[test]
    fn counting_audit() {
        let r = audit_counting(8, 30);
        assert!(r.simplex_matches);
        assert!(r.binomial_bound.holds());
    }

    #[test]
    fn theta_trend_near_one() {
        let r = theta_trend(1_000_000).unwrap();
        let (x, ratio) = *r.ratios.last().unwrap();
        assert_eq!(x, 1_000_000);
        assert!((0.99..=1.01).contains(&ratio), "{ratio}");
    }

    #[test]
    fn mertens_at_million() {
        let r = audit_mertens(1_000_000, 0.1).unwrap();
        assert!(r.verdict.holds(), "{r}");
    }
}
