use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::jp::{count_jp, count_jp_prime};
use crate::natural::factorial;
use crate::primes::first_primes;
use crate::report::AuditReport;
use crate::verdict::{strictly_less, Verdict};

/// Default ε for envelope audits.
pub const DEFAULT_EPSILON: f64 = 0.1;

/// Relative tolerance of the root solve for s log s = √L.
pub const ROOT_TOLERANCE: f64 = 1e-12;

/// Both envelopes of log 𝒥(x) at L = log x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundEval {
    pub log_x: f64,
    pub epsilon: f64,
    /// (4+ε)·√L·log log L / log L
    pub log_upper: f64,
    /// (2−ε)·√L / log L
    pub log_lower: f64,
}

pub fn bound_eval(log_x: f64, epsilon: f64) -> Result<BoundEval> {
    if !(log_x.is_finite() && log_x > std::f64::consts::E) {
        return Err(Error::Domain(format!("need L > e, got {log_x}")));
    }
    if !(0.0..2.0).contains(&epsilon) {
        return Err(Error::Domain(format!("need 0 <= epsilon < 2, got {epsilon}")));
    }
    let s = log_x.sqrt();
    let ll = log_x.ln();
    Ok(BoundEval {
        log_x,
        epsilon,
        log_upper: (4.0 + epsilon) * s * ll.ln() / ll,
        log_lower: (2.0 - epsilon) * s / ll,
    })
}

/// g(s) = s(1 + 1/log s + log L − 2 log s − 2 log log s).
pub fn lower_objective(s: f64, log_x: f64) -> f64 {
    let ls = s.ln();
    s * (1.0 + 1.0 / ls + log_x.ln() - 2.0 * ls - 2.0 * ls.ln())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerBoundOptimum {
    pub log_x: f64,
    /// Root of s log s = √L.
    pub s: f64,
    /// g at the root.
    pub log_f: f64,
    /// |s log s − √L| / √L
    pub residual: f64,
    /// g(s) ≥ g(0.99 s) and g(s) ≥ g(1.01 s).
    pub local_max: bool,
    /// Maximiser of g on [e, s] by golden-section search.
    pub argmax: f64,
    pub max_value: f64,
}

impl LowerBoundOptimum {
    /// s / (2√L / log L)
    pub fn asymptotic_ratio(&self) -> f64 {
        self.s / (2.0 * self.log_x.sqrt() / self.log_x.ln())
    }
}

fn solve_s_log_s(target: f64) -> Result<f64> {
    let f = |s: f64| s * s.ln() - target;
    let (mut lo, mut hi) = (1.0_f64, target.max(std::f64::consts::E));
    if f(hi) < 0.0 {
        return Err(Error::Convergence(format!("no bracket for s log s = {target}")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= ROOT_TOLERANCE * hi {
            return Ok(0.5 * (lo + hi));
        }
    }
    Err(Error::Convergence(format!("bisection for s log s = {target} did not settle")))
}

fn golden_max(g: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    while (b - a).abs() > 1e-10 * b.abs().max(1.0) {
        if g(c) > g(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - r * (b - a);
        d = a + r * (b - a);
    }
    0.5 * (a + b)
}

pub fn optimize_lower_bound(log_x: f64) -> Result<LowerBoundOptimum> {
    let e_e = std::f64::consts::E.exp();
    if !(log_x.is_finite() && log_x > e_e) {
        return Err(Error::Domain(format!("need L > e^e ≈ {e_e:.4}, got {log_x}")));
    }
    let target = log_x.sqrt();
    let s = solve_s_log_s(target)?;
    let g = |t: f64| lower_objective(t, log_x);
    let log_f = g(s);
    let lo = std::f64::consts::E;
    let argmax = if s > lo { golden_max(g, lo, s) } else { s };
    Ok(LowerBoundOptimum {
        log_x,
        s,
        log_f,
        residual: (s * s.ln() - target).abs() / target,
        local_max: log_f >= g(0.99 * s) && log_f >= g(1.01 * s),
        argmax,
        max_value: g(argmax),
    })
}

impl fmt::Display for LowerBoundOptimum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "L = {:e}", self.log_x)?;
        writeln!(f, "  s = {:.12}  (residual {:.2e})", self.s, self.residual)?;
        writeln!(f, "  g(s) = {:.6}", self.log_f)?;
        writeln!(f, "  s / (2 sqrt L / log L) = {:.4}", self.asymptotic_ratio())?;
        writeln!(f, "  local maximum at s: {}", self.local_max)?;
        write!(f, "  argmax of g on [e, s]: {:.6} (g = {:.6})", self.argmax, self.max_value)
    }
}

/// 𝒥℘(x) against log^k x / (k!·∏_{i≤k} log(p_i!)).
#[derive(Debug, Clone, PartialEq)]
pub struct JpPrimeLowerReport {
    pub x: BigUint,
    pub k: usize,
    pub count: usize,
    pub log_rhs: f64,
    pub verdict: Verdict,
}

impl JpPrimeLowerReport {
    pub fn rhs(&self) -> f64 {
        self.log_rhs.exp()
    }
}

pub fn audit_jp_prime_lower(x: &BigUint, k: usize) -> Result<JpPrimeLowerReport> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    if *x < BigUint::from(3u32) {
        return Err(Error::Domain("x must be at least 3".into()));
    }
    let count = count_jp_prime(x)?;
    let table = first_primes(k)?;
    let log_x = crate::natural::ln_biguint(x);
    let ln_k_fact: f64 = (2..=k).map(|i| (i as f64).ln()).sum();
    let weights: f64 = table.primes()[..k]
        .iter()
        .map(|&p| crate::natural::ln_biguint(&factorial(p)).ln())
        .sum();
    let log_rhs = k as f64 * log_x.ln() - ln_k_fact - weights;
    Ok(JpPrimeLowerReport {
        x: x.clone(),
        k,
        count,
        log_rhs,
        verdict: strictly_less(log_rhs, (count as f64).ln()),
    })
}

impl AuditReport for JpPrimeLowerReport {
    fn verdict(&self) -> Verdict {
        self.verdict
    }
}

impl fmt::Display for JpPrimeLowerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x = {}, k = {}: rhs {:.4} < count {}: {}",
            self.x,
            self.k,
            self.rhs(),
            self.count,
            self.verdict
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeRow {
    pub exponent: u32,
    pub count: usize,
    pub log_count: f64,
    pub bounds: BoundEval,
    pub upper: Verdict,
    /// Reported only.
    pub above_lower: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeReport {
    pub rows: Vec<EnvelopeRow>,
}

/// log 𝒥(10^e) against both envelopes for each listed exponent.
pub fn audit_envelope(exponents: &[u32], epsilon: f64) -> Result<EnvelopeReport> {
    let rows = exponents
        .iter()
        .map(|&e| {
            let x = BigUint::from(10u32).pow(e);
            let count = count_jp(&x)?;
            let log_count = (count as f64).ln();
            let bounds = bound_eval(e as f64 * std::f64::consts::LN_10, epsilon)?;
            Ok(EnvelopeRow {
                exponent: e,
                count,
                log_count,
                bounds,
                upper: strictly_less(log_count, bounds.log_upper),
                above_lower: log_count > bounds.log_lower,
            })
        })
        .collect::<Result<_>>()?;
    Ok(EnvelopeReport { rows })
}

impl AuditReport for EnvelopeReport {
    fn verdict(&self) -> Verdict {
        self.rows.iter().fold(Verdict::Holds, |acc, r| acc.and(r.upper))
    }
}

impl fmt::Display for EnvelopeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>6} {:>10} {:>10} {:>10} {:>10}  upper         lower (reported)", "x", "J(x)", "log J", "log_upper", "log_lower")?;
        for r in &self.rows {
            writeln!(
                f,
                "{:>6} {:>10} {:>10.4} {:>10.4} {:>10.4}  {:<12}  {}",
                format!("1e{}", r.exponent),
                r.count,
                r.log_count,
                r.bounds.log_upper,
                r.bounds.log_lower,
                r.upper,
                if r.above_lower { "above" } else { "below" }
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelopes_at_1e4() {
        let b = bound_eval(1e4, 0.0).unwrap();
        assert!((b.log_lower - 21.715).abs() < 1e-2);
        assert!((b.log_upper - 96.4).abs() < 0.05);
        assert!(bound_eval(std::f64::consts::E, 0.1).is_err());
        assert!(bound_eval(100.0, 2.0).is_err());
        assert!(bound_eval(100.0, -0.1).is_err());
    }

    #[test]
    fn envelopes_increase() {
        let mut prev: Option<BoundEval> = None;
        let mut l = std::f64::consts::E.powi(2) * 1.001;
        while l < 1e12 {
            let b = bound_eval(l, DEFAULT_EPSILON).unwrap();
            assert!(b.log_lower < b.log_upper, "L = {l}");
            if let Some(p) = prev {
                assert!(b.log_lower > p.log_lower, "lower at L = {l}");
                assert!(b.log_upper > p.log_upper, "upper at L = {l}");
            }
            prev = Some(b);
            l *= 1.25;
        }
    }

    #[test]
    fn root_at_1e4() {
        let o = optimize_lower_bound(1e4).unwrap();
        assert!((o.s - 29.5366).abs() < 1e-4);
        let v = o.s * o.s.ln();
        assert!((99.99..=100.01).contains(&v));
        assert!(o.residual < 1e-9);
        assert!((o.log_f - 38.2607).abs() < 1e-3);
        assert!(o.argmax < o.s);
        assert!(o.max_value >= o.log_f);
    }

    #[test]
    fn root_asymptote() {
        let o = optimize_lower_bound(1e12).unwrap();
        assert!(o.residual < 1e-9);
        let r = o.asymptotic_ratio();
        assert!(r > 1.0 && r < 1.25, "{r}");
    }

    #[test]
    fn optimizer_domain() {
        assert!(optimize_lower_bound(15.0).is_err());
        assert!(optimize_lower_bound(f64::NAN).is_err());
        assert!(optimize_lower_bound(16.0).is_ok());
    }

    #[test]
    fn jp_prime_lower() {
        let r = audit_jp_prime_lower(&BigUint::from(10_000u32), 2).unwrap();
        assert_eq!(r.count, 58);
        assert!((r.rhs() - 34.15).abs() < 0.01);
        assert!(r.verdict.holds());
        let r = audit_jp_prime_lower(&BigUint::from(10_000u32), 1).unwrap();
        assert!((r.rhs() - 1e4f64.ln() / 2f64.ln()).abs() < 1e-9);
        assert!(r.verdict.holds());
        assert!(audit_jp_prime_lower(&BigUint::from(10_000u32), 0).is_err());
    }

    #[test]
    fn envelope_small() {
        let r = audit_envelope(&[4, 6], DEFAULT_EPSILON).unwrap();
        assert_eq!(r.rows[0].count, 58);
        assert!(r.verdict().holds());
    }
}
