use std::fmt;

use crate::error::{Error, Result};
use crate::primes::{prime_pi, sieve, PrimeTable};
use crate::report::AuditReport;
use crate::verdict::{at_most, Verdict};

/// Largest argument handed to the floor-quotient prime counter.
pub const PRIME_PI_CAP: u64 = 1_000_000_000_000;

fn require_large(log_x: f64) -> Result<()> {
    let e_e = std::f64::consts::E.exp();
    if !(log_x.is_finite() && log_x > e_e) {
        return Err(Error::Domain(format!("need log x > e^e ≈ {e_e:.4}, got {log_x}")));
    }
    Ok(())
}

fn pi_of(arg: f64) -> Result<u64> {
    if arg > PRIME_PI_CAP as f64 {
        return Err(Error::ResourceLimit {
            what: "prime counting argument",
            limit: PRIME_PI_CAP as u128,
        });
    }
    Ok(prime_pi(arg.floor() as u64))
}

/// The four prime-count thresholds for a given L = log x.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdSet {
    pub log_x: f64,
    /// π(2L / log L)
    pub r: u64,
    /// π(√L / log L)
    pub r1: u64,
    /// π(√L)
    pub r2: u64,
    /// π(√L · log L)
    pub r3: u64,
}

impl ThresholdSet {
    /// (√L/log L, √L, √L log L, 2L/log L), the arguments of π.
    pub fn arguments(&self) -> [f64; 4] {
        let l = self.log_x;
        let s = l.sqrt();
        let ll = l.ln();
        [s / ll, s, s * ll, 2.0 * l / ll]
    }

    pub fn arguments_ordered(&self) -> bool {
        self.arguments().windows(2).all(|w| w[0] <= w[1])
    }

    /// Comparison values: 3L/(log L)², 2√L/(log L)², 2√L/log L, 2√L.
    pub fn comparisons(&self) -> [f64; 4] {
        let l = self.log_x;
        let s = l.sqrt();
        let ll = l.ln();
        [3.0 * l / (ll * ll), 2.0 * s / (ll * ll), 2.0 * s / ll, 2.0 * s]
    }
}

impl fmt::Display for ThresholdSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [r_cmp, r1_cmp, r2_cmp, r3_cmp] = self.comparisons();
        writeln!(f, "L = {}", self.log_x)?;
        writeln!(f, "  r  = {:>12}  (<= 3L/(log L)^2 = {:.2}: {})", self.r, r_cmp, (self.r as f64) <= r_cmp)?;
        writeln!(f, "  r1 = {:>12}  (~ 2 sqrt L/(log L)^2 = {:.2})", self.r1, r1_cmp)?;
        writeln!(f, "  r2 = {:>12}  (~ 2 sqrt L/log L = {:.2})", self.r2, r2_cmp)?;
        write!(f, "  r3 = {:>12}  (~ 2 sqrt L = {:.2})", self.r3, r3_cmp)
    }
}

pub fn thresholds(log_x: f64) -> Result<ThresholdSet> {
    require_large(log_x)?;
    let l = log_x;
    let s = l.sqrt();
    let ll = l.ln();
    let set = ThresholdSet {
        log_x,
        r: pi_of(2.0 * l / ll)?,
        r1: pi_of(s / ll)?,
        r2: pi_of(s)?,
        r3: pi_of(s * ll)?,
    };
    debug_assert!(!set.arguments_ordered() || (set.r1 <= set.r2 && set.r2 <= set.r3 && set.r3 <= set.r));
    Ok(set)
}

/// Σ_{j ≤ k} ⌊p_k/p_j⌋ · log p_j; zero for k = 0.
pub fn floor_ratio_sum(k: usize, table: &PrimeTable) -> Result<f64> {
    if k == 0 {
        return Ok(0.0);
    }
    let primes = table
        .primes()
        .get(..k)
        .ok_or_else(|| Error::OutOfRange(format!("table holds {} primes, need {k}", table.len())))?;
    let top = primes[k - 1];
    Ok(primes.iter().map(|&p| (top / p) as f64 * (p as f64).ln()).sum())
}

/// p_k · Σ_{j ≤ k} log p_j / p_j − θ(p_k), the floor-free lower estimate.
pub fn floor_ratio_estimate(k: usize, table: &PrimeTable) -> Result<f64> {
    if k == 0 {
        return Ok(0.0);
    }
    let primes = table
        .primes()
        .get(..k)
        .ok_or_else(|| Error::OutOfRange(format!("table holds {} primes, need {k}", table.len())))?;
    let top = primes[k - 1] as f64;
    let weighted: f64 = primes.iter().map(|&p| (p as f64).ln() / p as f64).sum();
    let theta: f64 = primes.iter().map(|&p| (p as f64).ln()).sum();
    Ok(top * weighted - theta)
}

/// The three weighted-sum steps of the upper-bound argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProofStep {
    /// Σ at r₁ ≥ ⅓√L
    B2,
    /// Σ at r₂ ≥ ⅓√L·log L
    B3,
    /// Σ at r₃ ≥ ⅓√L·(log L)²
    B4,
}

impl ProofStep {
    pub const ALL: [ProofStep; 3] = [ProofStep::B2, ProofStep::B3, ProofStep::B4];

    /// Argument of π defining the index.
    pub fn pi_argument(self, log_x: f64) -> f64 {
        let s = log_x.sqrt();
        match self {
            ProofStep::B2 => s / log_x.ln(),
            ProofStep::B3 => s,
            ProofStep::B4 => s * log_x.ln(),
        }
    }

    pub fn threshold(self, log_x: f64) -> f64 {
        let s = log_x.sqrt() / 3.0;
        let ll = log_x.ln();
        match self {
            ProofStep::B2 => s,
            ProofStep::B3 => s * ll,
            ProofStep::B4 => s * ll * ll,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ProofStep::B2 => "B2 (r1, 1/3 sqrt L)",
            ProofStep::B3 => "B3 (r2, 1/3 sqrt L log L)",
            ProofStep::B4 => "B4 (r3, 1/3 sqrt L (log L)^2)",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProofSumPoint {
    pub log_x: f64,
    pub index: usize,
    pub sum: f64,
    pub threshold: f64,
    pub verdict: Verdict,
}

fn evaluate(step: ProofStep, log_x: f64, table: &PrimeTable) -> Result<ProofSumPoint> {
    let arg = step.pi_argument(log_x).floor() as u64;
    let index = table.pi(arg)?;
    let sum = floor_ratio_sum(index, table)?;
    let threshold = step.threshold(log_x);
    Ok(ProofSumPoint {
        log_x,
        index,
        sum,
        threshold,
        verdict: at_most(threshold, sum),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanConfig {
    pub l_min: f64,
    pub l_max: f64,
    pub steps_per_decade: u32,
    /// A grid point is skipped for a step whose prime table would exceed this.
    pub prime_budget: u64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            l_min: 1e4,
            l_max: 1e16,
            steps_per_decade: 2,
            prime_budget: 50_000_000,
        }
    }
}

impl ScanConfig {
    pub fn grid(&self) -> Vec<f64> {
        let decades = (self.l_max / self.l_min).log10();
        let n = (decades * self.steps_per_decade as f64).round() as i32;
        (0..=n)
            .map(|i| self.l_min * 10f64.powf(i as f64 / self.steps_per_decade as f64))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Crossover {
    pub step: ProofStep,
    pub points: Vec<ProofSumPoint>,
    /// Smallest grid L at which the inequality holds.
    pub first_holding: Option<f64>,
    /// It also holds at every evaluated grid point above the crossover.
    pub holds_after: bool,
}

impl Crossover {
    pub fn largest_evaluated(&self) -> Option<f64> {
        self.points.last().map(|p| p.log_x)
    }
}

pub fn crossover_scan(config: &ScanConfig) -> Result<Vec<Crossover>> {
    let grid = config.grid();
    let need = |step: ProofStep, l: f64| step.pi_argument(l).floor() as u64;
    let limit = grid
        .iter()
        .flat_map(|&l| ProofStep::ALL.map(|s| need(s, l)))
        .filter(|&n| n <= config.prime_budget)
        .max()
        .unwrap_or(2);
    let table = sieve(limit.max(2))?;
    let mut out = Vec::new();
    for step in ProofStep::ALL {
        let points = grid
            .iter()
            .filter(|&&l| need(step, l) <= config.prime_budget)
            .map(|&l| evaluate(step, l, &table))
            .collect::<Result<Vec<_>>>()?;
        let first = points.iter().position(|p| p.verdict.holds());
        out.push(Crossover {
            step,
            first_holding: first.map(|i| points[i].log_x),
            holds_after: first.is_some_and(|i| points[i..].iter().all(|p| p.verdict.holds())),
            points,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProofSumReport {
    pub thresholds: ThresholdSet,
    pub at_l: Vec<(ProofStep, ProofSumPoint)>,
    pub scan: Vec<Crossover>,
}

/// Evaluates each weighted sum at the thresholds of `log_x`, plus a
/// crossover scan. Points below a crossover are reported, never failed.
pub fn audit_proof_sums(log_x: f64, config: &ScanConfig) -> Result<ProofSumReport> {
    let thresholds = thresholds(log_x)?;
    let limit = ProofStep::B4.pi_argument(log_x).floor() as u64;
    let table = sieve(limit.max(2))?;
    let at_l = ProofStep::ALL
        .iter()
        .map(|&s| evaluate(s, log_x, &table).map(|p| (s, p)))
        .collect::<Result<_>>()?;
    Ok(ProofSumReport {
        thresholds,
        at_l,
        scan: crossover_scan(config)?,
    })
}

impl AuditReport for ProofSumReport {
    /// Each step must cross on the grid and stay crossed.
    fn verdict(&self) -> Verdict {
        self.scan.iter().fold(Verdict::Holds, |acc, c| {
            acc.and(match (c.first_holding, c.holds_after) {
                (Some(_), true) => Verdict::Holds,
                (Some(_), false) => Verdict::Fails,
                (None, _) => Verdict::Inconclusive,
            })
        })
    }
}

impl fmt::Display for ProofSumReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.thresholds)?;
        for (step, p) in &self.at_l {
            let state = if p.verdict.holds() { "holds" } else { "below crossover" };
            writeln!(
                f,
                "{:<32} index {:>9}: sum {:>14.4} vs {:>14.4}  {}",
                step.name(),
                p.index,
                p.sum,
                p.threshold,
                state
            )?;
        }
        writeln!(f, "crossover scan:")?;
        for c in &self.scan {
            match c.first_holding {
                Some(l) => writeln!(
                    f,
                    "  {:<32} first holds at L = {:.3e}; holds at all larger grid points: {} (scanned to {:.1e})",
                    c.step.name(),
                    l,
                    c.holds_after,
                    c.largest_evaluated().unwrap_or(f64::NAN)
                )?,
                None => writeln!(
                    f,
                    "  {:<32} no crossover up to L = {:.1e}",
                    c.step.name(),
                    c.largest_evaluated().unwrap_or(f64::NAN)
                )?,
            }
        }
        Ok(())
    }
}
