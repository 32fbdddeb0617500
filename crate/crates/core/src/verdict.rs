//! Three-valued outcome for inequality audits evaluated in floating point.
//!
//! Exact integer comparisons produce only `Holds` or `Fails`. Floating
//! comparisons have a relative dead band of [`REL_SLACK`]: a strict
//! inequality inside the band is `Inconclusive`, a non-strict one inside the
//! band is accepted, so rounding can never turn a true inequality into a
//! reported failure.

use std::fmt;

/// Relative margin below which a floating comparison is not decisive.
pub const REL_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }

    pub fn failed(self) -> bool {
        self == Verdict::Fails
    }

    /// Combines verdicts: any failure wins, then any inconclusive.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fails, _) | (_, Verdict::Fails) => Verdict::Fails,
            (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
            _ => Verdict::Holds,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "FAILS",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

fn band(lhs: f64, rhs: f64) -> f64 {
    REL_SLACK * lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE)
}

/// `lhs < rhs`.
pub fn strictly_less(lhs: f64, rhs: f64) -> Verdict {
    if !(lhs.is_finite() && rhs.is_finite()) {
        return match (lhs, rhs) {
            (l, r) if l == f64::NEG_INFINITY && r > l => Verdict::Holds,
            (l, r) if r == f64::INFINITY && l < r => Verdict::Holds,
            _ => Verdict::Inconclusive,
        };
    }
    let d = rhs - lhs;
    let b = band(lhs, rhs);
    if d > b {
        Verdict::Holds
    } else if d < -b {
        Verdict::Fails
    } else {
        Verdict::Inconclusive
    }
}

/// `lhs <= rhs`.
pub fn at_most(lhs: f64, rhs: f64) -> Verdict {
    if !(lhs.is_finite() && rhs.is_finite()) {
        return Verdict::from_bool(lhs <= rhs);
    }
    Verdict::from_bool(lhs - rhs <= band(lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_band() {
        assert_eq!(strictly_less(1.0, 2.0), Verdict::Holds);
        assert_eq!(strictly_less(2.0, 1.0), Verdict::Fails);
        assert_eq!(strictly_less(1.0, 1.0 + 1e-12), Verdict::Inconclusive);
        assert_eq!(strictly_less(0.0, 1.0), Verdict::Holds);
    }

    #[test]
    fn non_strict_accepts_ties() {
        assert_eq!(at_most(3.0, 3.0), Verdict::Holds);
        assert_eq!(at_most(3.0 + 1e-12, 3.0), Verdict::Holds);
        assert_eq!(at_most(3.1, 3.0), Verdict::Fails);
    }

    #[test]
    fn combine() {
        assert_eq!(Verdict::Holds.and(Verdict::Inconclusive), Verdict::Inconclusive);
        assert_eq!(Verdict::Inconclusive.and(Verdict::Fails), Verdict::Fails);
        assert_eq!(Verdict::Holds.and(Verdict::Holds), Verdict::Holds);
    }
}
