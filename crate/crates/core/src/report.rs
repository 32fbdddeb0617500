use std::fmt::Display;

use crate::verdict::Verdict;

/// A printable audit outcome.
pub trait AuditReport: Display {
    fn verdict(&self) -> Verdict;
}
