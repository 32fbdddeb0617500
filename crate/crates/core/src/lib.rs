//! Exact computations with Jordan-Pólya numbers (products of factorials):
//! enumeration and counting, representations as factorial products, the
//! prime-factorial subfamily, the equation n! = a₁!⋯a_r!, and finite-range
//! audits of the analytic estimates behind their counting function.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod hickerson;
pub mod jp;
pub mod natural;
pub mod primes;
pub mod reps;
pub mod report;
pub mod verdict;

pub use error::{Error, Result};
pub use report::AuditReport;
pub use verdict::Verdict;
