//! Bound formulas for 𝒥(x) and finite audits of their ingredients.

mod ennola;
mod envelope;
mod psi;
mod thresholds;

pub use ennola::*;
pub use envelope::*;
pub use psi::*;
pub use thresholds::*;
