//! Prime tables, Legendre exponents and the counting primitives shared by
//! every other module.

mod audit;
mod counting;
mod exponent;
mod sieve;

pub use audit::{
    audit_counting, audit_exponent_ratio, audit_exponent_ratio_range, audit_mertens,
    audit_rosser, audit_stirling, stirling_relative_error, theta_trend, CountingReport,
    ExponentRatioReport, MertensReport, RatioViolation, RosserReport, StirlingReport,
    ThetaReport, STIRLING_RESOLUTION,
};
pub use counting::{binomial, count_bounded_tuples, mertens_sum, simplex_count};
pub use exponent::{factorial_vector, legendre_exponent, ExponentVector};
pub use sieve::{
    first_primes, nth_prime_upper_bound, prime_pi, sieve, sieve_with_cap, PrimeTable,
    DEFAULT_SIEVE_CAP,
};
