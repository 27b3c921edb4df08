//! The tractable fragments of sparse factorization: gap splitting, rational
//! roots over the integers, the exact `±1` screen, and perfect-power
//! detection with a deterministic certificate.
//!
//! Cyclotomic divisors other than `x ± 1` are not reported.

mod gap;
mod intfactor;
mod linear;
mod power;

pub use gap::{default_gap, gap_split, GapSplit};
pub use intfactor::{divisors, exact_root, factor_integer};
pub use linear::{
    eval_at_pm_one, linear_rational_factors, linear_rational_factors_with_budget, DEFAULT_CANDIDATE_BUDGET,
};
pub use power::{
    certify_power, certify_power_with_budget, detect_perfect_power, prime_exponent_bound, PowerReport,
    DEFAULT_CERTIFY_TERM_BUDGET,
};
