//! Simulation and semi-analytic verification toolkit for random sums
//! S_T = X_1 + ... + X_T where the index T is an adversarial *last-exit*
//! time rather than a stopping time.
//!
//! The library builds the exceedance-schedule constructions that separate
//! Wald-style behavior from last-exit behavior, samples (T, X_T, S_T)
//! exactly, certifies moments of T by series with explicit remainders, and
//! diagnoses infinite expectations through truncated-mean curves and
//! analytic lower bounds. The `waldlab` binary drives one experiment per
//! claim and writes machine-readable reports.

pub mod dists;
pub mod numeric;
pub mod rng;

pub use dists::{DistError, DistributionSpec, FloorRestriction, Moment, MomentMethod};
pub use rng::RandomStream;

/// Placeholder CLI entry point; the real one lands with the `cli` module.
pub fn cli_main() -> i32 {
    eprintln!("waldlab: CLI not wired up yet");
    2
}
