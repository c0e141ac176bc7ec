//! Bayesian model of two-outcome adjudication.
//!
//! A trial is treated as a binary diagnostic test with a sensitivity and a
//! specificity, applied to a defendant whose guilt has some prior
//! probability. From those three numbers the crate computes exact posterior
//! reliabilities of verdicts ([`inference`]), evaluates the four reference
//! scenarios ([`scenario`]), checks them by seeded simulation
//! ([`monte_carlo`]) and explores the parameter cube ([`sweep`]).

pub mod cli;
pub mod error;
pub mod inference;
pub mod monte_carlo;
pub mod scenario;
pub mod sweep;

pub use error::{Error, Result};
pub use inference::{
    full_report, likelihood_ratios, p_positive, posterior_guilty_given_positive, posterior_innocent_given_negative,
    posterior_via_odds, required_prior, LikelihoodRatio, PosteriorReport, PriorBelief, Probability,
    TestCharacteristics,
};
pub use monte_carlo::{agreement_check, empirical_interval, simulate, ConfusionCounts, SimConfig, SimResult};
pub use scenario::{catalog, evaluate, parse_scenario, serialize_scenario, Scenario};
pub use sweep::{break_even_curve, run_sweep, Axis, GridSpec, SweepRow};
