//! Naive sequential social learning on directed observation networks.
//!
//! Agents act one at a time. Each observes a weighted subset of earlier
//! actions, treats every observed action as if it revealed an independent
//! private signal, and posts the resulting posterior. The library computes
//! the path-weight representation of those actions, closed-form mislearning
//! probabilities for parametric network families, seeded Monte Carlo
//! estimates for random networks, and exact per-agent accuracy tables for
//! the binary-action environment.

pub mod analytic;
pub mod error;
pub mod experiment;
pub mod network;
pub mod signals;
pub mod simulate;

pub use error::{Error, Result};
