//! Error type shared across the library.

use thiserror::Error;

/// Library-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when building networks, evaluating closed
/// forms, or configuring a simulation.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter lies outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Uniform weights with q = 0: agents ignore each other, the single-agent
    /// value does not continue the q > 0 closed form, so no value is returned.
    #[error("discontinuity at q = 0: agents are isolated and the closed form does not apply")]
    Discontinuity,

    /// Two-groups families with q_d = 0 split society into two components
    /// that never observe each other.
    #[error("disconnected groups: q_d must be positive")]
    DisconnectedGroups,

    /// Signal model and action space cannot be combined.
    #[error("unsupported combination: {0}")]
    Unsupported(String),

    /// A deterministic family was passed to the sampling constructor or a
    /// random family to the weighted one.
    #[error("wrong constructor: {0}")]
    WrongConstructor(String),

    /// Numerically degenerate input, e.g. an all-zero path-weight vector.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Agent index outside 1..=n.
    #[error("agent index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },

    /// Parallel lists whose lengths disagree.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
}
