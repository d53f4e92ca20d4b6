use thiserror::Error;

/// Errors surfaced by the distribution, revenue, and analysis kernels.
#[derive(Debug, Error)]
pub enum Error {
    /// A distribution failed validation; the message names the offending field.
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    /// An argument lies outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Every posted price earns zero: all probability mass sits at value 0.
    #[error("degenerate distribution: all probability mass at value 0")]
    Degenerate,
    /// A convolution would need more support points than the configured cap.
    #[error("support cap exceeded: convolution result needs more than {cap} points")]
    Capacity { cap: usize },
    /// A bisection bracket had no sign change. This signals an internal bug,
    /// not a user error: brackets are chosen to always straddle the root.
    #[error("bracketing failed for price {d}: no sign change on [{lo}, {hi}]")]
    Bracketing { d: u32, lo: f64, hi: f64 },
    /// A ratio curve violated the expected one-extremum shape on a segment.
    /// The endpoint-minimum shortcut would be unsound, so this is fatal.
    #[error("extremum structure violated on segment for price {d}: {details}")]
    Structure { d: u32, details: String },
}

pub type Result<T> = std::result::Result<T, Error>;
