use thiserror::Error;

/// Errors produced by the daybid core library.
#[derive(Debug, Error)]
pub enum Error {
    /// A density specification violated the step-density invariants.
    #[error("invalid density: {0}")]
    InvalidDensity(String),

    /// A bid violated its format's range constraints.
    #[error("invalid bid: {0}")]
    InvalidBid(String),

    /// Cost parameters out of range.
    #[error("invalid cost parameters: {0}")]
    InvalidCost(String),

    /// A numeric argument fell outside its documented domain.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// A string could not be parsed as a rational number.
    #[error("cannot parse {0:?} as a rational (expected `p/q`, integer, or decimal)")]
    ParseRational(String),

    /// Monte Carlo estimation requires at least one sample.
    #[error("sample count must be at least 1")]
    ZeroSamples,
}
