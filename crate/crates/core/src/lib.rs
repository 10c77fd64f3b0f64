//! Expected-profit toolkit for a price-taking generator bidding into a
//! two-period day-ahead market whose clearing prices follow a stepwise
//! symmetric distribution on [0, 1].
//!
//! The crate provides three layers:
//!
//! - profit kernels for realized price scenarios under the three bid formats
//!   (simple per-period bids, all-or-nothing block bids, and multi-part bids
//!   with explicit start-up and variable components), see [`payoff`];
//! - closed-form piecewise-polynomial expected profits and their derivatives
//!   for the built-in step density, see [`closedform`], audited at startup
//!   against an independent exact integrator, see [`oracle`];
//! - maximizers over each bid format plus a format comparison, see
//!   [`optimizer`], and a `(c_s, c_v)` sweep engine producing CSV grids, see
//!   [`sweep`].
//!
//! All density and closed-form arithmetic is exact rational
//! ([`Rational`] = arbitrary-precision ratio); evaluation is generic over
//! [`Scalar`], so every expectation can also be computed in f64 (or f32)
//! when speed matters more than exactness.

pub mod closedform;
pub mod distribution;
pub mod error;
pub mod optimizer;
pub mod oracle;
pub mod payoff;
pub mod poly;
pub mod scalar;
pub mod sweep;
pub mod verify;

mod tables;

pub use error::Error;
pub use scalar::{parse_rational, Scalar};

/// Exact rational scalar used throughout the crate.
pub type Rational = num::BigRational;

/// Convenience result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Shorthand for small rational constants.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
