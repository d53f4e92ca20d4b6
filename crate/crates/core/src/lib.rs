//! Optimal posted-price revenues for a single additive buyer with k i.i.d.
//! item valuations: selling separately versus as one grand bundle.
//!
//! The crate computes, exactly over finite discrete distributions:
//!
//! - the revenue-optimal posted price for one item ([`revenue::myerson_price`]),
//! - the separate-sale revenue k·Rev ([`revenue::srev`]) and the optimal
//!   bundle revenue on the exact k-fold convolution ([`revenue::brev`]),
//! - the limiting ratio curves d·h_d(c)/c, their crossing points, and the
//!   worst-case constants c* ≈ 2.6557 and r* ≈ 0.5597 ([`analysis`]),
//! - a suite of numerical re-derivations of every inequality behind the
//!   worst-case bound, each with an explicit margin ([`verifier`]).
//!
//! Numeric code is generic over the scalar type through [`Scalar`]
//! (implemented for `f64` and `f32`); the `*64` aliases below are the
//! concrete types most callers want. All documented tolerances are
//! guaranteed at `f64` only.
//!
//! ```
//! use revratio::{revenue, Dist64};
//!
//! // two items valued 0 or 1, each worth 1 with probability 2/3
//! let item = Dist64::two_point(1.0, 2.0 / 3.0).unwrap();
//! let rr = revenue::brev(&item, 2, revratio::dist::DEFAULT_SUPPORT_CAP).unwrap();
//! assert!((rr.ratio - 2.0 / 3.0).abs() < 1e-12); // bundling keeps 2/3 of SRev
//! ```

// Guards written as `!(x >= y)` are NaN-rejecting by design: a comparison
// with NaN is false, so the negated form routes NaN into the error branch,
// which the "simplified" `x < y` would silently let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod dist;
pub mod error;
pub mod revenue;
pub mod scalar;
pub mod verifier;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Double-precision finite discrete distribution.
pub type Dist64 = dist::DiscreteDistribution<f64>;
/// Double-precision {0,1} family with success probability c/k.
pub type Bernoulli64 = dist::BernoulliFamily<f64>;
/// Double-precision (m, d, x) tail query.
pub type TailQuery64 = dist::TailQuery<f64>;
/// Double-precision posted-price quote.
pub type Quote64 = revenue::RevenueQuote<f64>;
/// Double-precision bundle-versus-separate comparison.
pub type Ratio64 = revenue::RatioResult<f64>;
/// Double-precision table segment.
pub type Segment64 = analysis::Segment<f64>;
/// Double-precision constants certificate.
pub type Constants64 = analysis::ConstantsCertificate<f64>;

/// Single-precision variants, for callers that trade accuracy for size.
pub type Dist32 = dist::DiscreteDistribution<f32>;
pub type Bernoulli32 = dist::BernoulliFamily<f32>;
pub type Segment32 = analysis::Segment<f32>;
pub type Constants32 = analysis::ConstantsCertificate<f32>;
