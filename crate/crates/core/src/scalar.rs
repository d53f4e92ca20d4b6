//! Scalar abstraction: the numeric kernel is generic over `f32`/`f64`.

use std::fmt::{Debug, Display};

/// Floating-point scalar the library computes over: `f32` or `f64`.
///
/// Tolerances live here so generic code compares against values that make
/// sense at the precision of the instantiating type. The documented
/// guarantees (root residuals below 1e-10, probability-mass checks at 1e-12)
/// hold for `f64`; the `f32` instantiation carries correspondingly coarser
/// best-effort bounds.
pub trait Scalar: num_traits::Float + Display + Debug + Send + Sync + 'static {
    /// Support values closer than this (absolute) count as the same point.
    const VALUE_EQ_TOL: Self;
    /// Probabilities must sum to one within this tolerance.
    const MASS_TOL: Self;
    /// Absolute x-tolerance for bisection root finding.
    const ROOT_X_TOL: Self;

    fn from_f64(v: f64) -> Self;
    fn as_f64(self) -> f64;
}

impl Scalar for f64 {
    const VALUE_EQ_TOL: Self = 1e-12;
    const MASS_TOL: Self = 1e-12;
    const ROOT_X_TOL: Self = 1e-10;

    #[inline]
    fn from_f64(v: f64) -> Self {
        v
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self
    }
}

impl Scalar for f32 {
    const VALUE_EQ_TOL: Self = 1e-5;
    const MASS_TOL: Self = 1e-5;
    const ROOT_X_TOL: Self = 1e-5;

    #[inline]
    fn from_f64(v: f64) -> Self {
        v as f32
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self as f64
    }
}
