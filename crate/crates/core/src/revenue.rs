//! Optimal posted prices and the three revenue quantities: Rev for one item,
//! SRev for separate sales, BRev for the grand bundle.

use crate::dist::{clamp01, convolve_iid, DiscreteDistribution};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A posted price together with its sale probability and expected revenue
/// (`revenue` is exactly `price * sale_probability` as computed).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RevenueQuote<S: Scalar> {
    pub price: S,
    pub sale_probability: S,
    pub revenue: S,
}

/// Bundled versus separate selling for k i.i.d. items: `srev` = k·Rev,
/// `brev` the best bundle revenue with its `bundle_price`, and
/// `ratio` = brev/srev.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioResult<S: Scalar> {
    pub srev: S,
    pub brev: S,
    pub ratio: S,
    pub bundle_price: S,
}

/// The revenue-optimal posted price for one item: the support value p
/// maximizing p·P(X ≥ p). Only support values need be searched — raising the
/// price to the next support value leaves the sale probability unchanged, so
/// some optimum sits at a support point. Ties break toward the lowest
/// maximizing price.
pub fn myerson_price<S: Scalar>(dist: &DiscreteDistribution<S>) -> Result<RevenueQuote<S>> {
    let support = dist.support();
    let probs = dist.probs();
    let n = support.len();
    // suffix sums from the top, so tails[i] = P(X ≥ support[i]) is an exact
    // top-down accumulation matching `tail_at_least`
    let mut tails = vec![S::zero(); n];
    let mut acc = S::zero();
    for i in (0..n).rev() {
        acc = acc + probs[i];
        // weight vectors that pass validation can still sum a last ulp above
        // one; clamping keeps every reported tail a valid probability
        tails[i] = clamp01(acc);
    }
    // ascending scan with strict improvement keeps the lowest price on ties
    let mut best = 0usize;
    let mut best_revenue = support[0] * tails[0];
    for i in 1..n {
        let r = support[i] * tails[i];
        if r > best_revenue {
            best = i;
            best_revenue = r;
        }
    }
    if best_revenue <= S::zero() {
        return Err(Error::Degenerate);
    }
    Ok(RevenueQuote {
        price: support[best],
        sale_probability: tails[best],
        revenue: best_revenue,
    })
}

/// Revenue from selling each of k items separately at the per-item optimum:
/// k·Rev.
pub fn srev<S: Scalar>(dist: &DiscreteDistribution<S>, k: u32) -> Result<S> {
    if k < 1 {
        return Err(Error::Domain("k: item count must be ≥ 1".into()));
    }
    Ok(S::from_f64(k as f64) * myerson_price(dist)?.revenue)
}

/// Optimal bundle revenue: convolve k copies exactly, then run the posted
/// price search on the sum. Returns the full comparison against separate
/// sales; `srev` is recomputed internally so the two sides can never come
/// from mismatched inputs.
pub fn brev<S: Scalar>(
    dist: &DiscreteDistribution<S>,
    k: u32,
    cap: usize,
) -> Result<RatioResult<S>> {
    let separate = srev(dist, k)?; // surfaces degenerate input before the convolution cost
    let sum = convolve_iid(dist, k, cap)?;
    let bundle = myerson_price(&sum)?;
    Ok(RatioResult {
        srev: separate,
        brev: bundle.revenue,
        ratio: bundle.revenue / separate,
        bundle_price: bundle.price,
    })
}

/// Revenue of a FIXED bundle price: price·P(sum of k copies ≥ price).
pub fn brev_at_price<S: Scalar>(
    dist: &DiscreteDistribution<S>,
    k: u32,
    price: S,
    cap: usize,
) -> Result<RevenueQuote<S>> {
    if !(price >= S::zero()) {
        return Err(Error::Domain("price: must be finite and ≥ 0".into()));
    }
    let sum = convolve_iid(dist, k, cap)?;
    let sale_probability = sum.tail_at_least(price);
    Ok(RevenueQuote {
        price,
        sale_probability,
        revenue: price * sale_probability,
    })
}
