//! Finite discrete distributions and the binomial/Poisson special functions.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

/// Default cap on the number of support points a convolution may produce.
pub const DEFAULT_SUPPORT_CAP: usize = 2_000_000;

/// A finite-support valuation distribution for a single item.
///
/// Invariants enforced at construction:
/// - support is non-empty, all values finite and ≥ 0, strictly increasing
///   with gaps larger than [`Scalar::VALUE_EQ_TOL`] (values closer than the
///   tolerance count as the same point and are rejected as duplicates);
/// - probabilities lie in [0, 1] and sum to 1 within [`Scalar::MASS_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution<S: Scalar> {
    support: Vec<S>,
    probs: Vec<S>,
}

impl<S: Scalar> DiscreteDistribution<S> {
    pub fn new(support: Vec<S>, probs: Vec<S>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::InvalidDistribution(
                "support: must be non-empty".into(),
            ));
        }
        if probs.len() != support.len() {
            return Err(Error::InvalidDistribution(format!(
                "probs: length {} does not match support length {}",
                probs.len(),
                support.len()
            )));
        }
        for (i, &v) in support.iter().enumerate() {
            if !v.is_finite() || v < S::zero() {
                return Err(Error::InvalidDistribution(format!(
                    "support[{i}]: values must be finite and non-negative"
                )));
            }
            if i > 0 && v - support[i - 1] <= S::VALUE_EQ_TOL {
                return Err(Error::InvalidDistribution(format!(
                    "support[{i}]: values must increase by more than {} \
                     (closer values are treated as equal)",
                    S::VALUE_EQ_TOL
                )));
            }
        }
        let mut total = S::zero();
        for (i, &p) in probs.iter().enumerate() {
            if !p.is_finite() || p < S::zero() || p > S::one() {
                return Err(Error::InvalidDistribution(format!(
                    "probs[{i}]: probabilities must lie in [0, 1]"
                )));
            }
            total = total + p;
        }
        if (total - S::one()).abs() > S::MASS_TOL {
            return Err(Error::InvalidDistribution(format!(
                "probs: sum {total} differs from 1 by more than {}",
                S::MASS_TOL
            )));
        }
        Ok(Self { support, probs })
    }

    /// The two-point distribution on {0, v} with P(v) = q.
    pub fn two_point(v: S, q: S) -> Result<Self> {
        if !(q >= S::zero() && q <= S::one()) {
            return Err(Error::Domain("q: must lie in [0, 1]".into()));
        }
        Self::new(vec![S::zero(), v], vec![S::one() - q, q])
    }

    pub fn support(&self) -> &[S] {
        &self.support
    }

    pub fn probs(&self) -> &[S] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        false // non-empty by construction
    }

    /// Exact mean Σ v·P(v).
    pub fn mean(&self) -> S {
        self.support
            .iter()
            .zip(&self.probs)
            .fold(S::zero(), |acc, (&v, &p)| acc + v * p)
    }

    /// P(X ≥ threshold), counting support values within
    /// [`Scalar::VALUE_EQ_TOL`] below the threshold as meeting it.
    /// Summed from the top of the support down, matching the suffix order
    /// used by the price search.
    pub fn tail_at_least(&self, threshold: S) -> S {
        let cut = threshold - S::VALUE_EQ_TOL;
        let idx = self.support.partition_point(|&v| v < cut);
        // Summing small-to-large keeps the error down; the clamp removes the
        // last-ulp overflow a normalized weight vector can carry, so the
        // result is always a valid probability.
        clamp01(
            self.probs[idx..]
                .iter()
                .rev()
                .fold(S::zero(), |acc, &p| acc + p),
        )
    }
}

/// The {0,1}-valued family with success probability q = c/k: the sum of k
/// independent copies is Binomial(k, c/k), with mean c.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BernoulliFamily<S: Scalar> {
    c: S,
    k: u32,
}

impl<S: Scalar> BernoulliFamily<S> {
    pub fn new(c: S, k: u32) -> Result<Self> {
        if k < 1 {
            return Err(Error::Domain("k: item count must be ≥ 1".into()));
        }
        if !(c > S::zero() && c <= S::from_f64(k as f64)) {
            return Err(Error::Domain(
                "c: need 0 < c ≤ k so that q = c/k is a probability".into(),
            ));
        }
        Ok(Self { c, k })
    }

    pub fn c(&self) -> S {
        self.c
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Success probability q = c/k.
    pub fn q(&self) -> S {
        self.c / S::from_f64(self.k as f64)
    }

    /// The single-item law: {0, 1} with P(1) = q.
    pub fn item_distribution(&self) -> DiscreteDistribution<S> {
        let q = self.q();
        DiscreteDistribution::new(vec![S::zero(), S::one()], vec![S::one() - q, q])
            .expect("valid by construction")
    }
}

/// The (m, d, x) symbol triple used by the tail functions, with the
/// d = m + 1 convention maintained by construction: m is the count
/// threshold, d the price threshold, x the Poisson/binomial mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailQuery<S: Scalar> {
    pub m: u32,
    pub d: u32,
    pub x: S,
}

impl<S: Scalar> TailQuery<S> {
    pub fn from_count_threshold(m: u32, x: S) -> Result<Self> {
        if !(x >= S::zero()) {
            return Err(Error::Domain("x: mean must be ≥ 0".into()));
        }
        Ok(Self { m, d: m + 1, x })
    }

    pub fn from_price(d: u32, x: S) -> Result<Self> {
        if d < 1 {
            return Err(Error::Domain("d: price threshold must be ≥ 1".into()));
        }
        if !(x >= S::zero()) {
            return Err(Error::Domain("x: mean must be ≥ 0".into()));
        }
        Ok(Self { m: d - 1, d, x })
    }

    /// P(m; x): Poisson CDF at the count threshold.
    pub fn poisson_cdf(&self) -> S {
        poisson_cdf(self.m, self.x).expect("x ≥ 0 by construction")
    }

    /// h_d(x) = 1 − P(d−1; x): the Poisson tail at the price threshold.
    pub fn poisson_tail(&self) -> S {
        h(self.d, self.x).expect("d ≥ 1 by construction")
    }

    /// B(m; k, x/k): binomial CDF with the mean split across k trials.
    pub fn binomial_cdf(&self, k: u32) -> Result<S> {
        binomial_cdf(self.m, k, self.x / S::from_f64(k as f64))
    }
}

pub(crate) fn clamp01<S: Scalar>(x: S) -> S {
    x.max(S::zero()).min(S::one())
}

/// B(m; k, q) = Σ_{i=0}^{m} C(k,i) q^i (1−q)^{k−i}, computed by
/// multiplicative term updates (no explicit factorials).
pub fn binomial_cdf<S: Scalar>(m: u32, k: u32, q: S) -> Result<S> {
    if m > k {
        return Err(Error::Domain(format!("m = {m} exceeds k = {k}")));
    }
    let ik = i32::try_from(k).map_err(|_| Error::Domain(format!("k = {k} too large")))?;
    if !(q >= S::zero() && q <= S::one()) {
        return Err(Error::Domain("q: must lie in [0, 1]".into()));
    }
    if q == S::zero() {
        return Ok(S::one());
    }
    if q == S::one() {
        return Ok(if m == k { S::one() } else { S::zero() });
    }
    let ratio = q / (S::one() - q);
    let mut term = (S::one() - q).powi(ik); // C(k,0) q^0 (1−q)^k
    let mut cdf = S::zero();
    for i in 0..=m {
        cdf = cdf + term;
        if i < m {
            // advance C(k,i) q^i (1−q)^{k−i} to i+1
            term = term * S::from_f64((k - i) as f64) / S::from_f64((i + 1) as f64) * ratio;
        }
    }
    Ok(clamp01(cdf))
}

/// P(m; x) = e^{−x} Σ_{i=0}^{m} x^i/i!, terms built multiplicatively
/// (term_{i+1} = term_i · x/(i+1)) so no intermediate overflows.
pub fn poisson_cdf<S: Scalar>(m: u32, x: S) -> Result<S> {
    if !(x >= S::zero()) {
        return Err(Error::Domain("x: mean must be ≥ 0".into()));
    }
    let mut term = (-x).exp(); // e^{−x} x^0/0!
    let mut cdf = S::zero();
    for i in 0..=m {
        cdf = cdf + term;
        if i < m {
            term = term * x / S::from_f64((i + 1) as f64);
        }
    }
    Ok(clamp01(cdf))
}

/// h_d(x) = 1 − P(d−1; x): the limiting probability that the valuation sum
/// reaches at least d when its mean is x. Nondecreasing in x, nonincreasing
/// in d.
pub fn h<S: Scalar>(d: u32, x: S) -> Result<S> {
    if d < 1 {
        return Err(Error::Domain("d: price threshold must be ≥ 1".into()));
    }
    Ok(S::one() - poisson_cdf(d - 1, x)?)
}

/// Head of one stream in the k-way merge: the pairwise sum
/// a.support[ai] + b.support[bj], with (ai, bj) breaking value ties so heap
/// order is fully deterministic.
struct MergeHead<S> {
    value: S,
    ai: u32,
    bj: u32,
}

impl<S: Scalar> PartialEq for MergeHead<S> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<S: Scalar> Eq for MergeHead<S> {}

impl<S: Scalar> PartialOrd for MergeHead<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<S: Scalar> Ord for MergeHead<S> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value
            .partial_cmp(&other.value)
            .expect("support values are finite")
            .then(self.ai.cmp(&other.ai))
            .then(self.bj.cmp(&other.bj))
    }
}

/// Convolution of two distributions by an |a|-way streaming merge: memory
/// stays O(|a| + output) even when |a|·|b| raw pairs would not fit, and
/// output values arrive sorted so near-equal sums (within
/// [`Scalar::VALUE_EQ_TOL`] of the cluster's first value) merge on the fly.
/// Probabilities are only ever summed, never rescaled.
fn convolve_pair<S: Scalar>(
    a: &DiscreteDistribution<S>,
    b: &DiscreteDistribution<S>,
    cap: usize,
) -> Result<DiscreteDistribution<S>> {
    // keep the streaming side small: one heap entry per support point of `a`
    let (a, b) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut heap: BinaryHeap<Reverse<MergeHead<S>>> = a
        .support
        .iter()
        .enumerate()
        .map(|(ai, &v)| {
            Reverse(MergeHead {
                value: v + b.support[0],
                ai: ai as u32,
                bj: 0,
            })
        })
        .collect();
    let mut support: Vec<S> = Vec::new();
    let mut probs: Vec<S> = Vec::new();
    while let Some(Reverse(head)) = heap.pop() {
        let p = a.probs[head.ai as usize] * b.probs[head.bj as usize];
        match support.last() {
            // values arrive ascending, so the open cluster's anchor is the
            // smallest member; merge while within tolerance of it
            Some(&anchor) if head.value - anchor <= S::VALUE_EQ_TOL => {
                let last = probs.last_mut().expect("probs tracks support");
                *last = *last + p;
            }
            _ => {
                if support.len() == cap {
                    return Err(Error::Capacity { cap });
                }
                support.push(head.value);
                probs.push(p);
            }
        }
        let next = head.bj as usize + 1;
        if next < b.len() {
            heap.push(Reverse(MergeHead {
                value: a.support[head.ai as usize] + b.support[next],
                ai: head.ai,
                bj: next as u32,
            }));
        }
    }
    Ok(DiscreteDistribution { support, probs })
}

/// Exact distribution of the sum of k independent copies, by binary-doubling
/// pairwise convolution. Every intermediate result must fit within `cap`
/// support points; exceeding it is a capacity error naming the cap.
pub fn convolve_iid<S: Scalar>(
    dist: &DiscreteDistribution<S>,
    k: u32,
    cap: usize,
) -> Result<DiscreteDistribution<S>> {
    if k < 1 {
        return Err(Error::Domain("k: must be ≥ 1".into()));
    }
    let mut acc: Option<DiscreteDistribution<S>> = None;
    let mut base = dist.clone();
    let mut e = k;
    loop {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(r) => convolve_pair(&r, &base, cap)?,
            });
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        base = convolve_pair(&base, &base, cap)?;
    }
    Ok(acc.expect("k ≥ 1 sets the accumulator"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(support: &[f64], probs: &[f64]) -> DiscreteDistribution<f64> {
        DiscreteDistribution::new(support.to_vec(), probs.to_vec()).unwrap()
    }

    #[test]
    fn validation_rejects_bad_inputs() {
        let empty = DiscreteDistribution::<f64>::new(vec![], vec![]);
        assert!(matches!(empty, Err(Error::InvalidDistribution(ref m)) if m.contains("support")));
        let mismatch = DiscreteDistribution::new(vec![0.0, 1.0], vec![1.0]);
        assert!(matches!(mismatch, Err(Error::InvalidDistribution(ref m)) if m.contains("probs")));
        let negative = DiscreteDistribution::new(vec![-1.0, 1.0], vec![0.5, 0.5]);
        assert!(negative.is_err());
        let unordered = DiscreteDistribution::new(vec![1.0, 0.5], vec![0.5, 0.5]);
        assert!(unordered.is_err());
        let near_dup = DiscreteDistribution::new(vec![1.0, 1.0 + 5e-13], vec![0.5, 0.5]);
        assert!(near_dup.is_err());
        let bad_prob = DiscreteDistribution::new(vec![0.0, 1.0], vec![-0.1, 1.1]);
        assert!(bad_prob.is_err());
        let bad_sum = DiscreteDistribution::new(vec![0.0, 1.0], vec![0.5, 0.6]);
        assert!(matches!(bad_sum, Err(Error::InvalidDistribution(ref m)) if m.contains("sum")));
    }

    #[test]
    fn zero_probabilities_are_allowed() {
        let d = dist(&[0.0, 5.0], &[1.0, 0.0]);
        assert_eq!(d.mean(), 0.0);
    }

    #[test]
    fn tail_counts_values_at_threshold() {
        let d = dist(&[0.0, 1.0, 2.0], &[0.5, 0.3, 0.2]);
        assert_eq!(d.tail_at_least(1.0), 0.5);
        assert_eq!(d.tail_at_least(1.0 - 1e-13), 0.5); // within tolerance of 1
        assert_eq!(d.tail_at_least(2.0), 0.2);
        assert_eq!(d.tail_at_least(2.5), 0.0);
        assert_eq!(d.tail_at_least(0.0), 1.0);
    }

    #[test]
    fn bernoulli_family_validates_and_derives_q() {
        assert!(BernoulliFamily::new(0.0, 4).is_err());
        assert!(BernoulliFamily::new(4.5, 4).is_err());
        assert!(BernoulliFamily::<f64>::new(1.0, 0).is_err());
        let fam = BernoulliFamily::new(2.0, 4).unwrap();
        assert_eq!(fam.q(), 0.5);
        let item = fam.item_distribution();
        assert_eq!(item.support(), &[0.0, 1.0]);
        assert_eq!(item.probs(), &[0.5, 0.5]);
        // q = 1 boundary is allowed: P(0) = 0
        let full = BernoulliFamily::new(3.0, 3).unwrap();
        assert_eq!(full.item_distribution().probs(), &[0.0, 1.0]);
    }

    #[test]
    fn tail_query_maintains_convention() {
        let q = TailQuery::from_price(4, 3.0f64).unwrap();
        assert_eq!(q.m, 3);
        let q2 = TailQuery::from_count_threshold(3, 3.0f64).unwrap();
        assert_eq!(q2.d, 4);
        assert_eq!(q.poisson_cdf(), q2.poisson_cdf());
        assert!((q.poisson_tail() - (1.0 - q.poisson_cdf())).abs() < 1e-15);
        assert!(TailQuery::from_price(0, 1.0f64).is_err());
        assert!(TailQuery::from_count_threshold(0, -1.0f64).is_err());
    }

    #[test]
    fn binomial_cdf_matches_closed_forms() {
        // full-support sum
        assert!((binomial_cdf(5, 5, 0.3f64).unwrap() - 1.0).abs() < 1e-12);
        // (1−q)^k
        assert_eq!(binomial_cdf(0, 2, 0.5f64).unwrap(), 0.25);
        // two-term sum: (2/3)^3 + 3·(1/3)·(2/3)^2 = 20/27
        let v = binomial_cdf(1, 3, 1.0f64 / 3.0).unwrap();
        assert!((v - 20.0 / 27.0).abs() < 1e-15, "got {v}");
        // degenerate probabilities
        assert_eq!(binomial_cdf(2, 5, 0.0f64).unwrap(), 1.0);
        assert_eq!(binomial_cdf(2, 5, 1.0f64).unwrap(), 0.0);
        assert_eq!(binomial_cdf(5, 5, 1.0f64).unwrap(), 1.0);
        // domain errors
        assert!(binomial_cdf(6, 5, 0.5f64).is_err());
        assert!(binomial_cdf(1, 5, 1.5f64).is_err());
        assert!(binomial_cdf(1, 5, f64::NAN).is_err());
    }

    #[test]
    fn binomial_cdf_monotonicity() {
        for k in [1u32, 2, 5, 17] {
            for qi in 0..=10 {
                let q = qi as f64 / 10.0;
                let mut prev = 0.0;
                for m in 0..=k {
                    let v = binomial_cdf(m, k, q).unwrap();
                    assert!((0.0..=1.0).contains(&v));
                    assert!(v >= prev - 1e-15, "not nondecreasing in m");
                    prev = v;
                }
            }
            // nonincreasing in q at fixed m
            let m = k / 2;
            let mut prev = f64::INFINITY;
            for qi in 0..=20 {
                let v = binomial_cdf(m, k, qi as f64 / 20.0).unwrap();
                assert!(v <= prev + 1e-15, "not nonincreasing in q");
                prev = v;
            }
        }
    }

    #[test]
    fn poisson_cdf_matches_reference_values() {
        assert_eq!(poisson_cdf(0, 0.0f64).unwrap(), 1.0);
        assert!((poisson_cdf(0, 1.0f64).unwrap() - (-1.0f64).exp()).abs() < 1e-16);
        // independently computed by 40-digit summation
        assert!((poisson_cdf(3, 2.5f64).unwrap() - 0.7575761331330659).abs() < 1e-12);
        assert!(poisson_cdf(3, -0.5f64).is_err());
        assert!(poisson_cdf(3, f64::NAN).is_err());
    }

    #[test]
    fn h_matches_reference_values() {
        assert_eq!(h(1, 0.0f64).unwrap(), 0.0);
        // 2·h_2 at the crossing point of the price-2 and price-3 curves
        let c_star = 2.6556746947655825f64;
        assert!((2.0 * h(2, c_star).unwrap() - 1.4863672910728236).abs() < 1e-12);
        assert!(h(0, 1.0f64).is_err());
    }

    #[test]
    fn h_is_the_binomial_limit() {
        // h(4, 3) against the exact binomial tail at k = 10^6
        let tail = 1.0 - binomial_cdf(3, 1_000_000, 3.0e-6f64).unwrap();
        let hv = h(4, 3.0f64).unwrap();
        assert!((hv - 0.35276811121776874).abs() < 1e-12);
        assert!((hv - tail).abs() < 2e-6, "limit gap {}", (hv - tail).abs());
    }

    #[test]
    fn h_monotonicity() {
        for d in 1..=10u32 {
            let mut prev = 0.0;
            for xi in 0..=40 {
                let x = xi as f64 * 0.5;
                let v = h(d, x).unwrap();
                assert!((0.0..=1.0).contains(&v));
                assert!(v >= prev - 1e-15, "h not nondecreasing in x");
                assert!(v <= h(d.max(1) - 1 + 1, x).unwrap() + 1e-15);
                if d > 1 {
                    assert!(
                        v <= h(d - 1, x).unwrap() + 1e-15,
                        "h not nonincreasing in d"
                    );
                }
                prev = v;
            }
        }
    }

    #[test]
    fn poisson_is_binomial_limit_on_grid() {
        // |P(m;x) − B(m;k,x/k)| ≤ 5x²/k for k ≥ 100, m ≤ 25, x ≤ 40
        for k in [100u32, 400, 1000] {
            for m in (0..=25).step_by(5) {
                for xi in 1..=8 {
                    let x = xi as f64 * 5.0;
                    let p = poisson_cdf(m, x).unwrap();
                    let b = binomial_cdf(m, k, x / k as f64).unwrap();
                    assert!(
                        (p - b).abs() <= 5.0 * x * x / k as f64,
                        "limit bound violated at m={m} k={k} x={x}"
                    );
                }
            }
        }
    }

    #[test]
    fn convolve_bernoulli_is_binomial() {
        let q = 0.3f64;
        let d = dist(&[0.0, 1.0], &[1.0 - q, q]);
        let sum = convolve_iid(&d, 6, DEFAULT_SUPPORT_CAP).unwrap();
        assert_eq!(sum.len(), 7);
        for (i, &v) in sum.support().iter().enumerate() {
            assert_eq!(v, i as f64);
            // C(6,i) q^i (1−q)^(6−i)
            let slots = [1.0, 6.0, 15.0, 20.0, 15.0, 6.0, 1.0];
            let pmf = slots[i] * q.powi(i as i32) * (1.0 - q).powi(6 - i as i32);
            assert!((sum.probs()[i] - pmf).abs() < 1e-14);
        }
    }

    #[test]
    fn convolve_point_mass() {
        let d = dist(&[2.5], &[1.0]);
        let sum = convolve_iid(&d, 3, DEFAULT_SUPPORT_CAP).unwrap();
        assert_eq!(sum.support(), &[7.5]);
        assert_eq!(sum.probs(), &[1.0]);
    }

    #[test]
    fn convolve_matches_exhaustive_enumeration() {
        let d = dist(&[0.0, 1.0, 2.0], &[0.5, 0.3, 0.2]);
        let sum = convolve_iid(&d, 2, DEFAULT_SUPPORT_CAP).unwrap();
        assert_eq!(sum.support(), &[0.0, 1.0, 2.0, 3.0, 4.0]);
        let expected = [0.25, 0.30, 0.29, 0.12, 0.04]; // 9-outcome enumeration
        for (got, want) in sum.probs().iter().zip(expected) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn convolve_merges_values_within_tolerance() {
        // 0.1 + 0.1 = 0.2 exactly; 0.2 + ulp sits within merge tolerance
        let near = 0.20000000000000004f64;
        let d = dist(&[0.0, 0.1, near], &[0.4, 0.4, 0.2]);
        let sum = convolve_iid(&d, 2, DEFAULT_SUPPORT_CAP).unwrap();
        // {0, 0.1, 0.2≈0.2+ulp, 0.1+near, 2·near}
        assert_eq!(sum.len(), 5);
        let cluster = sum.probs()[2];
        assert!((cluster - (0.4 * 0.4 + 2.0 * 0.4 * 0.2)).abs() < 1e-15);
    }

    #[test]
    fn convolve_respects_cap() {
        let d = dist(
            &[
                0.0,
                1.0,
                std::f64::consts::SQRT_2,
                std::f64::consts::E,
                std::f64::consts::PI,
            ],
            &[0.2; 5],
        );
        let err = convolve_iid(&d, 6, 100).unwrap_err();
        assert!(matches!(err, Error::Capacity { cap: 100 }));
        assert!(err.to_string().contains("100"));
    }

    #[test]
    fn convolve_preserves_mass_and_mean() {
        let d = dist(&[0.25, 1.5, 3.75, 9.0], &[0.1, 0.2, 0.3, 0.4]);
        for k in 1..=6u32 {
            let sum = convolve_iid(&d, k, DEFAULT_SUPPORT_CAP).unwrap();
            let mass: f64 = sum.probs().iter().sum();
            assert!((mass - 1.0).abs() < 1e-12);
            assert!((sum.mean() - k as f64 * d.mean()).abs() < 1e-9);
            for w in sum.support().windows(2) {
                assert!(w[1] - w[0] > f64::VALUE_EQ_TOL);
            }
        }
    }

    #[test]
    fn convolve_rejects_k_zero() {
        let d = dist(&[0.0, 1.0], &[0.5, 0.5]);
        assert!(convolve_iid(&d, 0, DEFAULT_SUPPORT_CAP).is_err());
    }

    #[test]
    fn works_at_f32() {
        let d = DiscreteDistribution::<f32>::new(vec![0.0, 1.0], vec![0.25, 0.75]).unwrap();
        let sum = convolve_iid(&d, 4, DEFAULT_SUPPORT_CAP).unwrap();
        assert_eq!(sum.len(), 5);
        let mass: f32 = sum.probs().iter().sum();
        assert!((mass - 1.0).abs() < 1e-5);
        assert!((binomial_cdf(1, 3, 1.0f32 / 3.0).unwrap() - 20.0 / 27.0).abs() < 1e-6);
    }
}
