//! Krichevsky-Trofimov estimator with optional count discounting.
//!
//! A node's counts are updated in a fixed order for every observed bit:
//!
//! 1. the block probability absorbs the predictive probability of the bit,
//!    computed from the current counts;
//! 2. the count matching the bit is incremented;
//! 3. both counts are multiplied by `1 - gamma`.
//!
//! After `k` observations with a constant rate, the bit observed at step
//! `i` (0-based) therefore carries weight `(1 - gamma)^(k - i)`.

use crate::error::{Error, Result};

/// Smallest probability handed to the arithmetic coder.
pub const MIN_PROBABILITY: f64 = 1.0 / (1u64 << 30) as f64;

/// Largest probability handed to the arithmetic coder.
pub const MAX_PROBABILITY: f64 = 1.0 - MIN_PROBABILITY;

/// Discounted zero/one counts plus the log block probability at a node.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CountPair {
    /// Discounted number of zeros.
    pub a: f64,
    /// Discounted number of ones.
    pub b: f64,
    /// Natural log of the product of all predictive probabilities so far.
    pub log_kt: f64,
}

impl CountPair {
    pub const EMPTY: CountPair = CountPair {
        a: 0.0,
        b: 0.0,
        log_kt: 0.0,
    };

    /// Probability that the next bit equals `bit`.
    #[inline]
    pub fn predict(&self, bit: bool) -> f64 {
        let count = if bit { self.b } else { self.a };
        (count + 0.5) / (self.a + self.b + 1.0)
    }

    /// Predictive probability of a one.
    #[inline]
    pub fn p1(&self) -> f64 {
        self.predict(true)
    }

    /// Observes `bit` with discount `gamma`. The caller guarantees `gamma`
    /// lies in `[0, 1)`.
    #[inline]
    pub(crate) fn observe(&mut self, bit: bool, gamma: f64) {
        self.log_kt += self.predict(bit).ln();
        if bit {
            self.b += 1.0;
        } else {
            self.a += 1.0;
        }
        let keep = 1.0 - gamma;
        self.a *= keep;
        self.b *= keep;
    }

    /// Total discounted count `a + b`.
    pub fn total(&self) -> f64 {
        self.a + self.b
    }
}

pub(crate) fn check_rate(name: &'static str, value: f64) -> Result<()> {
    if (0.0..1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::range(name, value, "[0, 1)"))
    }
}

/// `(a + 1/2) / (a + b + 1)` for a zero, `(b + 1/2) / (a + b + 1)` for a one.
pub fn kt_predict(counts: &CountPair, bit: bool) -> f64 {
    counts.predict(bit)
}

/// Returns `counts` after observing `bit` with discount rate `gamma`.
pub fn kt_update(counts: CountPair, bit: bool, gamma: f64) -> Result<CountPair> {
    check_rate("gamma", gamma)?;
    let mut next = counts;
    next.observe(bit, gamma);
    Ok(next)
}

/// Log block probability of `bits` under a constant discount rate,
/// starting from empty counts.
pub fn kt_block_logprob(bits: &[bool], gamma: f64) -> Result<f64> {
    check_rate("gamma", gamma)?;
    let mut counts = CountPair::EMPTY;
    for &bit in bits {
        counts.observe(bit, gamma);
    }
    Ok(counts.log_kt)
}

/// Clamps a probability into the range the coder accepts.
#[inline]
pub fn clamp_probability(p: f64) -> f64 {
    p.clamp(MIN_PROBABILITY, MAX_PROBABILITY)
}
