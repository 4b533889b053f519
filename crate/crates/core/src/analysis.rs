//! Redundancy of the windowed KT estimator, binary entropy, and seeded
//! synthetic bit sources.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Binary entropy in bits.
pub fn binary_entropy(theta: f64) -> f64 {
    if theta <= 0.0 || theta >= 1.0 {
        return 0.0;
    }
    -(theta * theta.log2() + (1.0 - theta) * (1.0 - theta).log2())
}

fn check_probability(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::range(name, value, "[0, 1]"))
    }
}

/// Expected one-bit redundancy, in bits, of a KT estimator that only sees
/// the last `k` bits of a Bernoulli(`theta`) source.
///
/// With `a` ones among the `k` window bits the estimator assigns
/// `(a + 1/2) / (k + 1)` to a one and `(k - a + 1/2) / (k + 1)` to a zero;
/// the expected code length of the next bit is averaged over the binomial
/// law of `a` and the entropy is subtracted. Binomial weights are evaluated
/// in log space so `k` in the tens of thousands is fine.
pub fn expected_redundancy(k: u64, theta: f64) -> Result<f64> {
    if k < 1 {
        return Err(Error::range("k", k as f64, ">= 1"));
    }
    check_probability("theta", theta)?;

    let n = k as f64;
    let loss = |a: f64| {
        theta * ((n + 1.0) / (a + 0.5)).log2() + (1.0 - theta) * ((n + 1.0) / (n - a + 0.5)).log2()
    };

    let expected = if theta == 0.0 {
        loss(0.0)
    } else if theta == 1.0 {
        loss(n)
    } else {
        let (ln_t, ln_1t) = (theta.ln(), (1.0 - theta).ln());
        let mut ln_binom = 0.0;
        let mut sum = 0.0;
        for a in 0..=k {
            let af = a as f64;
            if a > 0 {
                ln_binom += (n - af + 1.0).ln() - af.ln();
            }
            let weight = (ln_binom + af * ln_t + (n - af) * ln_1t).exp();
            sum += weight * loss(af);
        }
        sum
    };
    Ok(expected - binary_entropy(theta))
}

/// `(k, R(k; theta))` for `k = 1..=k_max`.
pub fn redundancy_curve(theta: f64, k_max: u64) -> Result<Vec<(u64, f64)>> {
    (1..=k_max)
        .map(|k| expected_redundancy(k, theta).map(|r| (k, r)))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum SourceKind {
    /// Stationary Bernoulli with the first listed probability.
    Iid,
    /// Cycles through the listed probabilities every `segment_length` bits.
    Switching { segment_length: u64 },
    /// Moves linearly through the listed probabilities. `drift_rate` is the
    /// number of sweeps over the whole list (reversing at each end) during
    /// the sequence; 1.0 goes from the first entry to the last exactly once.
    Drifting { drift_rate: f64 },
}

/// Description of a seeded synthetic bit source.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceSpec {
    pub kind: SourceKind,
    /// Probabilities of a one.
    pub thetas: Vec<f64>,
    pub seed: u64,
    pub total_bits: u64,
}

impl SourceSpec {
    pub fn validate(&self) -> Result<()> {
        if self.thetas.is_empty() {
            return Err(Error::range("thetas", 0.0, "at least one probability"));
        }
        for &theta in &self.thetas {
            check_probability("theta", theta)?;
        }
        if self.total_bits < 1 {
            return Err(Error::range("total_bits", 0.0, ">= 1"));
        }
        match self.kind {
            SourceKind::Switching { segment_length: 0 } => {
                Err(Error::range("segment_length", 0.0, ">= 1"))
            }
            SourceKind::Drifting { drift_rate } if !(drift_rate.is_finite() && drift_rate > 0.0) => {
                Err(Error::range("drift_rate", drift_rate, "> 0"))
            }
            _ => Ok(()),
        }
    }

    /// Probability of a one at position `t`.
    pub fn theta_at(&self, t: u64) -> f64 {
        match self.kind {
            SourceKind::Iid => self.thetas[0],
            SourceKind::Switching { segment_length } => {
                self.thetas[((t / segment_length) % self.thetas.len() as u64) as usize]
            }
            SourceKind::Drifting { drift_rate } => {
                let last = self.thetas.len() - 1;
                if last == 0 {
                    return self.thetas[0];
                }
                let progress = if self.total_bits > 1 {
                    t as f64 / (self.total_bits - 1) as f64
                } else {
                    0.0
                };
                let phase = (progress * drift_rate) % 2.0;
                let sweep = if phase <= 1.0 { phase } else { 2.0 - phase };
                let x = sweep * last as f64;
                let i = (x.floor() as usize).min(last - 1);
                let frac = x - i as f64;
                self.thetas[i] * (1.0 - frac) + self.thetas[i + 1] * frac
            }
        }
    }
}

/// Draws `spec.total_bits` bits. Deterministic in the seed.
pub fn generate(spec: &SourceSpec) -> Result<Vec<bool>> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    Ok((0..spec.total_bits)
        .map(|t| rng.gen::<f64>() < spec.theta_at(t))
        .collect())
}
