//! Discount schedules and the named parameterizations.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::estimator::check_rate;

/// Context depth used for file compression unless overridden.
pub const DEFAULT_DEPTH: usize = 28;

/// Deepest context that fits the 64-bit history register.
pub const MAX_DEPTH: usize = 63;

/// How the discount rate of a node is chosen on each update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Schedule {
    /// Plain KT counts, no discounting.
    Ctw,
    /// Constant rate `gamma`.
    FixedRate { gamma: f64 },
    /// `c * t^-alpha`, where `t` is the number of bits seen before this one.
    SeqLength { c: f64, alpha: f64 },
    /// `c * k^-alpha` per node, `k` counting the visits to that node.
    PartialVisit { c: f64, alpha: f64 },
    /// Every node on the path uses the leaf's `c * k_n^-alpha`.
    FullVisit { c: f64, alpha: f64 },
    /// The leaf is discounted with `c * k_n^-alpha`; internal nodes hold the
    /// sum of their children's counts.
    LeafVisit { c: f64, alpha: f64 },
}

impl Schedule {
    /// Wire code used in the container header.
    pub fn code(&self) -> u8 {
        match self {
            Schedule::Ctw => 0,
            Schedule::FixedRate { .. } => 1,
            Schedule::SeqLength { .. } => 2,
            Schedule::PartialVisit { .. } => 3,
            Schedule::FullVisit { .. } => 4,
            Schedule::LeafVisit { .. } => 5,
        }
    }

    /// The two header parameters: `(gamma, 0)` for a fixed rate, `(c, alpha)`
    /// for the visit and length schedules, zeros for plain CTW.
    pub fn params(&self) -> (f64, f64) {
        match *self {
            Schedule::Ctw => (0.0, 0.0),
            Schedule::FixedRate { gamma } => (gamma, 0.0),
            Schedule::SeqLength { c, alpha }
            | Schedule::PartialVisit { c, alpha }
            | Schedule::FullVisit { c, alpha }
            | Schedule::LeafVisit { c, alpha } => (c, alpha),
        }
    }

    /// Inverse of [`Schedule::code`] and [`Schedule::params`].
    pub fn from_parts(code: u8, p1: f64, p2: f64) -> Result<Self> {
        let schedule = match code {
            0 => Schedule::Ctw,
            1 => Schedule::FixedRate { gamma: p1 },
            2 => Schedule::SeqLength { c: p1, alpha: p2 },
            3 => Schedule::PartialVisit { c: p1, alpha: p2 },
            4 => Schedule::FullVisit { c: p1, alpha: p2 },
            5 => Schedule::LeafVisit { c: p1, alpha: p2 },
            other => return Err(Error::Format(format!("unknown variant code {other}"))),
        };
        Ok(schedule)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Schedule::Ctw => "ctw",
            Schedule::FixedRate { .. } => "fixed-rate",
            Schedule::SeqLength { .. } => "seq-length",
            Schedule::PartialVisit { .. } => "partial-visit",
            Schedule::FullVisit { .. } => "full-visit",
            Schedule::LeafVisit { .. } => "leaf-visit",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Schedule::Ctw => Ok(()),
            Schedule::FixedRate { gamma } => check_rate("gamma", gamma),
            Schedule::SeqLength { c, alpha }
            | Schedule::PartialVisit { c, alpha }
            | Schedule::FullVisit { c, alpha }
            | Schedule::LeafVisit { c, alpha } => {
                check_rate("c", c)?;
                check_rate("alpha", alpha)
            }
        }
    }

    /// Discount rate applied at a node.
    ///
    /// `leaf_visits` and `node_visits` include the current observation and
    /// `t` is the number of bits processed before it; all three are clamped
    /// to at least 1. Internal nodes under [`Schedule::LeafVisit`] are never
    /// discounted, so they get 0.
    pub fn rate(&self, is_leaf: bool, leaf_visits: u64, node_visits: u64, t: u64) -> f64 {
        let decay = |c: f64, alpha: f64, n: u64| c * (n.max(1) as f64).powf(-alpha);
        match *self {
            Schedule::Ctw => 0.0,
            Schedule::FixedRate { gamma } => gamma,
            Schedule::SeqLength { c, alpha } => decay(c, alpha, t),
            Schedule::PartialVisit { c, alpha } => decay(c, alpha, node_visits),
            Schedule::FullVisit { c, alpha } => decay(c, alpha, leaf_visits),
            Schedule::LeafVisit { c, alpha } if is_leaf => decay(c, alpha, leaf_visits),
            Schedule::LeafVisit { .. } => 0.0,
        }
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Schedule::Ctw => f.write_str("ctw"),
            Schedule::FixedRate { gamma } => write!(f, "fixed-rate(gamma={gamma})"),
            Schedule::SeqLength { c, alpha }
            | Schedule::PartialVisit { c, alpha }
            | Schedule::FullVisit { c, alpha }
            | Schedule::LeafVisit { c, alpha } => write!(f, "{}(c={c},alpha={alpha})", self.name()),
        }
    }
}

/// A schedule plus the context depth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariantConfig {
    pub schedule: Schedule,
    pub depth: usize,
}

impl VariantConfig {
    pub fn new(schedule: Schedule, depth: usize) -> Result<Self> {
        let config = VariantConfig { schedule, depth };
        config.validate()?;
        Ok(config)
    }

    pub fn ctw(depth: usize) -> Self {
        VariantConfig {
            schedule: Schedule::Ctw,
            depth,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=MAX_DEPTH).contains(&self.depth) {
            return Err(Error::InvalidDepth(self.depth));
        }
        self.schedule.validate()
    }

    /// Short label for reports, e.g. `actw2` for a preset or the schedule
    /// description otherwise.
    pub fn label(&self) -> String {
        match Preset::ALL.iter().find(|p| p.schedule() == self.schedule) {
            Some(preset) => preset.name().to_string(),
            None => self.schedule.to_string(),
        }
    }
}

/// Named parameterizations used in the benchmarks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Ctw,
    Actw1,
    Actw2,
    Actw3,
    Actw4,
    Actw5,
}

impl Preset {
    pub const ALL: [Preset; 6] = [
        Preset::Ctw,
        Preset::Actw1,
        Preset::Actw2,
        Preset::Actw3,
        Preset::Actw4,
        Preset::Actw5,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Ctw => "ctw",
            Preset::Actw1 => "actw1",
            Preset::Actw2 => "actw2",
            Preset::Actw3 => "actw3",
            Preset::Actw4 => "actw4",
            Preset::Actw5 => "actw5",
        }
    }

    pub fn schedule(&self) -> Schedule {
        match self {
            Preset::Ctw => Schedule::Ctw,
            Preset::Actw1 => Schedule::FixedRate { gamma: 0.01 },
            Preset::Actw2 => Schedule::PartialVisit { c: 0.1, alpha: 0.33 },
            Preset::Actw3 => Schedule::PartialVisit { c: 0.1, alpha: 0.5 },
            Preset::Actw4 => Schedule::FullVisit { c: 0.1, alpha: 0.33 },
            Preset::Actw5 => Schedule::LeafVisit { c: 0.1, alpha: 0.33 },
        }
    }

    pub fn config(&self, depth: usize) -> VariantConfig {
        VariantConfig {
            schedule: self.schedule(),
            depth,
        }
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Preset::ALL
            .iter()
            .copied()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown preset `{s}`"))
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name(), self.schedule())
    }
}
