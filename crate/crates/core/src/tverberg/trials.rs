//! Seeded random trials. Trial `i` of a run draws from ChaCha8 seeded with
//! the run seed on stream `i`, so any single trial can be replayed.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    birch_certificate, equal_coefficient_search, orientation, tverberg_partition, ColorConstraint, ColorMode,
    PointConfiguration,
};
use crate::error::{Error, Result};
use crate::lp::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrialKind {
    /// `q(d+1)` points, plain partitions.
    Tverberg,
    /// `q(d+c+1)` points with `c` classes of size at most `2q−1`.
    Rainbow,
    /// `q(q+1)(d+1)` points split into `q(d+1)` classes of size `q+1`.
    EqualCoefficient,
    /// `3q` planar points, triangle partitions.
    Birch,
}

impl TrialKind {
    pub const ALL: [TrialKind; 4] = [TrialKind::Tverberg, TrialKind::Rainbow, TrialKind::EqualCoefficient, TrialKind::Birch];

    pub fn name(self) -> &'static str {
        match self {
            TrialKind::Tverberg => "tverberg",
            TrialKind::Rainbow => "rainbow",
            TrialKind::EqualCoefficient => "equal-coefficient",
            TrialKind::Birch => "birch",
        }
    }
}

impl fmt::Display for TrialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TrialKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TrialKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown trial kind {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialSpec {
    pub kind: TrialKind,
    pub q: usize,
    pub d: usize,
    /// Number of color classes (rainbow trials only).
    pub colors: usize,
    pub trials: usize,
    pub seed: u64,
}

impl TrialSpec {
    pub fn new(kind: TrialKind, q: usize, d: usize, trials: usize, seed: u64) -> Self {
        let d = if kind == TrialKind::Birch { 2 } else { d };
        TrialSpec { kind, q, d, colors: 1, trials, seed }
    }

    pub fn points(&self) -> usize {
        match self.kind {
            TrialKind::Tverberg => self.q * (self.d + 1),
            TrialKind::Rainbow => self.q * (self.d + self.colors + 1),
            TrialKind::EqualCoefficient => self.q * (self.q + 1) * (self.d + 1),
            TrialKind::Birch => 3 * self.q,
        }
    }

    fn check(&self) -> Result<()> {
        if self.q < 2 && self.kind != TrialKind::Birch || self.q == 0 || self.d == 0 {
            return Err(Error::domain("trials need q ≥ 2 (q ≥ 1 for Birch) and d ≥ 1"));
        }
        if self.kind == TrialKind::Rainbow && self.colors == 0 {
            return Err(Error::domain("rainbow trials need at least one color class"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrialOutcome {
    /// A certificate was found and re-verified exactly.
    Certified,
    /// Input not in general position (Birch only); excluded from the rate.
    Degenerate,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialReport {
    pub spec: TrialSpec,
    pub certified: usize,
    pub degenerate: usize,
    /// Indices of failed trials.
    pub failures: Vec<usize>,
}

impl TrialReport {
    pub fn all_certified(&self) -> bool {
        self.failures.is_empty() && self.certified + self.degenerate == self.spec.trials
    }
}

/// Numerator in `[−1000, 1000]`, denominator in `[1, 20]`.
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.gen_range(-1000i64..=1000).into(), rng.gen_range(1i64..=20).into())
}

/// Input of trial `index`: the configuration and, for colored kinds, the
/// classes.
pub fn trial_input(spec: &TrialSpec, index: usize) -> (PointConfiguration, Option<ColorConstraint>) {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(index as u64);
    let n = spec.points();
    let points = (0..n).map(|_| (0..spec.d).map(|_| random_rational(&mut rng)).collect()).collect();
    let config = PointConfiguration { dim: spec.d, points };
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let classes = match spec.kind {
        TrialKind::Rainbow => {
            let mut rest = order.as_slice();
            let mut classes = Vec::with_capacity(spec.colors);
            for _ in 0..spec.colors {
                let size = rng.gen_range(1..=2 * spec.q - 1).min(rest.len());
                let (class, tail) = rest.split_at(size);
                classes.push(class.iter().copied().sorted().collect());
                rest = tail;
            }
            Some(ColorConstraint { mode: ColorMode::Rainbow, classes })
        }
        TrialKind::EqualCoefficient => {
            let classes = order.chunks(spec.q + 1).map(|c| c.iter().copied().sorted().collect()).collect();
            Some(ColorConstraint { mode: ColorMode::EqualCoefficient, classes })
        }
        _ => None,
    };
    (config, classes)
}

fn general_position(config: &PointConfiguration) -> bool {
    (0..config.len()).tuple_combinations().all(|(a, b, c)| {
        !orientation(&config.points[a], &config.points[b], &config.points[c]).is_zero()
    })
}

pub fn run_trial(spec: &TrialSpec, index: usize) -> Result<TrialOutcome> {
    spec.check()?;
    let (config, classes) = trial_input(spec, index);
    let ok = match spec.kind {
        TrialKind::Tverberg => tverberg_partition(&config, spec.q, None)?.is_some_and(|c| c.verify(&config).is_ok()),
        TrialKind::Rainbow => {
            let classes = classes.expect("rainbow classes");
            tverberg_partition(&config, spec.q, Some(&classes))?
                .is_some_and(|c| c.verify(&config).is_ok() && c.is_rainbow(&classes.classes))
        }
        TrialKind::EqualCoefficient => {
            let classes = classes.expect("equal-coefficient classes").classes;
            equal_coefficient_search(&config, spec.q, &classes)?
                .is_some_and(|c| c.verify(&config).is_ok() && c.has_equal_class_mass(&classes))
        }
        TrialKind::Birch => {
            if !general_position(&config) {
                return Ok(TrialOutcome::Degenerate);
            }
            birch_certificate(&config, spec.q)?.is_some_and(|c| c.verify(&config).is_ok())
        }
    };
    Ok(if ok { TrialOutcome::Certified } else { TrialOutcome::Failed })
}

/// Runs all trials of `spec` in parallel.
pub fn run_trials(spec: &TrialSpec) -> Result<TrialReport> {
    spec.check()?;
    let outcomes: Vec<TrialOutcome> = (0..spec.trials).into_par_iter().map(|i| run_trial(spec, i)).collect::<Result<_>>()?;
    let count = |o: TrialOutcome| outcomes.iter().filter(|&&x| x == o).count();
    Ok(TrialReport {
        spec: spec.clone(),
        certified: count(TrialOutcome::Certified),
        degenerate: count(TrialOutcome::Degenerate),
        failures: outcomes.iter().positions(|&o| o == TrialOutcome::Failed).collect(),
    })
}
