//! Seeded Monte Carlo draws from the joint distribution.
//!
//! The generator is ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`, so the same seed and inputs reproduce the same counts on
//! every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::{build_povm, joint_distribution, JointDistribution, MeasurementGeometry, Outcome};
use crate::linalg::QubitOperator;

pub const DEFAULT_SEED: u64 = 0;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeCounts {
    counts: [u64; 4],
}

impl OutcomeCounts {
    pub fn from_counts(counts: [u64; 4]) -> Self {
        Self { counts }
    }

    pub fn get(&self, outcome: Outcome) -> u64 {
        self.counts[outcome.index()]
    }

    pub fn counts(&self) -> [u64; 4] {
        self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn frequencies(&self) -> [f64; 4] {
        let n = self.total().max(1) as f64;
        self.counts.map(|c| c as f64 / n)
    }
}

/// Draws one outcome by inverting the cumulative distribution.
fn draw<R: Rng + ?Sized>(cumulative: &[f64; 4], rng: &mut R) -> Outcome {
    let u: f64 = rng.random();
    let idx = cumulative.iter().position(|&c| u < c).unwrap_or(3);
    Outcome::ALL[idx]
}

/// `n` independent draws from `dist` using the caller's generator.
pub fn sample_distribution<R: Rng + ?Sized>(dist: &JointDistribution, n: u64, rng: &mut R) -> OutcomeCounts {
    let probs = dist.probs().map(|p| p.max(0.0));
    let total: f64 = probs.iter().sum();
    let mut cumulative = [0.0; 4];
    let mut acc = 0.0;
    for (c, p) in cumulative.iter_mut().zip(probs) {
        acc += p / total;
        *c = acc;
    }
    // The last non-empty cell absorbs roundoff in the running sum.
    if let Some(last) = probs.iter().rposition(|&p| p > 0.0) {
        for c in &mut cumulative[last..] {
            *c = 1.0;
        }
    }
    let mut counts = [0u64; 4];
    for _ in 0..n {
        counts[draw(&cumulative, rng).index()] += 1;
    }
    OutcomeCounts { counts }
}

/// Measures `state` `n` times with the joint measurement of `g`.
pub fn sample_outcomes(state: &QubitOperator, g: &MeasurementGeometry, n: u64, seed: u64) -> OutcomeCounts {
    let dist = joint_distribution(state, &build_povm(g));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_distribution(&dist, n, &mut rng)
}

/// Pearson goodness-of-fit of observed counts against exact probabilities.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub degrees_of_freedom: u32,
    pub p_value: f64,
}

/// Cells with zero expected probability are left out; a count landing in one
/// makes the statistic infinite and the p-value zero.
pub fn chi_square(counts: &OutcomeCounts, dist: &JointDistribution) -> ChiSquareTest {
    let n = counts.total() as f64;
    let mut statistic = 0.0;
    let mut cells = 0u32;
    for outcome in Outcome::ALL {
        let expected = dist.get(outcome).max(0.0) * n;
        let observed = counts.get(outcome) as f64;
        if expected > 0.0 {
            statistic += (observed - expected).powi(2) / expected;
            cells += 1;
        } else if observed > 0.0 {
            statistic = f64::INFINITY;
        }
    }
    let degrees_of_freedom = cells.saturating_sub(1);
    let p_value = if statistic.is_infinite() {
        0.0
    } else if degrees_of_freedom == 0 {
        1.0
    } else {
        ChiSquared::new(degrees_of_freedom as f64)
            .map(|d| d.sf(statistic))
            .unwrap_or(f64::NAN)
    };
    ChiSquareTest { statistic, degrees_of_freedom, p_value }
}
