//! Haar-random pure states and plain Monte Carlo sphere averages.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{QubitState, C64};

/// A Haar-random qubit: two standard normals per complex amplitude, normalized.
pub fn haar_state<R: Rng + ?Sized>(rng: &mut R) -> QubitState {
    loop {
        let mut draw = || -> f64 { rng.sample(StandardNormal) };
        let v = nalgebra::Vector2::new(C64::new(draw(), draw()), C64::new(draw(), draw()));
        if let Ok(psi) = QubitState::normalize(v) {
            return psi;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    /// Sample standard deviation divided by `sqrt(samples)`.
    pub std_error: f64,
    pub samples: u64,
}

/// Average of `f` over `samples` Haar-random states drawn from a ChaCha8
/// stream seeded with `seed`.
pub fn monte_carlo_average<F>(f: F, samples: u64, seed: u64) -> MonteCarloEstimate
where
    F: Fn(&QubitState) -> f64,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Welford's update keeps the variance stable for long runs.
    let (mut mean, mut m2) = (0.0, 0.0);
    for k in 1..=samples {
        let x = f(&haar_state(&mut rng));
        let delta = x - mean;
        mean += delta / k as f64;
        m2 += delta * (x - mean);
    }
    let var = if samples > 1 { m2 / (samples - 1) as f64 } else { 0.0 };
    MonteCarloEstimate { mean, std_error: (var / samples.max(1) as f64).sqrt(), samples }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haar_states_are_uniform_on_sphere() {
        let est = monte_carlo_average(|psi| psi.bloch().z, 200_000, 1);
        assert!(est.mean.abs() < 5.0 * est.std_error);
        let est = monte_carlo_average(|psi| psi.bloch().x.powi(2), 200_000, 2);
        assert!((est.mean - 1.0 / 3.0).abs() < 5.0 * est.std_error);
    }

    #[test]
    fn deterministic_for_seed() {
        let a = monte_carlo_average(|psi| psi.bloch().y, 1000, 9);
        let b = monte_carlo_average(|psi| psi.bloch().y, 1000, 9);
        assert_eq!(a, b);
    }
}
