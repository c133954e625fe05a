//! Test-side oracles. Written directly from the defining formulas and kept
//! independent of the library's construction code.
#![allow(dead_code)]

use std::f64::consts::PI;

use nalgebra::{Matrix2, Vector3, Vector4};
use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::StandardNormal;
use spinclone::linalg::{QubitState, UnitVector3};
use spinclone::measurement::{build_geometry, MeasurementGeometry};

pub fn haar<R: Rng>(rng: &mut R) -> QubitState {
    loop {
        let z: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let norm = z.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return QubitState::new(C64::new(z[0], z[1]) / norm, C64::new(z[2], z[3]) / norm).unwrap();
        }
    }
}

pub fn random_unit<R: Rng>(rng: &mut R) -> Vector3<f64> {
    let u: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..2.0 * PI);
    let s = (1.0 - u * u).sqrt();
    Vector3::new(s * phi.cos(), s * phi.sin(), u)
}

/// Largest `beta` with `|alpha a + beta b| + |alpha a - beta b| <= 2`, by
/// bisection on the inequality itself.
pub fn beta_limit(alpha: f64, eta: f64) -> f64 {
    let a = Vector3::z();
    let b = Vector3::new(eta.sin(), 0.0, eta.cos());
    let lhs = |beta: f64| (alpha * a + beta * b).norm() + (alpha * a - beta * b).norm();
    if lhs(1.0) <= 2.0 {
        return 1.0;
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if lhs(mid) <= 2.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Random optimal geometry: random `a`, random `b` at a random angle, random
/// `alpha`, and the closed-form largest `beta`.
pub fn random_geometry<R: Rng>(rng: &mut R) -> MeasurementGeometry {
    let a = random_unit(rng);
    let r = random_unit(rng);
    let perp = (r - a * a.dot(&r)).normalize();
    let eta: f64 = rng.random_range(0.0..PI);
    let b = a * eta.cos() + perp * eta.sin();
    let alpha: f64 = rng.random();
    let beta2 = (1.0 - alpha * alpha) / (1.0 - alpha * alpha * eta.cos().powi(2));
    let beta = beta2.clamp(0.0, 1.0).sqrt();
    let a = UnitVector3::normalize(a).unwrap();
    let b = UnitVector3::normalize(b).unwrap();
    build_geometry(&a, &b, alpha, beta).unwrap()
}

/// Born probabilities `(++, +-, -+, --)` for Bloch vector `c`, from
/// `Pi_{+-+-} = (p/2)(1 +- m.sigma)` and `Pi_{+-,-+} = ((1-p)/2)(1 +- l.sigma)`
/// with `m`, `l`, `p` computed here from `alpha a +- beta b`.
pub fn born_oracle(g: &MeasurementGeometry, c: &Vector3<f64>) -> [f64; 4] {
    let s = g.alpha() * g.a().as_vector() + g.beta() * g.b().as_vector();
    let d = g.alpha() * g.a().as_vector() - g.beta() * g.b().as_vector();
    // (p/2)(1 + m.c) = p/2 + (s.c)/4, and likewise for l with d.
    let p = 0.5 * s.norm();
    let q = 0.5 * d.norm();
    [
        0.5 * p + 0.25 * s.dot(c),
        0.5 * q + 0.25 * d.dot(c),
        0.5 * q - 0.25 * d.dot(c),
        0.5 * p - 0.25 * s.dot(c),
    ]
}

pub fn kron(u: &QubitState, v: &QubitState) -> Vector4<C64> {
    let (u, v) = (u.as_vector(), v.as_vector());
    Vector4::new(u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1])
}

/// Reduced density matrix of one qubit of a two-qubit pure state, by summing
/// over the other index.
pub fn reduce(amps: &Vector4<C64>, keep_first: bool) -> Matrix2<C64> {
    let c = |i: usize, j: usize| amps[2 * i + j];
    Matrix2::from_fn(|r, s| {
        (0..2)
            .map(|k| if keep_first { c(r, k) * c(s, k).conj() } else { c(k, r) * c(k, s).conj() })
            .sum()
    })
}

pub fn bloch_of(rho: &Matrix2<C64>) -> Vector3<f64> {
    Vector3::new(2.0 * rho[(1, 0)].re, 2.0 * rho[(1, 0)].im, (rho[(0, 0)] - rho[(1, 1)]).re)
}

/// `|<psi psi| U |psi b+>|^2` evaluated from raw matrix entries.
pub fn global_fidelity_oracle(u: &nalgebra::Matrix4<C64>, psi: &QubitState, blank: &QubitState) -> f64 {
    let out = u * kron(psi, blank);
    kron(psi, psi).dotc(&out).norm_sqr()
}
