//! Uniform averages over the Bloch sphere.
//!
//! Product rule: Gauss-Legendre in `cos theta` times the periodic trapezoid
//! rule in `phi`. With `n` Legendre nodes the rule integrates polynomials in
//! the Bloch components exactly up to degree `2n - 1` in `cos theta` and
//! `phi_nodes - 1` in the azimuthal harmonics.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::linalg::QubitState;

/// Gauss-Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "need at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut deriv = 0.0;
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            deriv = dp;
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                let (_, dp) = legendre_with_derivative(n, x);
                deriv = dp;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * deriv * deriv);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (x * p1 - p0) / (x * x - 1.0))
}

/// Neumaier-compensated running sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// A product quadrature rule on the sphere.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereQuadrature {
    cos_nodes: Vec<f64>,
    cos_weights: Vec<f64>,
    phi_nodes: usize,
}

impl Default for SphereQuadrature {
    /// 64 Legendre nodes in `cos theta`, 128 trapezoid nodes in `phi`.
    fn default() -> Self {
        Self::new(64, 128)
    }
}

impl SphereQuadrature {
    pub fn new(cos_nodes: usize, phi_nodes: usize) -> Self {
        assert!(phi_nodes >= 1, "need at least one azimuthal node");
        let (nodes, weights) = gauss_legendre(cos_nodes);
        Self { cos_nodes: nodes, cos_weights: weights, phi_nodes }
    }

    /// `n` Legendre nodes and `2n` azimuthal nodes.
    pub fn with_resolution(n: usize) -> Self {
        Self::new(n, 2 * n)
    }

    pub fn resolution(&self) -> (usize, usize) {
        (self.cos_nodes.len(), self.phi_nodes)
    }

    pub fn node_count(&self) -> usize {
        self.cos_nodes.len() * self.phi_nodes
    }

    /// Pure states at the quadrature nodes of one `cos theta` ring.
    fn ring(&self, u: f64) -> impl Iterator<Item = QubitState> + '_ {
        let theta = u.clamp(-1.0, 1.0).acos();
        let step = 2.0 * PI / self.phi_nodes as f64;
        (0..self.phi_nodes).map(move |j| QubitState::from_bloch_angles(theta, step * j as f64))
    }

    /// Uniform sphere average of `f`.
    pub fn average<F>(&self, f: F) -> f64
    where
        F: Fn(&QubitState) -> f64 + Sync,
    {
        self.average_many(|psi| [f(psi)])[0]
    }

    /// Averages several integrands sharing one evaluation per node. Rings are
    /// evaluated in parallel and combined in node order, so the result does
    /// not depend on scheduling.
    pub fn average_many<const N: usize, F>(&self, f: F) -> [f64; N]
    where
        F: Fn(&QubitState) -> [f64; N] + Sync,
    {
        let rings: Vec<[f64; N]> = self
            .cos_nodes
            .par_iter()
            .map(|&u| {
                let mut acc = [CompensatedSum::default(); N];
                for psi in self.ring(u) {
                    for (a, v) in acc.iter_mut().zip(f(&psi)) {
                        a.add(v);
                    }
                }
                acc.map(|a| a.value())
            })
            .collect();
        let mut total = [CompensatedSum::default(); N];
        for (ring, w) in rings.iter().zip(&self.cos_weights) {
            for (t, v) in total.iter_mut().zip(ring) {
                t.add(w * v);
            }
        }
        // Legendre weights sum to 2; each ring holds phi_nodes samples.
        let norm = 2.0 * self.phi_nodes as f64;
        total.map(|t| t.value() / norm)
    }
}

/// Uniform Bloch-sphere average of `f` under `rule`.
pub fn sphere_average<F>(f: F, rule: &SphereQuadrature) -> f64
where
    F: Fn(&QubitState) -> f64 + Sync,
{
    rule.average(f)
}
