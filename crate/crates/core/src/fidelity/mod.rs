//! Clone fidelities, their sphere averages, and the closed-form expressions
//! they are checked against.

mod monte_carlo;
mod quadrature;

pub use monte_carlo::{haar_state, monte_carlo_average, MonteCarloEstimate};
pub use quadrature::{gauss_legendre, sphere_average, CompensatedSum, SphereQuadrature};

use std::fmt;

use serde::Serialize;

use crate::cloner::{CloneError, Cloner};
use crate::linalg::{tensor, QubitOperator, QubitState, Subsystem, TwoQubitOperator, TwoQubitState};
use crate::measurement::{Axis, MeasurementGeometry};

/// Quadrature and closed form disagreeing by more than this raise a flag.
pub const DISCREPANCY_THRESHOLD: f64 = 1e-6;

/// `|<psi psi|c>|^2`.
pub fn global_fidelity(psi: &QubitState, joint: &TwoQubitState) -> f64 {
    tensor(psi, psi).inner(joint).norm_sqr()
}

/// `<psi psi| rho |psi psi>`.
pub fn mixed_fidelity(psi: &QubitState, rho: &TwoQubitOperator) -> f64 {
    rho.expectation(&tensor(psi, psi)).re
}

/// `<psi| rho |psi>`.
pub fn single_fidelity(psi: &QubitState, rho: &QubitOperator) -> f64 {
    rho.expectation(psi).re
}

/// `bracket / p`, taking the vanishing bracket at `p = 0` as zero.
fn over_p(bracket: f64, p: f64) -> f64 {
    if p > 0.0 {
        bracket / p
    } else {
        0.0
    }
}

/// Shared term `alpha sqrt(1-beta^2) + beta sqrt(1-beta^2) cos eta + beta sqrt(1-alpha^2) sin eta`.
fn cross_term(g: &MeasurementGeometry) -> f64 {
    let (a, b, eta) = (g.alpha(), g.beta(), g.eta());
    let sa = (1.0 - a * a).max(0.0).sqrt();
    let sb = (1.0 - b * b).max(0.0).sqrt();
    a * sb + b * sb * eta.cos() + b * sa * eta.sin()
}

/// Closed-form average global fidelity of the cloner.
pub fn f_av_closed(g: &MeasurementGeometry) -> f64 {
    let (a, b, eta) = (g.alpha(), g.beta(), g.eta());
    let sa = (1.0 - a * a).max(0.0).sqrt();
    let sb = (1.0 - b * b).max(0.0).sqrt();
    0.25 + a / 12.0 + b / 12.0 + a * b * eta.cos().powi(2) / 12.0 + sb / 12.0 + sa * eta.sin() / 12.0
        + over_p(cross_term(g), g.p()) / 24.0
}

/// Closed-form average single-clone fidelities `(F_a, F_b)`.
pub fn f_single_closed(g: &MeasurementGeometry) -> (f64, f64) {
    let (a, b) = (g.alpha(), g.beta());
    let sb = (1.0 - b * b).max(0.0).sqrt();
    let f_a = 0.5 + a / 6.0 + sb / 6.0 + over_p(cross_term(g), g.p()) / 12.0;
    (f_a, 0.5 + b / 6.0)
}

/// Closed-form single-clone fidelities of measure-and-prepare, `(F_ma, F_mb)`.
pub fn f_mixed_closed(g: &MeasurementGeometry) -> (f64, f64) {
    (0.5 + g.alpha() / 6.0, 0.5 + g.beta() / 6.0)
}

/// The optimal universal symmetric cloner, for comparison.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UniversalBaseline {
    pub global_fidelity: f64,
    pub single_fidelity: f64,
    /// Sharpness of the joint measurement it corresponds to.
    pub alpha: f64,
    pub beta: f64,
}

pub fn universal_baseline() -> UniversalBaseline {
    UniversalBaseline { global_fidelity: 25.0 / 36.0, single_fidelity: 5.0 / 6.0, alpha: 2.0 / 3.0, beta: 2.0 / 3.0 }
}

/// Which closed forms missed their quadrature value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DiscrepancyFlags {
    pub f_av: bool,
    pub f_a: bool,
    pub f_b: bool,
    pub f_ma: bool,
    pub f_mb: bool,
}

impl DiscrepancyFlags {
    pub fn any(&self) -> bool {
        self.f_av || self.f_a || self.f_b || self.f_ma || self.f_mb
    }

    fn names(&self) -> Vec<&'static str> {
        [(self.f_av, "f_av"), (self.f_a, "f_a"), (self.f_b, "f_b"), (self.f_ma, "f_ma"), (self.f_mb, "f_mb")]
            .into_iter()
            .filter_map(|(set, name)| set.then_some(name))
            .collect()
    }
}

/// Semicolon-separated flag names, empty when nothing is flagged.
impl fmt::Display for DiscrepancyFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names().join(";"))
    }
}

/// Sphere-averaged fidelities for one geometry.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FidelityReport {
    pub alpha: f64,
    pub beta: f64,
    pub eta: f64,
    pub p: f64,
    pub epsilon: f64,
    pub f_av_quad: f64,
    pub f_av_closed: f64,
    pub f_m_quad: f64,
    pub f_a_quad: f64,
    pub f_b_quad: f64,
    pub f_a_closed: f64,
    pub f_b_closed: f64,
    pub f_ma_quad: f64,
    pub f_mb_quad: f64,
    pub f_ma_closed: f64,
    pub f_mb_closed: f64,
    pub flags: DiscrepancyFlags,
}

/// Per-state fidelities `[F, F_a, F_b, F_m, F_ma, F_mb]` of the cloner and
/// of measure-and-prepare.
pub fn pointwise_fidelities(cloner: &Cloner, psi: &QubitState) -> [f64; 6] {
    let joint = cloner.output_state(psi);
    let f = global_fidelity(psi, &joint);
    let f_a = single_fidelity(psi, &joint.reduced(Subsystem::First));
    let f_b = single_fidelity(psi, &joint.reduced(Subsystem::Second));

    // Measure-and-prepare is diagonal in the product basis, so its fidelities
    // reduce to overlaps with the single-qubit eigenstates.
    let g = cloner.geometry();
    let (a_plus, a_minus) = g.eigenstates(Axis::A);
    let (b_plus, b_minus) = g.eigenstates(Axis::B);
    let oa = [psi.inner(&a_plus).norm_sqr(), psi.inner(&a_minus).norm_sqr()];
    let ob = [psi.inner(&b_plus).norm_sqr(), psi.inner(&b_minus).norm_sqr()];
    let (mut f_m, mut f_ma, mut f_mb) = (0.0, 0.0, 0.0);
    for (k, e) in cloner.povm().elements().iter().enumerate() {
        let w = e.expectation(psi).re;
        let (i, j) = (k / 2, k % 2);
        f_m += w * oa[i] * ob[j];
        f_ma += w * oa[i];
        f_mb += w * ob[j];
    }
    [f, f_a, f_b, f_m, f_ma, f_mb]
}

/// Averages every fidelity over the sphere in one pass and compares against
/// the closed forms.
pub fn fidelity_report(g: &MeasurementGeometry, rule: &SphereQuadrature) -> Result<FidelityReport, CloneError> {
    let cloner = Cloner::new(g)?;
    let [f_av_quad, f_a_quad, f_b_quad, f_m_quad, f_ma_quad, f_mb_quad] =
        rule.average_many(|psi| pointwise_fidelities(&cloner, psi));
    let f_av_closed = f_av_closed(g);
    let (f_a_closed, f_b_closed) = f_single_closed(g);
    let (f_ma_closed, f_mb_closed) = f_mixed_closed(g);
    let off = |x: f64, y: f64| (x - y).is_nan() || (x - y).abs() > DISCREPANCY_THRESHOLD;
    let flags = DiscrepancyFlags {
        f_av: off(f_av_quad, f_av_closed),
        f_a: off(f_a_quad, f_a_closed),
        f_b: off(f_b_quad, f_b_closed),
        f_ma: off(f_ma_quad, f_ma_closed),
        f_mb: off(f_mb_quad, f_mb_closed),
    };
    Ok(FidelityReport {
        alpha: g.alpha(),
        beta: g.beta(),
        eta: g.eta(),
        p: g.p(),
        epsilon: g.epsilon(),
        f_av_quad,
        f_av_closed,
        f_m_quad,
        f_a_quad,
        f_b_quad,
        f_a_closed,
        f_b_closed,
        f_ma_quad,
        f_mb_quad,
        f_ma_closed,
        f_mb_closed,
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cloner::measure_and_prepare;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn orthogonal_example_values() {
        let g = MeasurementGeometry::canonical(0.6, 0.8, FRAC_PI_2).unwrap();
        let r = fidelity_report(&g, &SphereQuadrature::default()).unwrap();
        assert!((r.f_av_quad - 0.566_666_666_666_666_7).abs() < 1e-9, "{r:?}");
        assert!((r.f_a_quad - 0.866_666_666_666_666_7).abs() < 1e-9);
        assert!((r.f_b_quad - 0.633_333_333_333_333_3).abs() < 1e-9);
        assert!((r.f_m_quad - 0.366_666_666_666_666_7).abs() < 1e-9);
        assert!((r.f_ma_quad - 0.6).abs() < 1e-9);
        assert!(!r.flags.any(), "{}", r.flags);
    }

    #[test]
    fn projective_limit() {
        let g = MeasurementGeometry::canonical(1.0, 1.0, 0.0).unwrap();
        let r = fidelity_report(&g, &SphereQuadrature::default()).unwrap();
        assert!((r.f_av_quad - 0.5).abs() < 1e-12);
        assert!((r.f_a_quad - 2.0 / 3.0).abs() < 1e-12);
        assert!((r.f_b_quad - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn antiparallel_sharp_axes_stay_finite() {
        let g = MeasurementGeometry::canonical(1.0, 1.0, PI).unwrap();
        let r = fidelity_report(&g, &SphereQuadrature::with_resolution(16)).unwrap();
        assert!(r.f_av_closed.is_finite() && r.f_a_closed.is_finite());
        assert!(!r.flags.any(), "{r:?}");
    }

    #[test]
    fn shortcut_matches_operator_path() {
        let g = MeasurementGeometry::canonical_max_beta(0.45, 1.1).unwrap();
        let cloner = Cloner::new(&g).unwrap();
        let psi = QubitState::from_bloch_angles(0.9, 2.4);
        let fast = pointwise_fidelities(&cloner, &psi);
        let rho = measure_and_prepare(&g, &psi);
        assert!((fast[3] - mixed_fidelity(&psi, &rho)).abs() < 1e-14);
        assert!((fast[4] - single_fidelity(&psi, &rho.reduced(Subsystem::First))).abs() < 1e-14);
        assert!((fast[5] - single_fidelity(&psi, &rho.reduced(Subsystem::Second))).abs() < 1e-14);
        let out = cloner.clone_pure(&psi);
        assert!((fast[1] - single_fidelity(&psi, &out.rho_a)).abs() < 1e-14);
    }

    #[test]
    fn baseline() {
        let u = universal_baseline();
        assert_eq!(u.global_fidelity, 25.0 / 36.0);
        assert_eq!((u.alpha, u.beta), (2.0 / 3.0, 2.0 / 3.0));
    }

    #[test]
    fn flags_display() {
        let flags = DiscrepancyFlags { f_av: true, f_mb: true, ..Default::default() };
        assert_eq!(flags.to_string(), "f_av;f_mb");
        assert_eq!(DiscrepancyFlags::default().to_string(), "");
    }
}
