//! Library results against independently computed values.

mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::Matrix4;
use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spinclone::cloner::Cloner;
use spinclone::fidelity::{fidelity_report, monte_carlo_average, universal_baseline, SphereQuadrature};
use spinclone::linalg::{QubitState, UnitVector3};
use spinclone::measurement::{beta_max, build_geometry, MeasurementGeometry};

use common::{bloch_of, global_fidelity_oracle, kron, reduce};

/// The six states along +-x, +-y, +-z. They form a spherical 3-design, and
/// every fidelity here is a polynomial of degree at most 3 in the Bloch
/// vector, so their mean is the exact sphere average.
fn octahedron() -> Vec<QubitState> {
    let s = 0.5f64.sqrt();
    let r = |x: f64| C64::new(x, 0.0);
    let i = |x: f64| C64::new(0.0, x);
    [(r(1.0), r(0.0)), (r(0.0), r(1.0)), (r(s), r(s)), (r(s), r(-s)), (r(s), i(s)), (r(s), i(-s))]
        .into_iter()
        .map(|(u, v)| QubitState::new(u, v).unwrap())
        .collect()
}

/// Exact `(F_av, F_a, F_b, F_m)` from the raw unitary, blank state and
/// product basis.
fn design_averages(cloner: &Cloner) -> [f64; 4] {
    let u: Matrix4<C64> = *cloner.unitary().matrix();
    let g = cloner.geometry();
    let states = octahedron();
    let mut acc = [0.0; 4];
    for psi in &states {
        let out = u * kron(psi, cloner.blank());
        let c = psi.bloch();
        let ca = bloch_of(&reduce(&out, true));
        let cb = bloch_of(&reduce(&out, false));
        // Measure-and-prepare: outcome (i, j) with Born weight, then
        // |a_i b_j>; its fidelity is weight * (1 + i a.c)/2 * (1 + j b.c)/2.
        let born = common::born_oracle(g, &c);
        let (ac, bc) = (g.a().as_vector().dot(&c), g.b().as_vector().dot(&c));
        let f_m: f64 = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
            .iter()
            .zip(born)
            .map(|(&(i, j), w)| w * 0.5 * (1.0 + i * ac) * 0.5 * (1.0 + j * bc))
            .sum();
        acc[0] += global_fidelity_oracle(&u, psi, cloner.blank());
        acc[1] += 0.5 * (1.0 + ca.dot(&c));
        acc[2] += 0.5 * (1.0 + cb.dot(&c));
        acc[3] += f_m;
    }
    acc.map(|x| x / states.len() as f64)
}

#[test]
fn beta_max_matches_bisection_oracle() {
    for i in 0..=40 {
        for j in 0..=40 {
            let (alpha, eta) = (i as f64 / 40.0, PI * j as f64 / 40.0);
            let got = beta_max(alpha, eta);
            let want = common::beta_limit(alpha, eta);
            assert!((got - want).abs() < 1e-6, "alpha {alpha} eta {eta}: {got} vs {want}");
        }
    }
}

#[test]
fn orthogonal_axes_example() {
    let g = MeasurementGeometry::canonical(0.6, 0.8, FRAC_PI_2).unwrap();
    assert!((g.p() - 0.5).abs() < 1e-15);
    assert!((g.m().as_vector() - nalgebra::Vector3::new(0.8, 0.0, 0.6)).norm() < 1e-15);
    assert!((g.l().as_vector() - nalgebra::Vector3::new(-0.8, 0.0, 0.6)).norm() < 1e-15);
    assert!((beta_max(0.6, FRAC_PI_2) - 0.8).abs() < 1e-15);
    let out = Cloner::new(&g).unwrap().clone_pure(&QubitState::zero());
    for (w, want) in out.weights.iter().zip([0.4, 0.4, 0.1, 0.1]) {
        assert!((w - want).abs() < 1e-14);
    }
}

#[test]
fn orthogonal_axes_fidelities_are_exact_fractions() {
    let g = MeasurementGeometry::canonical(0.6, 0.8, FRAC_PI_2).unwrap();
    let [f_av, f_a, f_b, f_m] = design_averages(&Cloner::new(&g).unwrap());
    assert!((f_av - 17.0 / 30.0).abs() < 1e-14, "{f_av}");
    assert!((f_a - 13.0 / 15.0).abs() < 1e-14, "{f_a}");
    assert!((f_b - 19.0 / 30.0).abs() < 1e-14, "{f_b}");
    assert!((f_m - 11.0 / 30.0).abs() < 1e-14, "{f_m}");
    let r = fidelity_report(&g, &SphereQuadrature::default()).unwrap();
    assert!((r.f_av_quad - 17.0 / 30.0).abs() < 1e-12);
    assert!((r.f_av_closed - 17.0 / 30.0).abs() < 1e-12);
    assert!((r.f_a_closed - 13.0 / 15.0).abs() < 1e-12);
}

#[test]
fn quadrature_matches_design_average_on_random_geometries() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let rule = SphereQuadrature::default();
    for _ in 0..40 {
        let g = common::random_geometry(&mut rng);
        let cloner = Cloner::new(&g).unwrap();
        let exact = design_averages(&cloner);
        let r = fidelity_report(&g, &rule).unwrap();
        let got = [r.f_av_quad, r.f_a_quad, r.f_b_quad, r.f_m_quad];
        for (x, y) in got.iter().zip(exact) {
            assert!((x - y).abs() < 1e-12, "{got:?} vs {exact:?}");
        }
    }
}

#[test]
fn closed_forms_match_design_average_on_grid() {
    for i in 0..=20 {
        for j in 0..=20 {
            let (alpha, eta) = (i as f64 / 20.0, PI * j as f64 / 20.0);
            let g = MeasurementGeometry::canonical_max_beta(alpha, eta).unwrap();
            let [f_av, f_a, f_b, _] = design_averages(&Cloner::new(&g).unwrap());
            assert!((spinclone::fidelity::f_av_closed(&g) - f_av).abs() < 1e-12, "alpha {alpha} eta {eta}");
            let (fa, fb) = spinclone::fidelity::f_single_closed(&g);
            assert!((fa - f_a).abs() < 1e-12, "alpha {alpha} eta {eta}");
            assert!((fb - f_b).abs() < 1e-12);
            assert!((fb - (0.5 + g.beta() / 6.0)).abs() < 1e-15);
        }
    }
}

#[test]
fn sharp_commuting_limit() {
    // Both copies of a projective measurement of a single axis: 2/3 each.
    let g = MeasurementGeometry::canonical(1.0, 1.0, 0.0).unwrap();
    let [f_av, f_a, f_b, _] = design_averages(&Cloner::new(&g).unwrap());
    assert!((f_a - 2.0 / 3.0).abs() < 1e-14);
    assert!((f_b - 2.0 / 3.0).abs() < 1e-14);
    assert!((f_av - 0.5).abs() < 1e-14);
}

#[test]
fn p_one_output_is_signed_schmidt_form() {
    let g = MeasurementGeometry::canonical(1.0, 1.0, 0.0).unwrap();
    let psi = QubitState::new(C64::new(0.6, 0.0), C64::new(0.0, 0.8)).unwrap();
    let out = Cloner::new(&g).unwrap().clone_pure(&psi);
    let l = out.lambdas.unwrap();
    assert!((l[0] - C64::new(0.6, 0.0)).norm() < 1e-14);
    assert!(l[1].norm() < 1e-14 && l[2].norm() < 1e-14);
    assert!((l[3] - C64::new(0.0, -0.8)).norm() < 1e-14);
}

#[test]
fn universal_baseline_values() {
    let u = universal_baseline();
    // Bloch vectors shrunk by 2/3 give single-clone fidelity (1 + 2/3)/2.
    assert!((u.single_fidelity - (1.0 + 2.0 / 3.0) / 2.0).abs() < 1e-15);
    assert!((u.global_fidelity - u.single_fidelity.powi(2)).abs() < 1e-15);
    assert!((u.global_fidelity - 0.6944).abs() < 1e-4);
}

#[test]
fn monte_carlo_agrees_with_quadrature() {
    let g = MeasurementGeometry::canonical_max_beta(0.35, 2.1).unwrap();
    let cloner = Cloner::new(&g).unwrap();
    let u = *cloner.unitary().matrix();
    let est = monte_carlo_average(|psi| global_fidelity_oracle(&u, psi, cloner.blank()), 100_000, 8);
    let quad = fidelity_report(&g, &SphereQuadrature::default()).unwrap().f_av_quad;
    assert!((est.mean - quad).abs() < 2e-3);
    assert!((est.mean - quad).abs() < 5.0 * est.std_error);
}

#[test]
fn world_frame_geometry_matches_canonical_numbers() {
    let a = UnitVector3::normalize(nalgebra::Vector3::new(1.0, 2.0, -0.5)).unwrap();
    let perp = UnitVector3::normalize(a.as_vector().cross(&nalgebra::Vector3::new(0.3, -1.0, 0.2))).unwrap();
    let eta = 1.1f64;
    let b = UnitVector3::normalize(a.as_vector() * eta.cos() + perp.as_vector() * eta.sin()).unwrap();
    let alpha = 0.45;
    let g = build_geometry(&a, &b, alpha, beta_max(alpha, eta)).unwrap();
    let canonical = MeasurementGeometry::canonical_max_beta(alpha, eta).unwrap();
    let world = design_averages(&Cloner::new(&g).unwrap());
    let reference = design_averages(&Cloner::new(&canonical).unwrap());
    for (x, y) in world.iter().zip(reference) {
        assert!((x - y).abs() < 1e-12);
    }
}
