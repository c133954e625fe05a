//! Where the joint-measurement cloner sits relative to the universal cloner.

use std::f64::consts::FRAC_PI_2;

use spinclone::fidelity::{fidelity_report, universal_baseline, SphereQuadrature};
use spinclone::measurement::{optimality_lhs, MeasurementGeometry};

fn main() {
    let u = universal_baseline();
    println!(
        "universal cloner: F = {:.6}, single-clone F = {:.6}, sharpness ({:.4}, {:.4})",
        u.global_fidelity, u.single_fidelity, u.alpha, u.beta
    );
    println!("its optimality LHS at right angles = {:.6} < 2", optimality_lhs(u.alpha, u.beta, FRAC_PI_2));

    let rule = SphereQuadrature::with_resolution(16);
    let mut best = (0.0, 0.0, 0.0);
    for i in 0..=40 {
        let eta = FRAC_PI_2 * i as f64 / 40.0;
        for j in 0..=40 {
            let alpha = j as f64 / 40.0;
            let r = fidelity_report(&MeasurementGeometry::canonical_max_beta(alpha, eta).unwrap(), &rule).unwrap();
            if r.f_av_quad > best.0 {
                best = (r.f_av_quad, alpha, eta);
            }
        }
    }
    println!("best grid F_av = {:.6} at alpha = {:.3}, eta = {:.3}", best.0, best.1, best.2);
}
