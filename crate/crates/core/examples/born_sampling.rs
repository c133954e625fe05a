//! Simulated runs of the joint measurement, checked with a chi-square test.

use spinclone::linalg::QubitState;
use spinclone::measurement::{build_povm, chi_square, joint_distribution, sample_outcomes, MeasurementGeometry, Outcome};

fn main() {
    let g = MeasurementGeometry::canonical_max_beta(0.6, std::f64::consts::FRAC_PI_2).unwrap();
    let rho = QubitState::from_bloch_angles(0.8, 0.3).density();
    let dist = joint_distribution(&rho, &build_povm(&g));
    let n = 200_000;
    let counts = sample_outcomes(&rho, &g, n, 42);
    for (o, f) in Outcome::ALL.iter().zip(counts.frequencies()) {
        println!("{o}: expected {:.6}  observed {f:.6}  ({} shots)", dist.get(*o), counts.get(*o));
    }
    let test = chi_square(&counts, &dist);
    println!("chi^2 = {:.3} on {} dof, p = {:.3}", test.statistic, test.degrees_of_freedom, test.p_value);
}
