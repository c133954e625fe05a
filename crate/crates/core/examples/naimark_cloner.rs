//! The Naimark basis, the cloning unitary, and what it does to one input.

use spinclone::cloner::Cloner;
use spinclone::linalg::QubitState;
use spinclone::measurement::{MeasurementGeometry, Outcome};

fn main() {
    let g = MeasurementGeometry::canonical_max_beta(0.6, std::f64::consts::FRAC_PI_2).unwrap();
    let cloner = Cloner::new(&g).unwrap();
    println!("orthonormality residual = {:.1e}", cloner.basis().orthonormality_residual());
    println!("unitarity residual      = {:.1e}", cloner.unitary().unitarity_residual());

    for o in Outcome::ALL {
        let v = cloner.basis().vector(o).amplitudes();
        let shown: Vec<String> = v.iter().map(|z| format!("{:+.4}{:+.4}i", z.re, z.im)).collect();
        println!("phi_{o} = [{}]", shown.join(", "));
    }

    let psi = QubitState::from_bloch_angles(0.7, 1.9);
    let out = cloner.clone_pure(&psi);
    println!("\ninput Bloch vector {:?}", psi.bloch().as_slice());
    for (o, (l, w)) in Outcome::ALL.iter().zip(out.lambdas.unwrap().iter().zip(out.weights)) {
        let born = cloner.povm().element(*o).expectation(&psi).re;
        println!("lambda_{o} = {:+.6}{:+.6}i  |lambda|^2 = {w:.12}  Born = {born:.12}", l.re, l.im);
    }
    println!("Naimark residual = {:.1e}", cloner.basis().naimark_residual(&psi, cloner.blank(), cloner.povm()));
}
