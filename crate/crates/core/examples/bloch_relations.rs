//! How the cloner shrinks the input Bloch vector onto each output.
//!
//! The first clone keeps `alpha` of the `a` component and `sqrt(1 - beta^2)`
//! of the component normal to the a-b plane; the second keeps `beta` of the
//! `b` component and nothing along the normal.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spinclone::cloner::Cloner;
use spinclone::fidelity::haar_state;
use spinclone::measurement::MeasurementGeometry;

fn main() {
    let g = MeasurementGeometry::canonical_max_beta(0.5, 1.2).unwrap();
    let cloner = Cloner::new(&g).unwrap();
    let (a, b, n) = (g.a().as_vector(), g.b().as_vector(), g.normal().as_vector());
    println!("alpha = {:.6}, beta = {:.6}, sqrt(1 - beta^2) = {:.6}", g.alpha(), g.beta(), (1.0 - g.beta().powi(2)).sqrt());
    println!("{:>10} {:>10} {:>10} {:>10} {:>10} {:>10}", "a.c", "a.c_a", "b.c", "b.c_b", "n.c", "n.c_a");

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..5 {
        let psi = haar_state(&mut rng);
        let out = cloner.clone_pure(&psi);
        let c = out.input_bloch;
        println!(
            "{:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            a.dot(&c),
            a.dot(&out.bloch_a),
            b.dot(&c),
            b.dot(&out.bloch_b),
            n.dot(&c),
            n.dot(&out.bloch_a)
        );
        assert!(out.bloch_residuals(&g).max_abs() < 1e-10);
    }
}
