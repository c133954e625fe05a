//! Convergence of the sphere quadrature against the closed forms.

use spinclone::fidelity::{f_av_closed, fidelity_report, SphereQuadrature};
use spinclone::measurement::MeasurementGeometry;

fn main() {
    let g = MeasurementGeometry::canonical_max_beta(0.35, 2.2).unwrap();
    let exact = f_av_closed(&g);
    println!("closed form F_av = {exact:.15}");
    for n in [1, 2, 3, 4, 8, 16, 64] {
        let rule = SphereQuadrature::with_resolution(n);
        let r = fidelity_report(&g, &rule).unwrap();
        println!("{:>3} x {:<3} nodes: F_av = {:.15}  error {:.1e}", n, 2 * n, r.f_av_quad, (r.f_av_quad - exact).abs());
    }
}
