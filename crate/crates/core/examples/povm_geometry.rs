//! The optimal joint measurement of a.sigma and b.sigma.
//!
//! Run with `cargo run --example povm_geometry -- <alpha> <eta>`.

use std::env;

use spinclone::measurement::{beta_max, build_povm, marginal_operators, MeasurementGeometry, Outcome};

fn main() {
    let args: Vec<f64> = env::args().skip(1).map(|a| a.parse().expect("numeric argument")).collect();
    let alpha = args.first().copied().unwrap_or(0.6);
    let eta = args.get(1).copied().unwrap_or(std::f64::consts::FRAC_PI_2);

    let beta = beta_max(alpha, eta);
    let g = MeasurementGeometry::canonical(alpha, beta, eta).expect("beta_max saturates");
    println!("alpha = {alpha}, eta = {eta:.6}, beta_max = {beta:.12}");
    println!("p = {:.12}, epsilon = {:.12}", g.p(), g.epsilon());
    println!("m = {}\nl = {}", g.m(), g.l());
    println!("saturation residual = {:.1e}", g.saturation_residual());

    let povm = build_povm(&g);
    for o in Outcome::ALL {
        let e = povm.element(o);
        let [lo, hi] = e.hermitian_eigenvalues();
        println!("Pi_{o}: trace {:.6}, eigenvalues [{lo:.6}, {hi:.6}]", e.trace().re);
    }
    println!("completeness residual = {:.1e}", povm.completeness_residual());

    let marg = marginal_operators(&povm);
    println!("Pi^a_+ = (1 + alpha a.sigma)/2: trace {:.6}", marg.a[0].trace().re);

    // Sharpness past the bound is rejected with the size of the violation.
    match MeasurementGeometry::canonical(0.9, 0.9, std::f64::consts::FRAC_PI_2) {
        Ok(_) => unreachable!(),
        Err(e) => println!("alpha = beta = 0.9 at right angles: {e}"),
    }
}
