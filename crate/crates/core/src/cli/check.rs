//! The invariant suites run by `spinclone check`.

use std::f64::consts::PI;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cloner::{naimark_gram_residual, CloneError, Cloner};
use crate::fidelity::{f_mixed_closed, f_single_closed, fidelity_report, haar_state, universal_baseline, SphereQuadrature};
use crate::linalg::{pauli, pauli_dot, spin_eigenstates, QubitOperator, UnitVector3};
use crate::measurement::{
    beta_max, build_geometry, build_povm, marginal_operators, optimality_lhs, MeasurementGeometry, Outcome,
};

/// Settings for [`run_checks`].
#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub alpha_steps: usize,
    pub eta_steps: usize,
    /// Random `(geometry, state)` pairs per randomized suite.
    pub samples: usize,
    pub seed: u64,
    /// Legendre nodes for the fidelity suites (twice as many in `phi`).
    pub quad_res: usize,
    /// Negates one term of the Naimark basis so the orthonormality suite
    /// has something to catch.
    pub inject_sign_error: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self { alpha_steps: 41, eta_steps: 41, samples: 1000, seed: 0, quad_res: 64, inject_sign_error: false }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.residual <= self.tolerance
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status}  {:<36} residual {:.3e}  (tol {:.0e})", self.name, self.residual, self.tolerance)
    }
}

#[derive(Clone, Debug, Default)]
pub struct CheckReport {
    pub suites: Vec<SuiteResult>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }

    fn push(&mut self, name: &'static str, residual: f64, tolerance: f64) {
        self.suites.push(SuiteResult { name, residual, tolerance });
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            writeln!(f, "{s}")?;
        }
        let failed = self.suites.iter().filter(|s| !s.passed()).count();
        write!(f, "{} suites, {} failed", self.suites.len(), failed)
    }
}

/// Geometries on an `alpha x eta` grid over `[0, 1] x [0, pi]` with `beta = beta_max`.
pub fn grid_geometries(alpha_steps: usize, eta_steps: usize) -> Vec<MeasurementGeometry> {
    let mut out = Vec::with_capacity(alpha_steps * eta_steps);
    for i in 0..alpha_steps {
        let alpha = i as f64 / (alpha_steps - 1).max(1) as f64;
        for j in 0..eta_steps {
            let eta = PI * j as f64 / (eta_steps - 1).max(1) as f64;
            out.push(MeasurementGeometry::canonical_max_beta(alpha, eta).expect("beta_max saturates"));
        }
    }
    out
}

/// A random optimal geometry with arbitrarily oriented `a` and `b`.
pub fn random_geometry<R: Rng + ?Sized>(rng: &mut R) -> MeasurementGeometry {
    let a = UnitVector3::from_vector_unchecked(haar_state(rng).bloch());
    let r = haar_state(rng).bloch();
    let perp = (r - a.as_vector() * a.as_vector().dot(&r)).normalize();
    let eta = PI * rng.random::<f64>();
    let b = UnitVector3::normalize(a.as_vector() * eta.cos() + perp * eta.sin()).expect("unit");
    let alpha: f64 = rng.random();
    let beta = beta_max(alpha, a.dot(&b).clamp(-1.0, 1.0).acos());
    build_geometry(&a, &b, alpha, beta).expect("beta_max saturates")
}

fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, |acc: f64, x| if x.is_nan() { f64::INFINITY } else { acc.max(x) })
}

/// Runs every suite. Suites never stop early; failures show up as residuals
/// above tolerance.
pub fn run_checks(opts: &CheckOptions) -> CheckReport {
    let mut report = CheckReport::default();
    let grid = grid_geometries(opts.alpha_steps.max(2), opts.eta_steps.max(2));
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let random: Vec<_> = (0..opts.samples).map(|_| (random_geometry(&mut rng), haar_state(&mut rng))).collect();
    let one = QubitOperator::identity();

    let paulis = pauli();
    let mut algebra = max_of(paulis.iter().map(|s| (*s * *s).distance(&one)));
    for (_, psi) in &random {
        let n = UnitVector3::from_vector_unchecked(psi.bloch());
        let (plus, minus) = spin_eigenstates(&n);
        let s = pauli_dot(&n);
        algebra = algebra.max((s.expectation(&plus).re - 1.0).abs());
        algebra = algebra.max((s.expectation(&minus).re + 1.0).abs());
    }
    report.push("pauli algebra and eigenstates", algebra, 1e-12);

    let povms: Vec<_> = grid.iter().map(build_povm).collect();
    report.push("povm completeness", max_of(povms.iter().map(|p| p.completeness_residual())), 1e-12);
    report.push("povm positivity", max_of(povms.iter().map(|p| -p.min_eigenvalue())).max(0.0), 1e-12);
    let unbiased = max_of(grid.iter().zip(&povms).map(|(g, povm)| {
        let marg = marginal_operators(povm);
        let a_plus = (one + pauli_dot(&g.a()).scale(g.alpha())).scale(0.5);
        let b_plus = (one + pauli_dot(&g.b()).scale(g.beta())).scale(0.5);
        marg.a[0].distance(&a_plus).max(marg.b[0].distance(&b_plus))
    }));
    report.push("unbiased marginals", unbiased, 1e-12);

    let saturation = max_of(grid.iter().chain(random.iter().map(|(g, _)| g)).map(|g| g.saturation_residual().abs()));
    report.push("optimality saturation", saturation, 1e-9);
    let universal = optimality_lhs(2.0 / 3.0, 2.0 / 3.0, PI / 2.0);
    report.push("universal sharpness is unsaturated", (universal - 4.0 * 2f64.sqrt() / 3.0).abs(), 1e-12);

    let ortho = max_of(grid.iter().chain(random.iter().map(|(g, _)| g)).map(|g| {
        naimark_gram_residual(g, opts.inject_sign_error).unwrap_or(f64::INFINITY)
    }));
    report.push("naimark orthonormality", ortho, 1e-12);

    let cloners: Result<Vec<_>, CloneError> = random.iter().map(|(g, _)| Cloner::new(g)).collect();
    let Ok(cloners) = cloners else {
        for name in ["naimark condition", "unitarity", "statistics equivalence", "bloch relations"] {
            report.push(name, f64::INFINITY, 0.0);
        }
        return report;
    };

    let naimark = max_of(random.iter().zip(&cloners).map(|((_, psi), c)| {
        c.basis().naimark_residual(psi, c.blank(), c.povm())
    }));
    report.push("naimark condition", naimark, 1e-10);

    let grid_unitarity = grid.iter().map(|g| Cloner::new(g).map(|c| c.unitary().unitarity_residual()));
    let unitarity = max_of(
        grid_unitarity
            .map(|r| r.unwrap_or(f64::INFINITY))
            .chain(cloners.iter().map(|c| c.unitary().unitarity_residual())),
    );
    report.push("unitarity", unitarity, 1e-12);

    let stats = max_of(random.iter().zip(&cloners).map(|((_, psi), c)| {
        let out = c.clone_pure(psi);
        let mp = c.measure_and_prepare(&psi.density());
        Outcome::ALL
            .iter()
            .map(|&o| {
                let born = c.povm().element(o).expectation(psi).re;
                let diag = mp.expectation(&c.product_basis()[o.index()]).re;
                (out.weights[o.index()] - born).abs().max((diag - born).abs())
            })
            .fold(0.0, f64::max)
    }));
    report.push("statistics equivalence", stats, 1e-10);

    let bloch = max_of(random.iter().zip(&cloners).map(|((g, psi), c)| c.clone_pure(psi).bloch_residuals(g).max_abs()));
    report.push("bloch relations", bloch, 1e-10);

    // Quadrature is the expensive part; a coarse grid is enough to catch a
    // broken closed form or integrand.
    let rule = SphereQuadrature::with_resolution(opts.quad_res.max(1));
    let coarse = grid_geometries(5, 5);
    let mut single = 0.0_f64;
    let mut ordering = 0.0_f64;
    for g in &coarse {
        match fidelity_report(g, &rule) {
            Ok(r) => {
                let (_, f_b) = f_single_closed(g);
                let (f_ma, f_mb) = f_mixed_closed(g);
                single = single
                    .max((r.f_b_quad - f_b).abs())
                    .max((r.f_ma_quad - f_ma).abs())
                    .max((r.f_mb_quad - f_mb).abs());
                ordering = ordering.max(r.f_m_quad - r.f_av_quad);
            }
            Err(_) => single = f64::INFINITY,
        }
    }
    report.push("single-clone closed forms", single, 1e-9);
    report.push("cloner beats measure-and-prepare", ordering.max(0.0), 1e-10);

    let projective = MeasurementGeometry::canonical(1.0, 1.0, 0.0).expect("commuting sharp pair");
    let limit = fidelity_report(&projective, &rule)
        .map(|r| (r.f_a_quad - 2.0 / 3.0).abs().max((r.f_b_quad - 2.0 / 3.0).abs()))
        .unwrap_or(f64::INFINITY);
    report.push("projective limit 2/3", limit, 1e-9);
    report.push("universal baseline 25/36", (universal_baseline().global_fidelity - 25.0 / 36.0).abs(), 0.0);

    report
}
