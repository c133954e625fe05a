//! Joint measurement of two spin components and the quantum cloner built
//! from it.
//!
//! An unsharp joint measurement of `a.sigma` and `b.sigma` with sharpness
//! `alpha` and `beta` is realised by a two-qubit unitary acting on the input
//! and a blank qubit. The resulting cloner writes `a` onto the first output
//! and `b` onto the second. This crate builds the measurement, the unitary,
//! and the fidelities of the clones, and checks the closed-form expressions
//! against numerical quadrature.
//!
//! ```
//! use spinclone::measurement::MeasurementGeometry;
//! use spinclone::fidelity::{fidelity_report, SphereQuadrature};
//!
//! let g = MeasurementGeometry::canonical_max_beta(0.6, std::f64::consts::FRAC_PI_2).unwrap();
//! let report = fidelity_report(&g, &SphereQuadrature::with_resolution(16)).unwrap();
//! assert!((report.f_av_quad - report.f_av_closed).abs() < 1e-9);
//! ```

pub mod cli;
pub mod cloner;
pub mod fidelity;
pub mod linalg;
pub mod measurement;

pub use cloner::{CloneOutput, Cloner};
pub use fidelity::{fidelity_report, FidelityReport, SphereQuadrature};
pub use linalg::{QubitOperator, QubitState, UnitVector3};
pub use measurement::{build_geometry, MeasurementGeometry, Outcome};
