//! Optimal joint measurement of two spin components.
//!
//! Two components `a . sigma` and `b . sigma` are measured together with
//! sharpnesses `alpha` and `beta`. The measurement is optimal when
//! `|alpha a + beta b| + |alpha a - beta b| = 2`; it is then realised by
//! measuring along `m` with probability `p` and along `l` with probability
//! `1 - p`, where
//!
//! ```text
//! m = (alpha a + beta b) / 2p,     p     = |alpha a + beta b| / 2
//! l = (alpha a - beta b) / 2(1-p), 1 - p = |alpha a - beta b| / 2
//! ```
//!
//! All constructions happen in a canonical frame with `a = z` and
//! `b = (sin eta, 0, cos eta)`; [`MeasurementGeometry`] keeps the rotation back
//! to the caller's frame.

mod povm;
mod sampling;

pub use povm::{build_povm, joint_distribution, marginal_operators, JointDistribution, Marginals, Outcome, Povm4};
pub use sampling::{chi_square, sample_distribution, sample_outcomes, ChiSquareTest, OutcomeCounts, DEFAULT_SEED};

use std::f64::consts::PI;

use nalgebra::{Matrix3, Rotation3, Vector3};
use thiserror::Error;

use crate::linalg::{planar_eigenstates, su2_from_rotation, LinalgError, QubitOperator, QubitState, UnitVector3, TOLERANCE};

/// How far `|alpha a + beta b| + |alpha a - beta b|` may sit from 2.
pub const SATURATION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("sharpness {name} = {value} is outside [0, 1]")]
    InvalidSharpness { name: &'static str, value: f64 },
    #[error("joint measurement is not optimal: |alpha a + beta b| + |alpha a - beta b| - 2 = {residual:e}")]
    NonSaturating { residual: f64 },
    #[error("measurement axis undefined: p = {p}")]
    DegenerateAxis { p: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Which of the four measurement-related axes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    A,
    B,
    M,
    L,
}

/// Left-hand side of the optimality inequality for unit vectors at angle `eta`.
pub fn optimality_lhs(alpha: f64, beta: f64, eta: f64) -> f64 {
    let (s, c) = eta.sin_cos();
    let along = beta * c;
    let across = beta * s;
    (alpha + along).hypot(across) + (alpha - along).hypot(across)
}

/// Largest `beta` keeping the joint measurement of sharpness `alpha` physical.
///
/// Closed form `beta^2 = (1 - alpha^2) / (1 - alpha^2 cos^2 eta)`. When the
/// axes are parallel or antiparallel and `alpha = 1` the form is `0/0`; the
/// components commute there and both can be sharp, so the result is 1.
pub fn beta_max(alpha: f64, eta: f64) -> f64 {
    let alpha = alpha.clamp(0.0, 1.0);
    let c = eta.cos();
    let den = 1.0 - alpha * alpha * c * c;
    if den <= 0.0 {
        return 1.0;
    }
    ((1.0 - alpha * alpha) / den).max(0.0).sqrt().min(1.0)
}

/// Bisection for the largest `beta` in `[0, 1]` with `optimality_lhs <= 2`.
/// Numeric cross-check for [`beta_max`].
pub fn beta_max_bisection(alpha: f64, eta: f64) -> f64 {
    let excess = |beta: f64| optimality_lhs(alpha, beta, eta) - 2.0;
    if excess(1.0) <= 0.0 {
        return 1.0;
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if excess(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-16 {
            break;
        }
    }
    lo
}

/// Rotation from the canonical frame (`a = z`, `b` in the x-z plane with
/// `x >= 0`) to the caller's frame, together with its SU(2) representative.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frame {
    rotation: Rotation3<f64>,
    su2: QubitOperator,
}

impl Frame {
    fn identity() -> Self {
        Self { rotation: Rotation3::identity(), su2: QubitOperator::identity() }
    }

    fn for_axes(a: &UnitVector3, b: &UnitVector3) -> Self {
        let ez = a.as_vector();
        let cross = ez.cross(&b.as_vector());
        let ey = if cross.norm() > 1e-15 {
            cross
        } else if ez.cross(&Vector3::x()).norm() > 0.5 {
            ez.cross(&Vector3::x())
        } else {
            ez.cross(&Vector3::y())
        };
        // Re-orthogonalize so the frame stays orthonormal when a, b are nearly parallel.
        let ey = (ey - ez * ez.dot(&ey)).normalize();
        let ex = ey.cross(&ez);
        let m = Matrix3::from_columns(&[ex, ey, ez]);
        if m == Matrix3::identity() {
            return Self::identity();
        }
        let rotation = Rotation3::from_matrix_unchecked(m);
        Self { rotation, su2: su2_from_rotation(&rotation) }
    }

    pub fn rotation(&self) -> &Rotation3<f64> {
        &self.rotation
    }

    /// SU(2) matrix mapping canonical-frame states to caller-frame states.
    pub fn su2(&self) -> &QubitOperator {
        &self.su2
    }

    pub fn to_world(&self, v: &Vector3<f64>) -> Vector3<f64> {
        self.rotation * v
    }

    pub fn to_canonical(&self, v: &Vector3<f64>) -> Vector3<f64> {
        self.rotation.inverse() * v
    }
}

/// Parameters of an optimal joint measurement and everything derived from them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementGeometry {
    a: UnitVector3,
    b: UnitVector3,
    alpha: f64,
    beta: f64,
    eta: f64,
    m: UnitVector3,
    l: UnitVector3,
    p: f64,
    epsilon: f64,
    // Rotation angles of m and l about a x b, measured from a, in the
    // canonical frame: m in [0, pi], l in [pi, 2 pi].
    m_angle: f64,
    l_angle: f64,
    frame: Frame,
}

/// Builds the geometry for directions `a`, `b` and sharpnesses `alpha`, `beta`.
///
/// Rejects sharpness pairs that do not saturate the optimality inequality
/// within [`SATURATION_TOLERANCE`]. When `p = 1` the `l` axis carries no
/// weight and is set equal to `m` (and symmetrically for `p = 0`).
pub fn build_geometry(
    a: &UnitVector3,
    b: &UnitVector3,
    alpha: f64,
    beta: f64,
) -> Result<MeasurementGeometry, GeometryError> {
    for (name, value) in [("alpha", alpha), ("beta", beta)] {
        if !(0.0..=1.0).contains(&value) {
            return Err(GeometryError::InvalidSharpness { name, value });
        }
    }
    let (av, bv) = (a.as_vector(), b.as_vector());
    let residual = (alpha * av + beta * bv).norm() + (alpha * av - beta * bv).norm() - 2.0;
    if residual.abs() > SATURATION_TOLERANCE {
        return Err(GeometryError::NonSaturating { residual });
    }

    let eta = a.dot(b).clamp(-1.0, 1.0).acos();
    let frame = Frame::for_axes(a, b);
    let (s, c) = eta.sin_cos();
    let across = beta * s;
    let sum_z = alpha + beta * c;
    let diff_z = alpha - beta * c;
    let sum_len = sum_z.hypot(across);
    let diff_len = diff_z.hypot(across);
    let mut p = sum_len / (sum_len + diff_len);

    let mut m_angle = across.atan2(sum_z);
    let mut l_angle = 2.0 * PI - across.atan2(diff_z);
    // A vanishing axis takes the direction of the other one.
    if diff_len < TOLERANCE {
        l_angle = m_angle + 2.0 * PI;
    } else if sum_len < TOLERANCE {
        m_angle = l_angle - 2.0 * PI;
    }
    let planar = |angle: f64| Vector3::new(angle.sin(), 0.0, angle.cos());
    let mut m = UnitVector3::from_vector_unchecked(frame.to_world(&planar(m_angle)));
    let mut l = UnitVector3::from_vector_unchecked(frame.to_world(&planar(l_angle)));
    if diff_len < TOLERANCE {
        l = m;
        p = 1.0;
    } else if sum_len < TOLERANCE {
        m = l;
        p = 0.0;
    }
    // l_angle - m_angle lies in [pi, 2 pi]; the unsigned angle is its complement.
    let epsilon = PI - 0.5 * (l_angle - m_angle);

    Ok(MeasurementGeometry { a: *a, b: *b, alpha, beta, eta, m, l, p, epsilon, m_angle, l_angle, frame })
}

/// Like [`build_geometry`] but refuses the degenerate cases where one of the
/// `m`, `l` axes is undefined.
pub fn build_geometry_strict(
    a: &UnitVector3,
    b: &UnitVector3,
    alpha: f64,
    beta: f64,
) -> Result<MeasurementGeometry, GeometryError> {
    let g = build_geometry(a, b, alpha, beta)?;
    if g.is_degenerate() {
        return Err(GeometryError::DegenerateAxis { p: g.p });
    }
    Ok(g)
}

impl MeasurementGeometry {
    /// Geometry in the canonical frame `a = z`, `b = (sin eta, 0, cos eta)`.
    pub fn canonical(alpha: f64, beta: f64, eta: f64) -> Result<Self, GeometryError> {
        let b = UnitVector3::new(eta.sin(), 0.0, eta.cos())?;
        build_geometry(&UnitVector3::z_axis(), &b, alpha, beta)
    }

    /// Canonical geometry with `beta` at its largest allowed value.
    pub fn canonical_max_beta(alpha: f64, eta: f64) -> Result<Self, GeometryError> {
        Self::canonical(alpha, beta_max(alpha, eta), eta)
    }

    pub fn a(&self) -> UnitVector3 {
        self.a
    }

    pub fn b(&self) -> UnitVector3 {
        self.b
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Angle between `a` and `b`, in `[0, pi]`.
    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn m(&self) -> UnitVector3 {
        self.m
    }

    pub fn l(&self) -> UnitVector3 {
        self.l
    }

    /// Probability of measuring along `m`.
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Half the (unsigned) angle between `m` and `l`, in `[0, pi/2]`.
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Half the rotation angle from `m` to `l` about `a x b`, in `[pi/2, pi]`.
    ///
    /// This oriented branch satisfies `cos 2e = m . l` like [`Self::epsilon`],
    /// and is the one that keeps the Naimark basis orthonormal under the
    /// planar phase convention of [`Self::eigenstates`].
    pub fn naimark_half_angle(&self) -> f64 {
        0.5 * (self.l_angle - self.m_angle)
    }

    /// `(alpha^2 - beta^2) / (4 p (1 - p))`; `None` in the degenerate cases.
    pub fn cos_two_epsilon(&self) -> Option<f64> {
        if self.is_degenerate() {
            return None;
        }
        Some((self.alpha * self.alpha - self.beta * self.beta) / (4.0 * self.p * (1.0 - self.p)))
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Unit normal `a x b / |a x b|` of the measurement plane (a fixed
    /// perpendicular when `a` and `b` are parallel).
    pub fn normal(&self) -> UnitVector3 {
        UnitVector3::from_vector_unchecked(self.frame.to_world(&Vector3::y()))
    }

    /// `true` when one of `p`, `1 - p` vanishes.
    pub fn is_degenerate(&self) -> bool {
        self.p < TOLERANCE || 1.0 - self.p < TOLERANCE
    }

    pub fn saturation_residual(&self) -> f64 {
        let (a, b) = (self.a.as_vector(), self.b.as_vector());
        (self.alpha * a + self.beta * b).norm() + (self.alpha * a - self.beta * b).norm() - 2.0
    }

    fn axis_angle(&self, axis: Axis) -> f64 {
        match axis {
            Axis::A => 0.0,
            Axis::B => self.eta,
            Axis::M => self.m_angle,
            Axis::L => self.l_angle,
        }
    }

    /// Eigenstates `(|n+>, |n->)` of `n . sigma` for one of the axes.
    ///
    /// Phases follow the planar convention: in the canonical frame each axis
    /// sits at a rotation angle about `a x b` and its states are
    /// `(cos t/2, sin t/2)`, `(-sin t/2, cos t/2)`. For `a`, `b` and `m` this
    /// agrees with [`crate::linalg::spin_eigenstates`]; `l` (angle in
    /// `[pi, 2 pi]`) comes out with the opposite overall sign. States are
    /// then carried to the caller's frame by the frame's SU(2) matrix.
    pub fn eigenstates(&self, axis: Axis) -> (QubitState, QubitState) {
        let (plus, minus) = planar_eigenstates(self.axis_angle(axis));
        let v = self.frame.su2();
        (plus.transformed(v), minus.transformed(v))
    }

    pub fn axis(&self, axis: Axis) -> UnitVector3 {
        match axis {
            Axis::A => self.a,
            Axis::B => self.b,
            Axis::M => self.m,
            Axis::L => self.l,
        }
    }
}
