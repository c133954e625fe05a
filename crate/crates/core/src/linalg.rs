//! Small fixed-size complex linear algebra for one and two qubits.
//!
//! Everything here is a thin newtype over `nalgebra` fixed-size matrices with
//! `Complex64` entries. Two-qubit amplitudes are ordered `(++, +-, -+, --)`
//! with qubit 1 as the slow index, so `|x>|y>` lands at index `2*x + y` where
//! `+` maps to 0 and `-` maps to 1.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::{Matrix2, Matrix4, Rotation3, SymmetricEigen, UnitQuaternion, Vector2, Vector3, Vector4};
use num_complex::Complex64;
use thiserror::Error;

/// Validation tolerance for unit-scale inputs.
pub const TOLERANCE: f64 = 1e-12;

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("vector is not unit length: |v| - 1 = {residual:e}")]
    NotUnit { residual: f64 },
    #[error("state is not normalized: |psi|^2 - 1 = {residual:e}")]
    NotNormalized { residual: f64 },
    #[error("cannot normalize a zero vector")]
    ZeroVector,
    #[error("operator is not Hermitian: max |M - M^dag| = {residual:e}")]
    NotHermitian { residual: f64 },
    #[error("operator trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },
    #[error("operator has negative eigenvalue {eigenvalue:e}")]
    NotPositive { eigenvalue: f64 },
    #[error("Bloch vector length {length} exceeds 1")]
    BlochTooLong { length: f64 },
}

/// A real unit vector in three dimensions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitVector3(Vector3<f64>);

impl UnitVector3 {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self, LinalgError> {
        Self::from_vector(Vector3::new(x, y, z))
    }

    /// Accepts `v` only if it is already unit length within [`TOLERANCE`].
    pub fn from_vector(v: Vector3<f64>) -> Result<Self, LinalgError> {
        let residual = v.norm() - 1.0;
        if !residual.is_finite() || residual.abs() > TOLERANCE {
            return Err(LinalgError::NotUnit { residual });
        }
        Ok(Self(v))
    }

    pub fn normalize(v: Vector3<f64>) -> Result<Self, LinalgError> {
        let n = v.norm();
        if !n.is_finite() || n == 0.0 {
            return Err(LinalgError::ZeroVector);
        }
        Ok(Self(v / n))
    }

    /// Unit vector with polar angle `theta` from +z and azimuth `phi` from +x.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        Self(Vector3::new(theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()))
    }

    pub fn x_axis() -> Self {
        Self(Vector3::x())
    }

    pub fn y_axis() -> Self {
        Self(Vector3::y())
    }

    pub fn z_axis() -> Self {
        Self(Vector3::z())
    }

    pub(crate) fn from_vector_unchecked(v: Vector3<f64>) -> Self {
        Self(v)
    }

    pub fn x(&self) -> f64 {
        self.0.x
    }

    pub fn y(&self) -> f64 {
        self.0.y
    }

    pub fn z(&self) -> f64 {
        self.0.z
    }

    pub fn as_vector(&self) -> Vector3<f64> {
        self.0
    }

    pub fn dot(&self, other: &UnitVector3) -> f64 {
        self.0.dot(&other.0)
    }

    /// `(theta, phi)` with `theta` in `[0, pi]` and `phi` in `(-pi, pi]`.
    pub fn polar_angles(&self) -> (f64, f64) {
        (self.0.x.hypot(self.0.y).atan2(self.0.z), self.0.y.atan2(self.0.x))
    }
}

impl fmt::Display for UnitVector3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0.x, self.0.y, self.0.z)
    }
}

/// A normalized single-qubit pure state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitState(Vector2<C64>);

impl QubitState {
    pub fn new(amp_plus: C64, amp_minus: C64) -> Result<Self, LinalgError> {
        Self::from_vector(Vector2::new(amp_plus, amp_minus))
    }

    pub fn from_vector(v: Vector2<C64>) -> Result<Self, LinalgError> {
        let residual = v.norm_squared() - 1.0;
        if !residual.is_finite() || residual.abs() > TOLERANCE {
            return Err(LinalgError::NotNormalized { residual });
        }
        Ok(Self(v))
    }

    pub fn normalize(v: Vector2<C64>) -> Result<Self, LinalgError> {
        let n = v.norm();
        if !n.is_finite() || n == 0.0 {
            return Err(LinalgError::ZeroVector);
        }
        Ok(Self(v.unscale(n)))
    }

    /// `cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>`, the state with Bloch
    /// vector at polar angle `theta` and azimuth `phi`.
    pub fn from_bloch_angles(theta: f64, phi: f64) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        Self(Vector2::new(C64::new(c, 0.0), C64::from_polar(s, phi)))
    }

    pub fn zero() -> Self {
        Self(Vector2::new(ONE, ZERO))
    }

    pub fn one() -> Self {
        Self(Vector2::new(ZERO, ONE))
    }

    pub(crate) fn from_vector_unchecked(v: Vector2<C64>) -> Self {
        Self(v)
    }

    pub fn amp_plus(&self) -> C64 {
        self.0[0]
    }

    pub fn amp_minus(&self) -> C64 {
        self.0[1]
    }

    pub fn as_vector(&self) -> &Vector2<C64> {
        &self.0
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &QubitState) -> C64 {
        self.0.dotc(&other.0)
    }

    pub fn density(&self) -> QubitOperator {
        QubitOperator(self.0 * self.0.adjoint())
    }

    pub fn bloch(&self) -> Vector3<f64> {
        let (a, b) = (self.0[0], self.0[1]);
        let coherence = a.conj() * b;
        Vector3::new(2.0 * coherence.re, 2.0 * coherence.im, a.norm_sqr() - b.norm_sqr())
    }

    /// `U|self>` for a unitary `U`; the result is renormalized to absorb roundoff.
    pub fn transformed(&self, unitary: &QubitOperator) -> QubitState {
        let v = unitary.0 * self.0;
        QubitState(v.unscale(v.norm()))
    }
}

/// A 2x2 complex operator on one qubit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitOperator(Matrix2<C64>);

impl QubitOperator {
    pub fn from_matrix(m: Matrix2<C64>) -> Self {
        Self(m)
    }

    pub fn identity() -> Self {
        Self(Matrix2::identity())
    }

    pub fn zero() -> Self {
        Self(Matrix2::zeros())
    }

    pub fn matrix(&self) -> &Matrix2<C64> {
        &self.0
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.0[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn determinant(&self) -> C64 {
        self.0.determinant()
    }

    pub fn scale(&self, k: f64) -> Self {
        Self(self.0.scale(k))
    }

    /// Max absolute entry of `M - M^dag`.
    pub fn hermiticity_residual(&self) -> f64 {
        max_abs(&(self.0 - self.0.adjoint()))
    }

    /// Max absolute entry of `self - other`.
    pub fn distance(&self, other: &QubitOperator) -> f64 {
        max_abs(&(self.0 - other.0))
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn hermitian_eigenvalues(&self) -> [f64; 2] {
        let a = self.0[(0, 0)].re;
        let d = self.0[(1, 1)].re;
        let b = 0.5 * (self.0[(0, 1)] + self.0[(1, 0)].conj());
        let mean = 0.5 * (a + d);
        let radius = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        [mean - radius, mean + radius]
    }

    /// `<psi|M|psi>`.
    pub fn expectation(&self, psi: &QubitState) -> C64 {
        psi.0.dotc(&(self.0 * psi.0))
    }

    /// Checks Hermitian, unit trace and positive semidefinite within `tol`.
    pub fn validate_density(&self, tol: f64) -> Result<(), LinalgError> {
        let residual = self.hermiticity_residual();
        if residual > tol {
            return Err(LinalgError::NotHermitian { residual });
        }
        let trace = self.trace().re;
        if (trace - 1.0).abs() > tol {
            return Err(LinalgError::TraceNotOne { trace });
        }
        let eigenvalue = self.hermitian_eigenvalues()[0];
        if eigenvalue < -tol {
            return Err(LinalgError::NotPositive { eigenvalue });
        }
        Ok(())
    }

    pub fn is_density(&self, tol: f64) -> bool {
        self.validate_density(tol).is_ok()
    }
}

impl Add for QubitOperator {
    type Output = QubitOperator;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl Sub for QubitOperator {
    type Output = QubitOperator;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl Mul for QubitOperator {
    type Output = QubitOperator;
    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

/// A normalized two-qubit pure state in the `(++, +-, -+, --)` ordering.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoQubitState(Vector4<C64>);

impl TwoQubitState {
    pub fn from_vector(v: Vector4<C64>) -> Result<Self, LinalgError> {
        let residual = v.norm_squared() - 1.0;
        if !residual.is_finite() || residual.abs() > TOLERANCE {
            return Err(LinalgError::NotNormalized { residual });
        }
        Ok(Self(v))
    }

    pub fn from_amplitudes(amps: [C64; 4]) -> Result<Self, LinalgError> {
        Self::from_vector(Vector4::from(amps))
    }

    pub fn as_vector(&self) -> &Vector4<C64> {
        &self.0
    }

    pub fn amplitudes(&self) -> [C64; 4] {
        [self.0[0], self.0[1], self.0[2], self.0[3]]
    }

    pub fn inner(&self, other: &TwoQubitState) -> C64 {
        self.0.dotc(&other.0)
    }

    pub fn density(&self) -> TwoQubitOperator {
        TwoQubitOperator(self.0 * self.0.adjoint())
    }

    /// Reduced state of one qubit. Cheaper than forming the 4x4 density first.
    pub fn reduced(&self, keep: Subsystem) -> QubitOperator {
        let v = &self.0;
        // Amplitudes as a 2x2 array c[i][j] with i the qubit-1 index.
        let c = Matrix2::new(v[0], v[1], v[2], v[3]);
        match keep {
            Subsystem::First => QubitOperator(c * c.adjoint()),
            Subsystem::Second => QubitOperator(c.transpose() * c.conjugate()),
        }
    }
}

/// Which qubit of a pair to keep in a partial trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subsystem {
    First,
    Second,
}

/// A 4x4 complex operator on two qubits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoQubitOperator(Matrix4<C64>);

impl TwoQubitOperator {
    pub fn from_matrix(m: Matrix4<C64>) -> Self {
        Self(m)
    }

    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    pub fn zero() -> Self {
        Self(Matrix4::zeros())
    }

    pub fn matrix(&self) -> &Matrix4<C64> {
        &self.0
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.0[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn scale(&self, k: f64) -> Self {
        Self(self.0.scale(k))
    }

    /// `|ket><bra|`.
    pub fn outer(ket: &TwoQubitState, bra: &TwoQubitState) -> Self {
        Self(ket.0 * bra.0.adjoint())
    }

    /// Applies the operator to a state. Meant for unitaries; the norm is
    /// renormalized to absorb roundoff.
    pub fn apply(&self, state: &TwoQubitState) -> TwoQubitState {
        let v = self.0 * state.0;
        TwoQubitState(v.unscale(v.norm()))
    }

    /// `U rho U^dag`.
    pub fn conjugate(&self, rho: &TwoQubitOperator) -> TwoQubitOperator {
        TwoQubitOperator(self.0 * rho.0 * self.0.adjoint())
    }

    /// `<psi|M|psi>`.
    pub fn expectation(&self, psi: &TwoQubitState) -> C64 {
        psi.0.dotc(&(self.0 * psi.0))
    }

    /// Max absolute entry of `U^dag U - 1`.
    pub fn unitarity_residual(&self) -> f64 {
        max_abs(&(self.0.adjoint() * self.0 - Matrix4::identity()))
    }

    pub fn hermiticity_residual(&self) -> f64 {
        max_abs(&(self.0 - self.0.adjoint()))
    }

    pub fn distance(&self, other: &TwoQubitOperator) -> f64 {
        max_abs(&(self.0 - other.0))
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn hermitian_eigenvalues(&self) -> [f64; 4] {
        let h = (self.0 + self.0.adjoint()).scale(0.5);
        let eig = SymmetricEigen::new(h);
        let mut vals = [eig.eigenvalues[0], eig.eigenvalues[1], eig.eigenvalues[2], eig.eigenvalues[3]];
        vals.sort_by(f64::total_cmp);
        vals
    }

    pub fn validate_density(&self, tol: f64) -> Result<(), LinalgError> {
        let residual = self.hermiticity_residual();
        if residual > tol {
            return Err(LinalgError::NotHermitian { residual });
        }
        let trace = self.trace().re;
        if (trace - 1.0).abs() > tol {
            return Err(LinalgError::TraceNotOne { trace });
        }
        let eigenvalue = self.hermitian_eigenvalues()[0];
        if eigenvalue < -tol {
            return Err(LinalgError::NotPositive { eigenvalue });
        }
        Ok(())
    }

    /// Partial trace without density validation.
    pub fn reduced(&self, keep: Subsystem) -> QubitOperator {
        let m = &self.0;
        let mut out = Matrix2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                out[(i, j)] = match keep {
                    Subsystem::First => m[(2 * i, 2 * j)] + m[(2 * i + 1, 2 * j + 1)],
                    Subsystem::Second => m[(i, j)] + m[(2 + i, 2 + j)],
                };
            }
        }
        QubitOperator(out)
    }
}

impl Add for TwoQubitOperator {
    type Output = TwoQubitOperator;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl Sub for TwoQubitOperator {
    type Output = TwoQubitOperator;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl Mul for TwoQubitOperator {
    type Output = TwoQubitOperator;
    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

fn max_abs<const R: usize, const C: usize>(
    m: &nalgebra::Matrix<C64, nalgebra::Const<R>, nalgebra::Const<C>, nalgebra::ArrayStorage<C64, R, C>>,
) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// The three Pauli matrices `(sigma_x, sigma_y, sigma_z)`.
pub fn pauli() -> [QubitOperator; 3] {
    [
        QubitOperator(Matrix2::new(ZERO, ONE, ONE, ZERO)),
        QubitOperator(Matrix2::new(ZERO, -I, I, ZERO)),
        QubitOperator(Matrix2::new(ONE, ZERO, ZERO, -ONE)),
    ]
}

/// `n . sigma`.
pub fn pauli_dot(n: &UnitVector3) -> QubitOperator {
    pauli_dot_vector(&n.as_vector())
}

/// `v . sigma` for any real vector; used for Bloch maps with `|v| <= 1`.
pub fn pauli_dot_vector(v: &Vector3<f64>) -> QubitOperator {
    let z = C64::new(v.z, 0.0);
    let off = C64::new(v.x, -v.y);
    QubitOperator(Matrix2::new(z, off, off.conj(), -z))
}

/// Eigenstates `(|n+>, |n->)` of `n . sigma`.
///
/// With `n = (sin t cos f, sin t sin f, cos t)` the states are
/// `|n+> = (cos t/2, e^{if} sin t/2)` and `|n-> = (-e^{-if} sin t/2, cos t/2)`,
/// which are real whenever `n` lies in the x-z half-plane with `x >= 0`.
pub fn spin_eigenstates(n: &UnitVector3) -> (QubitState, QubitState) {
    let (theta, phi) = n.polar_angles();
    let (s, c) = (theta / 2.0).sin_cos();
    let plus = Vector2::new(C64::new(c, 0.0), C64::from_polar(s, phi));
    let minus = Vector2::new(-C64::from_polar(s, -phi), C64::new(c, 0.0));
    (QubitState(plus), QubitState(minus))
}

/// Real eigenstates for an axis in the x-z plane at rotation angle `angle`
/// from +z towards +x: `(cos a/2, sin a/2)` and `(-sin a/2, cos a/2)`.
///
/// Unlike [`spin_eigenstates`] this is continuous in `angle` over a full turn,
/// so angles in `(pi, 2 pi]` give the negated pair of the same axis.
pub fn planar_eigenstates(angle: f64) -> (QubitState, QubitState) {
    let (s, c) = (angle / 2.0).sin_cos();
    (
        QubitState(Vector2::new(C64::new(c, 0.0), C64::new(s, 0.0))),
        QubitState(Vector2::new(C64::new(-s, 0.0), C64::new(c, 0.0))),
    )
}

/// Kronecker product of two single-qubit states.
pub fn tensor(s1: &QubitState, s2: &QubitState) -> TwoQubitState {
    let (a, b) = (s1.0, s2.0);
    TwoQubitState(Vector4::new(a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]))
}

/// Kronecker product of two single-qubit operators.
pub fn tensor_operators(a: &QubitOperator, b: &QubitOperator) -> TwoQubitOperator {
    TwoQubitOperator(a.0.kronecker(&b.0).fixed_view::<4, 4>(0, 0).into_owned())
}

/// Reduced density operator of `keep`. Rejects inputs that are not valid
/// two-qubit density operators.
pub fn partial_trace(rho: &TwoQubitOperator, keep: Subsystem) -> Result<QubitOperator, LinalgError> {
    rho.validate_density(TOLERANCE)?;
    Ok(rho.reduced(keep))
}

/// `c_i = Tr(rho sigma_i)`.
pub fn bloch_from_density(rho: &QubitOperator) -> Vector3<f64> {
    let m = rho.0;
    let off = m[(0, 1)];
    let off_t = m[(1, 0)];
    Vector3::new(
        (off + off_t).re,
        (I * (off - off_t)).re,
        (m[(0, 0)] - m[(1, 1)]).re,
    )
}

/// `(1 + c . sigma) / 2`.
pub fn density_from_bloch(c: &Vector3<f64>) -> Result<QubitOperator, LinalgError> {
    let length = c.norm();
    if !length.is_finite() || length > 1.0 + TOLERANCE {
        return Err(LinalgError::BlochTooLong { length });
    }
    Ok((QubitOperator::identity() + pauli_dot_vector(c)).scale(0.5))
}

/// The SU(2) element `exp(-i theta n . sigma / 2)` representing a rotation, so
/// that `V (v . sigma) V^dag = (R v) . sigma`.
pub fn su2_from_rotation(rotation: &Rotation3<f64>) -> QubitOperator {
    let q = UnitQuaternion::from_rotation_matrix(rotation);
    let (w, x, y, z) = (q.w, q.i, q.j, q.k);
    QubitOperator(Matrix2::new(
        C64::new(w, -z),
        C64::new(-y, -x),
        C64::new(y, -x),
        C64::new(w, z),
    ))
}
