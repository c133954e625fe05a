//! The cloning machine: a Naimark extension of the joint measurement turned
//! into a two-qubit unitary.
//!
//! The input qubit is paired with a blank qubit prepared in `|b+>`. The
//! unitary maps the Naimark basis vector `|phi_ij>` onto the product state
//! `|a_i>|b_j>` (with a minus sign for `i = -`), so the output weights in the
//! `|a+->|b+->` basis reproduce the joint-measurement statistics exactly.

use nalgebra::{Vector3, Vector4};
use thiserror::Error;

use crate::linalg::{
    bloch_from_density, tensor, LinalgError, QubitOperator, QubitState, Subsystem, TwoQubitOperator,
    TwoQubitState, C64, TOLERANCE,
};
use crate::measurement::{build_povm, Axis, JointDistribution, MeasurementGeometry, Outcome, Povm4};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CloneError {
    #[error("Naimark basis is not orthonormal: max |<phi_i|phi_j> - delta_ij| = {residual:e}")]
    OrthonormalityFailure { residual: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Four orthonormal two-qubit vectors `|phi_ij>`, labelled by [`Outcome`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NaimarkBasis {
    vectors: [TwoQubitState; 4],
}

impl NaimarkBasis {
    /// Accepts the vectors only if they are orthonormal within [`TOLERANCE`].
    pub fn from_vectors(vectors: [TwoQubitState; 4]) -> Result<Self, CloneError> {
        let basis = Self { vectors };
        let residual = basis.orthonormality_residual();
        if residual.is_nan() || residual > TOLERANCE {
            return Err(CloneError::OrthonormalityFailure { residual });
        }
        Ok(basis)
    }

    pub fn vector(&self, outcome: Outcome) -> &TwoQubitState {
        &self.vectors[outcome.index()]
    }

    pub fn vectors(&self) -> &[TwoQubitState; 4] {
        &self.vectors
    }

    /// Max over the Gram matrix of `|<phi_i|phi_j> - delta_ij|`.
    pub fn orthonormality_residual(&self) -> f64 {
        gram_residual(&self.vectors)
    }

    /// Max over outcomes of `| |<phi_ij|psi, b+>|^2 - <psi|Pi_ij|psi> |`.
    pub fn naimark_residual(&self, psi: &QubitState, b_plus: &QubitState, povm: &Povm4) -> f64 {
        let input = tensor(psi, b_plus);
        Outcome::ALL
            .iter()
            .map(|&o| {
                let overlap = self.vector(o).inner(&input).norm_sqr();
                (overlap - povm.element(o).expectation(psi).re).abs()
            })
            .fold(0.0, f64::max)
    }
}

fn gram_residual(vectors: &[TwoQubitState; 4]) -> f64 {
    let mut worst = 0.0_f64;
    for (i, u) in vectors.iter().enumerate() {
        for (j, v) in vectors.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((u.inner(v) - C64::new(target, 0.0)).norm());
        }
    }
    worst
}

fn kron(u: &QubitState, v: &QubitState) -> Vector4<C64> {
    *tensor(u, v).as_vector()
}

/// Raw basis vectors. `flip_sin` negates the `sin e |a->` term of `phi_{+-}`;
/// it exists only so the invariant checks can be shown to catch a sign slip.
pub(crate) fn naimark_vectors(g: &MeasurementGeometry, flip_sin: bool) -> Result<[TwoQubitState; 4], CloneError> {
    let (a_plus, a_minus) = g.eigenstates(Axis::A);
    let (b_plus, b_minus) = g.eigenstates(Axis::B);
    let (m_plus, m_minus) = g.eigenstates(Axis::M);
    let (l_plus, l_minus) = g.eigenstates(Axis::L);
    let sp = C64::new(g.p().sqrt(), 0.0);
    let sq = C64::new((1.0 - g.p()).max(0.0).sqrt(), 0.0);
    let (sin_e, cos_e) = g.naimark_half_angle().sin_cos();
    let sin_pm = if flip_sin { -sin_e } else { sin_e };

    let a_mix = |ca: f64, cm: f64| -> QubitState {
        QubitState::from_vector_unchecked(a_plus.as_vector().scale(ca) + a_minus.as_vector().scale(cm))
    };

    let pp = kron(&m_plus, &b_plus) * sp + kron(&a_plus, &b_minus) * sq;
    let mm = kron(&m_minus, &b_plus) * sp + kron(&a_minus, &b_minus) * sq;
    let pm = kron(&l_plus, &b_plus) * sq - kron(&a_mix(cos_e, sin_pm), &b_minus) * sp;
    let mp = kron(&l_minus, &b_plus) * sq + kron(&a_mix(sin_e, -cos_e), &b_minus) * sp;

    Ok([
        TwoQubitState::from_vector(pp)?,
        TwoQubitState::from_vector(pm)?,
        TwoQubitState::from_vector(mp)?,
        TwoQubitState::from_vector(mm)?,
    ])
}

/// Gram residual of the raw vectors, before any orthonormality check.
pub(crate) fn naimark_gram_residual(g: &MeasurementGeometry, flip_sin: bool) -> Result<f64, CloneError> {
    Ok(gram_residual(&naimark_vectors(g, flip_sin)?))
}

/// Naimark basis for the joint measurement of `g`.
pub fn naimark_basis(g: &MeasurementGeometry) -> Result<NaimarkBasis, CloneError> {
    NaimarkBasis::from_vectors(naimark_vectors(g, false)?)
}

/// Product states `|a_i>|b_j>` in outcome order.
pub fn product_basis(g: &MeasurementGeometry) -> [TwoQubitState; 4] {
    let (a_plus, a_minus) = g.eigenstates(Axis::A);
    let (b_plus, b_minus) = g.eigenstates(Axis::B);
    [
        tensor(&a_plus, &b_plus),
        tensor(&a_plus, &b_minus),
        tensor(&a_minus, &b_plus),
        tensor(&a_minus, &b_minus),
    ]
}

/// Sign attached to each `|a_i>|b_j><phi_ij|` term of the unitary.
const UNITARY_SIGNS: [f64; 4] = [1.0, 1.0, -1.0, -1.0];

fn assemble_unitary(products: &[TwoQubitState; 4], basis: &NaimarkBasis) -> TwoQubitOperator {
    let mut u = TwoQubitOperator::zero();
    for ((target, phi), sign) in products.iter().zip(basis.vectors()).zip(UNITARY_SIGNS) {
        u = u + TwoQubitOperator::outer(target, phi).scale(sign);
    }
    u
}

/// `U = |a+ b+><phi_++| + |a+ b-><phi_+-| - |a- b+><phi_-+| - |a- b-><phi_--|`.
pub fn clone_unitary(g: &MeasurementGeometry) -> Result<TwoQubitOperator, CloneError> {
    Ok(assemble_unitary(&product_basis(g), &naimark_basis(g)?))
}

/// The joint output of the cloner.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Joint {
    Pure(TwoQubitState),
    Mixed(TwoQubitOperator),
}

impl Joint {
    pub fn density(&self) -> TwoQubitOperator {
        match self {
            Joint::Pure(s) => s.density(),
            Joint::Mixed(rho) => *rho,
        }
    }

    pub fn as_pure(&self) -> Option<&TwoQubitState> {
        match self {
            Joint::Pure(s) => Some(s),
            Joint::Mixed(_) => None,
        }
    }

    fn reduced(&self, keep: Subsystem) -> QubitOperator {
        match self {
            Joint::Pure(s) => s.reduced(keep),
            Joint::Mixed(rho) => rho.reduced(keep),
        }
    }
}

/// Result of cloning one input state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CloneOutput {
    pub joint: Joint,
    /// Coefficients `lambda_1..4` of the output in the `|a_i>|b_j>` basis;
    /// only for pure inputs.
    pub lambdas: Option<[C64; 4]>,
    /// Diagonal of the output in the `|a_i>|b_j>` basis.
    pub weights: [f64; 4],
    pub rho_a: QubitOperator,
    pub rho_b: QubitOperator,
    pub bloch_a: Vector3<f64>,
    pub bloch_b: Vector3<f64>,
    /// Bloch vector of the input state.
    pub input_bloch: Vector3<f64>,
}

impl CloneOutput {
    pub fn distribution(&self) -> JointDistribution {
        JointDistribution::from_probs_unchecked(self.weights)
    }

    /// Residuals of the Bloch-vector relations for this output.
    pub fn bloch_residuals(&self, g: &MeasurementGeometry) -> BlochResiduals {
        let c = self.input_bloch;
        let a = g.a().as_vector();
        let b = g.b().as_vector();
        let n = g.normal().as_vector();
        let shrink = (1.0 - g.beta() * g.beta()).max(0.0).sqrt();
        BlochResiduals {
            a_component: a.dot(&self.bloch_a) - g.alpha() * a.dot(&c),
            b_component: b.dot(&self.bloch_b) - g.beta() * b.dot(&c),
            normal_a: n.dot(&self.bloch_a) - shrink * n.dot(&c),
            normal_b: n.dot(&self.bloch_b),
        }
    }
}

/// Signed residuals of
/// `a.c_a = alpha a.c`, `b.c_b = beta b.c`, `n.c_a = sqrt(1-beta^2) n.c`, `n.c_b = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochResiduals {
    pub a_component: f64,
    pub b_component: f64,
    pub normal_a: f64,
    pub normal_b: f64,
}

impl BlochResiduals {
    pub fn max_abs(&self) -> f64 {
        [self.a_component, self.b_component, self.normal_a, self.normal_b]
            .iter()
            .map(|x| x.abs())
            .fold(0.0, f64::max)
    }
}

/// A cloner prepared for one geometry, reusable across many input states.
#[derive(Clone, Debug)]
pub struct Cloner {
    geometry: MeasurementGeometry,
    basis: NaimarkBasis,
    products: [TwoQubitState; 4],
    unitary: TwoQubitOperator,
    blank: QubitState,
    povm: Povm4,
}

impl Cloner {
    pub fn new(g: &MeasurementGeometry) -> Result<Self, CloneError> {
        let basis = naimark_basis(g)?;
        let products = product_basis(g);
        let unitary = assemble_unitary(&products, &basis);
        Ok(Self {
            geometry: *g,
            basis,
            products,
            unitary,
            blank: g.eigenstates(Axis::B).0,
            povm: build_povm(g),
        })
    }

    pub fn geometry(&self) -> &MeasurementGeometry {
        &self.geometry
    }

    pub fn basis(&self) -> &NaimarkBasis {
        &self.basis
    }

    pub fn unitary(&self) -> &TwoQubitOperator {
        &self.unitary
    }

    pub fn povm(&self) -> &Povm4 {
        &self.povm
    }

    /// The blank qubit `|b+>`.
    pub fn blank(&self) -> &QubitState {
        &self.blank
    }

    pub fn product_basis(&self) -> &[TwoQubitState; 4] {
        &self.products
    }

    /// `U |psi>|b+>` without the reduced-state bookkeeping.
    pub fn output_state(&self, psi: &QubitState) -> TwoQubitState {
        self.unitary.apply(&tensor(psi, &self.blank))
    }

    pub fn clone_pure(&self, psi: &QubitState) -> CloneOutput {
        let joint = self.output_state(psi);
        let lambdas = self.products.map(|p| p.inner(&joint));
        let weights = lambdas.map(|l| l.norm_sqr());
        self.finish(Joint::Pure(joint), Some(lambdas), weights, psi.bloch())
    }

    pub fn clone_mixed(&self, rho: &QubitOperator) -> Result<CloneOutput, CloneError> {
        rho.validate_density(TOLERANCE)?;
        let blank = self.blank.density();
        let input = crate::linalg::tensor_operators(rho, &blank);
        let out = self.unitary.conjugate(&input);
        let weights = self.products.map(|p| out.expectation(&p).re);
        Ok(self.finish(Joint::Mixed(out), None, weights, bloch_from_density(rho)))
    }

    /// The diagonal state `sum_ij P_ij |a_i b_j><a_i b_j|` prepared from the
    /// joint-measurement outcome.
    pub fn measure_and_prepare(&self, rho: &QubitOperator) -> TwoQubitOperator {
        let mut out = TwoQubitOperator::zero();
        for (p, e) in self.products.iter().zip(self.povm.elements()) {
            let weight = (*rho * *e).trace().re;
            out = out + p.density().scale(weight);
        }
        out
    }

    fn finish(&self, joint: Joint, lambdas: Option<[C64; 4]>, weights: [f64; 4], input_bloch: Vector3<f64>) -> CloneOutput {
        let rho_a = joint.reduced(Subsystem::First);
        let rho_b = joint.reduced(Subsystem::Second);
        CloneOutput {
            joint,
            lambdas,
            weights,
            rho_a,
            rho_b,
            bloch_a: bloch_from_density(&rho_a),
            bloch_b: bloch_from_density(&rho_b),
            input_bloch,
        }
    }
}

/// Clones a pure state: `U |psi>|b+>`.
pub fn clone_pure(g: &MeasurementGeometry, psi: &QubitState) -> Result<CloneOutput, CloneError> {
    Ok(Cloner::new(g)?.clone_pure(psi))
}

/// Clones a mixed state: `U (rho x |b+><b+|) U^dag`.
pub fn clone_mixed(g: &MeasurementGeometry, rho: &QubitOperator) -> Result<CloneOutput, CloneError> {
    Cloner::new(g)?.clone_mixed(rho)
}

/// Measure-and-prepare output for a pure input.
pub fn measure_and_prepare(g: &MeasurementGeometry, psi: &QubitState) -> TwoQubitOperator {
    let povm = build_povm(g);
    let mut out = TwoQubitOperator::zero();
    for (p, e) in product_basis(g).iter().zip(povm.elements()) {
        out = out + p.density().scale(e.expectation(psi).re);
    }
    out
}
