use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Axis, MeasurementGeometry};
use crate::linalg::{pauli_dot, QubitOperator, QubitState, TOLERANCE};

/// One of the four joint outcomes `(a result, b result)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Outcome {
    #[serde(rename = "++")]
    PlusPlus,
    #[serde(rename = "+-")]
    PlusMinus,
    #[serde(rename = "-+")]
    MinusPlus,
    #[serde(rename = "--")]
    MinusMinus,
}

impl Outcome {
    /// In basis order `(++, +-, -+, --)`.
    pub const ALL: [Outcome; 4] = [Outcome::PlusPlus, Outcome::PlusMinus, Outcome::MinusPlus, Outcome::MinusMinus];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Outcome> {
        Self::ALL.get(i).copied()
    }

    pub fn label(self) -> &'static str {
        match self {
            Outcome::PlusPlus => "++",
            Outcome::PlusMinus => "+-",
            Outcome::MinusPlus => "-+",
            Outcome::MinusMinus => "--",
        }
    }

    /// `+1` or `-1` reported for the `a` component.
    pub fn a_sign(self) -> f64 {
        match self {
            Outcome::PlusPlus | Outcome::PlusMinus => 1.0,
            Outcome::MinusPlus | Outcome::MinusMinus => -1.0,
        }
    }

    /// `+1` or `-1` reported for the `b` component.
    pub fn b_sign(self) -> f64 {
        match self {
            Outcome::PlusPlus | Outcome::MinusPlus => 1.0,
            Outcome::PlusMinus | Outcome::MinusMinus => -1.0,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The four-outcome joint measurement
/// `Pi_{+-+-} = (p/2)(1 +- m.sigma)`, `Pi_{+-,-+} = ((1-p)/2)(1 +- l.sigma)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Povm4 {
    elements: [QubitOperator; 4],
}

impl Povm4 {
    pub fn element(&self, outcome: Outcome) -> &QubitOperator {
        &self.elements[outcome.index()]
    }

    pub fn elements(&self) -> &[QubitOperator; 4] {
        &self.elements
    }

    /// Max absolute entry of `sum Pi - 1`.
    pub fn completeness_residual(&self) -> f64 {
        let sum = self.elements.iter().fold(QubitOperator::zero(), |acc, e| acc + *e);
        sum.distance(&QubitOperator::identity())
    }

    /// Smallest eigenvalue over all four elements.
    pub fn min_eigenvalue(&self) -> f64 {
        self.elements.iter().map(|e| e.hermitian_eigenvalues()[0]).fold(f64::INFINITY, f64::min)
    }

    pub fn is_valid(&self, tol: f64) -> bool {
        self.completeness_residual() <= tol
            && self.min_eigenvalue() >= -tol
            && self.elements.iter().all(|e| e.hermiticity_residual() <= tol)
    }
}

pub fn build_povm(g: &MeasurementGeometry) -> Povm4 {
    let one = QubitOperator::identity();
    let m = pauli_dot(&g.axis(Axis::M));
    let l = pauli_dot(&g.axis(Axis::L));
    let (wm, wl) = (0.5 * g.p(), 0.5 * (1.0 - g.p()));
    Povm4 {
        elements: [
            (one + m).scale(wm),
            (one + l).scale(wl),
            (one - l).scale(wl),
            (one - m).scale(wm),
        ],
    }
}

/// Two-outcome marginal measurements of the `a` and `b` components.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Marginals {
    /// `(Pi^{alpha a}_+, Pi^{alpha a}_-)`
    pub a: [QubitOperator; 2],
    /// `(Pi^{beta b}_+, Pi^{beta b}_-)`
    pub b: [QubitOperator; 2],
}

pub fn marginal_operators(povm: &Povm4) -> Marginals {
    let [pp, pm, mp, mm] = povm.elements;
    Marginals { a: [pp + pm, mp + mm], b: [pp + mp, pm + mm] }
}

/// Probabilities of the four joint outcomes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JointDistribution {
    probs: [f64; 4],
}

impl JointDistribution {
    /// Accepts four probabilities in `[-tol, 1 + tol]` summing to one within `tol`.
    pub fn new(probs: [f64; 4]) -> Option<Self> {
        let in_range = probs.iter().all(|&x| (-TOLERANCE..=1.0 + TOLERANCE).contains(&x));
        let total: f64 = probs.iter().sum();
        (in_range && (total - 1.0).abs() <= TOLERANCE).then_some(Self { probs })
    }

    pub fn get(&self, outcome: Outcome) -> f64 {
        self.probs[outcome.index()]
    }

    pub fn probs(&self) -> [f64; 4] {
        self.probs
    }

    /// `(P(a = +), P(a = -))`.
    pub fn marginal_a(&self) -> [f64; 2] {
        [self.probs[0] + self.probs[1], self.probs[2] + self.probs[3]]
    }

    /// `(P(b = +), P(b = -))`.
    pub fn marginal_b(&self) -> [f64; 2] {
        [self.probs[0] + self.probs[2], self.probs[1] + self.probs[3]]
    }

    pub fn max_difference(&self, other: &JointDistribution) -> f64 {
        self.probs.iter().zip(other.probs.iter()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }
}

/// Born-rule probabilities `Tr(rho Pi_ij)`.
pub fn joint_distribution(state: &QubitOperator, povm: &Povm4) -> JointDistribution {
    let probs = povm.elements.map(|e| (*state * e).trace().re);
    JointDistribution { probs }
}

impl JointDistribution {
    /// Born-rule probabilities `<psi|Pi_ij|psi>` for a pure state.
    pub fn for_pure(psi: &QubitState, povm: &Povm4) -> JointDistribution {
        JointDistribution { probs: povm.elements.map(|e| e.expectation(psi).re) }
    }

    pub(crate) fn from_probs_unchecked(probs: [f64; 4]) -> Self {
        Self { probs }
    }
}
