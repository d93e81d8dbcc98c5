//! Gate-level teleportation through a gravitationally evolved Bell channel.
//!
//! Qubit 1 holds the unknown state, qubit 2 is Alice's half of the channel
//! and qubit 3 is Bob's. The channel starts as `(|01⟩ + |10⟩)/√2`; its two
//! branches pick up `e^{-iH01 t/ħ}` and `e^{-iH10 t/ħ}`. We drop the common
//! factor `e^{-iH10 t/ħ}`, which leaves `(e^{iΔ3 t/ħ}|01⟩ + |10⟩)/√2`.
//!
//! When the field does not separate, each channel branch is tensored with its
//! field ket (`g01`, `g10`) and Bob's qubit is reduced after correction.
//!
//! Alice applies CNOT (1 → 2) and H on qubit 1, then measures qubits 1 and 2.
//! For this channel the corrections are `00 → X`, `01 → I`, `10 → XZ`,
//! `11 → Z`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gravity::PhaseSet;
use crate::linalg::{embed_nonorthogonal_pair, gates, ket_projection_sum, kron, trace_out_last, CMatrix, CVector};
use crate::measures::pure_mixed_fidelity;
use crate::protocol::{FieldModel, Reduction};
use crate::quadrature::{gauss_legendre, simpson};

/// Gauss–Legendre nodes in `cos θ` used by [`AveragingMethod::Quadrature`].
pub const POLAR_NODES: usize = 32;
/// Trapezoid nodes in `φ` used by [`AveragingMethod::Quadrature`].
pub const AZIMUTH_NODES: usize = 64;
/// Averaged fidelity reachable with a classical channel.
pub const CLASSICAL_FIDELITY: f64 = 2.0 / 3.0;
/// Averaged-fidelity boundary above which the channel is non-local, as quoted
/// in the literature (≈ 0.87). Annotation only.
pub const NONLOCAL_FIDELITY: f64 = 0.87;

const MIN_LONGTIME_PERIODS: f64 = 10.0;

/// `cos(θ/2)|0⟩ + sin(θ/2) e^{iφ}|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnknownQubit {
    theta: f64,
    phi: f64,
}

impl UnknownQubit {
    /// `θ ∈ [0, π]`; `φ` is reduced into `[0, 2π)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::InvalidParameter {
                name: "theta",
                reason: format!("must lie in [0, π], got {theta}"),
            });
        }
        if !phi.is_finite() {
            return Err(Error::InvalidParameter {
                name: "phi",
                reason: format!("must be finite, got {phi}"),
            });
        }
        Ok(Self {
            theta,
            phi: phi.rem_euclid(2.0 * PI),
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn amplitudes(&self) -> [Complex64; 2] {
        let half = self.theta / 2.0;
        [
            Complex64::new(half.cos(), 0.0),
            Complex64::from_polar(half.sin(), self.phi),
        ]
    }

    pub fn to_vector(&self) -> CVector {
        CVector::new(self.amplitudes().to_vec())
    }

    /// The six eigenstates of X, Y and Z.
    pub fn axis_states() -> [Self; 6] {
        let q = |theta, phi| Self { theta, phi };
        [
            q(0.0, 0.0),
            q(PI, 0.0),
            q(PI / 2.0, 0.0),
            q(PI / 2.0, PI),
            q(PI / 2.0, PI / 2.0),
            q(PI / 2.0, 3.0 * PI / 2.0),
        ]
    }
}

/// Alice's two measured bits, `(qubit 1, qubit 2)` packed as `2·m1 + m2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Outcome(u8);

impl Outcome {
    pub fn new(bits: u8) -> Result<Self> {
        if bits > 3 {
            return Err(Error::InvalidOutcome(bits));
        }
        Ok(Self(bits))
    }

    pub fn all() -> [Outcome; 4] {
        [Outcome(0), Outcome(1), Outcome(2), Outcome(3)]
    }

    pub fn bits(&self) -> u8 {
        self.0
    }

    /// Bob's correction for the `|01⟩ + |10⟩` channel.
    pub fn correction(&self) -> CMatrix {
        match self.0 {
            0 => gates::pauli_x(),
            1 => CMatrix::identity(2),
            2 => gates::pauli_x().matmul(&gates::pauli_z()),
            _ => gates::pauli_z(),
        }
    }
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}", self.0 >> 1, self.0 & 1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TeleportBranch {
    pub outcome: Outcome,
    pub probability: f64,
    /// Bob's qubit after correction (and after reducing the field, if any).
    pub bob_state: CMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityCurvePoint {
    pub t: f64,
    pub fbar: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AveragingMethod {
    /// Exact Bloch-sphere average from the six axis states.
    #[default]
    Analytic,
    /// Gauss–Legendre in `cos θ` × trapezoid in `φ`.
    Quadrature,
}

/// How Bob's qubit is separated from the field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BobReduction {
    Pure,
    Gram,
    Literal,
}

/// The gravitationally evolved channel `(e^{iΔ3 t/ħ}|01⟩ + |10⟩)/√2`.
pub fn make_channel(p: &PhaseSet, t: f64) -> CVector {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut v = CVector::zeros(4);
    v[1] = Complex64::from_polar(h, p.angle3(t));
    v[2] = Complex64::new(h, 0.0);
    v
}

/// Fixed circuit for one `(t, field)` point, reusable across input states.
#[derive(Debug, Clone)]
pub struct TeleportCircuit {
    field_dim: usize,
    field_kets: [CVector; 2],
    reduction: BobReduction,
    channel: CVector,
    unitary: CMatrix,
    corrections: [CMatrix; 4],
}

impl TeleportCircuit {
    pub fn new(p: &PhaseSet, t: f64, field: &FieldModel) -> Result<Self> {
        let (field_kets, reduction) = match *field {
            FieldModel::Separable => {
                let one = CVector::basis(1, 0);
                ([one.clone(), one], BobReduction::Pure)
            }
            FieldModel::Orthogonal => {
                let (a, b) = embed_nonorthogonal_pair(Complex64::new(0.0, 0.0))?;
                ([a, b], BobReduction::Gram)
            }
            FieldModel::Overlap { k, reduction } => {
                let (a, b) = embed_nonorthogonal_pair(k)?;
                let r = match reduction {
                    Reduction::PaperLiteral => BobReduction::Literal,
                    Reduction::GramTrace => BobReduction::Gram,
                };
                ([a, b], r)
            }
        };
        let f = field_kets[0].dim();

        let bare = make_channel(p, t);
        let mut channel = CVector::zeros(4 * f);
        for (branch, ket) in [(1usize, &field_kets[0]), (2usize, &field_kets[1])] {
            for g in 0..f {
                channel[branch * f + g] = bare[branch] * ket[g];
            }
        }

        let id_f = CMatrix::identity(f);
        let cnot = kron(&kron(&gates::cnot(), &CMatrix::identity(2)), &id_f);
        let hadamard = kron(&kron(&gates::hadamard(), &CMatrix::identity(4)), &id_f);
        let unitary = hadamard.matmul(&cnot);

        let corrections = Outcome::all().map(|o| kron(&o.correction(), &id_f));

        Ok(Self {
            field_dim: f,
            field_kets,
            reduction,
            channel,
            unitary,
            corrections,
        })
    }

    /// Runs the circuit once and returns all four measurement branches.
    pub fn run_all(&self, q: &UnknownQubit) -> Result<[TeleportBranch; 4]> {
        let f = self.field_dim;
        let state = self.unitary.apply(&kron(&q.to_vector(), &self.channel));
        let branch = |o: Outcome| -> Result<TeleportBranch> {
            let start = o.bits() as usize * 2 * f;
            let slice = CVector::new(state.as_slice()[start..start + 2 * f].to_vec());
            let probability = slice.norm_sqr();
            let bob = self.corrections[o.bits() as usize].apply(&slice.normalized()?);
            let bob_state = self.reduce(&bob)?;
            Ok(TeleportBranch {
                outcome: o,
                probability,
                bob_state,
            })
        };
        Ok([
            branch(Outcome(0))?,
            branch(Outcome(1))?,
            branch(Outcome(2))?,
            branch(Outcome(3))?,
        ])
    }

    pub fn run(&self, q: &UnknownQubit, outcome: Outcome) -> Result<TeleportBranch> {
        let [b0, b1, b2, b3] = self.run_all(q)?;
        Ok(match outcome.bits() {
            0 => b0,
            1 => b1,
            2 => b2,
            _ => b3,
        })
    }

    fn reduce(&self, bob: &CVector) -> Result<CMatrix> {
        match self.reduction {
            BobReduction::Pure => Ok(bob.outer()),
            BobReduction::Gram => trace_out_last(&bob.outer(), 2, self.field_dim),
            BobReduction::Literal => {
                let sum = ket_projection_sum(bob, 2, &self.field_kets)?;
                let tr = sum.trace().re;
                Ok(sum.scale(Complex64::new(1.0 / tr, 0.0)))
            }
        }
    }

    /// Outcome-weighted fidelity `Σ p_k ⟨φ|ρ_k|φ⟩` for one input state.
    pub fn mean_fidelity(&self, q: &UnknownQubit) -> Result<f64> {
        let phi = q.to_vector();
        let mut total = 0.0;
        for b in self.run_all(q)? {
            total += b.probability * pure_mixed_fidelity(&phi, &b.bob_state)?;
        }
        Ok(total)
    }

    pub fn averaged_fidelity(&self, method: AveragingMethod) -> Result<f64> {
        match method {
            AveragingMethod::Analytic => {
                // The fidelity is quadratic in the Bloch vector, and the
                // octahedron is a spherical 3-design.
                let states = UnknownQubit::axis_states();
                let mut total = 0.0;
                for q in &states {
                    total += self.mean_fidelity(q)?;
                }
                Ok(total / states.len() as f64)
            }
            AveragingMethod::Quadrature => {
                let (nodes, weights) = gauss_legendre(POLAR_NODES);
                let dphi = 2.0 * PI / AZIMUTH_NODES as f64;
                let mut total = 0.0;
                for (u, w) in nodes.iter().zip(&weights) {
                    let theta = u.clamp(-1.0, 1.0).acos();
                    let mut ring = 0.0;
                    for j in 0..AZIMUTH_NODES {
                        let q = UnknownQubit::new(theta, j as f64 * dphi)?;
                        ring += self.mean_fidelity(&q)?;
                    }
                    total += w * ring * dphi;
                }
                Ok(total / (4.0 * PI))
            }
        }
    }
}

/// One measurement branch of the protocol.
pub fn run_teleport(q: &UnknownQubit, p: &PhaseSet, t: f64, field: &FieldModel, outcome: u8) -> Result<TeleportBranch> {
    let outcome = Outcome::new(outcome)?;
    TeleportCircuit::new(p, t, field)?.run(q, outcome)
}

/// Fidelity of Bob's corrected state against the input.
pub fn branch_fidelity(q: &UnknownQubit, branch: &TeleportBranch) -> Result<f64> {
    pure_mixed_fidelity(&q.to_vector(), &branch.bob_state)
}

pub fn averaged_fidelity(
    p: &PhaseSet,
    t: f64,
    field: &FieldModel,
    method: AveragingMethod,
) -> Result<FidelityCurvePoint> {
    let fbar = TeleportCircuit::new(p, t, field)?.averaged_fidelity(method)?;
    Ok(FidelityCurvePoint { t, fbar })
}

/// Time average `(1/T)∫₀ᵀ F̄ dt` by composite Simpson. The horizon must span
/// at least ten periods of `Δ3`.
pub fn longtime_average(p: &PhaseSet, field: &FieldModel, horizon: f64) -> Result<f64> {
    let period = p.teleport_period();
    let required = MIN_LONGTIME_PERIODS * period;
    if horizon.is_nan() || horizon < required {
        return Err(Error::HorizonTooShort { horizon, required });
    }
    let periods = (horizon / period).ceil() as usize;
    let intervals = 1000.max(20 * periods);
    let mut failure = None;
    let integral = simpson(
        |t| match averaged_fidelity(p, t, field, AveragingMethod::Analytic) {
            Ok(pt) => pt.fbar,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        0.0,
        horizon,
        intervals,
    );
    match failure {
        Some(e) => Err(e),
        None => Ok(integral / horizon),
    }
}
