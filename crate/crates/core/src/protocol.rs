//! Two-particle density matrices after the gravitational interaction.
//!
//! The particles start in `α|00⟩ + β|01⟩ + γ|10⟩ + δ|11⟩` and each branch
//! picks up the phase of its own potential while dragging along a field
//! state `|g_ij⟩`. What is left for the particles depends on how the field
//! is disposed of:
//!
//! * [`FieldModel::Separable`]: the field returns to a common state, so the
//!   particles stay pure.
//! * [`FieldModel::Orthogonal`]: the four field states are mutually
//!   orthogonal; tracing them out kills every coherence.
//! * [`FieldModel::Overlap`]: only `⟨g01|g10⟩ = k` is non-zero.
//!
//! For the overlap case two reductions are offered. [`Reduction::GramTrace`]
//! is the ordinary partial trace after embedding the field kets in an
//! orthonormal basis. [`Reduction::PaperLiteral`] sums projections onto the
//! non-orthogonal field kets as if they were a basis and renormalizes. The
//! two differ for `0 < |k| < 1`: the literal matrix carries an extra factor
//! `(1 + |k|²)` on the `|01⟩`, `|10⟩` populations and `2` on their coherence.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gravity::PhaseSet;
use crate::linalg::{embed_nonorthogonal_pair, trace_out_last, CMatrix, CVector};

const NORM_TOL: f64 = 1e-12;

/// Amplitudes on `|00⟩, |01⟩, |10⟩, |11⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureBipartiteState {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    pub delta: Complex64,
}

impl PureBipartiteState {
    pub fn new(alpha: Complex64, beta: Complex64, gamma: Complex64, delta: Complex64) -> Result<Self> {
        let s = Self {
            alpha,
            beta,
            gamma,
            delta,
        };
        let norm_sqr: f64 = s.amplitudes().iter().map(|z| z.norm_sqr()).sum();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(s)
    }

    /// Normalizes arbitrary non-zero amplitudes.
    pub fn normalized(amplitudes: [Complex64; 4]) -> Result<Self> {
        let v = CVector::new(amplitudes.to_vec()).normalized()?;
        let a = v.as_slice();
        Self::new(a[0], a[1], a[2], a[3])
    }

    /// `(|01⟩ + |10⟩)/√2`.
    pub fn bell() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let z = Complex64::new(0.0, 0.0);
        Self {
            alpha: z,
            beta: h,
            gamma: h,
            delta: z,
        }
    }

    /// `|+⟩|+⟩`, every amplitude 1/2.
    pub fn uniform_product() -> Self {
        let h = Complex64::new(0.5, 0.0);
        Self {
            alpha: h,
            beta: h,
            gamma: h,
            delta: h,
        }
    }

    /// Computational basis state `|index⟩`, `index ∈ 0..4`.
    pub fn basis(index: usize) -> Self {
        let mut a = [Complex64::new(0.0, 0.0); 4];
        a[index] = Complex64::new(1.0, 0.0);
        Self {
            alpha: a[0],
            beta: a[1],
            gamma: a[2],
            delta: a[3],
        }
    }

    pub fn amplitudes(&self) -> [Complex64; 4] {
        [self.alpha, self.beta, self.gamma, self.delta]
    }

    pub fn to_vector(&self) -> CVector {
        CVector::new(self.amplitudes().to_vec())
    }

    /// Amplitudes at time `t`, with the common `e^{-iH00 t/ħ}` removed.
    fn phased_amplitudes(&self, p: &PhaseSet, t: f64) -> [Complex64; 4] {
        let rot = |angle: f64| Complex64::from_polar(1.0, -angle);
        [
            self.alpha,
            self.beta * rot(p.angle1(t)),
            self.gamma * rot(p.angle2(t)),
            self.delta,
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Reduction {
    /// Projections onto the field kets, summed and renormalized.
    #[default]
    PaperLiteral,
    /// Standard partial trace over Gram-embedded field kets.
    GramTrace,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldModel {
    Separable,
    Orthogonal,
    Overlap { k: Complex64, reduction: Reduction },
}

impl FieldModel {
    pub fn overlap(k: Complex64, reduction: Reduction) -> Result<Self> {
        check_overlap(k)?;
        Ok(Self::Overlap { k, reduction })
    }

    /// Real overlap with the default reduction.
    pub fn overlap_real(k: f64) -> Result<Self> {
        Self::overlap(Complex64::new(k, 0.0), Reduction::default())
    }
}

fn check_overlap(k: Complex64) -> Result<()> {
    let magnitude = k.norm();
    if !magnitude.is_finite() || magnitude > 1.0 + 1e-12 {
        return Err(Error::OverlapOutOfRange { magnitude });
    }
    Ok(())
}

/// Particle density matrix at time `t` under a given field model.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolvedState {
    pub rho: CMatrix,
    pub t: f64,
    pub model: FieldModel,
}

/// Field returns to a common state; the particles remain pure.
pub fn evolve_separable(s: &PureBipartiteState, p: &PhaseSet, t: f64) -> EvolvedState {
    let psi = CVector::new(s.phased_amplitudes(p, t).to_vec());
    EvolvedState {
        rho: psi.outer(),
        t,
        model: FieldModel::Separable,
    }
}

/// Mutually orthogonal field states: only the populations survive.
pub fn evolve_orthogonal(s: &PureBipartiteState) -> EvolvedState {
    let pops: Vec<f64> = s.amplitudes().iter().map(|z| z.norm_sqr()).collect();
    EvolvedState {
        rho: CMatrix::diagonal(&pops),
        t: 0.0,
        model: FieldModel::Orthogonal,
    }
}

/// Only `⟨g01|g10⟩ = k` is non-zero.
pub fn evolve_overlap(
    s: &PureBipartiteState,
    p: &PhaseSet,
    t: f64,
    k: Complex64,
    reduction: Reduction,
) -> Result<EvolvedState> {
    check_overlap(k)?;
    let rho = match reduction {
        Reduction::PaperLiteral => literal_overlap_matrix(s, p, t, k),
        Reduction::GramTrace => {
            let joint = joint_state(s, p, t, k)?;
            trace_out_last(&joint.outer(), 4, FIELD_DIM)?
        }
    };
    Ok(EvolvedState {
        rho,
        t,
        model: FieldModel::Overlap { k, reduction },
    })
}

/// Dispatches on the field model. The orthogonal case ignores `t`.
pub fn evolve(s: &PureBipartiteState, p: &PhaseSet, t: f64, model: &FieldModel) -> Result<EvolvedState> {
    match *model {
        FieldModel::Separable => Ok(evolve_separable(s, p, t)),
        FieldModel::Orthogonal => Ok(EvolvedState {
            t,
            ..evolve_orthogonal(s)
        }),
        FieldModel::Overlap { k, reduction } => evolve_overlap(s, p, t, k, reduction),
    }
}

fn literal_overlap_matrix(s: &PureBipartiteState, p: &PhaseSet, t: f64, k: Complex64) -> CMatrix {
    let k2 = k.norm_sqr();
    let (a2, b2, c2, d2) = (
        s.alpha.norm_sqr(),
        s.beta.norm_sqr(),
        s.gamma.norm_sqr(),
        s.delta.norm_sqr(),
    );
    let norm = 1.0 / (1.0 + k2 * (b2 + c2));
    let mut rho = CMatrix::diagonal(&[norm * a2, norm * b2 * (1.0 + k2), norm * c2 * (1.0 + k2), norm * d2]);
    let coh = s.beta * s.gamma.conj() * Complex64::from_polar(1.0, p.angle3(t)) * k.conj() * (2.0 * norm);
    rho[(1, 2)] = coh;
    rho[(2, 1)] = coh.conj();
    rho
}

/// Dimension of the field register used by [`joint_state`].
pub const FIELD_DIM: usize = 4;

/// Field kets `g00, g01, g10, g11` as coordinates in a four-dimensional
/// orthonormal basis: `g00 = e0`, `g11 = e1`, and `g01`, `g10` span `e2, e3`
/// with overlap `k`.
pub fn field_kets(k: Complex64) -> Result<[CVector; 4]> {
    let (g01, g10) = embed_nonorthogonal_pair(k)?;
    let lift = |v: &CVector| {
        let mut out = CVector::zeros(FIELD_DIM);
        out[2] = v[0];
        out[3] = v[1];
        out
    };
    Ok([
        CVector::basis(FIELD_DIM, 0),
        lift(&g01),
        lift(&g10),
        CVector::basis(FIELD_DIM, 1),
    ])
}

/// Particles ⊗ field after the interaction, before any reduction.
pub fn joint_state(s: &PureBipartiteState, p: &PhaseSet, t: f64, k: Complex64) -> Result<CVector> {
    let kets = field_kets(k)?;
    let amps = s.phased_amplitudes(p, t);
    let mut out = CVector::zeros(4 * FIELD_DIM);
    for (i, (amp, ket)) in amps.iter().zip(&kets).enumerate() {
        for f in 0..FIELD_DIM {
            out[i * FIELD_DIM + f] = amp * ket[f];
        }
    }
    Ok(out)
}
