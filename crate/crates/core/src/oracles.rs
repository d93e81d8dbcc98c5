//! Closed-form expressions for every quantity the simulation produces.
//!
//! Nothing in here touches the matrix code: no density matrices, partial
//! traces or eigensolvers. Agreement between these functions and the
//! simulation is therefore a real cross-check and not a restatement.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gravity::PhaseSet;
use crate::protocol::{FieldModel, PureBipartiteState, Reduction};

const K_SQR_SLACK: f64 = 1e-12;

/// Eigenvalues `(1 ± √(1 - 4|K|²))/2` of a one-qubit marginal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumPair {
    pub lam_hi: f64,
    pub lam_lo: f64,
}

/// `x log₂ x` with the continuous extension at 0.
fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// `K0 = αδ - βγ`; zero exactly for product states.
pub fn k0(s: &PureBipartiteState) -> Complex64 {
    s.alpha * s.delta - s.beta * s.gamma
}

/// `K1 = αδ e^{i(Δ1+Δ2)t/ħ} - βγ`.
pub fn k1(s: &PureBipartiteState, p: &PhaseSet, t: f64) -> Complex64 {
    s.alpha * s.delta * Complex64::from_polar(1.0, p.entangling_angle(t)) - s.beta * s.gamma
}

pub fn spectrum_from_k(kval: Complex64) -> Result<SpectrumPair> {
    let k_sqr = kval.norm_sqr();
    if !k_sqr.is_finite() || k_sqr > 0.25 + K_SQR_SLACK {
        return Err(Error::InvalidK { k_sqr });
    }
    let root = (1.0 - 4.0 * k_sqr).max(0.0).sqrt();
    Ok(SpectrumPair {
        lam_hi: 0.5 + 0.5 * root,
        lam_lo: 0.5 - 0.5 * root,
    })
}

/// `-2(λ1 log₂ λ1 + λ2 log₂ λ2)`: mutual information of a pure two-qubit
/// state from its marginal spectrum.
pub fn mutual_info_pure(spectrum: &SpectrumPair) -> f64 {
    -2.0 * (xlog2x(spectrum.lam_hi) + xlog2x(spectrum.lam_lo))
}

/// Mutual information of the separable-field evolution at time `t`.
pub fn separable_mutual_info(s: &PureBipartiteState, p: &PhaseSet, t: f64) -> Result<f64> {
    Ok(mutual_info_pure(&spectrum_from_k(k1(s, p, t))?))
}

/// `S_A + S_B - S_AB` for the orthogonal-field (fully dephased) state.
pub fn ige_closed(s: &PureBipartiteState) -> f64 {
    let a = s.alpha.norm_sqr();
    let b = s.beta.norm_sqr();
    let c = s.gamma.norm_sqr();
    let d = s.delta.norm_sqr();
    let s_a = -xlog2x(a + b) - xlog2x(c + d);
    let s_b = -xlog2x(a + c) - xlog2x(b + d);
    let s_ab = -xlog2x(a) - xlog2x(b) - xlog2x(c) - xlog2x(d);
    s_a + s_b - s_ab
}

/// Mutual information of the uniform product state under field overlap `k`.
/// Depends on `|k|` only.
pub fn igd_closed(k: f64) -> f64 {
    let k = k.abs();
    let den = 4.0 + 2.0 * k * k;
    2.0 + 2.0 * xlog2x(1.0 / den) + xlog2x((k + 1.0).powi(2) / den) + xlog2x((k - 1.0).powi(2) / den)
}

/// Mutual information of the Bell state `(|01⟩+|10⟩)/√2` under field
/// overlap `k`. Depends on `|k|` only.
pub fn igb_closed(k: f64) -> f64 {
    let k = k.abs();
    let x = k / (1.0 + k * k);
    2.0 + xlog2x(0.5 + x) + xlog2x(0.5 - x)
}

/// Populations of `|00⟩..|11⟩` and the magnitude of the single
/// `|01⟩⟨10|` coherence left after reducing an overlapping field.
fn overlap_entries(s: &PureBipartiteState, k: Complex64, reduction: Reduction) -> ([f64; 4], f64) {
    let (a, b, c, d) = (
        s.alpha.norm_sqr(),
        s.beta.norm_sqr(),
        s.gamma.norm_sqr(),
        s.delta.norm_sqr(),
    );
    let km = k.norm();
    let bc = (b * c).sqrt();
    match reduction {
        Reduction::GramTrace => ([a, b, c, d], km * bc),
        Reduction::PaperLiteral => {
            let n = 1.0 + km * km * (b + c);
            let w = 1.0 + km * km;
            ([a / n, b * w / n, c * w / n, d / n], 2.0 * km * bc / n)
        }
    }
}

/// Mutual information of any state under field overlap `k`. Both marginals
/// are diagonal; the joint spectrum is two populations plus the eigenvalues
/// of the `{|01⟩, |10⟩}` block.
pub fn overlap_mutual_info(s: &PureBipartiteState, k: Complex64, reduction: Reduction) -> f64 {
    let ([p00, p01, p10, p11], coh) = overlap_entries(s, k, reduction);
    let mid = 0.5 * (p01 + p10);
    let rad = (0.25 * (p01 - p10).powi(2) + coh * coh).sqrt();
    let s_a = -xlog2x(p00 + p01) - xlog2x(p10 + p11);
    let s_b = -xlog2x(p00 + p10) - xlog2x(p01 + p11);
    let s_ab = -xlog2x(p00) - xlog2x(p11) - xlog2x(mid + rad) - xlog2x((mid - rad).max(0.0));
    s_a + s_b - s_ab
}

/// Mutual information for any field model at time `t`.
pub fn mutual_info_closed(s: &PureBipartiteState, p: &PhaseSet, t: f64, field: &FieldModel) -> Result<f64> {
    match *field {
        FieldModel::Separable => separable_mutual_info(s, p, t),
        FieldModel::Orthogonal => Ok(ige_closed(s)),
        FieldModel::Overlap { k, reduction } => Ok(overlap_mutual_info(s, k, reduction)),
    }
}

/// l1-coherence for any field model; never depends on `t`.
pub fn coherence_general(s: &PureBipartiteState, field: &FieldModel) -> f64 {
    match *field {
        FieldModel::Separable => {
            let m: Vec<f64> = s.amplitudes().iter().map(|z| z.norm()).collect();
            let mut sum = 0.0;
            for i in 0..4 {
                for j in i + 1..4 {
                    sum += m[i] * m[j];
                }
            }
            2.0 * sum
        }
        FieldModel::Orthogonal => 0.0,
        FieldModel::Overlap { k, reduction } => 2.0 * overlap_entries(s, k, reduction).1,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoherenceCase {
    UniformProduct,
    Bell,
}

/// l1-coherence under field overlap `k`: `2k/(2+k²)` or `2k/(1+k²)`.
pub fn coherence_closed(case: CoherenceCase, k: f64) -> f64 {
    let k = k.abs();
    match case {
        CoherenceCase::UniformProduct => 2.0 * k / (2.0 + k * k),
        CoherenceCase::Bell => 2.0 * k / (1.0 + k * k),
    }
}

/// The `Q` factor with `F = 1 - ½ Q sin²θ` and `F̄ = 1 - Q/3`.
///
/// The Gram-trace case keeps the bare overlap as the channel coherence,
/// `Q = 1 - Re(k e^{-iΔ3 t/ħ})`.
pub fn q_factor(t: f64, p: &PhaseSet, field: &FieldModel) -> f64 {
    let x = p.angle3(t);
    match *field {
        FieldModel::Separable => 1.0 - x.cos(),
        FieldModel::Orthogonal => 1.0,
        FieldModel::Overlap {
            k,
            reduction: Reduction::PaperLiteral,
        } => {
            let den = k.norm_sqr() + 1.0;
            let q = Complex64::new(1.0, 0.0)
                - (k.conj() + k) / den * x.cos()
                - Complex64::i() * (k.conj() - k) / den * x.sin();
            debug_assert!(q.im.abs() <= 1e-12);
            q.re
        }
        FieldModel::Overlap {
            k,
            reduction: Reduction::GramTrace,
        } => 1.0 - k.re * x.cos() - k.im * x.sin(),
    }
}

/// Per-input fidelity `1 - ½ Q sin²θ`; identical for all four outcomes.
pub fn fidelity_closed(theta: f64, t: f64, p: &PhaseSet, field: &FieldModel) -> f64 {
    1.0 - 0.5 * q_factor(t, p, field) * theta.sin().powi(2)
}

/// Bloch-averaged teleportation fidelity `1 - Q/3`.
pub fn fbar_closed(t: f64, p: &PhaseSet, field: &FieldModel) -> f64 {
    1.0 - q_factor(t, p, field) / 3.0
}

/// Real-`k` form `(2/3)(1 + k cos(Δ3 t/ħ)/(k²+1))`.
pub fn fbar_real_overlap(t: f64, p: &PhaseSet, k: f64) -> f64 {
    2.0 / 3.0 * (1.0 + k / (k * k + 1.0) * p.angle3(t).cos())
}
