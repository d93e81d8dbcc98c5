//! Entropy, mutual information, l1-coherence and fidelity.
//!
//! All logarithms are base 2.

use crate::error::{Error, Result};
use crate::linalg::{density_spectrum, partial_trace, CMatrix, CVector, Subsystem};

const MUTUAL_INFO_SLACK: f64 = 1e-9;

/// `-Σ λ log₂ λ` over a probability list, with `0 log 0 = 0`.
pub fn shannon_bits(probabilities: &[f64]) -> f64 {
    probabilities.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.log2()).sum()
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &CMatrix) -> Result<f64> {
    let spectrum = density_spectrum(rho)?;
    Ok(shannon_bits(&spectrum).max(0.0))
}

/// Entropies of a two-qubit state and its marginals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyBreakdown {
    pub s_a: f64,
    pub s_b: f64,
    pub s_ab: f64,
}

impl EntropyBreakdown {
    pub fn of(rho: &CMatrix) -> Result<Self> {
        if rho.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                got: rho.dim(),
            });
        }
        let s_ab = von_neumann_entropy(rho)?;
        let s_a = von_neumann_entropy(&partial_trace(rho, Subsystem::A)?)?;
        let s_b = von_neumann_entropy(&partial_trace(rho, Subsystem::B)?)?;
        Ok(Self { s_a, s_b, s_ab })
    }

    /// `S_A + S_B - S_AB`, clamped into `[0, 2]` when it strays by less than
    /// 1e-9.
    pub fn mutual_information(&self) -> Result<f64> {
        let i = self.s_a + self.s_b - self.s_ab;
        if !(-MUTUAL_INFO_SLACK..=2.0 + MUTUAL_INFO_SLACK).contains(&i) {
            return Err(Error::NotDensityMatrix(format!(
                "mutual information {i} outside [0, 2]"
            )));
        }
        Ok(i.clamp(0.0, 2.0))
    }
}

/// Quantum mutual information of a two-qubit density matrix.
pub fn mutual_information(rho: &CMatrix) -> Result<f64> {
    EntropyBreakdown::of(rho)?.mutual_information()
}

/// l1-norm of coherence: sum of off-diagonal magnitudes.
pub fn l1_coherence(rho: &CMatrix) -> Result<f64> {
    density_spectrum(rho)?;
    Ok(rho.off_diagonal_l1())
}

/// `⟨φ|ρ|φ⟩` for a pure reference state.
pub fn pure_mixed_fidelity(phi: &CVector, rho: &CMatrix) -> Result<f64> {
    if phi.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            got: phi.dim(),
        });
    }
    let norm_sqr = phi.norm_sqr();
    if (norm_sqr - 1.0).abs() > 1e-12 {
        return Err(Error::NotNormalized { norm_sqr });
    }
    density_spectrum(rho)?;
    let f = phi.inner(&rho.apply(phi));
    debug_assert!(f.im.abs() < 1e-12, "fidelity has imaginary part {}", f.im);
    Ok(f.re.clamp(0.0, 1.0))
}
