//! Two-qubit entanglement and quantum teleportation under superposed
//! gravitational fields.
//!
//! Two massive particles, each in a superposition of two positions, interact
//! only through Newtonian gravity. Each configuration accumulates its own
//! phase and may leave behind its own field state. This crate builds the
//! resulting particle density matrices, evaluates mutual information and
//! l1-coherence on them, simulates teleportation through the evolved Bell
//! channel at gate level, and carries independent closed forms for all of
//! these in [`oracles`].
//!
//! ```
//! use gravent_core::prelude::*;
//!
//! let cfg = GravityConfig::dimensionless(1.0, 1.0, 2.0, 1.0).unwrap();
//! let phases = phase_gaps(&cfg).unwrap();
//! let rho = evolve_separable(&PureBipartiteState::bell(), &phases, 3.0).rho;
//! assert!((mutual_information(&rho).unwrap() - 2.0).abs() < 1e-9);
//! ```

pub mod engine;
pub mod error;
pub mod gravity;
pub mod linalg;
pub mod measures;
pub mod oracles;
pub mod protocol;
pub mod quadrature;
pub mod teleport;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::engine::Execution;
    pub use crate::error::{Error, Result};
    pub use crate::gravity::{pair_potentials, phase_gaps, GravityConfig, PhaseSet, PotentialSet, Units};
    pub use crate::linalg::{CMatrix, CVector, Subsystem};
    pub use crate::measures::{l1_coherence, mutual_information, pure_mixed_fidelity, von_neumann_entropy};
    pub use crate::protocol::{
        evolve, evolve_orthogonal, evolve_overlap, evolve_separable, joint_state, EvolvedState, FieldModel,
        PureBipartiteState, Reduction,
    };
    pub use crate::teleport::{
        averaged_fidelity, branch_fidelity, longtime_average, make_channel, run_teleport, AveragingMethod,
        FidelityCurvePoint, Outcome, TeleportBranch, TeleportCircuit, UnknownQubit,
    };
    pub use num_complex::Complex64;
}
