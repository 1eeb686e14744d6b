//! Two-qubit entanglement under independent amplitude damping, with and
//! without quantum error correction.
//!
//! The crate simulates a logical qubit pair that is either left bare, encoded
//! non-locally with the six-qubit `[6,2]` code, or encoded locally with one
//! four-qubit `[4,1]` block per logical qubit. Every physical qubit is damped
//! independently with the same jump probability `γ`; the damaged register is
//! then syndrome-measured, recovered and decoded back to a 4x4 logical density
//! operator, on which fidelity and Wootters concurrence are evaluated.
//!
//! Basis convention: qubit 0 is the leftmost tensor factor and the most
//! significant bit of a basis index, so `|110000⟩` is index `0b110000`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod channels;
pub mod code41;
pub mod code62;
pub mod linalg;
pub mod measures;
pub mod pipeline;
pub mod states;

pub use channels::DampingChannel;
pub use code41::Code41;
pub use code62::Code62;
pub use linalg::{ComplexMatrix, DensityOperator, StateVector};
pub use num_complex::Complex64;
pub use pipeline::{Code, Pipeline, PipelinePoint};
pub use states::{Family, StateFamily, TwoQubitPure};

/// Logical two-qubit state delivered by a recovery procedure.
#[derive(Clone, Debug, PartialEq)]
pub struct RecoveredState {
    /// Decoded 4x4 logical density operator.
    pub logical: DensityOperator,
    /// Probability of syndromes that trigger a correcting recovery.
    pub success_weight: f64,
    /// Probability of uncorrectable syndromes, replaced by the maximally mixed
    /// logical state.
    pub failure_weight: f64,
}

/// Errors raised by the simulation core.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension {dim} is not a qubit register of at most 8 qubits")]
    NotQubitRegister { dim: usize },
    #[error("matrix is not Hermitian (max |A - A†| = {defect:e})")]
    NotHermitian { defect: f64 },
    #[error("matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },
    #[error("density operator trace is {trace}, expected 1")]
    BadTrace { trace: f64 },
    #[error("state norm is {norm}, expected 1")]
    NotNormalized { norm: f64 },
    #[error("cannot normalize the zero vector")]
    ZeroVector,
    #[error("bit strings must be 1 to 8 characters of '0'/'1'")]
    InvalidBitString,
    #[error("damping probability {0} outside [0, 1]")]
    InvalidGamma(f64),
    #[error("qubit count {0} outside 1..=8")]
    InvalidQubitCount(usize),
    #[error("input state is not entangled at zero damping")]
    InitiallySeparable,
    #[error("fidelity at zero damping is {0}, expected 1")]
    FidelityNotOne(f64),
    #[error("tolerance {0} must be positive and finite")]
    InvalidTolerance(f64),
    #[error("damping grid must be strictly ascending inside [0, 1]")]
    InvalidGrid,
    #[error("value {0} outside [0, 1]")]
    ValueOutOfRange(f64),
}
