//! Amplitude damping on every qubit of a register.

use alloc::vec::Vec;

use num_traits::Zero;

// libm-backed f64 math for targets without it; inherent on hosted builds.
#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::{c, ComplexMatrix, DensityOperator, Mat2, MAX_QUBITS};
use crate::Error;

/// Independent amplitude damping with the same jump probability on each of
/// `n_qubits` qubits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DampingChannel {
    gamma: f64,
    n_qubits: usize,
}

impl DampingChannel {
    pub fn new(gamma: f64, n_qubits: usize) -> Result<Self, Error> {
        check_gamma(gamma)?;
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::InvalidQubitCount(n_qubits));
        }
        Ok(Self { gamma, n_qubits })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// All `2^n` product Kraus operators `⊗ᵢ E_{μᵢ}`, indexed by the jump
    /// pattern `μ` read as a binary number (qubit 0 most significant).
    ///
    /// Materializes `2^n` dense `2^n x 2^n` matrices, so this is meant for
    /// checks on small registers.
    pub fn kraus_operators(&self) -> Vec<ComplexMatrix> {
        let (e0, e1) = kraus_pair(self.gamma);
        let (e0, e1) = (ComplexMatrix::from_mat2(&e0), ComplexMatrix::from_mat2(&e1));
        let n = self.n_qubits;
        (0..1usize << n)
            .map(|pattern| {
                (0..n).fold(ComplexMatrix::identity(1), |acc, q| {
                    let jumped = pattern & (1 << (n - 1 - q)) != 0;
                    acc.kron(if jumped { &e1 } else { &e0 })
                })
            })
            .collect()
    }

    /// Largest entry of `Σ K†K - I` over the product Kraus set.
    pub fn completeness_defect(&self) -> f64 {
        let dim = 1usize << self.n_qubits;
        let sum = self
            .kraus_operators()
            .iter()
            .fold(ComplexMatrix::zeros(dim, dim), |acc, k| &acc + &(&k.adjoint() * k));
        sum.max_abs_diff(&ComplexMatrix::identity(dim))
    }
}

fn check_gamma(gamma: f64) -> Result<(), Error> {
    if (0.0..=1.0).contains(&gamma) {
        Ok(())
    } else {
        Err(Error::InvalidGamma(gamma))
    }
}

pub(crate) fn kraus_pair(gamma: f64) -> (Mat2, Mat2) {
    let zero = c(0.0);
    (
        [[c(1.0), zero], [zero, c((1.0 - gamma).sqrt())]],
        [[zero, c(gamma.sqrt())], [zero, zero]],
    )
}

/// No-jump and jump operators `(E0, E1)` of single-qubit amplitude damping.
pub fn single_qubit_kraus(gamma: f64) -> Result<(ComplexMatrix, ComplexMatrix), Error> {
    check_gamma(gamma)?;
    let (e0, e1) = kraus_pair(gamma);
    Ok((ComplexMatrix::from_mat2(&e0), ComplexMatrix::from_mat2(&e1)))
}

/// Jump operator `|0⟩⟨1|` with unit amplitude.
pub fn jump_operator() -> Mat2 {
    kraus_pair(1.0).1
}

/// Applies the damping channel to every qubit of `rho`.
///
/// The product channel factorizes into single-qubit channels, so each qubit
/// is damped in turn, in place. Per qubit and per 2x2 block
/// `[[a, b], [c, d]]` (that qubit's bit of row and column index) the map is
/// `a += γd`, `b, c *= √(1-γ)`, `d *= 1-γ`.
pub fn apply_damping(rho: &DensityOperator, channel: &DampingChannel) -> Result<DensityOperator, Error> {
    let dim = 1usize << channel.n_qubits;
    if rho.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: rho.dim(),
        });
    }
    let mut m = rho.matrix().clone();
    damp_in_place(&mut m, channel.gamma, channel.n_qubits);
    Ok(DensityOperator::from_trusted(m))
}

pub(crate) fn damp_in_place(m: &mut ComplexMatrix, gamma: f64, n_qubits: usize) {
    if gamma.is_zero() {
        return;
    }
    let dim = 1usize << n_qubits;
    let keep = 1.0 - gamma;
    let coherence = keep.sqrt();
    for q in 0..n_qubits {
        let mask = 1usize << (n_qubits - 1 - q);
        for i0 in (0..dim).filter(|i| i & mask == 0) {
            let i1 = i0 | mask;
            for j0 in (0..dim).filter(|j| j & mask == 0) {
                let j1 = j0 | mask;
                let d = m[(i1, j1)];
                m[(i0, j0)] += d * gamma;
                m[(i0, j1)] *= coherence;
                m[(i1, j0)] *= coherence;
                m[(i1, j1)] = d * keep;
            }
        }
    }
}

/// Jump probability of damping by `g1` and then by `g2`.
pub fn compose_gamma(g1: f64, g2: f64) -> f64 {
    g1 + g2 - g1 * g2
}
