//! The non-local `[6,2]` amplitude-damping code.
//!
//! Two logical qubits live in six physical qubits. The no-damping subspace is
//! spanned by the four codewords; a single jump on physical qubit `k` maps
//! codeword `|ij⟩_L` onto one computational basis ket `|R_{k,ij}⟩`. Those
//! 28 vectors are orthonormal, so syndrome extraction is the projective
//! measurement `{P_0, …, P_6, P_fail}` with `P_k = Σ_ij |R_{k,ij}⟩⟨R_{k,ij}|`.
//! Outcome `k ≤ 6` is followed by `R̂_k = Σ_ij |ij⟩_L⟨R_{k,ij}|`; the
//! remainder is replaced by the maximally mixed codeword state `Î_L/4`.

use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use crate::linalg::{c, check_register, ComplexMatrix, DensityOperator, SparseKet, StateVector};
use crate::states::TwoQubitPure;
use crate::{Error, RecoveredState};

pub const PHYSICAL_QUBITS: usize = 6;
pub const DIM: usize = 1 << PHYSICAL_QUBITS;
/// Syndromes with a correcting recovery: no jump plus one jump per qubit.
pub const CORRECTABLE_SYNDROMES: usize = 7;

/// Codeword `|ij⟩_L` as the pair of kets in its equal superposition.
const CODEWORDS: [(&str, &str); 4] = [
    ("000000", "111111"),
    ("001001", "110110"),
    ("000110", "111001"),
    ("110000", "001111"),
];

/// `|R_{k,ij}⟩` for a jump on qubit `k = 1..=6`, columns ordered `ij = 00, 01, 10, 11`.
const ONE_JUMP_KETS: [[&str; 4]; 6] = [
    ["011111", "010110", "011001", "010000"],
    ["101111", "100110", "101001", "100000"],
    ["110111", "000001", "110001", "000111"],
    ["111011", "110010", "000010", "001011"],
    ["111101", "110100", "000100", "001101"],
    ["111110", "001000", "111000", "001110"],
];

/// Code tables, built once and shared read-only.
#[derive(Clone, Debug)]
pub struct Code62 {
    codewords: [StateVector; 4],
    recovery: Vec<[SparseKet; 4]>,
}

impl Default for Code62 {
    fn default() -> Self {
        Self::new()
    }
}

impl Code62 {
    pub fn new() -> Self {
        let ket = |bits: &str| StateVector::from_bits(bits).expect("valid six-qubit label");
        let codewords = CODEWORDS.map(|(a, b)| (&ket(a) + &ket(b)).scale(c(FRAC_1_SQRT_2)));
        let mut recovery = Vec::with_capacity(CORRECTABLE_SYNDROMES);
        recovery.push([0, 1, 2, 3].map(|ij| SparseKet::from_state(&codewords[ij])));
        for row in ONE_JUMP_KETS {
            recovery.push(row.map(|bits| SparseKet::from_state(&ket(bits))));
        }
        Self { codewords, recovery }
    }

    /// `|ij⟩_L`, with `logical = 2i + j`.
    pub fn codeword(&self, logical: usize) -> &StateVector {
        &self.codewords[logical]
    }

    /// `|R_{k,ij}⟩` for syndrome `k ∈ 0..=6` and `logical = 2i + j`.
    pub fn recovery_vector(&self, k: usize, logical: usize) -> StateVector {
        if k == 0 {
            return self.codewords[logical].clone();
        }
        StateVector::from_bits(ONE_JUMP_KETS[k - 1][logical]).expect("valid six-qubit label")
    }

    /// All 28 recovery vectors, syndrome-major.
    pub fn recovery_vectors(&self) -> Vec<StateVector> {
        (0..CORRECTABLE_SYNDROMES)
            .flat_map(|k| (0..4).map(move |l| (k, l)))
            .map(|(k, l)| self.recovery_vector(k, l))
            .collect()
    }

    /// Maps `|ij⟩ → |ij⟩_L`.
    pub fn encode(&self, state: &TwoQubitPure) -> StateVector {
        state
            .amplitudes()
            .iter()
            .zip(&self.codewords)
            .fold(StateVector::basis(PHYSICAL_QUBITS, 0).scale(c(0.0)), |acc, (a, w)| {
                &acc + &w.scale(*a)
            })
    }

    /// `[P_0, …, P_6, P_fail]`.
    pub fn syndrome_projectors(&self) -> Vec<ComplexMatrix> {
        let mut out: Vec<ComplexMatrix> = (0..CORRECTABLE_SYNDROMES)
            .map(|k| {
                (0..4).fold(ComplexMatrix::zeros(DIM, DIM), |acc, l| {
                    &acc + &self.recovery_vector(k, l).projector()
                })
            })
            .collect();
        let fail = out.iter().fold(ComplexMatrix::identity(DIM), |acc, p| &acc - p);
        out.push(fail);
        out
    }

    /// `R̂_k = Σ_ij |ij⟩_L⟨R_{k,ij}|` as a 64x64 operator.
    pub fn recovery_operator(&self, k: usize) -> ComplexMatrix {
        (0..4).fold(ComplexMatrix::zeros(DIM, DIM), |acc, l| {
            &acc + &self.codewords[l].outer(&self.recovery_vector(k, l))
        })
    }

    /// The basis change `Σ_{k≤6} Σ_ij |ij Bin(k)⟩⟨R_{k,ij}|` restricted to
    /// the 28-dimensional span of the recovery vectors.
    ///
    /// After it, the syndrome is the value of physical qubits 3..6 and the
    /// logical pair sits in qubits 1..2. It is a partial isometry: completing
    /// it to a unitary on the other 36 dimensions would not change any
    /// outcome probability for syndromes `0..=6`.
    pub fn basis_change_partial(&self) -> ComplexMatrix {
        let mut s = ComplexMatrix::zeros(DIM, DIM);
        for k in 0..CORRECTABLE_SYNDROMES {
            for l in 0..4 {
                let target = StateVector::basis(PHYSICAL_QUBITS, (l << 4) | k);
                s = &s + &target.outer(&self.recovery_vector(k, l));
            }
        }
        s
    }

    /// Probabilities `tr(P_k ρ)` for `k = 0..=6`, then the failure mass.
    pub fn syndrome_probabilities(&self, rho: &DensityOperator) -> Result<[f64; 8], Error> {
        check_register(rho, DIM)?;
        let mut probs = [0.0; 8];
        for (k, vectors) in self.recovery.iter().enumerate() {
            probs[k] = vectors.iter().map(|v| v.sandwich(rho.matrix(), v).re).sum();
        }
        let success: f64 = probs[..CORRECTABLE_SYNDROMES].iter().sum();
        probs[CORRECTABLE_SYNDROMES] = (rho.trace() - success).max(0.0);
        Ok(probs)
    }

    /// Syndrome measurement, recovery and decoding to a logical 4x4 state.
    ///
    /// Computes `Σ_k D R̂_k P_k ρ P_k R̂_k† D† + tr(P_fail ρ) I/4` where `D`
    /// is the decoding isometry `|ij⟩_L → |ij⟩`. Since `D R̂_k P_k` equals
    /// `Σ_ij |ij⟩⟨R_{k,ij}|`, entry `(a, b)` of the success part is just
    /// `Σ_k ⟨R_{k,a}|ρ|R_{k,b}⟩`.
    pub fn measure_and_recover(&self, rho: &DensityOperator) -> Result<RecoveredState, Error> {
        check_register(rho, DIM)?;
        let m = rho.matrix();
        let mut logical = ComplexMatrix::zeros(4, 4);
        for vectors in &self.recovery {
            for a in 0..4 {
                for b in 0..4 {
                    logical[(a, b)] += vectors[a].sandwich(m, &vectors[b]);
                }
            }
        }
        let success = logical.trace().re;
        let failure = (rho.trace() - success).max(0.0);
        for a in 0..4 {
            logical[(a, a)] += c(failure / 4.0);
        }
        Ok(RecoveredState {
            logical: DensityOperator::from_trusted(logical),
            success_weight: success,
            failure_weight: failure,
        })
    }
}

/// Decoding isometry `|ij⟩_L → |ij⟩` applied to a 64x64 operator supported
/// on the codeword space, together with the norm of what falls outside it.
pub fn decode_codeword_operator(code: &Code62, op: &ComplexMatrix) -> (ComplexMatrix, f64) {
    let words: Vec<SparseKet> = code.codewords.iter().map(SparseKet::from_state).collect();
    let logical = ComplexMatrix::from_fn(4, 4, |a, b| words[a].sandwich(op, &words[b]));
    let mut lifted = ComplexMatrix::zeros(DIM, DIM);
    for a in 0..4 {
        for b in 0..4 {
            lifted = &lifted + &code.codewords[a].outer(&code.codewords[b]).scale(logical[(a, b)]);
        }
    }
    let residual = (op - &lifted).frobenius_norm();
    (logical, residual)
}
