//! The local `[4,1]×[4,1]` comparison code.
//!
//! Each logical qubit is encoded in its own four-qubit block with
//! `|0⟩_L = (|0000⟩+|1111⟩)/√2` and `|1⟩_L = (|0011⟩+|1100⟩)/√2`. Every block
//! is measured and recovered on its own: no jump, a jump on one of its four
//! qubits, or failure, in which case the block is replaced by `Î_L/2`.
//! Block A holds physical qubits 0..4 (the high bits of the 256-dim index).

use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use num_traits::Zero;

use crate::channels::jump_operator;
use crate::linalg::{c, check_register, ComplexMatrix, DensityOperator, SparseKet, StateVector};
use crate::states::TwoQubitPure;
use crate::{Error, RecoveredState};

pub const BLOCK_QUBITS: usize = 4;
pub const BLOCK_DIM: usize = 1 << BLOCK_QUBITS;
pub const PHYSICAL_QUBITS: usize = 2 * BLOCK_QUBITS;
pub const DIM: usize = 1 << PHYSICAL_QUBITS;
/// No jump plus one jump per block qubit.
pub const BLOCK_SYNDROMES: usize = 1 + BLOCK_QUBITS;

type Block2 = [[Complex64; 2]; 2];

#[derive(Clone, Debug)]
pub struct Code41 {
    codewords: [StateVector; 2],
    /// `recovery[k][i]`: `k = 0` the codewords, `k ≥ 1` the one-jump image of
    /// `|i⟩_L` for a jump on block qubit `k - 1`.
    recovery: Vec<[StateVector; 2]>,
    sparse: Vec<[SparseKet; 2]>,
}

impl Default for Code41 {
    fn default() -> Self {
        Self::new()
    }
}

impl Code41 {
    pub fn new() -> Self {
        let ket = |bits: &str| StateVector::from_bits(bits).expect("valid four-qubit label");
        let codewords = [
            (&ket("0000") + &ket("1111")).scale(c(FRAC_1_SQRT_2)),
            (&ket("0011") + &ket("1100")).scale(c(FRAC_1_SQRT_2)),
        ];

        // Gram-Schmidt over the jump images, in syndrome order.
        let mut basis: Vec<StateVector> = codewords.to_vec();
        let mut recovery = Vec::with_capacity(BLOCK_SYNDROMES);
        recovery.push(codewords.clone());
        for q in 0..BLOCK_QUBITS {
            let pair = [0, 1].map(|i| {
                let mut v = codewords[i].apply_local(&jump_operator(), q);
                for b in &basis {
                    v = &v + &b.scale(-b.inner(&v));
                }
                let v = v.normalized().expect("jump image independent of earlier subspaces");
                basis.push(v.clone());
                v
            });
            recovery.push(pair);
        }
        let sparse = recovery
            .iter()
            .map(|p| [SparseKet::from_state(&p[0]), SparseKet::from_state(&p[1])])
            .collect();
        Self {
            codewords,
            recovery,
            sparse,
        }
    }

    /// `|i⟩_L` of one block.
    pub fn block_codeword(&self, i: usize) -> &StateVector {
        &self.codewords[i]
    }

    /// Block vector for syndrome `k ∈ 0..=4` and logical value `i`.
    pub fn block_recovery_vector(&self, k: usize, i: usize) -> &StateVector {
        &self.recovery[k][i]
    }

    /// `[P_0, …, P_4, P_fail]` on one 16-dim block.
    pub fn block_projectors(&self) -> Vec<ComplexMatrix> {
        let mut out: Vec<ComplexMatrix> = self
            .recovery
            .iter()
            .map(|pair| &pair[0].projector() + &pair[1].projector())
            .collect();
        let fail = out.iter().fold(ComplexMatrix::identity(BLOCK_DIM), |acc, p| &acc - p);
        out.push(fail);
        out
    }

    /// Maps `|ij⟩ → |i⟩_L ⊗ |j⟩_L`.
    pub fn encode(&self, state: &TwoQubitPure) -> StateVector {
        let mut out = StateVector::zero(DIM).expect("256 is a register size");
        for i in 0..2 {
            for j in 0..2 {
                let a = state.amplitude(i, j);
                if a.is_zero() {
                    continue;
                }
                out = &out + &self.codewords[i].kron(&self.codewords[j]).scale(a);
            }
        }
        out
    }

    /// One block's recovery-and-decode map applied to the 16x16 operator
    /// `entry(a, a')`, which need not be Hermitian. Returns the full output
    /// and the part produced by correctable syndromes alone.
    fn decode_block(&self, entry: impl Fn(usize, usize) -> Complex64) -> (Block2, Block2) {
        let mut success = [[Complex64::zero(); 2]; 2];
        for pair in &self.sparse {
            for (i, ki) in pair.iter().enumerate() {
                for (j, kj) in pair.iter().enumerate() {
                    success[i][j] += ki.sandwich_with(&entry, kj);
                }
            }
        }
        let trace: Complex64 = (0..BLOCK_DIM).map(|a| entry(a, a)).sum();
        let lost = (trace - success[0][0] - success[1][1]) * 0.5;
        let mut full = success;
        full[0][0] += lost;
        full[1][1] += lost;
        (full, success)
    }

    /// Independent syndrome measurement, recovery and decoding of both blocks.
    pub fn measure_and_recover(&self, rho: &DensityOperator) -> Result<RecoveredState, Error> {
        check_register(rho, DIM)?;
        let m = rho.matrix();

        // Block A first: tau[i][i'] is a 16x16 operator on block B.
        let mut tau_full = [
            [
                ComplexMatrix::zeros(BLOCK_DIM, BLOCK_DIM),
                ComplexMatrix::zeros(BLOCK_DIM, BLOCK_DIM),
            ],
            [
                ComplexMatrix::zeros(BLOCK_DIM, BLOCK_DIM),
                ComplexMatrix::zeros(BLOCK_DIM, BLOCK_DIM),
            ],
        ];
        let mut tau_success = tau_full.clone();
        for b in 0..BLOCK_DIM {
            for b2 in 0..BLOCK_DIM {
                let (full, success) =
                    self.decode_block(|a, a2| m[((a << BLOCK_QUBITS) | b, (a2 << BLOCK_QUBITS) | b2)]);
                for i in 0..2 {
                    for i2 in 0..2 {
                        tau_full[i][i2][(b, b2)] = full[i][i2];
                        tau_success[i][i2][(b, b2)] = success[i][i2];
                    }
                }
            }
        }

        let mut logical = ComplexMatrix::zeros(4, 4);
        let mut success_weight = 0.0;
        for i in 0..2 {
            for i2 in 0..2 {
                let (full, _) = self.decode_block(|b, b2| tau_full[i][i2][(b, b2)]);
                for j in 0..2 {
                    for j2 in 0..2 {
                        logical[(2 * i + j, 2 * i2 + j2)] = full[j][j2];
                    }
                }
                if i == i2 {
                    let (_, success) = self.decode_block(|b, b2| tau_success[i][i][(b, b2)]);
                    success_weight += success[0][0].re + success[1][1].re;
                }
            }
        }
        let failure_weight = (rho.trace() - success_weight).max(0.0);
        Ok(RecoveredState {
            logical: DensityOperator::from_trusted(logical),
            success_weight,
            failure_weight,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{apply_damping, DampingChannel};
    use crate::states::{Family, StateFamily};

    #[test]
    fn encoding_examples() {
        let code = Code41::new();
        let e00 = code.encode(&StateFamily::new(Family::Zeta, core::f64::consts::FRAC_PI_2, 0.0).state());
        for idx in [0b0000_0000, 0b0000_1111, 0b1111_0000, 0b1111_1111] {
            assert!((e00.amplitudes()[idx] - c(0.5)).norm() < 1e-15);
        }
        let e11 = code.encode(&StateFamily::new(Family::Phi, 0.0, 0.0).state());
        for idx in [0b0011_0011, 0b0011_1100, 0b1100_0011, 0b1100_1100] {
            assert!((e11.amplitudes()[idx] - c(0.5)).norm() < 1e-15);
        }
        assert!((e11.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn block_vectors_are_orthonormal() {
        let code = Code41::new();
        let all: Vec<&StateVector> = (0..BLOCK_SYNDROMES)
            .flat_map(|k| [0, 1].map(|i| code.block_recovery_vector(k, i)))
            .collect();
        for (x, u) in all.iter().enumerate() {
            for (y, v) in all.iter().enumerate() {
                let expect = if x == y { 1.0 } else { 0.0 };
                assert!((u.inner(v) - c(expect)).norm() < 1e-12);
            }
        }
        // Jump on block qubit 0 sends |0⟩_L to |0111⟩ and |1⟩_L to |0100⟩.
        assert_eq!(
            *code.block_recovery_vector(1, 0),
            StateVector::from_bits("0111").unwrap()
        );
        assert_eq!(
            *code.block_recovery_vector(1, 1),
            StateVector::from_bits("0100").unwrap()
        );
    }

    #[test]
    fn block_projectors_partition_identity() {
        let code = Code41::new();
        let ps = code.block_projectors();
        assert_eq!(ps.len(), 6);
        assert!((ps[5].trace().re - 6.0).abs() < 1e-12);
        let total = ps
            .iter()
            .fold(ComplexMatrix::zeros(BLOCK_DIM, BLOCK_DIM), |acc, p| &acc + p);
        assert!(total.max_abs_diff(&ComplexMatrix::identity(BLOCK_DIM)) < 1e-15);
        for p in &ps {
            assert!((p * p).max_abs_diff(p) < 1e-12);
        }
    }

    #[test]
    fn no_damping_recovers_input() {
        let code = Code41::new();
        for f in Family::ALL {
            let s = StateFamily::new(f, 0.9, 0.4).state();
            let out = code
                .measure_and_recover(&DensityOperator::from_pure(&code.encode(&s)).unwrap())
                .unwrap();
            assert!(out.logical.matrix().max_abs_diff(s.density().matrix()) < 1e-14);
            assert!(out.failure_weight.abs() < 1e-15);
        }
    }

    // Full tensor-product route: Kraus operators of the two-block channel.
    fn dense_recover(code: &Code41, rho: &DensityOperator) -> ComplexMatrix {
        let ps = code.block_projectors();
        let eig = crate::linalg::hermitian_eigen(&ps[BLOCK_SYNDROMES]).unwrap();
        let mut kraus: Vec<ComplexMatrix> = (0..BLOCK_SYNDROMES)
            .map(|k| {
                let d0 = StateVector::basis(1, 0).outer(code.block_recovery_vector(k, 0));
                let d1 = StateVector::basis(1, 1).outer(code.block_recovery_vector(k, 1));
                &d0 + &d1
            })
            .collect();
        for col in 0..6 {
            let f = StateVector::new((0..BLOCK_DIM).map(|r| eig.vectors[(r, col)]).collect()).unwrap();
            for i in 0..2 {
                kraus.push(StateVector::basis(1, i).outer(&f).scale(c(FRAC_1_SQRT_2)));
            }
        }
        let mut out = ComplexMatrix::zeros(4, 4);
        for ka in &kraus {
            for kb in &kraus {
                let k = ka.kron(kb);
                out = &out + &(&(&k * rho.matrix()) * &k.adjoint());
            }
        }
        out
    }

    #[test]
    fn blockwise_recovery_matches_two_block_kraus_sum() {
        let code = Code41::new();
        for (f, a, b, g) in [(Family::Phi, 0.5, 0.0, 0.25), (Family::Zeta, 1.2, 0.7, 0.6)] {
            let s = StateFamily::new(f, a, b).state();
            let rho = apply_damping(
                &DensityOperator::from_pure(&code.encode(&s)).unwrap(),
                &DampingChannel::new(g, PHYSICAL_QUBITS).unwrap(),
            )
            .unwrap();
            let fast = code.measure_and_recover(&rho).unwrap();
            assert!(fast.logical.matrix().max_abs_diff(&dense_recover(&code, &rho)) < 1e-13);
            assert!((fast.success_weight + fast.failure_weight - 1.0).abs() < 1e-12);
            assert!(fast.failure_weight > 0.0);
        }
    }

    #[test]
    fn rejects_wrong_dimension() {
        let rho = StateFamily::new(Family::Phi, 0.3, 0.0).state().density();
        assert!(matches!(
            Code41::new().measure_and_recover(&rho),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
