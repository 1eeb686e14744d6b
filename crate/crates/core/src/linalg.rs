//! Dense complex linear algebra for operators on small qubit registers.
//!
//! Everything here is sized for registers of at most eight qubits (256
//! dimensional). Basis index `i` of an `n`-qubit register encodes the qubits
//! most-significant-bit first, so qubit 0 is the leftmost tensor factor.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use num_traits::Zero;

// libm-backed f64 math for targets without it; inherent on hosted builds.
#[allow(unused_imports)]
use num_traits::Float;

use crate::Error;

/// Absolute tolerance for Hermiticity, unitarity and positivity checks.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Tolerance on the trace of a density operator and the norm of a state.
pub const NORM_TOL: f64 = 1e-12;
/// Largest register handled by the crate.
pub const MAX_QUBITS: usize = 8;

const JACOBI_MAX_SWEEPS: usize = 100;

/// A 2x2 operator acting on a single qubit, `op[row][col]`.
pub type Mat2 = [[Complex64; 2]; 2];

#[inline]
pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![Complex64::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c(1.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self, Error> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = c(d);
        }
        m
    }

    pub fn from_mat2(op: &Mat2) -> Self {
        Self::from_fn(2, 2, |i, j| op[i][j])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * k).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - self†`.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.is_square() && (&self.adjoint() * self).max_abs_diff(&Self::identity(self.rows)) <= tol
    }

    /// Hermitian with no eigenvalue below `-tol`.
    pub fn is_psd(&self, tol: f64) -> bool {
        match hermitian_eigenvalues_tol(self, tol) {
            Ok(values) => values.last().is_none_or(|&v| v >= -tol),
            Err(_) => false,
        }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// `self · v`.
    pub fn apply(&self, v: &StateVector) -> StateVector {
        assert_eq!(self.cols, v.dim(), "matrix-vector dimension mismatch");
        let amps = (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v.amplitudes())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect();
        StateVector { amps }
    }

    /// `K ρ K†` where `K` is `op` acting on `qubit` of an `n_qubits` register.
    pub fn conjugate_local(&self, op: &Mat2, qubit: usize, n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        assert!(
            self.rows == dim && self.cols == dim,
            "operator does not match register size"
        );
        assert!(qubit < n_qubits, "qubit index out of range");
        let mask = 1usize << (n_qubits - 1 - qubit);
        let mut out = Self::zeros(dim, dim);
        for i in 0..dim {
            let bi = usize::from(i & mask != 0);
            let i0 = i & !mask;
            for j in 0..dim {
                let bj = usize::from(j & mask != 0);
                let j0 = j & !mask;
                let mut acc = Complex64::zero();
                for (a, &ka) in op[bi].iter().enumerate() {
                    if ka.is_zero() {
                        continue;
                    }
                    let row = i0 | (a * mask);
                    for (b, &kb) in op[bj].iter().enumerate() {
                        if kb.is_zero() {
                            continue;
                        }
                        acc += ka * self.data[row * dim + (j0 | (b * mask))] * kb.conj();
                    }
                }
                out.data[i * dim + j] = acc;
            }
        }
        out
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let src = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, b) in dst.iter_mut().zip(src) {
                    *d += a * b;
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "matrix sum shape mismatch"
        );
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "matrix difference shape mismatch"
        );
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Kronecker product `a ⊗ b`.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Unitary whose column `k` is the eigenvector for `values[k]`.
    pub vectors: ComplexMatrix,
}

/// Diagonalizes `h` with the cyclic Jacobi method.
///
/// Each rotation first removes the phase of the pivot `h[p][q]` with a
/// diagonal unitary, then applies the real symmetric Jacobi rotation that
/// annihilates the now-real pivot.
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<HermitianEigen, Error> {
    hermitian_eigen_tol(h, DEFAULT_TOL)
}

pub fn hermitian_eigen_tol(h: &ComplexMatrix, tol: f64) -> Result<HermitianEigen, Error> {
    if !h.is_square() {
        return Err(Error::NotSquare {
            rows: h.rows,
            cols: h.cols,
        });
    }
    let defect = h.hermitian_defect();
    if defect > tol {
        return Err(Error::NotHermitian { defect });
    }
    let n = h.rows;
    // Symmetrize so rounding in the input cannot leak into the rotations.
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| (h[(i, j)] + h[(j, i)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= f64::EPSILON * 1e-2 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= f64::MIN_POSITIVE {
                    continue;
                }
                let phase = apq / r;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;
                let pc = phase.conj();

                // a <- a J, v <- v J
                for m in [&mut a, &mut v] {
                    for k in 0..n {
                        let xp = m[(k, p)];
                        let xq = m[(k, q)];
                        m[(k, p)] = xp * cs - xq * pc * sn;
                        m[(k, q)] = xp * sn + xq * pc * cs;
                    }
                }
                // a <- J† a
                for k in 0..n {
                    let xp = a[(p, k)];
                    let xq = a[(q, k)];
                    a[(p, k)] = xp * cs - xq * phase * sn;
                    a[(q, k)] = xp * sn + xq * phase * cs;
                }
                a[(p, q)] = Complex64::zero();
                a[(q, p)] = Complex64::zero();
                a[(p, p)] = c(a[(p, p)].re);
                a[(q, q)] = c(a[(q, q)].re);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |row, col| v[(row, order[col])]);
    Ok(HermitianEigen { values, vectors })
}

/// Real eigenvalues of a Hermitian matrix in descending order.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>, Error> {
    hermitian_eigenvalues_tol(h, DEFAULT_TOL)
}

pub fn hermitian_eigenvalues_tol(h: &ComplexMatrix, tol: f64) -> Result<Vec<f64>, Error> {
    hermitian_eigen_tol(h, tol).map(|e| e.values)
}

/// Unique positive-semidefinite square root of `h`.
///
/// Eigenvalues in `[-1e-10, 0)` are treated as rounding noise and clamped to
/// zero; anything more negative is rejected. Positive eigenvalues below the
/// solver's resolution `n·ε·max|λ|` are zeroed too, otherwise their square
/// roots (~1e-8) would dominate the error on rank-deficient input.
pub fn psd_sqrt(h: &ComplexMatrix) -> Result<ComplexMatrix, Error> {
    let eig = hermitian_eigen(h)?;
    let min = eig.values.last().copied().unwrap_or(0.0);
    if min < -DEFAULT_TOL {
        return Err(Error::NotPositive { min_eigenvalue: min });
    }
    let n = h.rows;
    let floor = n as f64 * f64::EPSILON * eig.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let roots: Vec<f64> = eig
        .values
        .iter()
        .map(|&l| if l <= floor { 0.0 } else { l.sqrt() })
        .collect();
    let u = &eig.vectors;
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        (0..n).map(|k| u[(i, k)] * roots[k] * u[(j, k)].conj()).sum()
    }))
}

/// Ket over a qubit register.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Wraps amplitudes; the length must be a power of two (1 to 256).
    pub fn new(amps: Vec<Complex64>) -> Result<Self, Error> {
        let n = amps.len();
        if !n.is_power_of_two() || n > 1 << MAX_QUBITS {
            return Err(Error::NotQubitRegister { dim: n });
        }
        Ok(Self { amps })
    }

    pub fn zero(dim: usize) -> Result<Self, Error> {
        Self::new(vec![Complex64::zero(); dim])
    }

    /// Computational basis ket `|index⟩` on `n_qubits` qubits.
    pub fn basis(n_qubits: usize, index: usize) -> Self {
        assert!(
            n_qubits <= MAX_QUBITS && index < 1 << n_qubits,
            "basis index out of range"
        );
        let mut amps = vec![Complex64::zero(); 1 << n_qubits];
        amps[index] = c(1.0);
        Self { amps }
    }

    /// Basis ket written as a bit string, leftmost character is qubit 0.
    pub fn from_bits(bits: &str) -> Result<Self, Error> {
        let n = bits.len();
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::InvalidBitString);
        }
        let mut index = 0usize;
        for ch in bits.chars() {
            index = (index << 1)
                | match ch {
                    '0' => 0,
                    '1' => 1,
                    _ => return Err(Error::InvalidBitString),
                };
        }
        Ok(Self::basis(n, index))
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn n_qubits(&self) -> usize {
        self.amps.len().trailing_zeros() as usize
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORM_TOL
    }

    pub fn normalized(&self) -> Result<Self, Error> {
        let n = self.norm();
        if n <= f64::MIN_POSITIVE {
            return Err(Error::ZeroVector);
        }
        Ok(self.scale(c(1.0 / n)))
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self {
            amps: self.amps.iter().map(|z| z * k).collect(),
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "inner product dimension mismatch");
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// `|self⟩⟨self|`.
    pub fn projector(&self) -> ComplexMatrix {
        self.outer(self)
    }

    /// `|self⟩⟨other|`.
    pub fn outer(&self, other: &Self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim(), other.dim(), |i, j| self.amps[i] * other.amps[j].conj())
    }

    pub fn kron(&self, other: &Self) -> Self {
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        Self { amps }
    }

    /// Applies `op` to one qubit.
    pub fn apply_local(&self, op: &Mat2, qubit: usize) -> Self {
        let n = self.n_qubits();
        assert!(qubit < n, "qubit index out of range");
        let mask = 1usize << (n - 1 - qubit);
        let amps = (0..self.dim())
            .map(|i| {
                let bit = usize::from(i & mask != 0);
                let base = i & !mask;
                op[bit][0] * self.amps[base] + op[bit][1] * self.amps[base | mask]
            })
            .collect();
        Self { amps }
    }
}

impl Add for &StateVector {
    type Output = StateVector;

    fn add(self, rhs: &StateVector) -> StateVector {
        assert_eq!(self.dim(), rhs.dim(), "state sum dimension mismatch");
        StateVector {
            amps: self.amps.iter().zip(&rhs.amps).map(|(a, b)| a + b).collect(),
        }
    }
}

/// A validated density operator: Hermitian, unit trace, positive.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
}

impl DensityOperator {
    /// Validates `matrix` against the default tolerances.
    pub fn new(matrix: ComplexMatrix) -> Result<Self, Error> {
        validate_density(&matrix)?;
        Ok(Self { matrix })
    }

    /// `|psi⟩⟨psi|` for a normalized ket.
    pub fn from_pure(psi: &StateVector) -> Result<Self, Error> {
        if !psi.is_normalized() {
            return Err(Error::NotNormalized { norm: psi.norm() });
        }
        Ok(Self {
            matrix: psi.projector(),
        })
    }

    /// For outputs of maps that preserve validity analytically.
    pub(crate) fn from_trusted(matrix: ComplexMatrix) -> Self {
        debug_assert!(matrix.is_square() && matrix.rows().is_power_of_two());
        Self { matrix }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn n_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// `⟨v|ρ|v⟩`.
    pub fn expectation(&self, v: &StateVector) -> Complex64 {
        assert_eq!(v.dim(), self.dim(), "expectation dimension mismatch");
        let n = self.dim();
        let a = v.amplitudes();
        let m = self.matrix.as_slice();
        let mut acc = Complex64::zero();
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            let row: Complex64 = m[i * n..(i + 1) * n].iter().zip(a).map(|(x, y)| x * y).sum();
            acc += a[i].conj() * row;
        }
        acc
    }

    /// Re-runs the full validity check.
    pub fn validate(&self) -> Result<(), Error> {
        validate_density(&self.matrix)
    }

    pub fn min_eigenvalue(&self) -> Result<f64, Error> {
        hermitian_eigenvalues(&self.matrix).map(|v| v.last().copied().unwrap_or(0.0))
    }
}

/// Ket stored as its nonzero amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct SparseKet {
    terms: Vec<(usize, Complex64)>,
}

impl SparseKet {
    pub(crate) fn from_state(v: &StateVector) -> Self {
        let terms = v
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| (i, *a))
            .collect();
        Self { terms }
    }

    /// `⟨self|m|other⟩`.
    pub(crate) fn sandwich(&self, m: &ComplexMatrix, other: &SparseKet) -> Complex64 {
        self.sandwich_with(&|p, q| m[(p, q)], other)
    }

    /// `⟨self|M|other⟩` for an operator given entrywise.
    pub(crate) fn sandwich_with(&self, entry: &impl Fn(usize, usize) -> Complex64, other: &SparseKet) -> Complex64 {
        let mut acc = Complex64::zero();
        for &(p, up) in &self.terms {
            for &(q, vq) in &other.terms {
                acc += up.conj() * entry(p, q) * vq;
            }
        }
        acc
    }
}

/// Dimension, trace and Hermiticity of a density operator handed to a
/// recovery map. Positivity is guaranteed by the type's constructors.
pub(crate) fn check_register(rho: &DensityOperator, dim: usize) -> Result<(), Error> {
    if rho.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: rho.dim(),
        });
    }
    let tr = rho.matrix().trace();
    if (tr.re - 1.0).abs() > NORM_TOL || tr.im.abs() > NORM_TOL {
        return Err(Error::BadTrace { trace: tr.re });
    }
    let defect = rho.matrix().hermitian_defect();
    if defect > DEFAULT_TOL {
        return Err(Error::NotHermitian { defect });
    }
    Ok(())
}

fn validate_density(m: &ComplexMatrix) -> Result<(), Error> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if !m.rows().is_power_of_two() || m.rows() > 1 << MAX_QUBITS {
        return Err(Error::NotQubitRegister { dim: m.rows() });
    }
    let tr = m.trace();
    if (tr.re - 1.0).abs() > NORM_TOL || tr.im.abs() > NORM_TOL {
        return Err(Error::BadTrace { trace: tr.re });
    }
    let values = hermitian_eigenvalues(m)?;
    let min = values.last().copied().unwrap_or(0.0);
    if min < -DEFAULT_TOL {
        return Err(Error::NotPositive { min_eigenvalue: min });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_fn(2, 2, |i, j| c(if i != j { 1.0 } else { 0.0 }))
    }

    #[test]
    fn identity_kron_identity() {
        let i4 = tensor_product(&ComplexMatrix::identity(2), &ComplexMatrix::identity(2));
        assert_eq!(i4, ComplexMatrix::identity(4));
    }

    #[test]
    fn basis_kets_compose() {
        let k = StateVector::from_bits("0")
            .unwrap()
            .kron(&StateVector::from_bits("1").unwrap());
        assert_eq!(k, StateVector::basis(2, 1));
        let xx = tensor_product(&sigma_x(), &sigma_x());
        assert_eq!(xx.apply(&StateVector::basis(2, 0)), StateVector::basis(2, 3));
    }

    #[test]
    fn kron_block_structure() {
        let a = ComplexMatrix::from_fn(2, 3, |i, j| Complex64::new(i as f64 + 1.0, j as f64));
        let b = ComplexMatrix::from_fn(3, 2, |i, j| Complex64::new(j as f64, -(i as f64)));
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (6, 6));
        for i in 0..2 {
            for j in 0..3 {
                for r in 0..3 {
                    for s in 0..2 {
                        assert_eq!(k[(i * 3 + r, j * 2 + s)], a[(i, j)] * b[(r, s)]);
                    }
                }
            }
        }
    }

    #[test]
    fn eigenvalues_of_diagonal_are_sorted() {
        let d = ComplexMatrix::from_real_diagonal(&[3.0, 1.0, 2.0]);
        assert_eq!(hermitian_eigenvalues(&d).unwrap(), vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn pauli_x_spectrum() {
        let v = hermitian_eigenvalues(&sigma_x()).unwrap();
        assert!((v[0] - 1.0).abs() < 1e-14 && (v[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn rank_one_projector_spectrum() {
        let psi = StateVector::new(vec![
            c(0.5),
            Complex64::new(0.0, 0.5),
            c(-0.5),
            Complex64::new(0.5, 0.0),
        ])
        .unwrap();
        let v = hermitian_eigenvalues(&psi.projector()).unwrap();
        let expected = [1.0, 0.0, 0.0, 0.0];
        for (a, b) in v.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12, "{v:?}");
        }
    }

    #[test]
    fn eigen_rejects_non_hermitian() {
        let mut m = ComplexMatrix::identity(2);
        m[(0, 1)] = c(1.0);
        assert!(matches!(hermitian_eigenvalues(&m), Err(Error::NotHermitian { .. })));
        let rect = ComplexMatrix::zeros(2, 3);
        assert!(matches!(hermitian_eigenvalues(&rect), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn complex_pivot_is_diagonalized() {
        // [[1, i], [-i, 1]] has eigenvalues 2 and 0.
        let m = ComplexMatrix::from_row_major(
            2,
            2,
            vec![c(1.0), Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0), c(1.0)],
        )
        .unwrap();
        let e = hermitian_eigen(&m).unwrap();
        assert!((e.values[0] - 2.0).abs() < 1e-14 && e.values[1].abs() < 1e-14);
        assert!(e.vectors.is_unitary(1e-12));
        let d = &(&e.vectors.adjoint() * &m) * &e.vectors;
        assert!(d.max_abs_diff(&ComplexMatrix::from_real_diagonal(&e.values)) < 1e-12);
    }

    #[test]
    fn psd_sqrt_examples() {
        let r = psd_sqrt(&ComplexMatrix::from_real_diagonal(&[4.0, 9.0])).unwrap();
        assert!(r.max_abs_diff(&ComplexMatrix::from_real_diagonal(&[2.0, 3.0])) < 1e-14);
        let i = ComplexMatrix::identity(3);
        assert!(psd_sqrt(&i).unwrap().max_abs_diff(&i) < 1e-14);
        let p = StateVector::new(vec![c(0.6), Complex64::new(0.0, 0.8)])
            .unwrap()
            .projector();
        assert!(psd_sqrt(&p).unwrap().max_abs_diff(&p) < 1e-12);
    }

    #[test]
    fn psd_sqrt_clamps_tiny_negatives_and_rejects_real_ones() {
        let r = psd_sqrt(&ComplexMatrix::from_real_diagonal(&[1.0, -5e-11])).unwrap();
        assert_eq!(r[(1, 1)], c(0.0));
        assert!(matches!(
            psd_sqrt(&ComplexMatrix::from_real_diagonal(&[1.0, -1e-6])),
            Err(Error::NotPositive { .. })
        ));
    }

    #[test]
    fn density_validation() {
        assert!(DensityOperator::new(ComplexMatrix::identity(4).scale(c(0.25))).is_ok());
        assert!(matches!(
            DensityOperator::new(ComplexMatrix::identity(4)),
            Err(Error::BadTrace { .. })
        ));
        assert!(matches!(
            DensityOperator::new(ComplexMatrix::from_real_diagonal(&[1.5, -0.5])),
            Err(Error::NotPositive { .. })
        ));
        assert!(matches!(
            DensityOperator::new(ComplexMatrix::identity(3).scale(c(1.0 / 3.0))),
            Err(Error::NotQubitRegister { dim: 3 })
        ));
        let unnormalized = StateVector::basis(1, 0).scale(c(2.0));
        assert!(matches!(
            DensityOperator::from_pure(&unnormalized),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn local_ops_match_full_kron() {
        let op: Mat2 = [
            [c(0.3), Complex64::new(0.1, 0.2)],
            [Complex64::new(-0.4, 0.0), Complex64::new(0.0, 0.7)],
        ];
        let psi = StateVector::new((0..8).map(|k| Complex64::new(k as f64, 1.0 - k as f64)).collect()).unwrap();
        let rho = psi.projector();
        for q in 0..3 {
            let mut full = ComplexMatrix::identity(1);
            for k in 0..3 {
                let f = if k == q {
                    ComplexMatrix::from_mat2(&op)
                } else {
                    ComplexMatrix::identity(2)
                };
                full = full.kron(&f);
            }
            let expect_vec = full.apply(&psi);
            assert!(psi
                .apply_local(&op, q)
                .amplitudes()
                .iter()
                .zip(expect_vec.amplitudes())
                .all(|(a, b)| (a - b).norm() < 1e-12));
            let expect = &(&full * &rho) * &full.adjoint();
            assert!(rho.conjugate_local(&op, q, 3).max_abs_diff(&expect) < 1e-12);
        }
    }

    #[test]
    fn bit_strings() {
        assert_eq!(StateVector::from_bits("010000").unwrap(), StateVector::basis(6, 16));
        assert!(StateVector::from_bits("012").is_err());
        assert!(StateVector::from_bits("").is_err());
    }
}
