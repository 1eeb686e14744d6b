//! Fidelity, Wootters concurrence, ESD-threshold search and small-`γ`
//! series-coefficient extraction.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Zero;

// libm-backed f64 math for targets without it; inherent on hosted builds.
#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::{c, check_register, hermitian_eigen, hermitian_eigenvalues, ComplexMatrix, DensityOperator};
use crate::states::TwoQubitPure;
use crate::Error;

/// Concurrence at or below this is treated as zero.
pub const ZERO_CONCURRENCE: f64 = 1e-10;
/// Coarse grid step of the ESD scan.
pub const ESD_SCAN_STEP: f64 = 1e-3;
/// Default bisection width of the ESD search.
pub const ESD_DEFAULT_TOL: f64 = 1e-6;
/// Smallest damping used for series extraction; the others are 2x and 4x.
pub const SERIES_STEP: f64 = 1e-3;

const FIDELITY_SLACK: f64 = 1e-12;
const CONCURRENCE_SLACK: f64 = 1e-10;

/// `⟨ψ|ρ|ψ⟩` for a two-qubit reference state, clamped to `[0, 1]`.
pub fn fidelity(reference: &TwoQubitPure, rho: &DensityOperator) -> Result<f64, Error> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    let f = rho.expectation(&reference.to_state_vector());
    debug_assert!(f.im.abs() < 1e-12);
    Ok(f.re.clamp(0.0, 1.0))
}

/// `σ_y ⊗ σ_y`, real in the computational basis.
fn spin_flip() -> ComplexMatrix {
    ComplexMatrix::from_fn(4, 4, |i, j| {
        if i + j == 3 {
            c(if i == 0 || i == 3 { -1.0 } else { 1.0 })
        } else {
            Complex64::zero()
        }
    })
}

/// Wootters concurrence `max(0, λ₁ - λ₂ - λ₃ - λ₄)` of a two-qubit state.
///
/// The `λᵢ` are the square roots of the eigenvalues of `ρ ρ̃` with
/// `ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)`. Writing `ρ = W W†` with
/// `W = V diag(√p)` from the spectral decomposition, they are also the
/// singular values of `τ = Wᵀ (σ_y⊗σ_y) W`, read off as the positive
/// eigenvalues of the Hermitian dilation `[[0, τ], [τ†, 0]]`. This keeps
/// the absolute error of each `λᵢ` at rounding level instead of the square
/// root of it.
pub fn concurrence(rho: &DensityOperator) -> Result<f64, Error> {
    check_register(rho, 4)?;
    let eig = hermitian_eigen(rho.matrix())?;
    let min = eig.values[3];
    if min < -crate::linalg::DEFAULT_TOL {
        return Err(Error::NotPositive { min_eigenvalue: min });
    }
    let w = ComplexMatrix::from_fn(4, 4, |i, k| eig.vectors[(i, k)] * eig.values[k].max(0.0).sqrt());
    let tau = &(&w.transpose() * &spin_flip()) * &w;
    let dilation = ComplexMatrix::from_fn(8, 8, |i, j| match (i < 4, j < 4) {
        (true, false) => tau[(i, j - 4)],
        (false, true) => tau[(j, i - 4)].conj(),
        _ => Complex64::zero(),
    });
    let lambda = hermitian_eigenvalues(&dilation)?;
    let value = lambda[0] - lambda[1] - lambda[2] - lambda[3];
    Ok(value.clamp(0.0, 1.0))
}

/// Locates entanglement sudden death along a concurrence curve `γ ↦ C(γ)`.
///
/// Scans `γ = 0, 0.001, …, 0.999` and returns `1` when the concurrence stays
/// above [`ZERO_CONCURRENCE`] at every scanned point. Otherwise the last
/// scanned point with positive concurrence and its successor bracket the
/// threshold, which is then bisected down to width `tol`; the upper end of
/// the final bracket is returned.
pub fn esd_threshold(mut curve: impl FnMut(f64) -> f64, tol: f64) -> Result<f64, Error> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    if curve(0.0) <= ZERO_CONCURRENCE {
        return Err(Error::InitiallySeparable);
    }
    let steps = (1.0 / ESD_SCAN_STEP).round() as usize;
    let grid = |k: usize| k as f64 / steps as f64;
    let mut last_alive = 0;
    for k in 1..steps {
        if curve(grid(k)) > ZERO_CONCURRENCE {
            last_alive = k;
        }
    }
    if last_alive == steps - 1 {
        return Ok(1.0);
    }
    let (mut lo, mut hi) = (grid(last_alive), grid(last_alive + 1));
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if curve(mid) > ZERO_CONCURRENCE {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

/// Estimates `c₂` in `F(γ) = 1 - c₂γ² + O(γ³)`.
///
/// With `g(γ) = (1 - F(γ))/γ²`, two Richardson steps over
/// `γ = h, 2h, 4h` remove the `γ` and `γ²` terms of `g`, so the estimate is
/// exact for quartic `1 - F`.
pub fn series_coefficient_gamma2(mut fidelity_fn: impl FnMut(f64) -> f64) -> Result<f64, Error> {
    let f0 = fidelity_fn(0.0);
    if (f0 - 1.0).abs() > 1e-10 {
        return Err(Error::FidelityNotOne(f0));
    }
    let h = SERIES_STEP;
    let mut g = |x: f64| (1.0 - fidelity_fn(x)) / (x * x);
    let (g1, g2, g4) = (g(h), g(2.0 * h), g(4.0 * h));
    let r1 = 2.0 * g1 - g2;
    let r2 = 2.0 * g2 - g4;
    Ok((4.0 * r1 - r2) / 3.0)
}

/// Values sampled on an ascending damping grid inside `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Curve {
    gammas: Vec<f64>,
    values: Vec<f64>,
}

/// Fidelity against the ideal state; values outside `[0,1]` by at most
/// `1e-12` are clamped.
pub type FidelityCurve = Curve;
/// Concurrence; values outside `[0,1]` by at most `1e-10` are clamped.
pub type ConcurrenceCurve = Curve;

impl Curve {
    pub fn fidelity(gammas: Vec<f64>, values: Vec<f64>) -> Result<FidelityCurve, Error> {
        Self::with_slack(gammas, values, FIDELITY_SLACK)
    }

    pub fn concurrence(gammas: Vec<f64>, values: Vec<f64>) -> Result<ConcurrenceCurve, Error> {
        Self::with_slack(gammas, values, CONCURRENCE_SLACK)
    }

    fn with_slack(gammas: Vec<f64>, values: Vec<f64>, slack: f64) -> Result<Self, Error> {
        if gammas.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: gammas.len(),
                found: values.len(),
            });
        }
        check_grid(&gammas)?;
        let values = values
            .into_iter()
            .map(|v| {
                if (-slack..=1.0 + slack).contains(&v) {
                    Ok(v.clamp(0.0, 1.0))
                } else {
                    Err(Error::ValueOutOfRange(v))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { gammas, values })
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }
}

/// Strictly ascending and inside `[0, 1]`.
pub fn check_grid(gammas: &[f64]) -> Result<(), Error> {
    if gammas.iter().any(|g| !(0.0..=1.0).contains(g)) || gammas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid);
    }
    Ok(())
}
