//! Two-qubit pure states: the four Bell-like/separable families and the
//! general five-angle parametrization.

use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

// libm-backed f64 math for targets without it; inherent on hosted builds.
#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::{c, DensityOperator, StateVector, NORM_TOL};
use crate::Error;

/// Normalized two-qubit pure state, amplitudes ordered `|00⟩, |01⟩, |10⟩, |11⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoQubitPure {
    amps: [Complex64; 4],
}

impl TwoQubitPure {
    pub fn new(amps: [Complex64; 4]) -> Result<Self, Error> {
        let norm_sqr: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm: norm_sqr.sqrt() });
        }
        Ok(Self { amps })
    }

    pub fn amplitudes(&self) -> &[Complex64; 4] {
        &self.amps
    }

    /// Amplitude of `|ij⟩`.
    pub fn amplitude(&self, i: usize, j: usize) -> Complex64 {
        self.amps[2 * i + j]
    }

    pub fn to_state_vector(&self) -> StateVector {
        StateVector::new(self.amps.to_vec()).expect("four amplitudes form a two-qubit register")
    }

    pub fn density(&self) -> DensityOperator {
        DensityOperator::from_pure(&self.to_state_vector()).expect("state is normalized")
    }
}

/// Which of the four two-qubit state families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `cos α |11⟩ + e^{iβ} sin α |00⟩`
    Phi,
    /// `cos α |10⟩ + e^{iβ} sin α |01⟩`
    Psi,
    /// `cos α |01⟩ + e^{iβ} sin α |00⟩` (separable)
    Zeta,
    /// `cos α |11⟩ + e^{iβ} sin α |10⟩` (separable)
    Xi,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Phi, Family::Psi, Family::Zeta, Family::Xi];

    pub fn name(self) -> &'static str {
        match self {
            Family::Phi => "phi",
            Family::Psi => "psi",
            Family::Zeta => "zeta",
            Family::Xi => "xi",
        }
    }

    /// Basis indices carrying the `cos α` and `e^{iβ} sin α` amplitudes.
    fn support(self) -> (usize, usize) {
        match self {
            Family::Phi => (0b11, 0b00),
            Family::Psi => (0b10, 0b01),
            Family::Zeta => (0b01, 0b00),
            Family::Xi => (0b11, 0b10),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = UnknownFamily;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "phi" => Ok(Family::Phi),
            "psi" => Ok(Family::Psi),
            "zeta" => Ok(Family::Zeta),
            "xi" => Ok(Family::Xi),
            _ => Err(UnknownFamily),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("unknown state family (expected phi, psi, zeta or xi)")]
pub struct UnknownFamily;

/// A member of one of the four families, fixed by the mixing angle `alpha`
/// and the relative phase `beta` (both radians).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateFamily {
    pub family: Family,
    pub alpha: f64,
    pub beta: f64,
}

impl StateFamily {
    pub fn new(family: Family, alpha: f64, beta: f64) -> Self {
        Self { family, alpha, beta }
    }

    pub fn state(&self) -> TwoQubitPure {
        make_family_state(self)
    }
}

pub fn make_family_state(state: &StateFamily) -> TwoQubitPure {
    let (cos_idx, sin_idx) = state.family.support();
    let mut amps = [c(0.0); 4];
    amps[cos_idx] = c(state.alpha.cos());
    amps[sin_idx] = Complex64::cis(state.beta) * state.alpha.sin();
    TwoQubitPure { amps }
}

/// General pure state
/// `cos α cos δ |11⟩ + sin α cos δ e^{iε₁} |00⟩ + cos β' sin δ e^{iε₂} |10⟩ + sin β' sin δ e^{iε₃} |01⟩`,
/// with `beta_mix` the mixing angle `β'` of the `|10⟩, |01⟩` pair.
pub fn make_general_state(alpha: f64, beta_mix: f64, delta: f64, eps1: f64, eps2: f64, eps3: f64) -> TwoQubitPure {
    let (sd, cd) = delta.sin_cos();
    let (sa, ca) = alpha.sin_cos();
    let (sb, cb) = beta_mix.sin_cos();
    TwoQubitPure {
        amps: [
            Complex64::cis(eps1) * (sa * cd),
            Complex64::cis(eps3) * (sb * sd),
            Complex64::cis(eps2) * (cb * sd),
            c(ca * cd),
        ],
    }
}
