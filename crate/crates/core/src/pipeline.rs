//! Encode → damp → recover → decode → measure.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::channels::{apply_damping, DampingChannel};
use crate::code41::{self, Code41};
use crate::code62::{self, Code62};
use crate::linalg::DensityOperator;
use crate::measures::{check_grid, concurrence, fidelity};
use crate::states::TwoQubitPure;
use crate::{Error, RecoveredState};

/// Error-correction scheme protecting the logical pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Code {
    /// Bare physical qubits.
    None,
    /// One `[4,1]` block per logical qubit, recovered locally.
    Local41,
    /// The `[6,2]` code, recovered jointly.
    NonLocal62,
}

impl Code {
    pub const ALL: [Code; 3] = [Code::None, Code::Local41, Code::NonLocal62];

    pub fn name(self) -> &'static str {
        match self {
            Code::None => "none",
            Code::Local41 => "local41",
            Code::NonLocal62 => "nonlocal62",
        }
    }

    pub fn physical_qubits(self) -> usize {
        match self {
            Code::None => 2,
            Code::Local41 => code41::PHYSICAL_QUBITS,
            Code::NonLocal62 => code62::PHYSICAL_QUBITS,
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Code {
    type Err = UnknownCode;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(Code::None),
            "local41" => Ok(Code::Local41),
            "nonlocal62" => Ok(Code::NonLocal62),
            _ => Err(UnknownCode),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("unknown code (expected none, local41 or nonlocal62)")]
pub struct UnknownCode;

/// One evaluated damping value.
#[derive(Clone, Debug, PartialEq)]
pub struct PipelinePoint {
    pub gamma: f64,
    pub fidelity: f64,
    pub concurrence: f64,
}

/// Holds both code tables so repeated evaluations don't rebuild them.
#[derive(Clone, Debug, Default)]
pub struct Pipeline {
    code62: Code62,
    code41: Code41,
}

impl Pipeline {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn code62(&self) -> &Code62 {
        &self.code62
    }

    pub fn code41(&self) -> &Code41 {
        &self.code41
    }

    /// Physical density operator of the encoded input, before damping.
    pub fn encoded(&self, state: &TwoQubitPure, code: Code) -> DensityOperator {
        let physical = match code {
            Code::None => return state.density(),
            Code::Local41 => self.code41.encode(state),
            Code::NonLocal62 => self.code62.encode(state),
        };
        DensityOperator::from_pure(&physical).expect("encoding is an isometry")
    }

    /// Logical state delivered after damping every physical qubit by `gamma`.
    pub fn recovered(&self, state: &TwoQubitPure, code: Code, gamma: f64) -> Result<RecoveredState, Error> {
        let channel = DampingChannel::new(gamma, code.physical_qubits())?;
        let damped = apply_damping(&self.encoded(state, code), &channel)?;
        match code {
            Code::None => Ok(RecoveredState {
                logical: damped,
                success_weight: 1.0,
                failure_weight: 0.0,
            }),
            Code::Local41 => self.code41.measure_and_recover(&damped),
            Code::NonLocal62 => self.code62.measure_and_recover(&damped),
        }
    }

    pub fn evaluate(&self, state: &TwoQubitPure, code: Code, gamma: f64) -> Result<PipelinePoint, Error> {
        let out = self.recovered(state, code, gamma)?;
        Ok(PipelinePoint {
            gamma,
            fidelity: fidelity(state, &out.logical)?,
            concurrence: concurrence(&out.logical)?,
        })
    }

    pub fn fidelity_at(&self, state: &TwoQubitPure, code: Code, gamma: f64) -> Result<f64, Error> {
        fidelity(state, &self.recovered(state, code, gamma)?.logical)
    }

    pub fn concurrence_at(&self, state: &TwoQubitPure, code: Code, gamma: f64) -> Result<f64, Error> {
        concurrence(&self.recovered(state, code, gamma)?.logical)
    }

    /// Evaluates every point of an ascending grid in `[0, 1]`.
    pub fn sweep(&self, state: &TwoQubitPure, code: Code, gammas: &[f64]) -> Result<Vec<PipelinePoint>, Error> {
        check_grid(gammas)?;
        gammas.iter().map(|&g| self.evaluate(state, code, g)).collect()
    }
}

/// `n` evenly spaced points from `min` to `max` inclusive.
pub fn uniform_grid(min: f64, max: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => alloc::vec![min],
        _ => (0..n).map(|k| min + (max - min) * k as f64 / (n - 1) as f64).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{Family, StateFamily};
    use core::f64::consts::FRAC_PI_4;

    #[test]
    fn code_names_round_trip() {
        for c in Code::ALL {
            assert_eq!(c.name().parse::<Code>(), Ok(c));
        }
        assert!("steane".parse::<Code>().is_err());
    }

    #[test]
    fn undamped_bell_is_perfect_under_every_code() {
        let p = Pipeline::new();
        let s = StateFamily::new(Family::Phi, FRAC_PI_4, 0.0).state();
        for code in Code::ALL {
            let pt = p.evaluate(&s, code, 0.0).unwrap();
            assert!((pt.fidelity - 1.0).abs() < 1e-14);
            assert!((pt.concurrence - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn uncoded_psi_sweep_is_one_minus_gamma() {
        let p = Pipeline::new();
        let s = StateFamily::new(Family::Psi, 0.4, 0.0).state();
        for pt in p.sweep(&s, Code::None, &uniform_grid(0.0, 1.0, 11)).unwrap() {
            assert!((pt.fidelity - (1.0 - pt.gamma)).abs() < 1e-14);
        }
    }

    #[test]
    fn sweep_rejects_bad_grid() {
        let p = Pipeline::new();
        let s = StateFamily::new(Family::Psi, 0.4, 0.0).state();
        assert_eq!(p.sweep(&s, Code::None, &[0.2, 0.1]), Err(Error::InvalidGrid));
        assert_eq!(p.evaluate(&s, Code::None, 1.2), Err(Error::InvalidGamma(1.2)));
    }

    #[test]
    fn uniform_grid_endpoints() {
        let g = uniform_grid(0.0, 1.0, 201);
        assert_eq!(g.len(), 201);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[200], 1.0);
        assert_eq!(g[100], 0.5);
        assert_eq!(uniform_grid(0.3, 0.3, 1), alloc::vec![0.3]);
    }
}
