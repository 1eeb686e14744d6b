//! Behaviour of the two codes under damping and under isolated jumps.

use std::f64::consts::{FRAC_PI_4, PI};

use esdqec_core::channels::jump_operator;
use esdqec_core::measures::{fidelity, series_coefficient_gamma2};
use esdqec_core::states::make_general_state;
use esdqec_core::{Code, DensityOperator, Family, Pipeline, StateFamily, StateVector, TwoQubitPure};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_states(seed: u64, n: usize) -> Vec<TwoQubitPure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let mut a = || rng.gen_range(0.0..2.0 * PI);
            make_general_state(a(), a(), a(), a(), a(), a())
        })
        .collect()
}

fn jumped(v: &StateVector, qubits: &[usize]) -> DensityOperator {
    let hit = qubits
        .iter()
        .fold(v.clone(), |acc, &q| acc.apply_local(&jump_operator(), q));
    DensityOperator::from_pure(&hit.normalized().unwrap()).unwrap()
}

#[test]
fn six_qubit_code_undoes_any_single_jump() {
    let p = Pipeline::new();
    for s in random_states(11, 20) {
        let enc = p.code62().encode(&s);
        for q in 0..6 {
            let out = p.code62().measure_and_recover(&jumped(&enc, &[q])).unwrap();
            assert!((fidelity(&s, &out.logical).unwrap() - 1.0).abs() < 1e-12, "qubit {q}");
            assert!((out.success_weight - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn local_code_undoes_one_jump_per_block() {
    let p = Pipeline::new();
    let mut patterns: Vec<Vec<usize>> = (0..8).map(|q| vec![q]).collect();
    patterns.extend((0..4).flat_map(|a| (4..8).map(move |b| vec![a, b])));
    for s in random_states(12, 20) {
        let enc = p.code41().encode(&s);
        for pat in &patterns {
            let out = p.code41().measure_and_recover(&jumped(&enc, pat)).unwrap();
            assert!((fidelity(&s, &out.logical).unwrap() - 1.0).abs() < 1e-12, "{pat:?}");
        }
    }
}

#[test]
fn two_jumps_in_one_block_are_not_corrected() {
    let p = Pipeline::new();
    let s = StateFamily::new(Family::Phi, FRAC_PI_4, 0.0).state();
    let out = p
        .code41()
        .measure_and_recover(&jumped(&p.code41().encode(&s), &[0, 1]))
        .unwrap();
    assert!(fidelity(&s, &out.logical).unwrap() < 1.0 - 1e-3);
}

#[test]
fn psi_and_xi_agree_under_six_qubit_code() {
    let p = Pipeline::new();
    for alpha in [0.2, 0.6, 1.0, 1.3] {
        for beta in [0.0, 0.9] {
            let psi = StateFamily::new(Family::Psi, alpha, beta).state();
            let xi = StateFamily::new(Family::Xi, alpha, beta).state();
            for k in 0..=50 {
                let g = k as f64 / 50.0;
                let a = p.fidelity_at(&psi, Code::NonLocal62, g).unwrap();
                let b = p.fidelity_at(&xi, Code::NonLocal62, g).unwrap();
                assert!((a - b).abs() < 1e-12, "α={alpha} β={beta} γ={g}");
            }
        }
    }
}

// Correction removes the linear term: log(1-F) vs log γ has slope 2, bare has slope 1.
#[test]
fn infidelity_scaling_slopes() {
    let p = Pipeline::new();
    let s = StateFamily::new(Family::Phi, 0.5, 0.3).state();
    let slope = |code| {
        let (g1, g2) = (1e-3, 1e-2);
        let inf = |g| 1.0 - p.fidelity_at(&s, code, g).unwrap();
        (inf(g2) / inf(g1)).ln() / (g2 / g1).ln()
    };
    assert!((slope(Code::NonLocal62) - 2.0).abs() < 0.05);
    assert!((slope(Code::Local41) - 2.0).abs() < 0.05);
    assert!((slope(Code::None) - 1.0).abs() < 0.05);
}

#[test]
fn gamma_squared_coefficients() {
    let p = Pipeline::new();
    let c2 = |fam, alpha, beta, code| {
        let s = StateFamily::new(fam, alpha, beta).state();
        series_coefficient_gamma2(|g| p.fidelity_at(&s, code, g).unwrap()).unwrap()
    };
    // [6,2] Bell pair: (21 - 0 - 1)/4.
    assert!((c2(Family::Phi, FRAC_PI_4, 0.0, Code::NonLocal62) - 5.0).abs() < 1e-6);
    // [4,1]x[4,1] ψ at π/4: 4 - 0.
    assert!((c2(Family::Psi, FRAC_PI_4, 0.0, Code::Local41) - 4.0).abs() < 1e-6);
    // Off the tabulated angles as well.
    let (a, b) = (0.37f64, 1.1f64);
    let mixed = (2.0 * a).sin().powi(2) * b.cos().powi(2);
    assert!((c2(Family::Zeta, a, b, Code::NonLocal62) - (21.0 - 9.0 * (2.0 * a).cos() - mixed) / 4.0).abs() < 1e-6);
    assert!((c2(Family::Xi, a, b, Code::Local41) - (9.0 - 3.0 * (2.0 * a).cos() - 2.0 * mixed) / 4.0).abs() < 1e-6);
}

#[test]
fn full_damping_leaves_the_code_space() {
    // At γ = 1 every physical qubit ends in |0⟩, so nothing entangled survives.
    let p = Pipeline::new();
    let s = StateFamily::new(Family::Psi, 0.4, 0.0).state();
    let out = p.recovered(&s, Code::NonLocal62, 1.0).unwrap();
    assert!(out.logical.trace() > 0.999_999);
    assert!(p.concurrence_at(&s, Code::NonLocal62, 1.0).unwrap() < 1e-10);
}
