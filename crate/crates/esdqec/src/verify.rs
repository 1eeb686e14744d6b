//! The acceptance battery: closed forms, small-`γ` expansions, symmetries,
//! sudden-death thresholds, exact correction and structural invariants.
//!
//! Every criterion is a list of [`Check`]s; a criterion passes when all of its
//! checks do. Simulation errors become failed checks, never panics.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, FRAC_PI_8, PI};
use std::fmt;

use esdqec_core::channels::{apply_damping, jump_operator};
use esdqec_core::linalg::{hermitian_eigenvalues, Mat2};
use esdqec_core::measures::{
    concurrence, esd_threshold, fidelity, series_coefficient_gamma2, ESD_DEFAULT_TOL, ZERO_CONCURRENCE,
};
use esdqec_core::pipeline::uniform_grid;
use esdqec_core::states::make_general_state;
use esdqec_core::{
    Code, Complex64, ComplexMatrix, DampingChannel, DensityOperator, Error, Family, Pipeline, StateFamily, StateVector,
    TwoQubitPure,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CLOSED_FORM_TOL: f64 = 1e-12;
pub const SERIES62_REL_TOL: f64 = 0.01;
pub const SERIES41_REL_TOL: f64 = 0.02;
pub const SYMMETRY_TOL: f64 = 1e-12;
pub const THRESHOLD_TOL: f64 = 1e-5;
pub const CORRECTION_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const PSD_FLOOR: f64 = -1e-10;
pub const GRAM_TOL: f64 = 1e-14;
pub const COMPLETENESS_TOL: f64 = 1e-14;
pub const CONCURRENCE_TOL: f64 = 1e-10;

/// Randomized cases per structural property.
pub const PROPERTY_CASES: usize = 1000;
/// Random logical states in the exact-correction check.
pub const CORRECTION_STATES: usize = 20;

const GRID_POINTS: usize = 201;
const SEED: u64 = 0x00e5_d9ec;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Comparison {
    /// `|measured - expected| < tol`
    Absolute(f64),
    /// `|measured - expected| / |expected| < tol`
    Relative(f64),
    /// `measured < expected`
    Below,
    /// `measured > expected`
    Above,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub label: String,
    pub measured: f64,
    pub expected: f64,
    pub comparison: Comparison,
    /// Set when the computation itself failed.
    pub error: Option<String>,
}

impl Check {
    pub fn new(label: impl Into<String>, measured: f64, expected: f64, comparison: Comparison) -> Self {
        Self {
            label: label.into(),
            measured,
            expected,
            comparison,
            error: None,
        }
    }

    fn from_result(
        label: impl Into<String>,
        measured: Result<f64, Error>,
        expected: f64,
        comparison: Comparison,
    ) -> Self {
        match measured {
            Ok(m) => Self::new(label, m, expected, comparison),
            Err(e) => Self {
                error: Some(e.to_string()),
                ..Self::new(label, f64::NAN, expected, comparison)
            },
        }
    }

    pub fn deviation(&self) -> f64 {
        let d = (self.measured - self.expected).abs();
        match self.comparison {
            Comparison::Relative(_) => d / self.expected.abs(),
            _ => d,
        }
    }

    pub fn passed(&self) -> bool {
        self.error.is_none()
            && match self.comparison {
                Comparison::Absolute(tol) | Comparison::Relative(tol) => self.deviation() < tol,
                Comparison::Below => self.measured < self.expected,
                Comparison::Above => self.measured > self.expected,
            }
    }

    /// How close the check is to its limit; used to pick the headline check.
    fn severity(&self) -> f64 {
        match self.comparison {
            Comparison::Absolute(tol) | Comparison::Relative(tol) => self.deviation() / tol,
            _ => 0.0,
        }
    }
}

/// Shortest round-trip form, in exponent notation outside `[1e-4, 1e6)`.
struct Num(f64);

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.0.abs();
        if a == 0.0 || (1e-4..1e6).contains(&a) || !a.is_finite() {
            write!(f, "{}", self.0)
        } else {
            write!(f, "{:e}", self.0)
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.label)?;
        if let Some(e) = &self.error {
            return write!(f, "error: {e}");
        }
        let (m, e) = (Num(self.measured), Num(self.expected));
        match self.comparison {
            Comparison::Absolute(tol) => write!(
                f,
                "measured {m} vs expected {e}, |diff| {:.3e} (< {tol:e})",
                self.deviation()
            ),
            Comparison::Relative(tol) => write!(
                f,
                "measured {m} vs expected {e}, rel. err {:.3e} (< {tol})",
                self.deviation()
            ),
            Comparison::Below => write!(f, "measured {m} (< {e})"),
            Comparison::Above => write!(f, "measured {m} (> {e})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Criterion {
    pub id: &'static str,
    pub title: &'static str,
    pub checks: Vec<Check>,
}

impl Criterion {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(Check::passed)
    }

    /// Every check on its own indented line.
    pub fn details(&self) -> String {
        self.checks
            .iter()
            .map(|c| format!("    {} {c}\n", if c.passed() { "ok  " } else { "FAIL" }))
            .collect()
    }

    /// First failing check, or the one nearest its tolerance.
    pub fn headline(&self) -> Option<&Check> {
        self.checks
            .iter()
            .find(|c| !c.passed())
            .or_else(|| self.checks.iter().max_by(|a, b| a.severity().total_cmp(&b.severity())))
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let ok = self.checks.iter().filter(|c| c.passed()).count();
        write!(
            f,
            "{status} {} {} [{ok}/{} checks]",
            self.id,
            self.title,
            self.checks.len()
        )?;
        if let Some(c) = self.headline() {
            write!(f, " -- {c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub criteria: Vec<Criterion>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.criteria.iter().all(Criterion::passed)
    }

    pub fn failures(&self) -> usize {
        self.criteria.iter().filter(|c| !c.passed()).count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.criteria {
            writeln!(f, "{c}")?;
        }
        write!(
            f,
            "{}/{} criteria passed",
            self.criteria.len() - self.failures(),
            self.criteria.len()
        )
    }
}

pub const CRITERIA: [&str; 8] = ["A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8"];

/// Runs every criterion in order.
pub fn verify_claims() -> Report {
    let p = Pipeline::new();
    Report {
        criteria: CRITERIA.iter().filter_map(|id| run_criterion_with(&p, id)).collect(),
    }
}

pub fn run_criterion(id: &str) -> Option<Criterion> {
    run_criterion_with(&Pipeline::new(), id)
}

fn run_criterion_with(p: &Pipeline, id: &str) -> Option<Criterion> {
    Some(match id {
        "A1" => closed_forms(p),
        "A2" => series(p, Code::NonLocal62),
        "A3" => series(p, Code::Local41),
        "A4" => psi_xi_symmetry(p),
        "A5" => uncoded_thresholds(p),
        "A6" => correction_induced_death(p),
        "A7" => exact_correction(p),
        "A8" => invariants(p),
        _ => return None,
    })
}

/// Runs `f` as a plain curve for `run`, remembering the first simulation error.
fn with_curve(
    f: impl Fn(f64) -> Result<f64, Error>,
    run: impl FnOnce(&mut dyn FnMut(f64) -> f64) -> Result<f64, Error>,
) -> Result<f64, Error> {
    let mut first_err = None;
    let value = {
        let mut curve = |g: f64| match f(g) {
            Ok(v) => v,
            Err(e) => {
                first_err.get_or_insert(e);
                f64::NAN
            }
        };
        run(&mut curve)
    };
    match first_err {
        Some(e) => Err(e),
        None => value,
    }
}

fn max_deviation(gammas: &[f64], f: impl Fn(f64) -> Result<f64, Error>) -> Result<f64, Error> {
    gammas.iter().try_fold(0.0f64, |m, &g| Ok(m.max(f(g)?)))
}

fn closed_forms(p: &Pipeline) -> Criterion {
    let gammas = uniform_grid(0.0, 1.0, GRID_POINTS);
    let alphas: Vec<f64> = (0..9).map(|k| k as f64 * PI / 16.0).collect();
    let mut checks = Vec::new();
    for (family, form) in [(Family::Phi, "F = 1 - 2γcos²α + γ²cos²α"), (Family::Psi, "F = 1 - γ")] {
        let dev = alphas.iter().try_fold(0.0f64, |m, &alpha| {
            let s = StateFamily::new(family, alpha, 0.0).state();
            let c2 = alpha.cos().powi(2);
            let d = max_deviation(&gammas, |g| {
                let exact = match family {
                    Family::Phi => 1.0 - 2.0 * g * c2 + g * g * c2,
                    _ => 1.0 - g,
                };
                Ok((p.fidelity_at(&s, Code::None, g)? - exact).abs())
            })?;
            Ok(m.max(d))
        });
        checks.push(Check::from_result(
            format!("{family} uncoded {form}, max |diff| on 201x9 (γ, α) grid"),
            dev,
            0.0,
            Comparison::Absolute(CLOSED_FORM_TOL),
        ));
    }
    Criterion {
        id: "A1",
        title: "uncoded fidelity closed forms",
        checks,
    }
}

/// `γ²` coefficient of `1 - F` predicted by the small-damping expansion.
pub fn expected_series_coefficient(code: Code, family: Family, alpha: f64, beta: f64) -> Option<f64> {
    let c = (2.0 * alpha).cos();
    let mixed = (2.0 * alpha).sin().powi(2) * beta.cos().powi(2);
    Some(match (code, family) {
        (Code::NonLocal62, Family::Phi | Family::Zeta) => (21.0 - 9.0 * c - mixed) / 4.0,
        (Code::NonLocal62, Family::Psi | Family::Xi) => (12.0 - mixed) / 4.0,
        (Code::Local41, Family::Phi) => (8.0 - 3.0 * c - 2.0 * c * c) / 2.0,
        (Code::Local41, Family::Zeta) => (15.0 - 3.0 * c - 2.0 * mixed) / 4.0,
        (Code::Local41, Family::Psi) => 4.0 - c * c,
        (Code::Local41, Family::Xi) => (9.0 - 3.0 * c - 2.0 * mixed) / 4.0,
        (Code::None, _) => return None,
    })
}

fn series(p: &Pipeline, code: Code) -> Criterion {
    let tol = if code == Code::Local41 {
        SERIES41_REL_TOL
    } else {
        SERIES62_REL_TOL
    };
    let mut checks = Vec::new();
    for family in Family::ALL {
        for (an, alpha) in [("π/6", FRAC_PI_6), ("π/4", FRAC_PI_4), ("π/3", FRAC_PI_3)] {
            for (bn, beta) in [("0", 0.0), ("π/2", FRAC_PI_2)] {
                let s = StateFamily::new(family, alpha, beta).state();
                let measured = with_curve(|g| p.fidelity_at(&s, code, g), |f| series_coefficient_gamma2(f));
                let expected = expected_series_coefficient(code, family, alpha, beta).expect("coded");
                checks.push(Check::from_result(
                    format!("{code} {family} α={an} β={bn} γ² coefficient"),
                    measured,
                    expected,
                    Comparison::Relative(tol),
                ));
            }
        }
    }
    let title = match code {
        Code::Local41 => "[4,1]x[4,1] small-damping fidelity expansion",
        _ => "[6,2] small-damping fidelity expansion",
    };
    Criterion {
        id: if code == Code::Local41 { "A3" } else { "A2" },
        title,
        checks,
    }
}

fn psi_xi_symmetry(p: &Pipeline) -> Criterion {
    let gammas = uniform_grid(0.0, 1.0, GRID_POINTS);
    let checks = [
        ("π/12", PI / 12.0),
        ("π/6", FRAC_PI_6),
        ("π/4", FRAC_PI_4),
        ("π/3", FRAC_PI_3),
        ("5π/12", 5.0 * PI / 12.0),
    ]
    .into_iter()
    .map(|(name, alpha)| {
        let psi = StateFamily::new(Family::Psi, alpha, 0.0).state();
        let xi = StateFamily::new(Family::Xi, alpha, 0.0).state();
        let dev = max_deviation(&gammas, |g| {
            Ok((p.fidelity_at(&psi, Code::NonLocal62, g)? - p.fidelity_at(&xi, Code::NonLocal62, g)?).abs())
        });
        Check::from_result(
            format!("[6,2] max |F_psi - F_xi| over 201 γ, α={name}"),
            dev,
            0.0,
            Comparison::Absolute(SYMMETRY_TOL),
        )
    })
    .collect();
    Criterion {
        id: "A4",
        title: "[6,2] psi and xi fidelities coincide",
        checks,
    }
}

fn threshold(p: &Pipeline, family: Family, alpha: f64, code: Code) -> Result<f64, Error> {
    let s = StateFamily::new(family, alpha, 0.0).state();
    with_curve(|g| p.concurrence_at(&s, code, g), |c| esd_threshold(c, ESD_DEFAULT_TOL))
}

fn uncoded_thresholds(p: &Pipeline) -> Criterion {
    let mut checks = Vec::new();
    for (name, alpha) in [("π/8", FRAC_PI_8), ("π/6", FRAC_PI_6), ("π/3", FRAC_PI_3)] {
        let expected = alpha.tan().min(1.0);
        checks.push(Check::from_result(
            format!("uncoded phi sudden-death γ*, α={name}"),
            threshold(p, Family::Phi, alpha, Code::None),
            expected,
            Comparison::Absolute(THRESHOLD_TOL),
        ));
    }
    for (name, alpha) in [
        ("π/8", FRAC_PI_8),
        ("π/6", FRAC_PI_6),
        ("π/4", FRAC_PI_4),
        ("π/3", FRAC_PI_3),
    ] {
        checks.push(Check::from_result(
            format!("uncoded psi sudden-death γ*, α={name}"),
            threshold(p, Family::Psi, alpha, Code::None),
            1.0,
            Comparison::Absolute(THRESHOLD_TOL),
        ));
    }
    Criterion {
        id: "A5",
        title: "uncoded sudden-death thresholds",
        checks,
    }
}

fn correction_induced_death(p: &Pipeline) -> Criterion {
    let scan: Vec<f64> = (0..1000).map(|k| k as f64 / 1000.0).collect();
    let mut checks = Vec::new();
    for family in [Family::Phi, Family::Psi] {
        let s = StateFamily::new(family, FRAC_PI_4, 0.0).state();
        let min_c = scan
            .iter()
            .try_fold(f64::INFINITY, |m, &g| Ok(m.min(p.concurrence_at(&s, Code::None, g)?)));
        checks.push(Check::from_result(
            format!("uncoded {family} α=π/4: min concurrence on γ ∈ [0, 0.999]"),
            min_c,
            ZERO_CONCURRENCE,
            Comparison::Above,
        ));
        for code in [Code::Local41, Code::NonLocal62] {
            checks.push(Check::from_result(
                format!("{code} {family} α=π/4: sudden-death γ*"),
                threshold(p, family, FRAC_PI_4, code),
                1.0,
                Comparison::Below,
            ));
        }
    }
    Criterion {
        id: "A6",
        title: "error correction induces sudden death",
        checks,
    }
}

fn random_angle(rng: &mut impl Rng) -> f64 {
    rng.gen_range(0.0..2.0 * PI)
}

/// Uniform angles in the general five-angle parametrization.
pub fn random_pure_state(rng: &mut impl Rng) -> TwoQubitPure {
    make_general_state(
        random_angle(rng),
        random_angle(rng),
        random_angle(rng),
        random_angle(rng),
        random_angle(rng),
        random_angle(rng),
    )
}

fn jumped(v: &StateVector, qubits: &[usize]) -> Result<DensityOperator, Error> {
    let jump: Mat2 = jump_operator();
    let hit = qubits.iter().fold(v.clone(), |acc, &q| acc.apply_local(&jump, q));
    DensityOperator::from_pure(&hit.normalized()?)
}

fn exact_correction(p: &Pipeline) -> Criterion {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let states: Vec<TwoQubitPure> = (0..CORRECTION_STATES).map(|_| random_pure_state(&mut rng)).collect();

    let worst = |code: Code, patterns: &[Vec<usize>]| -> Result<f64, Error> {
        let mut min_f = f64::INFINITY;
        for s in &states {
            let encoded = match code {
                Code::NonLocal62 => p.code62().encode(s),
                _ => p.code41().encode(s),
            };
            for pattern in patterns {
                let rho = jumped(&encoded, pattern)?;
                let out = match code {
                    Code::NonLocal62 => p.code62().measure_and_recover(&rho)?,
                    _ => p.code41().measure_and_recover(&rho)?,
                };
                min_f = min_f.min(fidelity(s, &out.logical)?);
            }
        }
        Ok(min_f)
    };

    let singles62: Vec<Vec<usize>> = (0..6).map(|q| vec![q]).collect();
    let singles41: Vec<Vec<usize>> = (0..8).map(|q| vec![q]).collect();
    let pairs41: Vec<Vec<usize>> = (0..4).flat_map(|a| (4..8).map(move |b| vec![a, b])).collect();
    let n = CORRECTION_STATES;
    Criterion {
        id: "A7",
        title: "single jumps are corrected exactly",
        checks: vec![
            Check::from_result(
                format!("[6,2] min fidelity, 6 jump positions x {n} states"),
                worst(Code::NonLocal62, &singles62),
                1.0,
                Comparison::Absolute(CORRECTION_TOL),
            ),
            Check::from_result(
                format!("[4,1]x[4,1] min fidelity, 8 jump positions x {n} states"),
                worst(Code::Local41, &singles41),
                1.0,
                Comparison::Absolute(CORRECTION_TOL),
            ),
            Check::from_result(
                format!("[4,1]x[4,1] min fidelity, 16 one-per-block jump pairs x {n} states"),
                worst(Code::Local41, &pairs41),
                1.0,
                Comparison::Absolute(CORRECTION_TOL),
            ),
        ],
    }
}

fn random_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// `W W† / tr` for a random `dim x rank` matrix `W`.
pub fn random_density(rng: &mut impl Rng, dim: usize, rank: usize) -> DensityOperator {
    let w = ComplexMatrix::from_fn(dim, rank, |_, _| random_complex(rng));
    let m = &w * &w.adjoint();
    let tr = m.trace().re;
    DensityOperator::new(m.scale(Complex64::new(1.0 / tr, 0.0)))
        .expect("W W† is a density operator after normalization")
}

/// Single-qubit unitary from three Euler angles.
pub fn random_unitary2(rng: &mut impl Rng) -> ComplexMatrix {
    let (t, ph, la) = (random_angle(rng) / 2.0, random_angle(rng), random_angle(rng));
    let (s, c) = (t.sin(), t.cos());
    ComplexMatrix::from_row_major(
        2,
        2,
        vec![
            Complex64::new(c, 0.0),
            -Complex64::cis(la) * s,
            Complex64::cis(ph) * s,
            Complex64::cis(ph + la) * c,
        ],
    )
    .expect("2x2")
}

struct Extremes {
    trace: f64,
    min_eig: f64,
}

impl Extremes {
    fn new() -> Self {
        Self {
            trace: 0.0,
            min_eig: f64::INFINITY,
        }
    }

    fn record(&mut self, rho: &DensityOperator) -> Result<(), Error> {
        self.trace = self.trace.max((rho.matrix().trace().re - 1.0).abs());
        self.min_eig = self.min_eig.min(rho.min_eigenvalue()?);
        Ok(())
    }
}

fn invariants(p: &Pipeline) -> Criterion {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xa8);
    let n = PROPERTY_CASES;
    let mut checks = Vec::new();

    // Bare channel on random mixed registers of 1..=6 qubits.
    let damping = (|| {
        let mut ex = Extremes::new();
        for _ in 0..n {
            let qubits = rng.gen_range(1..=6);
            let dim = 1 << qubits;
            let rank = rng.gen_range(1..=dim);
            let rho = random_density(&mut rng, dim, rank);
            let ch = DampingChannel::new(rng.gen_range(0.0..=1.0), qubits)?;
            ex.record(&apply_damping(&rho, &ch)?)?;
        }
        Ok::<_, Error>(ex)
    })();
    push_extremes(&mut checks, &format!("damping on {n} random mixed registers"), damping);

    // Whole encode/damp/recover/decode chain.
    let chain = (|| {
        let mut ex = Extremes::new();
        for k in 0..n {
            let s = random_pure_state(&mut rng);
            let code = Code::ALL[k % 3];
            ex.record(&p.recovered(&s, code, rng.gen_range(0.0..=1.0))?.logical)?;
        }
        Ok::<_, Error>(ex)
    })();
    push_extremes(
        &mut checks,
        &format!("full pipeline on {n} random states/codes/γ"),
        chain,
    );

    let kraus = (|| {
        let mut worst = 0.0f64;
        for _ in 0..n {
            let ch = DampingChannel::new(rng.gen_range(0.0..=1.0), rng.gen_range(1..=3))?;
            worst = worst.max(ch.completeness_defect());
        }
        Ok(worst)
    })();
    checks.push(Check::from_result(
        format!("Kraus completeness Σ K†K = I, {n} random channels, max |diff|"),
        kraus,
        0.0,
        Comparison::Absolute(TRACE_TOL),
    ));

    let vectors = p.code62().recovery_vectors();
    let gram = ComplexMatrix::from_fn(vectors.len(), vectors.len(), |i, j| vectors[i].inner(&vectors[j]));
    checks.push(Check::new(
        format!(
            "[6,2] Gram matrix of the {} recovery vectors vs identity",
            vectors.len()
        ),
        gram.max_abs_diff(&ComplexMatrix::identity(vectors.len())),
        0.0,
        Comparison::Absolute(GRAM_TOL),
    ));

    for (label, projectors) in [
        ("[6,2] syndrome projectors", p.code62().syndrome_projectors()),
        ("[4,1] block syndrome projectors", p.code41().block_projectors()),
    ] {
        let dim = projectors[0].rows();
        let sum = projectors
            .iter()
            .fold(ComplexMatrix::zeros(dim, dim), |acc, m| &acc + m);
        checks.push(Check::new(
            format!("{label} sum to identity, max |diff|"),
            sum.max_abs_diff(&ComplexMatrix::identity(dim)),
            0.0,
            Comparison::Absolute(COMPLETENESS_TOL),
        ));
    }

    // Pure states: C = 2|ad - bc|.
    let pure = (|| {
        let mut worst = 0.0f64;
        for _ in 0..n {
            let s = random_pure_state(&mut rng);
            let [a, b, c, d] = *s.amplitudes();
            let exact = 2.0 * (a * d - b * c).norm();
            worst = worst.max((concurrence(&s.density())? - exact).abs());
        }
        Ok(worst)
    })();
    checks.push(Check::from_result(
        format!("concurrence of {n} random pure states vs 2|ad - bc|"),
        pure,
        0.0,
        Comparison::Absolute(CONCURRENCE_TOL),
    ));

    let local = (|| {
        let mut worst = 0.0f64;
        for _ in 0..n {
            let rank = rng.gen_range(1..=4);
            let rho = random_density(&mut rng, 4, rank);
            let u = random_unitary2(&mut rng).kron(&random_unitary2(&mut rng));
            let rotated = DensityOperator::new(&(&u * rho.matrix()) * &u.adjoint())?;
            worst = worst.max((concurrence(&rotated)? - concurrence(&rho)?).abs());
        }
        Ok(worst)
    })();
    checks.push(Check::from_result(
        format!("concurrence invariance under {n} random local unitaries"),
        local,
        0.0,
        Comparison::Absolute(CONCURRENCE_TOL),
    ));

    // Solver consistency: the spectrum of ρ² is the squared spectrum of ρ.
    let spectra = (|| {
        let mut worst = 0.0f64;
        for _ in 0..n {
            let rank = rng.gen_range(1..=4);
            let rho = random_density(&mut rng, 4, rank);
            let ev = hermitian_eigenvalues(rho.matrix())?;
            let ev2 = hermitian_eigenvalues(&(rho.matrix() * rho.matrix()))?;
            for (l, l2) in ev.iter().zip(&ev2) {
                worst = worst.max((l * l - l2).abs());
            }
        }
        Ok(worst)
    })();
    checks.push(Check::from_result(
        format!("eigenvalues of ρ² are squares of those of ρ, {n} random ρ"),
        spectra,
        0.0,
        Comparison::Absolute(TRACE_TOL),
    ));

    Criterion {
        id: "A8",
        title: "channel and code structure invariants",
        checks,
    }
}

fn push_extremes(checks: &mut Vec<Check>, what: &str, ex: Result<Extremes, Error>) {
    let (trace, eig) = match ex {
        Ok(e) => (Ok(e.trace), Ok(e.min_eig)),
        Err(e) => (Err(e.clone()), Err(e)),
    };
    checks.push(Check::from_result(
        format!("{what}: max |tr ρ - 1|"),
        trace,
        0.0,
        Comparison::Absolute(TRACE_TOL),
    ));
    checks.push(Check::from_result(
        format!("{what}: min eigenvalue"),
        eig,
        PSD_FLOOR,
        Comparison::Above,
    ));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expected_coefficients_examples() {
        assert!(
            (expected_series_coefficient(Code::NonLocal62, Family::Phi, FRAC_PI_4, 0.0).unwrap() - 5.0).abs() < 1e-14
        );
        assert!(
            (expected_series_coefficient(Code::NonLocal62, Family::Psi, FRAC_PI_4, FRAC_PI_2).unwrap() - 3.0).abs()
                < 1e-14
        );
        assert!((expected_series_coefficient(Code::Local41, Family::Psi, FRAC_PI_4, 0.0).unwrap() - 4.0).abs() < 1e-14);
        assert_eq!(expected_series_coefficient(Code::None, Family::Psi, 0.1, 0.0), None);
    }

    #[test]
    fn check_semantics() {
        assert!(Check::new("x", 1.0 + 1e-13, 1.0, Comparison::Absolute(1e-12)).passed());
        assert!(!Check::new("x", 1.1, 1.0, Comparison::Relative(0.05)).passed());
        assert!(Check::new("x", 0.7, 1.0, Comparison::Below).passed());
        assert!(!Check::new("x", 1.0, 1.0, Comparison::Below).passed());
        assert!(!Check::new("x", f64::NAN, 0.0, Comparison::Absolute(1.0)).passed());
        let failed = Check::from_result("x", Err(Error::InvalidGrid), 0.0, Comparison::Absolute(1.0));
        assert!(!failed.passed());
        assert!(failed.to_string().contains("error"));
    }

    #[test]
    fn empty_criterion_fails() {
        let c = Criterion {
            id: "Z",
            title: "nothing",
            checks: vec![],
        };
        assert!(!c.passed());
    }

    #[test]
    fn headline_prefers_failures() {
        let c = Criterion {
            id: "Z",
            title: "t",
            checks: vec![
                Check::new("good", 0.0, 0.0, Comparison::Absolute(1.0)),
                Check::new("bad", 2.0, 0.0, Comparison::Absolute(1.0)),
            ],
        };
        assert_eq!(c.headline().unwrap().label, "bad");
        assert!(c.to_string().starts_with("FAIL Z t [1/2 checks]"));
    }

    #[test]
    fn unknown_criterion() {
        assert!(run_criterion("A9").is_none());
    }

    #[test]
    fn closed_form_criterion_passes() {
        assert!(run_criterion("A1").unwrap().passed());
    }

    #[test]
    fn random_unitaries_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            assert!(random_unitary2(&mut rng).is_unitary(1e-14));
        }
    }
}
