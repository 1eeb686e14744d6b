//! Running one configuration over its damping grid and writing the rows out.

use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use esdqec_core::measures::{concurrence, fidelity};
use esdqec_core::{Pipeline, StateFamily};
use serde::Serialize;

use crate::config::{ConfigError, Quantity, SweepConfig};

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("simulation failed at gamma = {gamma}: {source}")]
    Core {
        gamma: f64,
        #[source]
        source: esdqec_core::Error,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub gamma: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fidelity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub concurrence: Option<f64>,
}

impl SweepRow {
    pub fn get(&self, q: Quantity) -> Option<f64> {
        match q {
            Quantity::Fidelity => self.fidelity,
            Quantity::Concurrence => self.concurrence,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    /// Unix seconds; only recorded on request so that repeated runs stay
    /// byte-identical.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl Metadata {
    pub fn new(with_timestamp: bool) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            timestamp: with_timestamp.then(|| SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepResult {
    pub config: SweepConfig,
    pub metadata: Metadata,
    pub rows: Vec<SweepRow>,
}

/// Runs the full pipeline at every grid point. Fidelity is taken against the
/// original two-qubit state, concurrence on the decoded logical state.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult, SweepError> {
    run_sweep_with(&Pipeline::new(), config, Metadata::new(false))
}

pub fn run_sweep_with(
    pipeline: &Pipeline,
    config: &SweepConfig,
    metadata: Metadata,
) -> Result<SweepResult, SweepError> {
    config.validate()?;
    let state = StateFamily::new(config.family, config.alpha, config.beta).state();
    let want = |q| config.outputs.contains(&q);
    let rows = config
        .gammas()
        .into_iter()
        .map(|gamma| {
            let core_err = |source| SweepError::Core { gamma, source };
            let rho = pipeline
                .recovered(&state, config.code, gamma)
                .map_err(core_err)?
                .logical;
            Ok::<_, SweepError>(SweepRow {
                gamma,
                fidelity: want(Quantity::Fidelity)
                    .then(|| fidelity(&state, &rho))
                    .transpose()
                    .map_err(core_err)?,
                concurrence: want(Quantity::Concurrence)
                    .then(|| concurrence(&rho))
                    .transpose()
                    .map_err(core_err)?,
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(SweepResult {
        config: config.clone(),
        metadata,
        rows,
    })
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

/// `gamma,fidelity,concurrence` (or the configured subset), one row per point.
pub fn write_csv<W: Write>(result: &SweepResult, out: W) -> csv::Result<()> {
    let cols = result.config.columns();
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["gamma"];
    header.extend(cols.iter().map(|q| q.name()));
    w.write_record(&header)?;
    for row in &result.rows {
        let mut rec = vec![format_value(row.gamma)];
        rec.extend(cols.iter().map(|&q| row.get(q).map(format_value).unwrap_or_default()));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

/// Config echo, metadata and rows as pretty-printed JSON.
pub fn write_json<W: Write>(result: &SweepResult, mut out: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, result)?;
    writeln!(out)
}
