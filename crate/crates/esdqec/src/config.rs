//! Sweep configuration: validation, `key=value` files and angle parsing.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use esdqec_core::pipeline::uniform_grid;
use esdqec_core::{Code, Family};
use serde::{Serialize, Serializer};

pub const DEFAULT_GAMMA_MIN: f64 = 0.0;
pub const DEFAULT_GAMMA_MAX: f64 = 1.0;
pub const DEFAULT_GAMMA_STEPS: usize = 201;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("missing required field `{0}`")]
    Missing(&'static str),
    #[error("invalid `{field}`: {reason}")]
    Invalid { field: &'static str, reason: String },
    #[error("{path}:{line}: {reason}")]
    File { path: String, line: usize, reason: String },
}

impl ConfigError {
    fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        ConfigError::Invalid {
            field,
            reason: reason.into(),
        }
    }
}

/// Quantity recorded per grid point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Fidelity,
    Concurrence,
}

impl Quantity {
    pub const ALL: [Quantity; 2] = [Quantity::Fidelity, Quantity::Concurrence];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::Fidelity => "fidelity",
            Quantity::Concurrence => "concurrence",
        }
    }
}

impl FromStr for Quantity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fidelity" => Ok(Quantity::Fidelity),
            "concurrence" => Ok(Quantity::Concurrence),
            _ => Err(format!("unknown output `{s}` (expected fidelity or concurrence)")),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}` (expected csv or json)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

fn as_name<S: Serializer, T: fmt::Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// One (family, α, β, code) configuration swept over a uniform damping grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepConfig {
    #[serde(serialize_with = "as_name")]
    pub family: Family,
    pub alpha: f64,
    pub beta: f64,
    #[serde(serialize_with = "as_name")]
    pub code: Code,
    pub gamma_min: f64,
    pub gamma_max: f64,
    pub gamma_steps: usize,
    pub outputs: Vec<Quantity>,
}

impl SweepConfig {
    /// Default grid, `β = 0`, both outputs.
    pub fn new(family: Family, alpha: f64, code: Code) -> Self {
        Self {
            family,
            alpha,
            beta: 0.0,
            code,
            gamma_min: DEFAULT_GAMMA_MIN,
            gamma_max: DEFAULT_GAMMA_MAX,
            gamma_steps: DEFAULT_GAMMA_STEPS,
            outputs: Quantity::ALL.to_vec(),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !self.alpha.is_finite() {
            return Err(ConfigError::invalid("alpha", "must be finite"));
        }
        if !self.beta.is_finite() {
            return Err(ConfigError::invalid("beta", "must be finite"));
        }
        if !(0.0..=1.0).contains(&self.gamma_min) {
            return Err(ConfigError::invalid(
                "gamma-min",
                format!("{} outside [0, 1]", self.gamma_min),
            ));
        }
        if !(0.0..=1.0).contains(&self.gamma_max) {
            return Err(ConfigError::invalid(
                "gamma-max",
                format!("{} outside [0, 1]", self.gamma_max),
            ));
        }
        match self.gamma_steps {
            0 => return Err(ConfigError::invalid("gamma-steps", "must be at least 1")),
            1 if self.gamma_min != self.gamma_max => {
                return Err(ConfigError::invalid(
                    "gamma-steps",
                    "a single point needs gamma-min = gamma-max",
                ))
            }
            1 => {}
            _ if self.gamma_max <= self.gamma_min => {
                return Err(ConfigError::invalid(
                    "gamma-max",
                    "must exceed gamma-min for an ascending grid",
                ))
            }
            _ => {}
        }
        if self.outputs.is_empty() {
            return Err(ConfigError::invalid("outputs", "at least one of fidelity, concurrence"));
        }
        let mut seen = self.outputs.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != self.outputs.len() {
            return Err(ConfigError::invalid("outputs", "listed twice"));
        }
        Ok(())
    }

    /// Output columns in canonical order.
    pub fn columns(&self) -> Vec<Quantity> {
        Quantity::ALL.into_iter().filter(|q| self.outputs.contains(q)).collect()
    }

    pub fn gammas(&self) -> Vec<f64> {
        uniform_grid(self.gamma_min, self.gamma_max, self.gamma_steps)
    }
}

/// Settings gathered from a config file or the command line; `None` means
/// "not given". [`Settings::overlay`] lets flags override a file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Settings {
    pub family: Option<Family>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub code: Option<Code>,
    pub gamma_min: Option<f64>,
    pub gamma_max: Option<f64>,
    pub gamma_steps: Option<usize>,
    pub outputs: Option<Vec<Quantity>>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

impl Settings {
    /// Fields set in `top` win.
    pub fn overlay(self, top: Settings) -> Settings {
        Settings {
            family: top.family.or(self.family),
            alpha: top.alpha.or(self.alpha),
            beta: top.beta.or(self.beta),
            code: top.code.or(self.code),
            gamma_min: top.gamma_min.or(self.gamma_min),
            gamma_max: top.gamma_max.or(self.gamma_max),
            gamma_steps: top.gamma_steps.or(self.gamma_steps),
            outputs: top.outputs.or(self.outputs),
            out: top.out.or(self.out),
            format: top.format.or(self.format),
        }
    }

    /// Fills defaults and validates. `family`, `alpha` and `code` are required.
    pub fn to_config(&self) -> Result<SweepConfig, ConfigError> {
        let cfg = SweepConfig {
            family: self.family.ok_or(ConfigError::Missing("family"))?,
            alpha: self.alpha.ok_or(ConfigError::Missing("alpha"))?,
            beta: self.beta.unwrap_or(0.0),
            code: self.code.ok_or(ConfigError::Missing("code"))?,
            gamma_min: self.gamma_min.unwrap_or(DEFAULT_GAMMA_MIN),
            gamma_max: self.gamma_max.unwrap_or(DEFAULT_GAMMA_MAX),
            gamma_steps: self.gamma_steps.unwrap_or(DEFAULT_GAMMA_STEPS),
            outputs: self.outputs.clone().unwrap_or_else(|| Quantity::ALL.to_vec()),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Sets one field from its textual form. Keys are the long flag names;
    /// `_` is accepted in place of `-`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let key = key.replace('_', "-");
        match key.as_str() {
            "family" => {
                self.family = Some(parse_field("family", value, |v| {
                    v.parse().map_err(|e: esdqec_core::states::UnknownFamily| e.to_string())
                })?)
            }
            "alpha" => self.alpha = Some(parse_field("alpha", value, parse_angle)?),
            "beta" => self.beta = Some(parse_field("beta", value, parse_angle)?),
            "code" => {
                self.code = Some(parse_field("code", value, |v| {
                    v.parse().map_err(|e: esdqec_core::pipeline::UnknownCode| e.to_string())
                })?)
            }
            "gamma-min" => self.gamma_min = Some(parse_field("gamma-min", value, parse_number)?),
            "gamma-max" => self.gamma_max = Some(parse_field("gamma-max", value, parse_number)?),
            "gamma-steps" => {
                self.gamma_steps = Some(parse_field("gamma-steps", value, |v| {
                    v.parse().map_err(|_| format!("`{v}` is not a count"))
                })?)
            }
            "outputs" => self.outputs = Some(parse_field("outputs", value, parse_outputs)?),
            "out" => self.out = Some(PathBuf::from(value)),
            "format" => self.format = Some(parse_field("format", value, str::parse)?),
            _ => {
                return Err(ConfigError::Invalid {
                    field: "config",
                    reason: format!("unknown key `{key}`"),
                })
            }
        }
        Ok(())
    }

    /// Parses `key = value` lines; blank lines and `#` comments are skipped.
    pub fn parse(text: &str, origin: &str) -> Result<Settings, ConfigError> {
        let mut s = Settings::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let file_err = |reason: String| ConfigError::File {
                path: origin.to_owned(),
                line: n + 1,
                reason,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| file_err(format!("expected key=value, got `{line}`")))?;
            s.set(key.trim(), value.trim()).map_err(|e| file_err(e.to_string()))?;
        }
        Ok(s)
    }

    pub fn from_file(path: &Path) -> Result<Settings, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::File {
            path: path.display().to_string(),
            line: 0,
            reason: e.to_string(),
        })?;
        Settings::parse(&text, &path.display().to_string())
    }
}

fn parse_field<T>(field: &'static str, value: &str, f: impl Fn(&str) -> Result<T, String>) -> Result<T, ConfigError> {
    f(value.trim()).map_err(|reason| ConfigError::invalid(field, reason))
}

fn parse_number(v: &str) -> Result<f64, String> {
    v.parse::<f64>().map_err(|_| format!("`{v}` is not a number"))
}

/// Comma-separated list of quantities.
pub fn parse_outputs(v: &str) -> Result<Vec<Quantity>, String> {
    v.split(',').map(|s| s.trim().parse()).collect()
}

/// Radians, either a plain number or a multiple of π such as `pi/4`,
/// `3pi/8`, `2*pi/3` or `-pi`.
pub fn parse_angle(v: &str) -> Result<f64, String> {
    let v = v.trim();
    if let Ok(x) = v.parse::<f64>() {
        return Ok(x);
    }
    let bad = || format!("`{v}` is not an angle (use radians or forms like pi/4, 3pi/8)");
    let lower = v.to_ascii_lowercase();
    let (num, den) = match lower.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim().parse::<f64>().map_err(|_| bad())?),
        None => (lower.as_str(), 1.0),
    };
    let coeff = num.strip_suffix("pi").ok_or_else(bad)?.trim_end_matches('*').trim();
    let k = match coeff {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    if den == 0.0 {
        return Err(bad());
    }
    Ok(k * std::f64::consts::PI / den)
}
