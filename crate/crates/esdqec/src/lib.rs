//! Parameter sweeps, claim verification and file output on top of
//! `esdqec-core`.
//!
//! [`sweep::run_sweep`] evaluates one (family, α, β, code) configuration on a
//! damping grid; [`verify::verify_claims`] runs the full acceptance battery;
//! [`figures::write_figure_data`] emits the standard plot datasets.

pub mod config;
pub mod figures;
pub mod sweep;
pub mod verify;

pub use config::{ConfigError, Format, Quantity, Settings, SweepConfig};
pub use sweep::{run_sweep, SweepError, SweepResult, SweepRow};
pub use verify::{verify_claims, Report};
