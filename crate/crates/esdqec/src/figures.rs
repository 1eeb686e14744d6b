//! Data files behind the four standard plots: fidelity and concurrence
//! against `γ` for the entangled families and their separable partners,
//! bare and under both codes, at `α = π/6` and `α = π/4` with `β = 0`.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_6};
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use anyhow::Context;
use esdqec_core::{Code, Family, Pipeline};

use crate::config::{Quantity, SweepConfig};
use crate::sweep::{run_sweep_with, write_csv, Metadata};

/// One plot panel: a quantity for a set of families at one `α`.
#[derive(Clone, Debug, PartialEq)]
pub struct Panel {
    pub name: String,
    pub quantity: Quantity,
    pub families: &'static [Family],
    pub alpha: f64,
}

pub fn panels() -> Vec<Panel> {
    let mut v = Vec::new();
    for (quantity, families) in [
        (Quantity::Fidelity, &[Family::Phi, Family::Zeta][..]),
        (Quantity::Concurrence, &[Family::Phi][..]),
        (Quantity::Fidelity, &[Family::Psi, Family::Xi][..]),
        (Quantity::Concurrence, &[Family::Psi][..]),
    ] {
        for (angle, alpha) in [("pi6", FRAC_PI_6), ("pi4", FRAC_PI_4)] {
            let fams: Vec<_> = families.iter().map(|f| f.name()).collect();
            v.push(Panel {
                name: format!("{}_{}_{angle}", quantity.name(), fams.join("-")),
                quantity,
                families,
                alpha,
            });
        }
    }
    v
}

/// Writes `<quantity>_<family>_<angle>_<code>.csv` (e.g.
/// `concurrence_phi_pi4_local41.csv`) for every curve into `dir` and returns
/// the paths in write order.
pub fn write_figure_data(dir: &Path, gamma_steps: usize) -> anyhow::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let pipeline = Pipeline::new();
    let mut written = Vec::new();
    for panel in panels() {
        for &family in panel.families {
            for code in Code::ALL {
                let mut cfg = SweepConfig::new(family, panel.alpha, code);
                cfg.gamma_steps = gamma_steps;
                cfg.outputs = vec![panel.quantity];
                let result = run_sweep_with(&pipeline, &cfg, Metadata::new(false))?;
                let angle = panel.name.rsplit('_').next().unwrap_or_default();
                let path = dir.join(format!("{}_{family}_{angle}_{code}.csv", panel.quantity.name()));
                let file = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
                write_csv(&result, BufWriter::new(file))?;
                written.push(path);
            }
        }
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn panel_layout() {
        let p = panels();
        assert_eq!(p.len(), 8);
        let curves: usize = p.iter().map(|p| p.families.len() * Code::ALL.len()).sum();
        assert_eq!(curves, 36);
        assert_eq!(p[3].name, "concurrence_phi_pi4");
        assert_eq!(p[3].alpha, FRAC_PI_4);
    }
}
