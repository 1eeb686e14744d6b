use std::fs;
use std::process::Command;
use std::time::{Duration, Instant};

use esdqec::{run_sweep, SweepConfig};
use esdqec_core::{Code, Family};

fn esdqec() -> Command {
    Command::new(env!("CARGO_BIN_EXE_esdqec"))
}

#[test]
fn identical_config_gives_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["csv", "json"] {
        let paths: Vec<_> = (0..2).map(|k| dir.path().join(format!("run{k}.{format}"))).collect();
        for p in &paths {
            let status = esdqec()
                .args([
                    "sweep",
                    "--family",
                    "phi",
                    "--alpha",
                    "pi/4",
                    "--code",
                    "nonlocal62",
                    "--gamma-steps",
                    "41",
                ])
                .args(["--format", format, "--out"])
                .arg(p)
                .status()
                .unwrap();
            assert!(status.success());
        }
        assert_eq!(fs::read(&paths[0]).unwrap(), fs::read(&paths[1]).unwrap());
    }
}

#[test]
fn csv_to_stdout_round_trips() {
    let out = esdqec()
        .args([
            "sweep",
            "--family",
            "psi",
            "--alpha",
            "0.3",
            "--code",
            "none",
            "--gamma-steps",
            "5",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rows.headers().unwrap(), vec!["gamma", "fidelity", "concurrence"]);
    let mut n = 0;
    for rec in rows.records() {
        let rec = rec.unwrap();
        let g: f64 = rec[0].parse().unwrap();
        let f: f64 = rec[1].parse().unwrap();
        assert!((f - (1.0 - g)).abs() < 1e-14);
        n += 1;
    }
    assert_eq!(n, 5);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.cfg");
    let out = dir.path().join("out.json");
    fs::write(
        &cfg,
        format!(
            "# uncoded psi\nfamily = psi\nalpha = pi/6\ncode = local41\ngamma-steps = 3\nformat = json\nout = {}\n",
            out.display()
        ),
    )
    .unwrap();
    let status = esdqec()
        .args(["sweep", "--code", "none", "--config"])
        .arg(&cfg)
        .status()
        .unwrap();
    assert!(status.success());
    let v: serde_json::Value = serde_json::from_slice(&fs::read(&out).unwrap()).unwrap();
    assert_eq!(v["config"]["code"], "none");
    assert_eq!(v["config"]["family"], "psi");
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn invalid_field_is_named_and_fails() {
    let out = esdqec()
        .args([
            "sweep",
            "--family",
            "phi",
            "--alpha",
            "0.3",
            "--code",
            "none",
            "--gamma-max",
            "2",
        ])
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("gamma-max"));

    let out = esdqec()
        .args(["sweep", "--alpha", "0.3", "--code", "none"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("family"));
}

#[test]
fn threshold_subcommand() {
    let out = esdqec()
        .args(["esd-threshold", "--family", "phi", "--alpha", "pi/6", "--code", "none"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let g: f64 = String::from_utf8(out.stdout).unwrap().trim().parse().unwrap();
    assert!((g - (std::f64::consts::PI / 6.0).tan()).abs() < 1e-5);

    let out = esdqec()
        .args(["esd-threshold", "--family", "zeta", "--alpha", "0.4", "--code", "none"])
        .output()
        .unwrap();
    assert!(!out.status.success(), "separable input has no threshold");
}

#[test]
fn verify_subset_and_unknown_criterion() {
    let out = esdqec().args(["verify", "--only", "A1,A4"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().starts_with("PASS A1"));
    assert!(text.contains("2/2 criteria passed"));

    assert!(!esdqec().args(["verify", "--only", "Z9"]).status().unwrap().success());
}

#[test]
fn figure_files() {
    let dir = tempfile::tempdir().unwrap();
    let status = esdqec()
        .args(["figures", "--gamma-steps", "6", "--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let curve = fs::read_to_string(dir.path().join("concurrence_phi_pi4_local41.csv")).unwrap();
    assert!(curve.starts_with("gamma,concurrence\n"));
    assert_eq!(curve.lines().count(), 7);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 36);
}

// Coded pipelines kill the entanglement that the bare pair keeps.
#[test]
fn coded_bell_pair_dies_bare_pair_survives() {
    let grid_conc = |code| {
        let mut cfg = SweepConfig::new(Family::Phi, std::f64::consts::FRAC_PI_4, code);
        cfg.gamma_max = 0.99;
        cfg.gamma_steps = 100;
        run_sweep(&cfg)
            .unwrap()
            .rows
            .into_iter()
            .map(|r| r.concurrence.unwrap())
            .collect::<Vec<_>>()
    };
    assert!(grid_conc(Code::None).iter().all(|&c| c > 0.0));
    assert!(grid_conc(Code::NonLocal62).contains(&0.0));
    assert!(grid_conc(Code::Local41).contains(&0.0));
}

#[test]
fn two_hundred_point_sweeps_are_fast() {
    for (code, budget) in [(Code::NonLocal62, 10), (Code::Local41, 60)] {
        let mut cfg = SweepConfig::new(Family::Psi, 0.7, code);
        cfg.gamma_steps = 200;
        let start = Instant::now();
        run_sweep(&cfg).unwrap();
        assert!(
            start.elapsed() < Duration::from_secs(budget),
            "{code}: {:?}",
            start.elapsed()
        );
    }
}
