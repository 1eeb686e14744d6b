use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use esdqec::config::{parse_angle, parse_outputs, Format, Quantity, Settings};
use esdqec::figures::write_figure_data;
use esdqec::sweep::{run_sweep_with, write_csv, write_json, Metadata};
use esdqec::verify::{run_criterion, Report, CRITERIA};
use esdqec_core::measures::{esd_threshold, ESD_DEFAULT_TOL};
use esdqec_core::{Code, Family, Pipeline, StateFamily};

/// Two-qubit entanglement and fidelity under amplitude damping, bare or
/// protected by the [6,2] or [4,1]x[4,1] codes.
#[derive(Parser)]
#[command(name = "esdqec", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fidelity and concurrence over a damping grid.
    Sweep(SweepArgs),
    /// Run the acceptance battery; exits nonzero on any failure.
    Verify {
        /// Print every individual check.
        #[arg(long)]
        verbose: bool,
        /// Run only these criteria (e.g. A2,A5).
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
    /// Damping at which the decoded concurrence first vanishes (1 if never).
    EsdThreshold {
        #[command(flatten)]
        state: StateArgs,
        /// Width of the final bisection bracket.
        #[arg(long, default_value_t = ESD_DEFAULT_TOL)]
        tol: f64,
    },
    /// Write the CSV data behind the standard fidelity/concurrence plots.
    Figures {
        #[arg(long, default_value = "figures")]
        out: PathBuf,
        #[arg(long, default_value_t = 201)]
        gamma_steps: usize,
    },
}

#[derive(Args)]
struct StateArgs {
    /// key=value file with any of the long flags; flags given here win.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_parser = parse_family)]
    family: Option<Family>,
    /// Radians, or forms like pi/4.
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Radians (default 0).
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long, value_parser = parse_code)]
    code: Option<Code>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Default 0.
    #[arg(long)]
    gamma_min: Option<f64>,
    /// Default 1.
    #[arg(long)]
    gamma_max: Option<f64>,
    /// Default 201.
    #[arg(long)]
    gamma_steps: Option<usize>,
    /// Comma-separated subset of fidelity,concurrence.
    #[arg(long, value_parser = parse_outputs)]
    outputs: Option<Vec<Quantity>>,
    /// Output file (default stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv (default) or json.
    #[arg(long, value_parser = |s: &str| s.parse::<Format>())]
    format: Option<Format>,
    /// Record the wall-clock time in JSON metadata (makes output non-reproducible).
    #[arg(long)]
    timestamp: bool,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: esdqec_core::states::UnknownFamily| e.to_string())
}

fn parse_code(s: &str) -> Result<Code, String> {
    s.parse().map_err(|e: esdqec_core::pipeline::UnknownCode| e.to_string())
}

impl StateArgs {
    fn settings(&self) -> anyhow::Result<Settings> {
        let file = match &self.config {
            Some(path) => Settings::from_file(path)?,
            None => Settings::default(),
        };
        Ok(file.overlay(Settings {
            family: self.family,
            alpha: self.alpha,
            beta: self.beta,
            code: self.code,
            ..Settings::default()
        }))
    }
}

fn sweep(args: SweepArgs) -> anyhow::Result<()> {
    let settings = args.state.settings()?.overlay(Settings {
        gamma_min: args.gamma_min,
        gamma_max: args.gamma_max,
        gamma_steps: args.gamma_steps,
        outputs: args.outputs,
        out: args.out,
        format: args.format,
        ..Settings::default()
    });
    let config = settings.to_config()?;
    let result = run_sweep_with(&Pipeline::new(), &config, Metadata::new(args.timestamp))?;
    let out: Box<dyn Write> = match &settings.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    };
    match settings.format.unwrap_or_default() {
        Format::Csv => write_csv(&result, out)?,
        Format::Json => write_json(&result, out)?,
    }
    Ok(())
}

fn verify(verbose: bool, only: &[String]) -> anyhow::Result<bool> {
    let ids: Vec<&str> = if only.is_empty() {
        CRITERIA.to_vec()
    } else {
        only.iter().map(String::as_str).collect()
    };
    let mut report = Report::default();
    for id in ids {
        let criterion = run_criterion(id).with_context(|| format!("unknown criterion `{id}`"))?;
        println!("{criterion}");
        if verbose {
            print!("{}", criterion.details());
        }
        report.criteria.push(criterion);
    }
    println!(
        "{}/{} criteria passed",
        report.criteria.len() - report.failures(),
        report.criteria.len()
    );
    Ok(report.all_passed())
}

fn threshold(state: StateArgs, tol: f64) -> anyhow::Result<()> {
    let config = state.settings()?.to_config()?;
    let s = StateFamily::new(config.family, config.alpha, config.beta).state();
    let pipeline = Pipeline::new();
    let mut failure = None;
    let gamma = esd_threshold(
        |g| match pipeline.concurrence_at(&s, config.code, g) {
            Ok(c) => c,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        tol,
    );
    if let Some(e) = failure {
        return Err(e.into());
    }
    println!("{}", gamma?);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Sweep(args) => sweep(args).map(|()| true),
        Command::Verify { verbose, only } => verify(verbose, &only),
        Command::EsdThreshold { state, tol } => threshold(state, tol).map(|()| true),
        Command::Figures { out, gamma_steps } => write_figure_data(&out, gamma_steps).map(|paths| {
            eprintln!("wrote {} files to {}", paths.len(), out.display());
            true
        }),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
