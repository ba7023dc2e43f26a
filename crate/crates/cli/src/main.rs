use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use eof2xd::sweep::{emit, run_sweep, Model, OutputFormat, SweepConfig};

/// Sweep dimensionless time for the two-atom models and report the
/// atom–field entanglement of formation, correlations and lower bound.
#[derive(Parser, Debug)]
#[command(name = "eof2xd", version)]
struct Cli {
    /// JSON file holding a sweep configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// tavis_cummings or common_reservoir.
    #[arg(long)]
    model: Option<Model>,
    /// Amplitude of |gg⟩ in the initial state; β = √(1-α²).
    #[arg(long)]
    alpha: Option<f64>,
    /// Initial photon number (tavis_cummings only).
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    tau_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    tau_max: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    /// Cross-check every point against the brute-force minimizer.
    #[arg(long)]
    oracle: bool,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json.
    #[arg(long)]
    format: Option<OutputFormat>,
}

impl Cli {
    fn into_config(self) -> Result<SweepConfig> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
            }
            None => SweepConfig::default(),
        };
        if let Some(v) = self.model {
            cfg.model = v;
        }
        if let Some(v) = self.alpha {
            cfg.alpha = v;
        }
        if let Some(v) = self.n {
            cfg.n = v;
        }
        if let Some(v) = self.tau_min {
            cfg.tau_min = v;
        }
        if let Some(v) = self.tau_max {
            cfg.tau_max = v;
        }
        if let Some(v) = self.points {
            cfg.points = v;
        }
        cfg.oracle |= self.oracle;
        if let Some(v) = self.out {
            cfg.output_path = Some(v.to_string_lossy().into_owned());
        }
        if let Some(v) = self.format {
            cfg.format = v;
        }
        Ok(cfg)
    }
}

fn run(cli: Cli) -> Result<()> {
    let cfg = cli.into_config()?;
    let out = run_sweep(&cfg).context("sweep failed")?;
    out.check_invariants().context("invariant check failed")?;
    emit(&out, cfg.output_path.as_deref().map(Path::new), cfg.format).context("writing output")?;

    eprintln!("{} points, {} crossover(s)", out.records.len(), out.crossovers.len());
    for c in &out.crossovers {
        eprintln!("  τ = {:.6}: {} → {}", c.tau, c.left_winner, c.right_winner);
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
