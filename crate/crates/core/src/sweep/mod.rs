//! Time sweeps of the full pipeline for either dynamical model.

mod emit;

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use emit::{emit, read_csv, read_json, write_csv, write_json, CSV_FIXED_COLUMNS};

use crate::bounds::caf_lower_bound;
use crate::correlations::{classical_correlation, discord_from_minimum, ORACLE_LABEL};
use crate::crossover::{detect_crossovers, Crossover};
use crate::entropy::von_neumann_entropy;
use crate::error::{invalid, Error, Result};
use crate::models::reservoir::{reservoir_theta_candidates, reservoir_tripartite_state, reservoir_xstate};
use crate::models::tavis_cummings::{
    tc_amplitudes, tc_theta_candidates_n0, tc_xstate_elements, tripartite_from_amplitudes,
};
use crate::models::{reservoir_amplitudes, ReservoirParams, TcParams};
use crate::oracle::{minimize_conditional_entropy, OptimizerConfig};
use crate::state::TripartiteState;
use crate::xstate::{
    conditional_entropy_for_measurement, measurement_candidates, minimize_candidates, CandidateEntropy, ThetaCandidate,
    XState,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    #[default]
    TavisCummings,
    CommonReservoir,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::TavisCummings => "tavis_cummings",
            Model::CommonReservoir => "common_reservoir",
        })
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tavis_cummings" => Ok(Model::TavisCummings),
            "common_reservoir" => Ok(Model::CommonReservoir),
            other => Err(invalid("model", format!("unknown model {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(invalid("format", format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub model: Model,
    pub alpha: f64,
    /// Initial photon number (Tavis–Cummings only).
    pub n: u32,
    pub tau_min: f64,
    pub tau_max: f64,
    pub points: usize,
    /// Cross-check every point against the brute-force minimizer.
    pub oracle: bool,
    /// Destination file; `None` writes to standard output.
    pub output_path: Option<String>,
    pub format: OutputFormat,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            model: Model::TavisCummings,
            alpha: FRAC_1_SQRT_2,
            n: 0,
            tau_min: 0.0,
            tau_max: 1.0,
            points: 1001,
            oracle: false,
            output_path: None,
            format: OutputFormat::Csv,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(invalid("alpha", format!("must lie in [0, 1], got {}", self.alpha)));
        }
        if self.points < 2 {
            return Err(invalid("points", format!("need at least 2, got {}", self.points)));
        }
        if !(self.tau_min.is_finite() && self.tau_min >= 0.0) {
            return Err(invalid(
                "tau_min",
                format!("must be finite and non-negative, got {}", self.tau_min),
            ));
        }
        if !(self.tau_max.is_finite() && self.tau_max > self.tau_min) {
            return Err(invalid(
                "tau_max",
                format!("must exceed tau_min = {}, got {}", self.tau_min, self.tau_max),
            ));
        }
        Ok(())
    }

    /// Evenly spaced τ values, endpoints included.
    pub fn grid(&self) -> Vec<f64> {
        let span = self.tau_max - self.tau_min;
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|k| {
                if k + 1 == self.points {
                    self.tau_max
                } else {
                    self.tau_min + span * k as f64 / last
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub tau: f64,
    pub eof: f64,
    pub winner: String,
    pub candidate_entropies: Vec<CandidateEntropy>,
    pub classical_correlation: f64,
    pub discord: f64,
    pub lower_bound: f64,
    /// `|E_AC + J←_AB - S_A|` with `S_A` taken from the tripartite state.
    pub identity_residual: f64,
    /// Analytic minimum minus the brute-force minimum.
    pub oracle_gap: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepOutput {
    pub config: SweepConfig,
    pub records: Vec<SweepRecord>,
    pub crossovers: Vec<Crossover>,
}

/// Slack on `eof ≥ 0` and the monogamy residual.
pub const RECORD_TOL: f64 = 1e-9;
/// The brute-force minimizer may trail the analytic minimum by at most this.
pub const ORACLE_GAP_TOL: f64 = 1e-6;

impl SweepOutput {
    /// Per-record sanity: non-negative EoF, monogamy residual below
    /// [`RECORD_TOL`], analytic minimum within [`ORACLE_GAP_TOL`] of the oracle.
    pub fn check_invariants(&self) -> Result<()> {
        for r in &self.records {
            let fail = |what: String| Err(Error::OptimizerFailure(format!("τ = {}: {what}", r.tau)));
            if !(r.eof >= -RECORD_TOL) {
                return fail(format!("eof {} is negative", r.eof));
            }
            if !(r.identity_residual < RECORD_TOL) {
                return fail(format!("monogamy residual {:e}", r.identity_residual));
            }
            if let Some(gap) = r.oracle_gap {
                if gap.abs() > ORACLE_GAP_TOL {
                    return fail(format!("analytic and brute-force minima differ by {gap:e}"));
                }
            }
        }
        Ok(())
    }
}

/// Everything the pipeline needs at one time point.
#[derive(Clone, Debug)]
pub struct ModelPoint {
    pub state: TripartiteState,
    pub xstate: XState,
    pub candidates: Vec<ThetaCandidate>,
}

/// A configured dynamical model evaluated on the dimensionless time axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Scenario {
    TavisCummings(TcParams),
    CommonReservoir(ReservoirParams),
}

impl Scenario {
    /// Unit coupling or decay rate, `β = √(1-α²)`.
    pub fn from_config(cfg: &SweepConfig) -> Result<Self> {
        Ok(match cfg.model {
            Model::TavisCummings => Scenario::TavisCummings(TcParams::from_alpha(cfg.alpha, cfg.n)?),
            Model::CommonReservoir => Scenario::CommonReservoir(ReservoirParams::from_alpha(cfg.alpha)?),
        })
    }

    /// Measurement candidates: the closed forms for the Tavis–Cummings model
    /// with `n = 0` and for the reservoir. Otherwise the `z`, `x`, `y` axes
    /// plus the oracle-refined direction, since the optimum of these states
    /// can leave the coordinate axes.
    pub fn point(&self, tau: f64) -> Result<ModelPoint> {
        match self {
            Scenario::TavisCummings(p) => {
                let a = tc_amplitudes(p, p.time_from_tau(tau));
                let xstate = tc_xstate_elements(&a)?;
                let candidates = if p.n == 0 {
                    tc_theta_candidates_n0(p, &a)?
                } else {
                    let oracle = minimize_conditional_entropy(&xstate.to_matrix(), &OptimizerConfig::default())?;
                    let (_, ensemble) = conditional_entropy_for_measurement(&xstate, &oracle.direction)?;
                    let mut c = measurement_candidates(&xstate);
                    c.push(ThetaCandidate::from_ensemble(ORACLE_LABEL, &ensemble));
                    c
                };
                Ok(ModelPoint {
                    state: tripartite_from_amplitudes(p, &a)?,
                    xstate,
                    candidates,
                })
            }
            Scenario::CommonReservoir(p) => {
                let t = p.time_from_tau(tau)?;
                Ok(ModelPoint {
                    state: reservoir_tripartite_state(p, t)?,
                    xstate: reservoir_xstate(p, &reservoir_amplitudes(p, t)?)?,
                    candidates: reservoir_theta_candidates(p, t)?,
                })
            }
        }
    }

    pub fn candidate_entropies(&self, tau: f64) -> Result<Vec<CandidateEntropy>> {
        Ok(minimize_candidates(&self.point(tau)?.candidates)?.entropies)
    }

    /// Full pipeline at one τ.
    pub fn record(&self, tau: f64, oracle: Option<&OptimizerConfig>) -> Result<SweepRecord> {
        let pt = self.point(tau)?;
        let m = minimize_candidates(&pt.candidates)?;
        let x = &pt.xstate;
        let cc = classical_correlation(x, m.value)?;
        let discord = discord_from_minimum(x, m.value)?;
        let entropy_a = von_neumann_entropy(&pt.state.rho_a())?;
        let dc = pt.state.dims().dc();
        let lower_bound = caf_lower_bound(&pt.state.rho_ac(), [2, dc])?.eof_lower;
        let oracle_gap = match oracle {
            Some(cfg) => Some(m.value - minimize_conditional_entropy(&x.to_matrix(), cfg)?.value),
            None => None,
        };
        Ok(SweepRecord {
            tau,
            eof: m.value,
            winner: m.winner,
            candidate_entropies: m.entropies,
            classical_correlation: cc,
            discord,
            lower_bound,
            identity_residual: (m.value + cc - entropy_a).abs(),
            oracle_gap,
        })
    }
}

/// Evaluates every grid point in parallel, then locates winner crossovers.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutput> {
    cfg.validate()?;
    let scenario = Scenario::from_config(cfg)?;
    let oracle_cfg = cfg.oracle.then(OptimizerConfig::default);
    let records = cfg
        .grid()
        .into_par_iter()
        .map(|tau| scenario.record(tau, oracle_cfg.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    let crossovers = detect_crossovers(&records, |tau| scenario.candidate_entropies(tau))?;
    Ok(SweepOutput {
        config: cfg.clone(),
        records,
        crossovers,
    })
}
