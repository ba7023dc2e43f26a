//! Classical correlation, quantum discord and entanglement of formation via
//! the monogamy relation `E_AC + J←_AB = S_A` for pure `ABC` states.

use crate::entropy::von_neumann_entropy;
use crate::error::{Error, Result};
use crate::oracle::{minimize_conditional_entropy, OptimizerConfig, OracleMinimum};
use crate::state::TripartiteState;
use crate::xstate::{
    conditional_entropy_for_measurement, measurement_candidates, minimize_candidates, xstate_reduction,
    CandidateEntropy, ThetaCandidate, XState,
};

/// Values below this are treated as optimizer failure rather than rounding.
pub const NEGATIVITY_TOL: f64 = 1e-9;

/// Label of the candidate taken from the numerical optimizer's best direction.
pub const ORACLE_LABEL: &str = "oracle";

/// Minimum conditional entropy of an X state over measurements on `B`.
#[derive(Clone, Debug)]
pub struct ConditionalMinimum {
    pub value: f64,
    pub winner: String,
    pub entropies: Vec<CandidateEntropy>,
    pub oracle: OracleMinimum,
}

/// Minimizes over the closed-form `z`, `x`, `y` candidates and the oracle's
/// best direction, in that order.
pub fn optimal_conditional_entropy(x: &XState, cfg: &OptimizerConfig) -> Result<ConditionalMinimum> {
    let oracle = minimize_conditional_entropy(&x.to_matrix(), cfg)?;
    let (_, ensemble) = conditional_entropy_for_measurement(x, &oracle.direction)?;
    let mut candidates = measurement_candidates(x);
    candidates.push(ThetaCandidate::from_ensemble(ORACLE_LABEL, &ensemble));
    let m = minimize_candidates(&candidates)?;
    Ok(ConditionalMinimum {
        value: m.value,
        winner: m.winner,
        entropies: m.entropies,
        oracle,
    })
}

/// `J←_AB = S_A - min S(ρ_AB|{Π})`, given the minimized conditional entropy.
pub fn classical_correlation(x: &XState, min_conditional_entropy: f64) -> Result<f64> {
    let j = x.entropy_a() - min_conditional_entropy;
    if j < -NEGATIVITY_TOL {
        return Err(Error::OptimizerFailure(format!(
            "classical correlation {j:e} is negative"
        )));
    }
    Ok(j)
}

/// Discord `I(A:B) - J←_AB` with the measurement on `B`, given the
/// minimized conditional entropy.
pub fn discord_from_minimum(x: &XState, min_conditional_entropy: f64) -> Result<f64> {
    let d = x.mutual_information() - classical_correlation(x, min_conditional_entropy)?;
    if d < -NEGATIVITY_TOL {
        return Err(Error::OptimizerFailure(format!("discord {d:e} is negative")));
    }
    Ok(d)
}

pub fn quantum_discord(x: &XState) -> Result<f64> {
    let m = optimal_conditional_entropy(x, &OptimizerConfig::default())?;
    discord_from_minimum(x, m.value)
}

#[derive(Clone, Debug, PartialEq)]
pub struct KoashiWinter {
    /// `E_AC`.
    pub eof: f64,
    /// `J←_AB`.
    pub classical_correlation: f64,
    /// `S_A` of the full tripartite state.
    pub entropy_a: f64,
    /// `|E_AC + J←_AB - S_A|`.
    pub residual: f64,
    pub winner: String,
    /// Whether the `AB` reduction had X form.
    pub x_form: bool,
}

/// `E_AC` of a pure `2⊗2⊗d` state as the minimum conditional entropy of its
/// `AB` reduction. Non-X reductions go straight to the oracle.
pub fn koashi_winter_eof(psi: &TripartiteState, cfg: &OptimizerConfig) -> Result<KoashiWinter> {
    let entropy_a = von_neumann_entropy(&psi.rho_a())?;
    match xstate_reduction(psi) {
        Ok(x) => {
            let m = optimal_conditional_entropy(&x, cfg)?;
            let j = classical_correlation(&x, m.value)?;
            Ok(KoashiWinter {
                eof: m.value,
                classical_correlation: j,
                entropy_a,
                residual: (m.value + j - entropy_a).abs(),
                winner: m.winner,
                x_form: true,
            })
        }
        Err(Error::XFormViolation { .. }) => {
            let rho_ab = psi.rho_ab();
            let oracle = minimize_conditional_entropy(&rho_ab, cfg)?;
            let s_a = von_neumann_entropy(&crate::linalg::partial_trace(&rho_ab, &[2, 2], &[0])?)?;
            let j = s_a - oracle.value;
            if j < -NEGATIVITY_TOL {
                return Err(Error::OptimizerFailure(format!(
                    "classical correlation {j:e} is negative"
                )));
            }
            Ok(KoashiWinter {
                eof: oracle.value,
                classical_correlation: j,
                entropy_a,
                residual: (oracle.value + j - entropy_a).abs(),
                winner: ORACLE_LABEL.to_string(),
                x_form: false,
            })
        }
        Err(e) => Err(e),
    }
}
