//! Locating the times at which the minimizing measurement changes identity.

use serde::{Deserialize, Serialize};

use crate::correlations::ORACLE_LABEL;
use crate::error::{Error, Result};
use crate::sweep::SweepRecord;
use crate::xstate::{CandidateEntropy, TIE_TOL};

/// Bisection stops once the bracket is shorter than this.
pub const CROSSOVER_TAU_TOL: f64 = 1e-12;

const MAX_BISECTIONS: usize = 200;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Crossover {
    pub tau: f64,
    pub left_winner: String,
    pub right_winner: String,
}

/// Winner of a record whose margin over the other candidates exceeds
/// [`TIE_TOL`]; `None` at ties, where the label carries no information.
/// An oracle-refined candidate that merely reproduces a fixed axis does not
/// count as a tie.
fn strict_winner(entropies: &[CandidateEntropy]) -> Option<&str> {
    let best = entropies.iter().map(|e| e.value).fold(f64::INFINITY, f64::min);
    let tied: Vec<&CandidateEntropy> = entropies.iter().filter(|e| e.value - best <= TIE_TOL).collect();
    match tied.as_slice() {
        [only] => Some(only.label.as_str()),
        _ => {
            let mut fixed = tied.iter().filter(|e| e.label != ORACLE_LABEL);
            match (fixed.next(), fixed.next()) {
                (Some(one), None) => Some(one.label.as_str()),
                _ => None,
            }
        }
    }
}

/// Whether `right` is preferred over `left`, with the same tie rule as
/// candidate minimization: a later candidate must win by more than
/// [`TIE_TOL`].
fn prefers_right(entropies: &[CandidateEntropy], left: &str, right: &str) -> Result<bool> {
    let index = |label: &str| entropies.iter().position(|e| e.label == label);
    let (l, r) = (value_of(entropies, left)?, value_of(entropies, right)?);
    Ok(if index(right) > index(left) {
        r < l - TIE_TOL
    } else {
        r <= l + TIE_TOL
    })
}

fn value_of(entropies: &[CandidateEntropy], label: &str) -> Result<f64> {
    entropies
        .iter()
        .find(|e| e.label == label)
        .map(|e| e.value)
        .ok_or_else(|| Error::OptimizerFailure(format!("candidate {label} missing from evaluation")))
}

/// Crossings between consecutive clear winners in `records` (sorted by τ).
///
/// Each crossing is refined by bisecting `S_left(τ) - S_right(τ)` with
/// `evaluate`, which must return the candidate entropies at any τ.
pub fn detect_crossovers<F>(records: &[SweepRecord], evaluate: F) -> Result<Vec<Crossover>>
where
    F: Fn(f64) -> Result<Vec<CandidateEntropy>>,
{
    let mut out = Vec::new();
    let mut last: Option<(f64, &str)> = None;
    for r in records {
        let Some(w) = strict_winner(&r.candidate_entropies) else {
            continue;
        };
        if let Some((tau_left, left)) = last {
            if left != w {
                let tau = bisect(&evaluate, left, w, tau_left, r.tau)?;
                out.push(Crossover {
                    tau,
                    left_winner: left.to_string(),
                    right_winner: w.to_string(),
                });
            }
        }
        last = Some((r.tau, w));
    }
    Ok(out)
}

fn bisect<F>(evaluate: &F, left: &str, right: &str, mut lo: f64, mut hi: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<Vec<CandidateEntropy>>,
{
    // `left` is preferred at `lo`, `right` at `hi`.
    for _ in 0..MAX_BISECTIONS {
        if hi - lo < CROSSOVER_TAU_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if !prefers_right(&evaluate(mid)?, left, right)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
