//! Two atoms decaying into a common vacuum reservoir from `(α|gg⟩ + β|ee⟩)|0̄⟩`.
//!
//! The reservoir is tracked through the collective states `|0̄⟩, |1̄⟩, |2̄⟩`:
//! `|Ψ(t)⟩ = α|gg⟩|0̄⟩ + c₁|ee⟩|0̄⟩ + c₂|+⟩|1̄⟩ + c₃|gg⟩|2̄⟩`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::state::TripartiteState;
use crate::xstate::{ThetaCandidate, XState};

const AMPLITUDE_NORM_TOL: f64 = 1e-12;
const NEGATIVE_ARGUMENT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReservoirParams {
    pub alpha: f64,
    pub beta: f64,
    /// Collective decay rate. Zero freezes the dynamics.
    pub gamma: f64,
}

impl ReservoirParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() || (alpha * alpha + beta * beta - 1.0).abs() > AMPLITUDE_NORM_TOL {
            return Err(invalid("alpha", format!("α² + β² must be 1, got α={alpha}, β={beta}")));
        }
        if !(gamma >= 0.0 && gamma.is_finite()) {
            return Err(invalid(
                "gamma",
                format!("decay rate must be finite and non-negative, got {gamma}"),
            ));
        }
        Ok(Self { alpha, beta, gamma })
    }

    /// `β = √(1-α²)`, `γ = 1`.
    pub fn from_alpha(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(invalid("alpha", format!("must lie in [0, 1], got {alpha}")));
        }
        Self::new(alpha, (1.0 - alpha * alpha).sqrt(), 1.0)
    }

    /// Time at which `γt = tau`.
    pub fn time_from_tau(&self, tau: f64) -> Result<f64> {
        if self.gamma == 0.0 {
            return Err(invalid("gamma", "dimensionless time γt is undefined for γ = 0"));
        }
        Ok(tau / self.gamma)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReservoirAmplitudes {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

/// `c₁ = βe^{-γt}`, `c₂ = βe^{-γt}√(1-e^{-2γt})`, `c₃ = √(1-α²-c₁²-c₂²)`.
///
/// The radicand of `c₃` equals `(1-α²-β²) + β²(1-e^{-2γt})²` and is evaluated
/// in that form to avoid cancellation at small and large `γt`.
pub fn reservoir_amplitudes(p: &ReservoirParams, t: f64) -> Result<ReservoirAmplitudes> {
    if !(t >= 0.0) {
        return Err(invalid("t", format!("time must be non-negative, got {t}")));
    }
    let gt = p.gamma * t;
    let s = (-gt).exp();
    let one_minus_x = -(-2.0 * gt).exp_m1();
    let c1 = p.beta * s;
    let c2 = p.beta * s * one_minus_x.sqrt();
    let radicand = (1.0 - p.alpha * p.alpha - p.beta * p.beta) + (p.beta * one_minus_x).powi(2);
    if radicand < -NEGATIVE_ARGUMENT_TOL {
        return Err(Error::InvalidParameter {
            field: "alpha",
            reason: format!("c₃ radicand {radicand:e} is negative"),
        });
    }
    Ok(ReservoirAmplitudes {
        c1,
        c2,
        c3: radicand.max(0.0).sqrt(),
    })
}

pub fn reservoir_tripartite_state(p: &ReservoirParams, t: f64) -> Result<TripartiteState> {
    let a = reservoir_amplitudes(p, t)?;
    let re = |x: f64| Complex64::new(x, 0.0);
    let zero = re(0.0);
    let plus = re(a.c2 * FRAC_1_SQRT_2);
    TripartiteState::from_blocks([
        &[re(p.alpha), zero, re(a.c3)],
        &[zero, plus, zero],
        &[zero, plus, zero],
        &[re(a.c1), zero, zero],
    ])
}

/// `ρ_AB` in the `|gg⟩, |ge⟩, |eg⟩, |ee⟩` ordering: `ρ00 = α²+c₃²`, `ρ33 = c₁²`,
/// `ρ03 = αc₁`, `ρ11 = ρ22 = ρ12 = c₂²/2`.
pub fn reservoir_xstate(p: &ReservoirParams, a: &ReservoirAmplitudes) -> Result<XState> {
    let plus = 0.5 * a.c2 * a.c2;
    XState::new(
        [p.alpha * p.alpha + a.c3 * a.c3, plus, plus, a.c1 * a.c1],
        Complex64::new(p.alpha * a.c1, 0.0),
        Complex64::new(plus, 0.0),
    )
}

/// The two extremal measurements, with `x = e^{-2γt}` and `s = e^{-γt}`.
///
/// `theta1`: `θ₁ = θ'₁ = √(β²(2αs + βx - βx²)² + (1 - 3β²x + β²x²)²)`, `p₀ = 1/2`.
/// `theta2`: `θ₂ = (1+x)/(3-x)`, `θ'₂ = |2 - 5β²x + 3β²x²| / |2 - 3β²x + β²x²|`,
/// `p₀ = β²x(3-x)/2`, the probability of finding `B` excited.
pub fn reservoir_theta_candidates(p: &ReservoirParams, t: f64) -> Result<Vec<ThetaCandidate>> {
    if !(t >= 0.0) {
        return Err(invalid("t", format!("time must be non-negative, got {t}")));
    }
    let gt = p.gamma * t;
    let s = (-gt).exp();
    let x = s * s;
    let (a, b) = (p.alpha, p.beta);
    let b2 = b * b;

    let theta1 = (b2 * (2.0 * a * s + b * x - b * x * x).powi(2) + (1.0 - 3.0 * b2 * x + b2 * x * x).powi(2)).sqrt();
    let theta2 = (1.0 + x) / (3.0 - x);
    let num = 2.0 - 5.0 * b2 * x + 3.0 * b2 * x * x;
    let den = 2.0 - 3.0 * b2 * x + b2 * x * x;
    let theta2_prime = if den.abs() > 0.0 { (num / den).abs() } else { 1.0 };
    let p0 = b2 * x * (3.0 - x) / 2.0;

    Ok(vec![
        ThetaCandidate::new("theta1", theta1.min(1.0), theta1.min(1.0), 0.5),
        ThetaCandidate::new("theta2", theta2, theta2_prime.min(1.0), p0),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xstate::{conditional_entropy_for_measurement, BlochVector};
    use approx::assert_abs_diff_eq;

    fn params(alpha: f64) -> ReservoirParams {
        ReservoirParams::from_alpha(alpha).unwrap()
    }

    #[test]
    fn initial_and_asymptotic_amplitudes() {
        let p = params(0.3);
        let a0 = reservoir_amplitudes(&p, 0.0).unwrap();
        assert_eq!((a0.c1, a0.c2, a0.c3), (p.beta, 0.0, 0.0));
        let a = reservoir_amplitudes(&p, 10.0).unwrap();
        assert!(a.c1 < 5e-5 && a.c2 < 5e-5);
        assert_abs_diff_eq!(a.c3, p.beta, epsilon = 1e-8);
    }

    #[test]
    fn c2_peaks_at_half_ln2() {
        let p = params(0.3);
        let t_star = 0.5 * 2f64.ln();
        let peak = reservoir_amplitudes(&p, t_star).unwrap().c2;
        assert_abs_diff_eq!(peak, p.beta / 2.0, epsilon = 1e-15);
        for dt in [-1e-3, 1e-3] {
            assert!(reservoir_amplitudes(&p, t_star + dt).unwrap().c2 < peak);
        }
    }

    #[test]
    fn normalization_and_reduction() {
        let p = params(0.3);
        for k in 0..60 {
            let t = 0.1 * k as f64;
            let a = reservoir_amplitudes(&p, t).unwrap();
            let norm = p.alpha.powi(2) + a.c1.powi(2) + a.c2.powi(2) + a.c3.powi(2);
            assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-12);
            let psi = reservoir_tripartite_state(&p, t).unwrap();
            let x = reservoir_xstate(&p, &a).unwrap();
            assert!(x.to_matrix().max_abs_diff(&psi.rho_ab()) < 1e-13);
        }
    }

    #[test]
    fn candidates_match_z_and_x_measurements() {
        let p = params(0.3);
        for k in 0..40 {
            let t = 0.125 * k as f64;
            let x = reservoir_xstate(&p, &reservoir_amplitudes(&p, t).unwrap()).unwrap();
            let c = reservoir_theta_candidates(&p, t).unwrap();
            let (sx, _) = conditional_entropy_for_measurement(&x, &BlochVector::X).unwrap();
            let (sz, ez) = conditional_entropy_for_measurement(&x, &BlochVector::Z).unwrap();
            assert_abs_diff_eq!(c[0].entropy().unwrap(), sx, epsilon = 1e-12);
            assert_abs_diff_eq!(c[1].entropy().unwrap(), sz, epsilon = 1e-12);
            assert_abs_diff_eq!(c[1].p0, ez.p1, epsilon = 1e-12);
        }
    }

    #[test]
    fn factorized_start_has_zero_entropy_candidate() {
        let c = reservoir_theta_candidates(&params(0.3), 0.0).unwrap();
        assert_eq!(c[1].theta, 1.0);
        assert_eq!(c[1].entropy().unwrap(), 0.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ReservoirParams::new(0.3, 0.3, 1.0).is_err());
        assert!(ReservoirParams::new(0.6, 0.8, -1.0).is_err());
        assert!(reservoir_amplitudes(&params(0.3), -1.0).is_err());
        assert!(ReservoirParams::new(0.6, 0.8, 0.0).unwrap().time_from_tau(1.0).is_err());
    }
}
