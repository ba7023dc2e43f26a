//! Two atoms resonantly coupled to one cavity mode,
//! `H = g[(σ_A + σ_B) a† + (σ_A† + σ_B†) a]`, starting from
//! `(α|gg⟩ + β|ee⟩)|n⟩`.
//!
//! Excitation number is conserved, so the state stays in
//! `c₁|gg,n+2⟩ + c₂|+,n+1⟩ + c₃|ee,n⟩ + c₄|gg,n⟩ + c₅|+,n-1⟩ + c₆|ee,n-2⟩`
//! with `|+⟩ = (|eg⟩ + |ge⟩)/√2`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::state::{DimSpec, TripartiteState};
use crate::xstate::{ThetaCandidate, XState};

const AMPLITUDE_NORM_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TcParams {
    pub alpha: f64,
    pub beta: f64,
    /// Initial photon number.
    pub n: u32,
    /// Atom–cavity coupling.
    pub g: f64,
}

impl TcParams {
    pub fn new(alpha: f64, beta: f64, n: u32, g: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() || (alpha * alpha + beta * beta - 1.0).abs() > AMPLITUDE_NORM_TOL {
            return Err(invalid("alpha", format!("α² + β² must be 1, got α={alpha}, β={beta}")));
        }
        if !(g >= 0.0 && g.is_finite()) {
            return Err(invalid(
                "g",
                format!("coupling must be finite and non-negative, got {g}"),
            ));
        }
        Ok(Self { alpha, beta, n, g })
    }

    /// `β = √(1-α²)`, `g = 1`.
    pub fn from_alpha(alpha: f64, n: u32) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(invalid("alpha", format!("must lie in [0, 1], got {alpha}")));
        }
        Self::new(alpha, (1.0 - alpha * alpha).sqrt(), n, 1.0)
    }

    /// Rabi frequency of the `n+2` excitation manifold, `√(2(2n+3)) g`.
    pub fn upper_frequency(&self) -> f64 {
        (2.0 * (2.0 * self.n as f64 + 3.0)).sqrt() * self.g
    }

    /// Rabi frequency of the `n` excitation manifold, `√(2(2n-1)) g`; zero for `n = 0`.
    pub fn lower_frequency(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            (2.0 * (2.0 * self.n as f64 - 1.0)).sqrt() * self.g
        }
    }

    /// Ratio `τ / (g t)` of the dimensionless time axis: `√6/2π` for `n = 0`,
    /// `√14/6π` for `n = 2`, and one upper-manifold period otherwise.
    pub fn tau_per_gt(&self) -> f64 {
        match self.n {
            0 => 6f64.sqrt() / (2.0 * PI),
            2 => 14f64.sqrt() / (6.0 * PI),
            n => (2.0 * (2.0 * n as f64 + 3.0)).sqrt() / (2.0 * PI),
        }
    }

    pub fn time_from_tau(&self, tau: f64) -> f64 {
        tau / (self.tau_per_gt() * self.g)
    }

    /// Cavity dimension of the occupied Fock space: 3, 4 or 5.
    pub fn cavity_dim(&self) -> usize {
        match self.n {
            0 => 3,
            1 => 4,
            _ => 5,
        }
    }

    /// Lowest occupied Fock number.
    pub fn fock_offset(&self) -> u32 {
        self.n.saturating_sub(2)
    }
}

/// `c₁..c₆` in the order of the invariant-subspace expansion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TcAmplitudes {
    pub c: [Complex64; 6],
}

impl TcAmplitudes {
    pub fn norm_sq(&self) -> f64 {
        self.c.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn c1(&self) -> Complex64 {
        self.c[0]
    }
    pub fn c2(&self) -> Complex64 {
        self.c[1]
    }
    pub fn c3(&self) -> Complex64 {
        self.c[2]
    }
    pub fn c4(&self) -> Complex64 {
        self.c[3]
    }
    pub fn c5(&self) -> Complex64 {
        self.c[4]
    }
    pub fn c6(&self) -> Complex64 {
        self.c[5]
    }

    /// Mean excitation number `⟨a†a + σ_A†σ_A + σ_B†σ_B⟩` for photon number `n`.
    pub fn excitation_number(&self, n: u32) -> f64 {
        let upper: f64 = self.c[..3].iter().map(|z| z.norm_sqr()).sum();
        let lower: f64 = self.c[3..].iter().map(|z| z.norm_sqr()).sum();
        upper * (n as f64 + 2.0) + lower * n as f64
    }
}

/// Closed-form amplitudes at time `t`.
pub fn tc_amplitudes(p: &TcParams, t: f64) -> TcAmplitudes {
    let n = p.n as f64;
    let re = |x: f64| Complex64::new(x, 0.0);
    let im = |x: f64| Complex64::new(0.0, x);

    let wu = p.upper_frequency() * t;
    let ku = 2.0 * n + 3.0;
    let c1 = re(-p.beta * ((n + 1.0) * (n + 2.0)).sqrt() / ku * (1.0 - wu.cos()));
    let c2 = im(-p.beta * (n + 1.0).sqrt() / ku.sqrt() * wu.sin());
    let c3 = re(p.beta * (1.0 - (n + 1.0) / ku * (1.0 - wu.cos())));

    let (c4, c5, c6) = if p.n == 0 {
        (re(p.alpha), re(0.0), re(0.0))
    } else {
        let wl = p.lower_frequency() * t;
        let kl = 2.0 * n - 1.0;
        (
            re(p.alpha * (1.0 - n / kl * (1.0 - wl.cos()))),
            im(-p.alpha * n.sqrt() / kl.sqrt() * wl.sin()),
            re(-p.alpha * (n * (n - 1.0)).sqrt() / kl * (1.0 - wl.cos())),
        )
    };
    TcAmplitudes {
        c: [c1, c2, c3, c4, c5, c6],
    }
}

/// Atom–atom–cavity state at time `t` over the Fock window
/// `{|n-2⟩, …, |n+2⟩}` (truncated below at `|0⟩`).
pub fn tc_tripartite_state(p: &TcParams, t: f64) -> Result<TripartiteState> {
    tripartite_from_amplitudes(p, &tc_amplitudes(p, t))
}

pub fn tripartite_from_amplitudes(p: &TcParams, a: &TcAmplitudes) -> Result<TripartiteState> {
    let dc = p.cavity_dim();
    let base = p.fock_offset();
    let mut blocks = vec![vec![Complex64::new(0.0, 0.0); dc]; 4];
    let (gg, ge, eg, ee) = (0, 1, 2, 3);
    let mut put = |block: usize, fock: i64, amp: Complex64| {
        if fock >= 0 && amp != Complex64::new(0.0, 0.0) {
            blocks[block][(fock - base as i64) as usize] += amp;
        }
    };
    let n = p.n as i64;
    let [c1, c2, c3, c4, c5, c6] = a.c;
    put(gg, n + 2, c1);
    put(ge, n + 1, c2 * FRAC_1_SQRT_2);
    put(eg, n + 1, c2 * FRAC_1_SQRT_2);
    put(ee, n, c3);
    put(gg, n, c4);
    if p.n >= 1 {
        put(ge, n - 1, c5 * FRAC_1_SQRT_2);
        put(eg, n - 1, c5 * FRAC_1_SQRT_2);
    }
    if p.n >= 2 {
        put(ee, n - 2, c6);
    }
    TripartiteState::new(DimSpec::new(dc)?, blocks.concat())
}

/// X-state entries of `ρ_AB`: `ρ00 = |c₁|²+|c₄|²`,
/// `ρ11 = ρ22 = ρ12 = (|c₂|²+|c₅|²)/2`, `ρ33 = |c₃|²+|c₆|²`, `ρ03 = c₄c₃*`.
pub fn tc_xstate_elements(a: &TcAmplitudes) -> Result<XState> {
    let [c1, c2, c3, c4, c5, c6] = a.c;
    let plus = 0.5 * (c2.norm_sqr() + c5.norm_sqr());
    XState::new(
        [c1.norm_sqr() + c4.norm_sqr(), plus, plus, c3.norm_sqr() + c6.norm_sqr()],
        c4 * c3.conj(),
        Complex64::new(plus, 0.0),
    )
}

/// The two extremal measurements for `n = 0`.
///
/// `theta1`: `θ₁ = θ'₁ = √((α²+c₁²-c₃²)² + 4(αc₃ + |c₂|²/2)²)`, `p₀ = 1/2`.
/// `theta2`: `θ₂ = |α²+c₁²-|c₂|²/2| / (α²+c₁²+|c₂|²/2)`,
/// `θ'₂ = |c₃²-|c₂|²/2| / (c₃²+|c₂|²/2)`, `p₀ = α²+c₁²+|c₂|²/2`.
pub fn tc_theta_candidates_n0(p: &TcParams, a: &TcAmplitudes) -> Result<Vec<ThetaCandidate>> {
    if p.n != 0 {
        return Err(Error::InvalidParameter {
            field: "n",
            reason: format!("closed-form candidates need n = 0, got {}", p.n),
        });
    }
    let alpha2 = p.alpha * p.alpha;
    let c1sq = a.c1().norm_sqr();
    let c3 = a.c3().re;
    let c3sq = c3 * c3;
    let half_plus = 0.5 * a.c2().norm_sqr();

    let theta1 = ((alpha2 + c1sq - c3sq).powi(2) + 4.0 * (p.alpha * c3 + half_plus).powi(2)).sqrt();
    let ratio = |a: f64, b: f64| if a + b > 0.0 { (a - b).abs() / (a + b) } else { 1.0 };
    let theta2 = ratio(alpha2 + c1sq, half_plus);
    let theta2_prime = ratio(c3sq, half_plus);
    let p0 = alpha2 + c1sq + half_plus;

    Ok(vec![
        ThetaCandidate::new("theta1", theta1.min(1.0), theta1.min(1.0), 0.5),
        ThetaCandidate::new("theta2", theta2, theta2_prime, p0),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn params(n: u32) -> TcParams {
        TcParams::from_alpha(FRAC_1_SQRT_2, n).unwrap()
    }

    #[test]
    fn initial_amplitudes() {
        for n in 0..4 {
            let p = params(n);
            let a = tc_amplitudes(&p, 0.0);
            assert_abs_diff_eq!(a.c3().re, p.beta, epsilon = 1e-15);
            assert_abs_diff_eq!(a.c4().re, p.alpha, epsilon = 1e-15);
            for k in [0, 1, 4, 5] {
                assert_eq!(a.c[k].norm(), 0.0);
            }
        }
    }

    #[test]
    fn n0_period_returns_to_start() {
        let p = params(0);
        let a = tc_amplitudes(&p, p.time_from_tau(1.0));
        let a0 = tc_amplitudes(&p, 0.0);
        for (x, y) in a.c.iter().zip(a0.c.iter()) {
            assert!((x - y).norm() < 1e-10);
        }
        assert_abs_diff_eq!(p.time_from_tau(1.0), 2.0 * PI / 6f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn unitarity_on_a_grid() {
        for n in 0..5 {
            let p = params(n);
            for k in 0..50 {
                let t = 0.137 * k as f64;
                assert_abs_diff_eq!(tc_amplitudes(&p, t).norm_sq(), 1.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn dimensions_and_lower_branches() {
        assert_eq!(
            [params(0).cavity_dim(), params(1).cavity_dim(), params(7).cavity_dim()],
            [3, 4, 5]
        );
        let a = tc_amplitudes(&params(1), 0.8);
        assert_eq!(a.c6().norm(), 0.0);
        assert!(a.c5().norm() > 0.0);
    }

    #[test]
    fn xstate_elements_match_partial_trace() {
        for n in 0..4 {
            let p = params(n);
            for k in 0..20 {
                let t = 0.21 * k as f64;
                let a = tc_amplitudes(&p, t);
                let x = tc_xstate_elements(&a).unwrap();
                let psi = tripartite_from_amplitudes(&p, &a).unwrap();
                let red = psi.reduce(&[0, 1]).unwrap();
                assert!(x.to_matrix().max_abs_diff(&red) < 1e-12);
            }
        }
    }

    #[test]
    fn half_period_coherence() {
        // cos(√6 g t) = -1 here, so c₃ = β(1 - 2/3) and c₄ = α.
        let p = params(0);
        let a = tc_amplitudes(&p, p.time_from_tau(0.5));
        assert_abs_diff_eq!(a.c3().re, p.beta * (1.0 - 2.0 / 3.0), epsilon = 1e-15);
        let x = tc_xstate_elements(&a).unwrap();
        assert_abs_diff_eq!(x.rho03().re, p.alpha * p.beta / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn candidates_require_n0() {
        let p = params(2);
        assert!(tc_theta_candidates_n0(&p, &tc_amplitudes(&p, 0.3)).is_err());
        let p0 = params(0);
        let c = tc_theta_candidates_n0(&p0, &tc_amplitudes(&p0, 0.0)).unwrap();
        assert_abs_diff_eq!(c[1].theta, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c[1].theta_prime, 1.0, epsilon = 1e-15);
        assert_eq!(c[1].entropy().unwrap(), 0.0);
    }

    #[test]
    fn parameter_validation() {
        assert!(TcParams::new(0.6, 0.6, 0, 1.0).is_err());
        assert!(TcParams::new(0.6, 0.8, 0, -1.0).is_err());
        assert!(TcParams::from_alpha(1.2, 0).is_err());
    }
}
