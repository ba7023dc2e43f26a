//! Fourth-order Runge–Kutta integrators used to check the closed forms.

use num_complex::Complex64;

use super::reservoir::ReservoirParams;
use super::tavis_cummings::{TcAmplitudes, TcParams};
use crate::error::{invalid, Error, Result};
use crate::linalg::Matrix;
use crate::ComplexMatrix;

/// Largest allowed step in units of the inverse rate.
pub const MAX_STEP: f64 = 1e-3;

/// Trace (Lindblad) or norm (Schrödinger) drift that aborts integration.
pub const DRIFT_TOL: f64 = 1e-8;

/// Samples `states[k]` taken at `times[k]`, starting at `t = 0`.
#[derive(Clone, Debug)]
pub struct Trajectory<S> {
    pub times: Vec<f64>,
    pub states: Vec<S>,
}

impl<S> Trajectory<S> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &S)> {
        self.times.iter().copied().zip(self.states.iter())
    }
}

/// One classical RK4 step of `ẏ = f(t, y)`.
pub fn rk4_step<F>(f: F, t: f64, y: &[Complex64], dt: f64) -> Vec<Complex64>
where
    F: Fn(f64, &[Complex64]) -> Vec<Complex64>,
{
    let axpy = |a: f64, k: &[Complex64]| -> Vec<Complex64> { y.iter().zip(k).map(|(y, k)| y + k * a).collect() };
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * dt, &axpy(0.5 * dt, &k1));
    let k3 = f(t + 0.5 * dt, &axpy(0.5 * dt, &k2));
    let k4 = f(t + dt, &axpy(dt, &k3));
    (0..y.len())
        .map(|i| y[i] + (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (dt / 6.0))
        .collect()
}

/// Splits `[0, t_end]` into equal steps no longer than `dt`.
fn step_grid(t_end: f64, dt: f64) -> Result<(usize, f64)> {
    if !(t_end >= 0.0 && t_end.is_finite()) {
        return Err(invalid(
            "t_end",
            format!("must be finite and non-negative, got {t_end}"),
        ));
    }
    if !(dt > 0.0) {
        return Err(invalid("dt", format!("must be positive, got {dt}")));
    }
    let steps = (t_end / dt).ceil() as usize;
    Ok(if steps == 0 {
        (0, 0.0)
    } else {
        (steps, t_end / steps as f64)
    })
}

/// Integrates the collective-decay master equation
/// `ρ̇ = (γ/2)(2JρJ† - J†Jρ - ρJ†J)`, `J = σ_A + σ_B`, from
/// `(α|gg⟩ + β|ee⟩)(α⟨gg| + β⟨ee|)` and returns `ρ_AB` after every step.
pub fn lindblad_oracle(p: &ReservoirParams, t_end: f64, dt: f64) -> Result<Trajectory<ComplexMatrix>> {
    if p.gamma > 0.0 && dt > MAX_STEP / p.gamma * (1.0 + 1e-12) {
        return Err(invalid("dt", format!("step {dt} exceeds {MAX_STEP}/γ")));
    }
    let (steps, h) = step_grid(t_end, dt)?;

    let lower = Matrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0])?;
    let id = Matrix::identity(2);
    let j = &crate::linalg::kron(&lower, &id) + &crate::linalg::kron(&id, &lower);
    let jd = j.adjoint();
    let jdj = &jd * &j;
    let half_gamma = 0.5 * p.gamma;
    let rhs = |_t: f64, y: &[Complex64]| -> Vec<Complex64> {
        let rho = Matrix::new(4, 4, y.to_vec()).expect("4×4 state");
        let jump = &(&j * &rho) * &jd;
        let anti = &(&jdj * &rho) + &(&rho * &jdj);
        (&jump.scale(2.0) - &anti).scale(half_gamma).data().to_vec()
    };

    let mut psi = vec![Complex64::new(0.0, 0.0); 4];
    psi[0] = Complex64::new(p.alpha, 0.0);
    psi[3] = Complex64::new(p.beta, 0.0);
    let rho0 = Matrix::projector(&psi);
    let trace0 = rho0.trace().re;

    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(0.0);
    states.push(rho0.clone());
    let mut y = rho0.data().to_vec();
    for k in 0..steps {
        let t = k as f64 * h;
        y = rk4_step(rhs, t, &y, h);
        let rho = Matrix::new(4, 4, y.clone())?;
        let drift = (rho.trace().re - trace0).abs();
        if drift > DRIFT_TOL {
            return Err(Error::IntegratorDrift { drift });
        }
        times.push((k + 1) as f64 * h);
        states.push(rho);
    }
    Ok(Trajectory { times, states })
}

/// Tavis–Cummings Hamiltonian restricted to
/// `|gg,n+2⟩, |+,n+1⟩, |ee,n⟩, |gg,n⟩, |+,n-1⟩, |ee,n-2⟩`.
pub fn tc_subspace_hamiltonian(p: &TcParams) -> [[f64; 6]; 6] {
    let n = p.n as f64;
    let coupling = |k: f64| if k > 0.0 { p.g * (2.0 * k).sqrt() } else { 0.0 };
    let mut h = [[0.0; 6]; 6];
    for (a, b, v) in [
        (0, 1, coupling(n + 2.0)),
        (1, 2, coupling(n + 1.0)),
        (3, 4, coupling(n)),
        (4, 5, coupling(n - 1.0)),
    ] {
        h[a][b] = v;
        h[b][a] = v;
    }
    h
}

/// Integrates `iċ = Hc` from `c₃ = β`, `c₄ = α` and returns the amplitudes
/// after every step.
pub fn schrodinger_oracle_tc(p: &TcParams, t_end: f64, dt: f64) -> Result<Trajectory<TcAmplitudes>> {
    if p.g > 0.0 && dt > MAX_STEP / p.g * (1.0 + 1e-12) {
        return Err(invalid("dt", format!("step {dt} exceeds {MAX_STEP}/g")));
    }
    let (steps, h) = step_grid(t_end, dt)?;
    let ham = tc_subspace_hamiltonian(p);
    let rhs = |_t: f64, c: &[Complex64]| -> Vec<Complex64> {
        (0..6)
            .map(|i| {
                let hc: Complex64 = (0..6).map(|j| c[j] * ham[i][j]).sum();
                Complex64::new(hc.im, -hc.re)
            })
            .collect()
    };

    let mut c = [Complex64::new(0.0, 0.0); 6];
    c[2] = Complex64::new(p.beta, 0.0);
    c[3] = Complex64::new(p.alpha, 0.0);
    let start = TcAmplitudes { c };

    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(0.0);
    states.push(start);
    let mut y = c.to_vec();
    for k in 0..steps {
        y = rk4_step(rhs, k as f64 * h, &y, h);
        let amps = TcAmplitudes {
            c: y.clone().try_into().expect("six amplitudes"),
        };
        let drift = (amps.norm_sq() - 1.0).abs();
        if drift > DRIFT_TOL {
            return Err(Error::IntegratorDrift { drift });
        }
        times.push((k + 1) as f64 * h);
        states.push(amps);
    }
    Ok(Trajectory { times, states })
}
