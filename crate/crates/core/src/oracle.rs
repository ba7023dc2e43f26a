//! Brute-force minimization of the conditional entropy `S(ρ_AB | {Π})` over
//! all projective measurements on qubit `B`.
//!
//! The search runs a deterministic polar × azimuth grid over the upper
//! hemisphere (antipodal directions give the same measurement), then
//! refines the best grid points with Nelder–Mead restarts. It works on any
//! two-qubit density matrix and makes no use of X structure.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::entropy::von_neumann_entropy;
use crate::error::{invalid, Result};
use crate::linalg::{kron, partial_trace, Matrix};
use crate::xstate::{theta_entropy, BlochVector, MeasurementEnsemble, MIN_OUTCOME_PROBABILITY};
use crate::ComplexMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    /// Polar grid points on `[0, π/2]`, both ends included.
    pub polar_points: usize,
    /// Azimuth grid points on `[0, 2π)`.
    pub azimuth_points: usize,
    /// Maximum number of Nelder–Mead restarts from the incumbent.
    pub refine_iters: usize,
    /// Stop restarting once a restart improves by less than this (bits).
    pub tol: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            polar_points: 64,
            azimuth_points: 128,
            refine_iters: 60,
            tol: 1e-10,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.polar_points < 8 || self.azimuth_points < 8 {
            return Err(invalid("coarse_grid", "grids need at least 8 points per angle"));
        }
        if !(self.tol > 0.0) {
            return Err(invalid("tol", "tolerance must be positive"));
        }
        Ok(())
    }
}

/// Conditional entropy built from the explicit projectors: `ρ_A^x =
/// Tr_B[(I⊗Π_x) ρ (I⊗Π_x)] / p_x`.
pub fn conditional_entropy_generic(
    rho_ab: &ComplexMatrix,
    direction: &BlochVector,
) -> Result<(f64, MeasurementEnsemble)> {
    let id = Matrix::identity(2);
    let outcome = |sign: f64| -> Result<ComplexMatrix> {
        let m = kron(&id, &direction.projector(sign));
        let projected = &(&m * rho_ab) * &m;
        partial_trace(&projected, &[2, 2], &[0])
    };
    let ensemble = MeasurementEnsemble::from_unnormalized(outcome(1.0)?, outcome(-1.0)?);
    let mut value = 0.0;
    for (p, rho) in [(ensemble.p0, &ensemble.rho0), (ensemble.p1, &ensemble.rho1)] {
        if p >= MIN_OUTCOME_PROBABILITY {
            value += p * von_neumann_entropy(rho)?;
        }
    }
    Ok((value, ensemble))
}

/// `ρ_A` and the Pauli moments `T_k = Tr_B[(I⊗σ_k) ρ]`, from which the
/// unnormalized conditional state for outcome `±` is `(ρ_A ± Σ n_k T_k)/2`.
#[derive(Clone, Debug)]
pub struct ConditionalLandscape {
    rho_a: [Complex64; 4],
    moments: [[Complex64; 4]; 3],
}

impl ConditionalLandscape {
    pub fn new(rho_ab: &ComplexMatrix) -> Result<Self> {
        rho_ab.validate_density()?;
        let reduce = |op: &ComplexMatrix| -> Result<[Complex64; 4]> {
            let m = partial_trace(&(&kron(&Matrix::identity(2), op) * rho_ab), &[2, 2], &[0])?;
            Ok([m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1)])
        };
        let (o, l, i) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::i());
        let sx = Matrix::new(2, 2, vec![o, l, l, o])?;
        let sy = Matrix::new(2, 2, vec![o, -i, i, o])?;
        let sz = Matrix::new(2, 2, vec![l, o, o, -l])?;
        Ok(Self {
            rho_a: reduce(&Matrix::identity(2))?,
            moments: [reduce(&sx)?, reduce(&sy)?, reduce(&sz)?],
        })
    }

    pub fn value(&self, direction: &BlochVector) -> f64 {
        let n = direction.components();
        let mut total = 0.0;
        for sign in [1.0, -1.0] {
            let e = |k: usize| {
                let mut z = self.rho_a[k];
                for (m, nk) in self.moments.iter().zip(n) {
                    z += m[k] * (sign * nk);
                }
                z * 0.5
            };
            let (a, b, d) = (e(0).re, e(1), e(3).re);
            let p = a + d;
            if p < MIN_OUTCOME_PROBABILITY {
                continue;
            }
            let theta = (((a - d) / p).powi(2) + 4.0 * b.norm_sqr() / (p * p)).sqrt();
            total += p * theta_entropy(theta);
        }
        total
    }

    fn at(&self, angles: [f64; 2]) -> f64 {
        self.value(&BlochVector::from_angles(angles[0], angles[1]))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleMinimum {
    pub value: f64,
    pub direction: BlochVector,
    /// Best value seen on the coarse grid.
    pub coarse_value: f64,
}

/// Global minimum of the conditional entropy over Bloch directions.
pub fn minimize_conditional_entropy(rho_ab: &ComplexMatrix, cfg: &OptimizerConfig) -> Result<OracleMinimum> {
    cfg.validate()?;
    let landscape = ConditionalLandscape::new(rho_ab)?;

    let np = cfg.polar_points;
    let na = cfg.azimuth_points;
    let mut grid: Vec<(f64, [f64; 2])> = Vec::with_capacity(np * na);
    for ip in 0..np {
        let polar = FRAC_PI_2 * ip as f64 / (np - 1) as f64;
        let azimuths = if ip == 0 { 1 } else { na };
        for ia in 0..azimuths {
            let azimuth = TAU * ia as f64 / na as f64;
            let angles = [polar, azimuth];
            grid.push((landscape.at(angles), angles));
        }
    }
    grid.sort_by(|a, b| a.0.total_cmp(&b.0));
    let coarse = grid[0];

    // Refine from the few best grid points that are not neighbours.
    let spacing = [FRAC_PI_2 / (np - 1) as f64, TAU / na as f64];
    let mut starts: Vec<[f64; 2]> = Vec::new();
    for &(_, angles) in &grid {
        if starts.len() == 3 {
            break;
        }
        let separated = starts.iter().all(|s| {
            let dir_a = BlochVector::from_angles(s[0], s[1]).components();
            let dir_b = BlochVector::from_angles(angles[0], angles[1]).components();
            let dot: f64 = dir_a.iter().zip(dir_b).map(|(x, y)| x * y).sum();
            dot.abs() < (2.0 * spacing[0]).cos()
        });
        if separated {
            starts.push(angles);
        }
    }

    let mut best = coarse;
    for start in starts {
        let mut incumbent = (landscape.at(start), start);
        let mut step = [2.0 * spacing[0], 2.0 * spacing[1]];
        for _ in 0..cfg.refine_iters {
            let candidate = nelder_mead(|a| landscape.at(a), incumbent.1, step, cfg.tol * 1e-3);
            let improvement = incumbent.0 - candidate.0;
            if candidate.0 < incumbent.0 {
                incumbent = candidate;
            }
            if improvement < cfg.tol {
                break;
            }
            step = [step[0] * 0.5, step[1] * 0.5];
        }
        if incumbent.0 < best.0 {
            best = incumbent;
        }
    }

    Ok(OracleMinimum {
        value: best.0,
        direction: BlochVector::from_angles(best.1[0], best.1[1]),
        coarse_value: coarse.0,
    })
}

const NM_MAX_ITERS: usize = 400;

/// Two-parameter Nelder–Mead; returns the best vertex.
fn nelder_mead(f: impl Fn([f64; 2]) -> f64, start: [f64; 2], step: [f64; 2], ftol: f64) -> (f64, [f64; 2]) {
    let mut simplex: Vec<(f64, [f64; 2])> = [start, [start[0] + step[0], start[1]], [start[0], start[1] + step[1]]]
        .into_iter()
        .map(|p| (f(p), p))
        .collect();

    let lerp = |a: [f64; 2], b: [f64; 2], t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];

    for _ in 0..NM_MAX_ITERS {
        simplex.sort_by(|a, b| a.0.total_cmp(&b.0));
        let size = (1..3)
            .map(|k| (simplex[k].1[0] - simplex[0].1[0]).abs() + (simplex[k].1[1] - simplex[0].1[1]).abs())
            .fold(0.0, f64::max);
        if simplex[2].0 - simplex[0].0 <= ftol && size < 1e-12 {
            break;
        }
        let centroid = lerp(simplex[0].1, simplex[1].1, 0.5);
        let worst = simplex[2];
        let reflected = lerp(centroid, worst.1, -1.0);
        let fr = f(reflected);
        if fr < simplex[0].0 {
            let expanded = lerp(centroid, worst.1, -2.0);
            let fe = f(expanded);
            simplex[2] = if fe < fr { (fe, expanded) } else { (fr, reflected) };
        } else if fr < simplex[1].0 {
            simplex[2] = (fr, reflected);
        } else {
            let contracted = if fr < worst.0 {
                lerp(centroid, reflected, 0.5)
            } else {
                lerp(centroid, worst.1, 0.5)
            };
            let fc = f(contracted);
            if fc < worst.0.min(fr) {
                simplex[2] = (fc, contracted);
            } else {
                let best = simplex[0].1;
                for vertex in simplex.iter_mut().skip(1) {
                    let p = lerp(best, vertex.1, 0.5);
                    *vertex = (f(p), p);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.0.total_cmp(&b.0));
    simplex[0]
}
