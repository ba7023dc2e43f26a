//! Two-qubit X states and their conditional entropies under projective
//! measurements on qubit `B`.
//!
//! Basis ordering is `|gg⟩, |ge⟩, |eg⟩, |ee⟩ ≡ |0⟩..|3⟩` with `A` the first
//! (most significant) qubit. An X state has non-zero entries only on the
//! diagonal and the anti-diagonal.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::entropy::{binary_entropy, shannon_entropy};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::state::{inner, TripartiteState};
use crate::{ComplexMatrix, DENSITY_TOLERANCES};

/// Slack allowed on populations, normalization and positivity.
pub const XSTATE_TOL: f64 = 1e-10;
/// Candidate entropies closer than this are ties, resolved by list order.
pub const TIE_TOL: f64 = 1e-12;
/// Outcomes less likely than this contribute nothing to the conditional entropy.
pub const MIN_OUTCOME_PROBABILITY: f64 = 1e-14;

/// Seven real parameters of a two-qubit X state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XState {
    rho00: f64,
    rho11: f64,
    rho22: f64,
    rho33: f64,
    rho03: Complex64,
    rho12: Complex64,
}

impl XState {
    pub fn new(populations: [f64; 4], rho03: Complex64, rho12: Complex64) -> Result<Self> {
        let [rho00, rho11, rho22, rho33] = populations;
        let x = Self {
            rho00,
            rho11,
            rho22,
            rho33,
            rho03,
            rho12,
        };
        x.validate()?;
        Ok(x)
    }

    pub fn validate(&self) -> Result<()> {
        let pops = self.populations();
        if pops.iter().any(|p| !p.is_finite() || *p < -XSTATE_TOL) {
            return Err(Error::InvalidXState(format!("negative population in {pops:?}")));
        }
        let total: f64 = pops.iter().sum();
        if (total - 1.0).abs() > XSTATE_TOL {
            return Err(Error::InvalidXState(format!("populations sum to {total}")));
        }
        if self.rho03.norm_sqr() > self.rho00 * self.rho33 + XSTATE_TOL {
            return Err(Error::InvalidXState("|rho03|² exceeds rho00·rho33".into()));
        }
        if self.rho12.norm_sqr() > self.rho11 * self.rho22 + XSTATE_TOL {
            return Err(Error::InvalidXState("|rho12|² exceeds rho11·rho22".into()));
        }
        Ok(())
    }

    /// Reads the X entries of a 4x4 matrix, rejecting any off-X entry above
    /// [`XSTATE_TOL`].
    pub fn from_matrix(m: &ComplexMatrix) -> Result<Self> {
        if m.rows() != 4 || m.cols() != 4 {
            return Err(Error::DimensionMismatch(format!(
                "X state needs a 4x4 matrix, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                if i != j && i + j != 3 {
                    worst = worst.max(m.get(i, j).norm());
                }
            }
        }
        if worst > XSTATE_TOL {
            return Err(Error::XFormViolation { overlap: worst });
        }
        let hermitian_dev = m.hermiticity_deviation();
        if hermitian_dev > DENSITY_TOLERANCES.hermiticity.max(XSTATE_TOL) {
            return Err(Error::NotHermitian {
                deviation: hermitian_dev,
            });
        }
        Self::new(
            [m.get(0, 0).re, m.get(1, 1).re, m.get(2, 2).re, m.get(3, 3).re],
            m.get(0, 3),
            m.get(1, 2),
        )
    }

    pub fn rho00(&self) -> f64 {
        self.rho00
    }
    pub fn rho11(&self) -> f64 {
        self.rho11
    }
    pub fn rho22(&self) -> f64 {
        self.rho22
    }
    pub fn rho33(&self) -> f64 {
        self.rho33
    }
    pub fn rho03(&self) -> Complex64 {
        self.rho03
    }
    pub fn rho12(&self) -> Complex64 {
        self.rho12
    }

    pub fn populations(&self) -> [f64; 4] {
        [self.rho00, self.rho11, self.rho22, self.rho33]
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let z = Complex64::new(0.0, 0.0);
        let r = |x: f64| Complex64::new(x, 0.0);
        Matrix::new(
            4,
            4,
            vec![
                r(self.rho00),
                z,
                z,
                self.rho03,
                z,
                r(self.rho11),
                self.rho12,
                z,
                z,
                self.rho12.conj(),
                r(self.rho22),
                z,
                self.rho03.conj(),
                z,
                z,
                r(self.rho33),
            ],
        )
        .expect("4x4 layout")
    }

    /// Applies `σx ⊗ σx`: swaps `gg↔ee`, `ge↔eg` and conjugates the coherences.
    pub fn flipped(&self) -> Self {
        Self {
            rho00: self.rho33,
            rho11: self.rho22,
            rho22: self.rho11,
            rho33: self.rho00,
            rho03: self.rho03.conj(),
            rho12: self.rho12.conj(),
        }
    }

    /// Reduced state of `A` (diagonal for an X state).
    pub fn rho_a(&self) -> [f64; 2] {
        [self.rho00 + self.rho11, self.rho22 + self.rho33]
    }

    /// Reduced state of `B` (diagonal for an X state).
    pub fn rho_b(&self) -> [f64; 2] {
        [self.rho00 + self.rho22, self.rho11 + self.rho33]
    }

    pub fn entropy_a(&self) -> f64 {
        shannon_entropy(&self.rho_a(), DENSITY_TOLERANCES.eigen_floor)
    }

    pub fn entropy_b(&self) -> f64 {
        shannon_entropy(&self.rho_b(), DENSITY_TOLERANCES.eigen_floor)
    }

    /// `S(ρ_AB)` from the two 2x2 blocks `{0,3}` and `{1,2}`.
    pub fn entropy_ab(&self) -> f64 {
        let block = |a: f64, d: f64, b: Complex64| {
            let mean = 0.5 * (a + d);
            let gap = (0.25 * (a - d).powi(2) + b.norm_sqr()).sqrt();
            [mean - gap, mean + gap]
        };
        let [a0, a1] = block(self.rho00, self.rho33, self.rho03);
        let [b0, b1] = block(self.rho11, self.rho22, self.rho12);
        shannon_entropy(&[a0, a1, b0, b1], DENSITY_TOLERANCES.eigen_floor)
    }

    /// Quantum mutual information `S_A + S_B - S_AB`.
    pub fn mutual_information(&self) -> f64 {
        self.entropy_a() + self.entropy_b() - self.entropy_ab()
    }
}

/// Projects the `AB` reduction of `psi` onto X form.
///
/// The `C`-blocks `c_gg|ψ₁⟩`, `c_ge|ψ₂⟩`, `c_eg|ψ₃⟩`, `c_ee|ψ₄⟩` must satisfy
/// `⟨ψ₁|ψ₂⟩ = ⟨ψ₁|ψ₃⟩ = ⟨ψ₄|ψ₂⟩ = ⟨ψ₄|ψ₃⟩ = 0`; the largest weighted overlap
/// is reported otherwise.
pub fn xstate_reduction(psi: &TripartiteState) -> Result<XState> {
    let [gg, ge, eg, ee] = psi.blocks();
    let overlap = [(gg, ge), (gg, eg), (ee, ge), (ee, eg)]
        .iter()
        .map(|(u, v)| inner(u, v).norm())
        .fold(0.0f64, f64::max);
    if overlap > XSTATE_TOL {
        return Err(Error::XFormViolation { overlap });
    }
    XState::from_matrix(&psi.rho_ab())
}

/// Unit vector on the Bloch sphere selecting the projectors `(I ± n·σ)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    x: f64,
    y: f64,
    z: f64,
}

impl BlochVector {
    pub const X: Self = Self { x: 1.0, y: 0.0, z: 0.0 };
    pub const Y: Self = Self { x: 0.0, y: 1.0, z: 0.0 };
    pub const Z: Self = Self { x: 0.0, y: 0.0, z: 1.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !((norm - 1.0).abs() <= XSTATE_TOL) {
            return Err(Error::NotUnitVector { norm });
        }
        Ok(Self { x, y, z })
    }

    pub fn from_angles(polar: f64, azimuth: f64) -> Self {
        Self {
            x: polar.sin() * azimuth.cos(),
            y: polar.sin() * azimuth.sin(),
            z: polar.cos(),
        }
    }

    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn polar(&self) -> f64 {
        self.z.clamp(-1.0, 1.0).acos()
    }

    pub fn azimuth(&self) -> f64 {
        self.y.atan2(self.x)
    }

    /// `2x2` projector for outcome `sign = ±1`.
    pub fn projector(&self, sign: f64) -> ComplexMatrix {
        let h = 0.5 * sign;
        Matrix::new(
            2,
            2,
            vec![
                Complex64::new(0.5 + h * self.z, 0.0),
                Complex64::new(h * self.x, -h * self.y),
                Complex64::new(h * self.x, h * self.y),
                Complex64::new(0.5 - h * self.z, 0.0),
            ],
        )
        .expect("2x2 layout")
    }
}

/// Post-measurement states of `A` after a two-outcome measurement on `B`.
#[derive(Clone, Debug)]
pub struct MeasurementEnsemble {
    pub p0: f64,
    pub p1: f64,
    pub rho0: ComplexMatrix,
    pub rho1: ComplexMatrix,
}

impl MeasurementEnsemble {
    /// Builds the ensemble from the two unnormalized conditional states.
    pub(crate) fn from_unnormalized(sigma0: ComplexMatrix, sigma1: ComplexMatrix) -> Self {
        let normalize = |s: ComplexMatrix| {
            let p = s.trace().re.max(0.0);
            if p < MIN_OUTCOME_PROBABILITY {
                (p, Matrix::identity(2).scale(0.5))
            } else {
                (p, s.scale(1.0 / p))
            }
        };
        let (p0, rho0) = normalize(sigma0);
        let (p1, rho1) = normalize(sigma1);
        Self { p0, p1, rho0, rho1 }
    }

    /// Bloch lengths `(θ, θ')` of the two conditional states.
    pub fn thetas(&self) -> (f64, f64) {
        (bloch_length(&self.rho0), bloch_length(&self.rho1))
    }

    /// `p₀ S(ρ₀) + p₁ S(ρ₁)`, skipping negligible outcomes.
    pub fn conditional_entropy(&self) -> f64 {
        let (t0, t1) = self.thetas();
        let term = |p: f64, theta: f64| {
            if p < MIN_OUTCOME_PROBABILITY {
                0.0
            } else {
                p * theta_entropy(theta)
            }
        };
        term(self.p0, t0) + term(self.p1, t1)
    }
}

fn bloch_length(rho: &ComplexMatrix) -> f64 {
    let a = rho.get(0, 0).re;
    let d = rho.get(1, 1).re;
    ((a - d).powi(2) + 4.0 * rho.get(0, 1).norm_sqr()).sqrt()
}

/// Entropy of a qubit state with Bloch length `θ`: `H₂((1+θ)/2)`.
pub fn theta_entropy(theta: f64) -> f64 {
    binary_entropy(0.5 * (1.0 + theta.min(1.0))).unwrap_or(0.0)
}

/// Conditional entropy of `A` given a projective measurement of `B` along
/// `direction`, using the X-state structure directly.
pub fn conditional_entropy_for_measurement(x: &XState, direction: &BlochVector) -> Result<(f64, MeasurementEnsemble)> {
    x.validate()?;
    let [nx, ny, nz] = direction.components();
    let norm = (nx * nx + ny * ny + nz * nz).sqrt();
    if (norm - 1.0).abs() > XSTATE_TOL {
        return Err(Error::NotUnitVector { norm });
    }
    let outcome = |sign: f64| {
        let pi_gg = 0.5 * (1.0 + sign * nz);
        let pi_ee = 0.5 * (1.0 - sign * nz);
        let pi_ge = Complex64::new(nx, -ny) * (0.5 * sign);
        let pi_eg = Complex64::new(nx, ny) * (0.5 * sign);
        let a_gg = x.rho00 * pi_gg + x.rho11 * pi_ee;
        let a_ee = x.rho22 * pi_gg + x.rho33 * pi_ee;
        let a_ge = x.rho03 * pi_eg + x.rho12 * pi_ge;
        Matrix::new(2, 2, vec![a_gg.into(), a_ge, a_ge.conj(), a_ee.into()]).expect("2x2 layout")
    };
    let ensemble = MeasurementEnsemble::from_unnormalized(outcome(1.0), outcome(-1.0));
    Ok((ensemble.conditional_entropy(), ensemble))
}

/// One extremal measurement in closed form: Bloch lengths of the two
/// conditional states of `A` and the probability of the first outcome.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaCandidate {
    pub label: String,
    pub theta: f64,
    pub theta_prime: f64,
    pub p0: f64,
}

impl ThetaCandidate {
    pub fn new(label: impl Into<String>, theta: f64, theta_prime: f64, p0: f64) -> Self {
        Self {
            label: label.into(),
            theta,
            theta_prime,
            p0,
        }
    }

    pub fn from_ensemble(label: impl Into<String>, ensemble: &MeasurementEnsemble) -> Self {
        let (theta, theta_prime) = ensemble.thetas();
        Self::new(label, theta, theta_prime, ensemble.p0)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| (0.0..=1.0 + XSTATE_TOL).contains(&v);
        if !ok(self.theta) || !ok(self.theta_prime) {
            return Err(Error::InvalidParameter {
                field: "theta",
                reason: format!(
                    "candidate `{}` has θ={} θ'={} outside [0, 1]",
                    self.label, self.theta, self.theta_prime
                ),
            });
        }
        if !(-XSTATE_TOL..=1.0 + XSTATE_TOL).contains(&self.p0) {
            return Err(Error::ProbabilityOutOfRange(self.p0));
        }
        Ok(())
    }

    /// `p₀ H₂((1+θ)/2) + (1-p₀) H₂((1+θ')/2)`.
    pub fn entropy(&self) -> Result<f64> {
        self.validate()?;
        let p0 = self.p0.clamp(0.0, 1.0);
        Ok(p0 * theta_entropy(self.theta) + (1.0 - p0) * theta_entropy(self.theta_prime))
    }
}

/// Closed-form candidates for the standard measurement axes `z`, `x`, `y`.
///
/// For an X state the equatorial measurements split `B` evenly, so their
/// two conditional states share the Bloch length
/// `√((ρ00+ρ11-ρ22-ρ33)² + 4|ρ03 ± ρ12|²)` (`+` for `x`, `-` for `y`).
pub fn measurement_candidates(x: &XState) -> Vec<ThetaCandidate> {
    let ratio = |a: f64, b: f64| {
        let s = a + b;
        if s <= MIN_OUTCOME_PROBABILITY {
            1.0
        } else {
            (a - b).abs() / s
        }
    };
    let pz = x.rho00 + x.rho22;
    let z = ThetaCandidate::new("z", ratio(x.rho00, x.rho22), ratio(x.rho33, x.rho11), pz);
    let diag = x.rho00 + x.rho11 - x.rho22 - x.rho33;
    let equatorial = |c: Complex64| (diag * diag + 4.0 * c.norm_sqr()).sqrt();
    let tx = equatorial(x.rho03 + x.rho12);
    let ty = equatorial(x.rho03 - x.rho12);
    vec![
        z,
        ThetaCandidate::new("x", tx, tx, 0.5),
        ThetaCandidate::new("y", ty, ty, 0.5),
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateEntropy {
    pub label: String,
    pub value: f64,
}

/// Minimum over a candidate list, with the winning label.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidateMinimum {
    pub value: f64,
    pub winner: String,
    pub entropies: Vec<CandidateEntropy>,
}

/// Evaluates every candidate and returns the minimum. Ties within
/// [`TIE_TOL`] go to the earlier candidate.
pub fn minimize_candidates(candidates: &[ThetaCandidate]) -> Result<CandidateMinimum> {
    if candidates.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    let entropies = candidates
        .iter()
        .map(|c| {
            Ok(CandidateEntropy {
                label: c.label.clone(),
                value: c.entropy()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut best = 0;
    for (i, e) in entropies.iter().enumerate().skip(1) {
        if e.value < entropies[best].value - TIE_TOL {
            best = i;
        }
    }
    Ok(CandidateMinimum {
        value: entropies[best].value,
        winner: entropies[best].label.clone(),
        entropies,
    })
}

/// Entanglement of formation of the complementary `AC` pair as the minimum
/// conditional entropy over `candidates`.
pub fn eof_xstate(x: &XState, candidates: &[ThetaCandidate]) -> Result<(f64, String)> {
    x.validate()?;
    let m = minimize_candidates(candidates)?;
    Ok((m.value, m.winner))
}
