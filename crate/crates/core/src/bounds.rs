//! Reference entanglement measures: Wootters EoF for two qubits, exact EoF of
//! pure `2⊗d` states, and the trace-norm lower bound for mixed `2⊗d` states.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::entropy::{binary_entropy, von_neumann_entropy};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, hermitian_eigenvalues, kron, partial_transpose, realign, trace_norm, Matrix};
use crate::ComplexMatrix;

const PURE_NORM_TOL: f64 = 1e-8;

/// Inputs and value of the trace-norm EoF lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub eof_lower: f64,
    /// `‖ρ^{T_A}‖₁`.
    pub ppt_trace_norm: f64,
    /// `‖R(ρ)‖₁`.
    pub realignment_trace_norm: f64,
}

impl BoundReport {
    /// `Λ = max(‖ρ^{T_A}‖₁, ‖R(ρ)‖₁)`.
    pub fn lambda(&self) -> f64 {
        self.ppt_trace_norm.max(self.realignment_trace_norm)
    }
}

/// EoF of a state with concurrence `c`: `H₂((1 + √(1-c²))/2)`.
pub fn eof_from_concurrence(c: f64) -> f64 {
    let c = c.clamp(0.0, 1.0);
    if c == 0.0 {
        return 0.0;
    }
    binary_entropy(0.5 * (1.0 + (1.0 - c * c).max(0.0).sqrt())).unwrap_or(0.0)
}

fn spin_flip(rho: &ComplexMatrix) -> ComplexMatrix {
    let i = Complex64::new(0.0, 1.0);
    let zero = Complex64::new(0.0, 0.0);
    let sy = Matrix::new(2, 2, vec![zero, -i, i, zero]).expect("2×2");
    let yy = kron(&sy, &sy);
    &(&yy * &rho.conj()) * &yy
}

/// Eigenvalues below this are roundoff; their square roots (~1e-8) would
/// otherwise leak into the concurrence.
const SPECTRUM_FLOOR: f64 = 1e-14;

/// Two-qubit concurrence `max(0, λ₁-λ₂-λ₃-λ₄)`, with `λᵢ` the decreasing
/// square roots of the spectrum of `√ρ ρ̃ √ρ`.
pub fn concurrence(rho_ab: &ComplexMatrix) -> Result<f64> {
    if rho_ab.rows() != 4 || !rho_ab.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "concurrence needs a 4×4 matrix, got {}×{}",
            rho_ab.rows(),
            rho_ab.cols()
        )));
    }
    rho_ab.validate_density()?;
    let root = |l: f64| if l > SPECTRUM_FLOOR { l.sqrt() } else { 0.0 };
    let sqrt_rho = hermitian_eigen(rho_ab)?.map_spectrum(root);
    let r = &(&sqrt_rho * &spin_flip(rho_ab)) * &sqrt_rho;
    let herm = &r.scale(0.5) + &r.adjoint().scale(0.5);
    let mut lambdas: Vec<f64> = hermitian_eigenvalues(&herm)?.into_iter().map(root).collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

pub fn wootters_eof(rho_ab: &ComplexMatrix) -> Result<f64> {
    Ok(eof_from_concurrence(concurrence(rho_ab)?))
}

/// Entropy of entanglement of a pure state on `C² ⊗ C^d`, amplitudes ordered
/// with the `d` index fastest.
pub fn pure_state_eof_2xd(psi: &[Complex64], d: usize) -> Result<f64> {
    if d == 0 || psi.len() != 2 * d {
        return Err(Error::DimensionMismatch(format!(
            "2⊗{d} state needs {} amplitudes, got {}",
            2 * d,
            psi.len()
        )));
    }
    let norm_sq: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
    if (norm_sq - 1.0).abs() > PURE_NORM_TOL {
        return Err(Error::NotNormalized { norm_sq });
    }
    let (g, e) = psi.split_at(d);
    let dot = |u: &[Complex64], v: &[Complex64]| -> Complex64 { u.iter().zip(v).map(|(a, b)| a * b.conj()).sum() };
    let rho_a = Matrix::new(2, 2, vec![dot(g, g), dot(g, e), dot(e, g), dot(e, e)])?;
    von_neumann_entropy(&rho_a)
}

/// Trace-norm lower bound on the EoF of a `2⊗d` state:
/// `c = clamp(Λ - 1, 0, 1)` and `E ≥ H₂((1 + √(1-c²))/2)`.
pub fn caf_lower_bound(rho: &ComplexMatrix, dims: [usize; 2]) -> Result<BoundReport> {
    if dims[0] != 2 {
        return Err(Error::DimensionMismatch(format!(
            "lower bound expects a 2⊗d split, got {dims:?}"
        )));
    }
    rho.validate_density()?;
    let ppt_trace_norm = trace_norm(&partial_transpose(rho, &dims, 0)?)?;
    let realignment_trace_norm = trace_norm(&realign(rho, &dims)?)?;
    let lambda = ppt_trace_norm.max(realignment_trace_norm);
    Ok(BoundReport {
        eof_lower: eof_from_concurrence(lambda - 1.0),
        ppt_trace_norm,
        realignment_trace_norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_density_matrix, random_pure_state, random_unitary};
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn bell() -> ComplexMatrix {
        Matrix::projector(&[c(FRAC_1_SQRT_2), c(0.0), c(0.0), c(FRAC_1_SQRT_2)])
    }

    fn werner(p: f64) -> ComplexMatrix {
        let singlet = Matrix::projector(&[c(0.0), c(FRAC_1_SQRT_2), c(-FRAC_1_SQRT_2), c(0.0)]);
        &singlet.scale(p) + &Matrix::identity(4).scale((1.0 - p) / 4.0)
    }

    #[test]
    fn wootters_trivial_cases() {
        assert_abs_diff_eq!(wootters_eof(&bell()).unwrap(), 1.0, epsilon = 1e-12);
        let product = Matrix::projector(&[c(0.6), c(0.8), c(0.0), c(0.0)]);
        assert_abs_diff_eq!(wootters_eof(&product).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            wootters_eof(&Matrix::identity(4).scale(0.25)).unwrap(),
            0.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn werner_concurrence() {
        assert_abs_diff_eq!(concurrence(&werner(0.5)).unwrap(), 0.25, epsilon = 1e-12);
        let expected = binary_entropy(0.5 * (1.0 + (1.0f64 - 0.0625).sqrt())).unwrap();
        assert_abs_diff_eq!(wootters_eof(&werner(0.5)).unwrap(), expected, epsilon = 1e-12);
        assert_eq!(concurrence(&werner(0.3)).unwrap(), 0.0);
    }

    #[test]
    fn sampled_decompositions_never_beat_wootters() {
        // Any decomposition ρ = Σ pᵢ|ψᵢ⟩⟨ψᵢ| comes from a unitary mixing the
        // eigen-ensemble; its average entanglement upper-bounds the EoF.
        let rho = werner(0.5);
        let eig = hermitian_eigen(&rho).unwrap();
        let target = wootters_eof(&rho).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut best = f64::INFINITY;
        for _ in 0..300 {
            let u = random_unitary(&mut rng, 4);
            let mut avg = 0.0;
            for i in 0..4 {
                let mut psi = [c(0.0); 4];
                for k in 0..4 {
                    let w = u.get(i, k) * eig.values[k].max(0.0).sqrt();
                    for (slot, v) in psi.iter_mut().zip(eig.vector(k)) {
                        *slot += w * v;
                    }
                }
                let p: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
                if p > 1e-14 {
                    let unit: Vec<_> = psi.iter().map(|z| z / p.sqrt()).collect();
                    avg += p * pure_state_eof_2xd(&unit, 2).unwrap();
                }
            }
            best = best.min(avg);
        }
        assert!(best >= target - 1e-9);
        assert!(best < target + 0.25);
    }

    #[test]
    fn pure_state_entropy() {
        let product = [c(1.0), c(0.0), c(0.0), c(0.0), c(0.0), c(0.0)];
        assert_abs_diff_eq!(pure_state_eof_2xd(&product, 3).unwrap(), 0.0, epsilon = 1e-14);
        let s = FRAC_1_SQRT_2;
        let max = [c(s), c(0.0), c(0.0), c(0.0), c(s), c(0.0)];
        assert_abs_diff_eq!(pure_state_eof_2xd(&max, 3).unwrap(), 1.0, epsilon = 1e-14);
        assert!(pure_state_eof_2xd(&[c(1.0), c(1.0)], 1).is_err());

        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let psi = random_pure_state(&mut rng, 10);
        let rho_a = crate::linalg::partial_trace(&Matrix::projector(&psi), &[2, 5], &[0]).unwrap();
        assert_abs_diff_eq!(
            pure_state_eof_2xd(&psi, 5).unwrap(),
            von_neumann_entropy(&rho_a).unwrap(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn lower_bound_cases() {
        let report = caf_lower_bound(&bell(), [2, 2]).unwrap();
        assert_abs_diff_eq!(report.ppt_trace_norm, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(report.eof_lower, 1.0, epsilon = 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let rho_a = random_density_matrix(&mut rng, 2);
        let rho_c = random_density_matrix(&mut rng, 3);
        let report = caf_lower_bound(&kron(&rho_a, &rho_c), [2, 3]).unwrap();
        assert_eq!(report.eof_lower, 0.0);
        assert!(report.lambda() <= 1.0 + 1e-10);
    }

    #[test]
    fn lower_bound_below_pure_state_eof() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for d in 2..6 {
            for _ in 0..20 {
                let psi = random_pure_state(&mut rng, 2 * d);
                let bound = caf_lower_bound(&Matrix::projector(&psi), [2, d]).unwrap();
                assert!(bound.eof_lower <= pure_state_eof_2xd(&psi, d).unwrap() + 1e-9);
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(concurrence(&Matrix::identity(3).scale(1.0 / 3.0)).is_err());
        assert!(caf_lower_bound(&Matrix::identity(6).scale(1.0 / 6.0), [3, 2]).is_err());
        assert!(wootters_eof(&Matrix::identity(4)).is_err());
    }
}
