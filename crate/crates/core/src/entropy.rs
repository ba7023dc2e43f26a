//! Entropies in bits.

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, Matrix};
use crate::scalar::Real;

/// Shannon entropy of a spectrum, with entries below `floor` dropped.
pub fn shannon_entropy<T: Real>(probs: &[T], floor: T) -> T {
    probs
        .iter()
        .filter(|&&p| p > floor)
        .map(|&p| -p * p.log2())
        .fold(T::zero(), |acc, h| acc + h)
}

/// `H₂(p) = -p log₂ p - (1-p) log₂ (1-p)`.
///
/// Values within `1e-12` outside `[0, 1]` are clamped.
pub fn binary_entropy<T: Real>(p: T) -> Result<T> {
    let slack = T::lit(1e-12);
    if !(p >= -slack && p <= T::one() + slack) {
        return Err(Error::ProbabilityOutOfRange(p.to_f64().unwrap_or(f64::NAN)));
    }
    let p = p.max(T::zero()).min(T::one());
    let floor = T::tolerances().eigen_floor;
    Ok(shannon_entropy(&[p, T::one() - p], floor))
}

/// `S(ρ) = -Tr ρ log₂ ρ`.
pub fn von_neumann_entropy<T: Real>(rho: &Matrix<T>) -> Result<T> {
    let tol = T::tolerances();
    let tr = rho.trace();
    if (tr.re - T::one()).abs() > tol.entropy_trace || tr.im.abs() > tol.entropy_trace {
        return Err(Error::InvalidDensityMatrix(format!(
            "entropy of matrix with trace {} + {}i",
            tr.re, tr.im
        )));
    }
    let eig = hermitian_eigenvalues(rho)?;
    Ok(shannon_entropy(&eig, tol.eigen_floor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn binary_entropy_values() {
        assert_abs_diff_eq!(binary_entropy(0.5).unwrap(), 1.0, epsilon = 1e-15);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0 + 5e-13).unwrap(), 0.0);
        // -0.25 log2 0.25 - 0.75 log2 0.75 = 0.5 + 0.75 (2 - log2 3)
        let expected = 0.5 + 0.75 * (2.0 - 3f64.log2());
        assert_abs_diff_eq!(binary_entropy(0.25).unwrap(), expected, epsilon = 1e-15);
        assert_abs_diff_eq!(expected, 0.811_278_124_459_132_8, epsilon = 1e-15);
        assert!(binary_entropy(1.1).is_err());
        assert!(binary_entropy(-1e-9).is_err());
        assert!(binary_entropy(f64::NAN).is_err());
    }

    #[test]
    fn von_neumann_values() {
        let mixed = Matrix::<f64>::identity(2).scale(0.5);
        assert_abs_diff_eq!(von_neumann_entropy(&mixed).unwrap(), 1.0, epsilon = 1e-15);
        let pure = Matrix::<f64>::diagonal(&[0.0, 1.0, 0.0]);
        assert_eq!(von_neumann_entropy(&pure).unwrap(), 0.0);
        let d = Matrix::<f64>::diagonal(&[0.25, 0.75]);
        assert_abs_diff_eq!(
            von_neumann_entropy(&d).unwrap(),
            binary_entropy(0.25).unwrap(),
            epsilon = 1e-15
        );
        assert!(von_neumann_entropy(&Matrix::<f64>::diagonal(&[0.5, 0.6])).is_err());
    }

    #[test]
    fn single_precision_entropy() {
        let mixed = Matrix::<f32>::identity(4).scale(0.25);
        assert!((von_neumann_entropy(&mixed).unwrap() - 2.0).abs() < 1e-6);
    }
}
