//! Scalar abstraction for the dense linear-algebra layer.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Numerical tolerances used when validating density matrices and taking
/// logarithms of their spectra.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances<T> {
    /// Maximum entrywise deviation from Hermiticity.
    pub hermiticity: T,
    /// Maximum deviation of the trace from one.
    pub trace: T,
    /// Smallest admissible eigenvalue (negative slack).
    pub min_eigenvalue: T,
    /// Eigenvalues below this are treated as exact zeros before `log2`.
    pub eigen_floor: T,
    /// Trace deviation accepted by entropy evaluation.
    pub entropy_trace: T,
}

/// Density-matrix tolerances for double precision.
pub const DENSITY_TOLERANCES: Tolerances<f64> = Tolerances {
    hermiticity: 1e-12,
    trace: 1e-12,
    min_eigenvalue: -1e-10,
    eigen_floor: 1e-14,
    entropy_trace: 1e-8,
};

/// Density-matrix tolerances for single precision.
pub const DENSITY_TOLERANCES_F32: Tolerances<f32> = Tolerances {
    hermiticity: 1e-5,
    trace: 1e-5,
    min_eigenvalue: -1e-5,
    eigen_floor: 1e-7,
    entropy_trace: 1e-4,
};

/// Real floating-point scalar underlying the complex matrices.
pub trait Real:
    Float + FloatConst + FromPrimitive + Sum + Default + Debug + Display + LowerExp + Send + Sync + 'static
{
    fn tolerances() -> Tolerances<Self>;

    /// Machine-precision-scaled convergence threshold for iterative solvers.
    fn solver_eps() -> Self;

    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }
}

impl Real for f64 {
    fn tolerances() -> Tolerances<f64> {
        DENSITY_TOLERANCES
    }

    fn solver_eps() -> f64 {
        1e-15
    }
}

impl Real for f32 {
    fn tolerances() -> Tolerances<f32> {
        DENSITY_TOLERANCES_F32
    }

    fn solver_eps() -> f32 {
        1e-7
    }
}
