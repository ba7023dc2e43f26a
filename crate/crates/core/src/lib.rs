//! Entanglement of formation for `2⊗d` mixed states obtained as reductions of
//! `2⊗2⊗d` pure states, computed from the monogamy relation
//! `E_AC + J←_AB = S_A`.
//!
//! The linear-algebra and entropy layer is generic over [`Real`] (`f32` or
//! `f64`); the physics layers work in `f64` through the aliases below.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod correlations;
pub mod crossover;
pub mod entropy;
pub mod error;
pub mod linalg;
pub mod models;
pub mod oracle;
pub mod random;
pub mod scalar;
pub mod state;
pub mod sweep;
pub mod xstate;

pub use num_complex::{Complex, Complex64};

pub use error::{Error, Result};
pub use linalg::Matrix;
pub use scalar::{Real, Tolerances, DENSITY_TOLERANCES, DENSITY_TOLERANCES_F32};

pub type C64 = Complex64;
pub type C32 = Complex<f32>;
pub type ComplexMatrix = Matrix<f64>;
pub type ComplexMatrix32 = Matrix<f32>;

pub use correlations::{classical_correlation, koashi_winter_eof, quantum_discord, KoashiWinter};
pub use oracle::{minimize_conditional_entropy, OptimizerConfig};
pub use state::{DimSpec, TripartiteState};
pub use xstate::{eof_xstate, xstate_reduction, BlochVector, ThetaCandidate, XState};
