//! Pure states of two qubits `A`, `B` and a qudit `C`.

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::linalg::{partial_trace, Matrix};
use crate::ComplexMatrix;

const NORM_TOL: f64 = 1e-10;

/// Qubit basis labels; `g` is index 0, `e` index 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    G = 0,
    E = 1,
}

/// Subsystem dimensions of `A ⊗ B ⊗ C`. `A` and `B` are always qubits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimSpec {
    dc: usize,
}

impl DimSpec {
    pub const DA: usize = 2;
    pub const DB: usize = 2;

    pub fn new(dc: usize) -> Result<Self> {
        if dc == 0 {
            return Err(invalid("dC", "qudit dimension must be at least 1"));
        }
        Ok(Self { dc })
    }

    #[inline]
    pub fn dc(&self) -> usize {
        self.dc
    }

    #[inline]
    pub fn total(&self) -> usize {
        4 * self.dc
    }

    pub fn as_array(&self) -> [usize; 3] {
        [Self::DA, Self::DB, self.dc]
    }
}

/// `|Ψ⟩ = Σ c_ab |ab⟩ |ψ_ab⟩`, stored as the amplitude vector indexed by
/// `(a, b, c)` with `c` fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct TripartiteState {
    dims: DimSpec,
    amplitudes: Vec<Complex64>,
}

impl TripartiteState {
    pub fn new(dims: DimSpec, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != dims.total() {
            return Err(Error::DimensionMismatch(format!(
                "2x2x{} state needs {} amplitudes, got {}",
                dims.dc(),
                dims.total(),
                amplitudes.len()
            )));
        }
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { dims, amplitudes })
    }

    /// Builds the state from the four unnormalized `C`-blocks
    /// `c_gg|ψ₁⟩, c_ge|ψ₂⟩, c_eg|ψ₃⟩, c_ee|ψ₄⟩`.
    pub fn from_blocks(blocks: [&[Complex64]; 4]) -> Result<Self> {
        let dc = blocks[0].len();
        if blocks.iter().any(|b| b.len() != dc) {
            return Err(Error::DimensionMismatch("C-blocks differ in length".into()));
        }
        let dims = DimSpec::new(dc)?;
        Self::new(dims, blocks.concat())
    }

    #[inline]
    pub fn dims(&self) -> DimSpec {
        self.dims
    }

    #[inline]
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    #[inline]
    pub fn amplitude(&self, a: Level, b: Level, c: usize) -> Complex64 {
        self.amplitudes[self.offset(a, b) + c]
    }

    fn offset(&self, a: Level, b: Level) -> usize {
        ((a as usize) * 2 + b as usize) * self.dims.dc()
    }

    /// Unnormalized `C`-factor `c_ab |ψ_ab⟩`.
    pub fn block(&self, a: Level, b: Level) -> &[Complex64] {
        let o = self.offset(a, b);
        &self.amplitudes[o..o + self.dims.dc()]
    }

    /// Blocks in the order `gg, ge, eg, ee`.
    pub fn blocks(&self) -> [&[Complex64]; 4] {
        [
            self.block(Level::G, Level::G),
            self.block(Level::G, Level::E),
            self.block(Level::E, Level::G),
            self.block(Level::E, Level::E),
        ]
    }

    pub fn density_matrix(&self) -> ComplexMatrix {
        Matrix::projector(&self.amplitudes)
    }

    /// Reduced state on the listed subsystems (0 = A, 1 = B, 2 = C).
    pub fn reduce(&self, keep: &[usize]) -> Result<ComplexMatrix> {
        partial_trace(&self.density_matrix(), &self.dims.as_array(), keep)
    }

    pub fn rho_ab(&self) -> ComplexMatrix {
        let blocks = self.blocks();
        Matrix::from_fn(4, 4, |i, j| inner(blocks[j], blocks[i]))
    }

    pub fn rho_ac(&self) -> ComplexMatrix {
        self.reduce(&[0, 2]).expect("tripartite dimensions are consistent")
    }

    pub fn rho_a(&self) -> ComplexMatrix {
        self.reduce(&[0]).expect("tripartite dimensions are consistent")
    }

    pub fn rho_bc(&self) -> ComplexMatrix {
        self.reduce(&[1, 2]).expect("tripartite dimensions are consistent")
    }

    pub fn rho_c(&self) -> ComplexMatrix {
        self.reduce(&[2]).expect("tripartite dimensions are consistent")
    }

    /// Exchanges the roles of `A` and `B`.
    pub fn swap_ab(&self) -> Self {
        let [gg, ge, eg, ee] = self.blocks();
        Self {
            dims: self.dims,
            amplitudes: [gg, eg, ge, ee].concat(),
        }
    }
}

/// `⟨u|v⟩`.
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_pure_state;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn layout_and_reductions() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let psi = TripartiteState::new(DimSpec::new(3).unwrap(), random_pure_state(&mut rng, 12)).unwrap();
        assert_eq!(psi.amplitude(Level::E, Level::G, 1), psi.amplitudes()[7]);
        let direct = psi.reduce(&[0, 1]).unwrap();
        assert!(psi.rho_ab().max_abs_diff(&direct) < 1e-14);
        let swapped = psi.swap_ab();
        assert!(swapped.reduce(&[1]).unwrap().max_abs_diff(&psi.rho_a()) < 1e-14);
    }

    #[test]
    fn rejects_bad_input() {
        let d = DimSpec::new(2).unwrap();
        assert!(DimSpec::new(0).is_err());
        assert!(TripartiteState::new(d, vec![Complex64::new(1.0, 0.0); 7]).is_err());
        let mut amps = vec![Complex64::new(0.0, 0.0); 8];
        amps[0] = Complex64::new(0.9, 0.0);
        assert!(matches!(
            TripartiteState::new(d, amps),
            Err(Error::NotNormalized { .. })
        ));
    }
}
