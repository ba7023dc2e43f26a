use num_complex::Complex;

use super::{hermitian_eigenvalues, Matrix};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Kronecker product `a ⊗ b`.
pub fn kron<T: Real>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let (br, bc) = (b.rows(), b.cols());
    Matrix::from_fn(a.rows() * br, a.cols() * bc, |i, j| {
        a.get(i / br, j / bc) * b.get(i % br, j % bc)
    })
}

fn check_dims<T: Real>(rho: &Matrix<T>, dims: &[usize]) -> Result<()> {
    if !rho.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "expected a square matrix, got {}x{}",
            rho.rows(),
            rho.cols()
        )));
    }
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::DimensionMismatch(format!(
            "invalid subsystem dimensions {dims:?}"
        )));
    }
    let total: usize = dims.iter().product();
    if total != rho.rows() {
        return Err(Error::DimensionMismatch(format!(
            "subsystem dimensions {dims:?} multiply to {total}, matrix is {}x{}",
            rho.rows(),
            rho.cols()
        )));
    }
    Ok(())
}

fn digits(mut index: usize, dims: &[usize], out: &mut [usize]) {
    for k in (0..dims.len()).rev() {
        out[k] = index % dims[k];
        index /= dims[k];
    }
}

fn compose(digits: &[usize], dims: &[usize], select: impl Fn(usize) -> bool) -> usize {
    digits
        .iter()
        .zip(dims)
        .enumerate()
        .filter(|(k, _)| select(*k))
        .fold(0, |acc, (_, (&d, &n))| acc * n + d)
}

/// Reduced matrix on the subsystems listed in `keep`, in their original
/// order. Subsystem 0 is the most significant tensor factor.
pub fn partial_trace<T: Real>(rho: &Matrix<T>, dims: &[usize], keep: &[usize]) -> Result<Matrix<T>> {
    check_dims(rho, dims)?;
    let mut kept = vec![false; dims.len()];
    for &k in keep {
        if k >= dims.len() || kept[k] {
            return Err(Error::DimensionMismatch(format!(
                "invalid kept subsystem list {keep:?} for {} subsystems",
                dims.len()
            )));
        }
        kept[k] = true;
    }
    let out_dim: usize = dims.iter().zip(&kept).filter(|(_, &k)| k).map(|(d, _)| d).product();
    let n = rho.rows();
    let mut out = vec![Complex::new(T::zero(), T::zero()); out_dim * out_dim];
    let mut di = vec![0; dims.len()];
    let mut dj = vec![0; dims.len()];
    for i in 0..n {
        digits(i, dims, &mut di);
        let traced_i = compose(&di, dims, |k| !kept[k]);
        let ri = compose(&di, dims, |k| kept[k]);
        for j in 0..n {
            digits(j, dims, &mut dj);
            if compose(&dj, dims, |k| !kept[k]) != traced_i {
                continue;
            }
            let rj = compose(&dj, dims, |k| kept[k]);
            out[ri * out_dim + rj] = out[ri * out_dim + rj] + rho.get(i, j);
        }
    }
    Matrix::new(out_dim, out_dim, out)
}

/// Transpose on one tensor factor.
pub fn partial_transpose<T: Real>(rho: &Matrix<T>, dims: &[usize], subsystem: usize) -> Result<Matrix<T>> {
    check_dims(rho, dims)?;
    if subsystem >= dims.len() {
        return Err(Error::DimensionMismatch(format!(
            "subsystem {subsystem} out of range for {} subsystems",
            dims.len()
        )));
    }
    let n = rho.rows();
    let mut di = vec![0; dims.len()];
    let mut dj = vec![0; dims.len()];
    let mut out = vec![Complex::new(T::zero(), T::zero()); n * n];
    for i in 0..n {
        digits(i, dims, &mut di);
        for j in 0..n {
            digits(j, dims, &mut dj);
            std::mem::swap(&mut di[subsystem], &mut dj[subsystem]);
            let si = compose(&di, dims, |_| true);
            let sj = compose(&dj, dims, |_| true);
            std::mem::swap(&mut di[subsystem], &mut dj[subsystem]);
            out[si * n + sj] = rho.get(i, j);
        }
    }
    Matrix::new(n, n, out)
}

/// Realignment `R[(i,i'),(j,j')] = ρ[(i,j),(i',j')]` of a bipartite matrix;
/// the result is `dA² × dB²`.
pub fn realign<T: Real>(rho: &Matrix<T>, dims: &[usize]) -> Result<Matrix<T>> {
    check_dims(rho, dims)?;
    if dims.len() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "realignment needs a bipartite split, got {dims:?}"
        )));
    }
    let (da, db) = (dims[0], dims[1]);
    Ok(Matrix::from_fn(da * da, db * db, |row, col| {
        let (i, ip) = (row / da, row % da);
        let (j, jp) = (col / db, col % db);
        rho.get(i * db + j, ip * db + jp)
    }))
}

/// Sum of singular values.
///
/// Hermitian input uses `Σ|λ|`; otherwise the square roots of the spectrum
/// of the smaller Gram matrix (`M†M` or `MM†`).
pub fn trace_norm<T: Real>(m: &Matrix<T>) -> Result<T> {
    let scale = T::one().max(m.max_abs());
    if m.is_square() && m.hermiticity_deviation() <= T::solver_eps() * T::lit(100.0) * scale {
        return Ok(hermitian_eigenvalues(m)?.iter().map(|l| l.abs()).sum());
    }
    let adj = m.adjoint();
    let gram = if m.rows() <= m.cols() { m * &adj } else { &adj * m };
    Ok(hermitian_eigenvalues(&gram)?
        .iter()
        .map(|&l| l.max(T::zero()).sqrt())
        .sum())
}
