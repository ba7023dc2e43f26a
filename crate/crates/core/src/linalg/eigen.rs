use num_complex::Complex;

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 100;
// Inputs are accepted as Hermitian up to this entrywise deviation.
const HERMITIAN_INPUT_TOL: f64 = 1e-10;

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct HermitianEigen<T: Real> {
    pub values: Vec<T>,
    /// Column `k` is the eigenvector of `values[k]`.
    pub vectors: Matrix<T>,
}

impl<T: Real> HermitianEigen<T> {
    pub fn vector(&self, k: usize) -> Vec<Complex<T>> {
        (0..self.vectors.rows()).map(|i| self.vectors.get(i, k)).collect()
    }

    /// Reassembles `V f(Λ) V†`.
    pub fn map_spectrum(&self, f: impl Fn(T) -> T) -> Matrix<T> {
        let n = self.values.len();
        let fv: Vec<T> = self.values.iter().map(|&v| f(v)).collect();
        Matrix::from_fn(n, n, |i, j| {
            (0..n).fold(Complex::new(T::zero(), T::zero()), |acc, k| {
                acc + self.vectors.get(i, k) * self.vectors.get(j, k).conj() * fv[k]
            })
        })
    }
}

fn check_hermitian<T: Real>(m: &Matrix<T>) -> Result<()> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition of non-square {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let dev = m.hermiticity_deviation();
    let scale = T::one().max(m.max_abs());
    if dev > T::lit(HERMITIAN_INPUT_TOL) * scale {
        return Err(Error::NotHermitian {
            deviation: dev.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

/// Ascending eigenvalues of a Hermitian matrix.
///
/// 1x1 and 2x2 inputs use the closed form; larger inputs go through the
/// Jacobi solver.
pub fn hermitian_eigenvalues<T: Real>(m: &Matrix<T>) -> Result<Vec<T>> {
    check_hermitian(m)?;
    match m.rows() {
        1 => Ok(vec![m.get(0, 0).re]),
        2 => {
            let a = m.get(0, 0).re;
            let d = m.get(1, 1).re;
            let b = (m.get(0, 1) + m.get(1, 0).conj()).scale(T::lit(0.5));
            let mean = (a + d) * T::lit(0.5);
            let half_gap = (((a - d) * T::lit(0.5)).powi(2) + b.norm_sqr()).sqrt();
            Ok(vec![mean - half_gap, mean + half_gap])
        }
        _ => Ok(jacobi(m)?.values),
    }
}

/// Full eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
pub fn hermitian_eigen<T: Real>(m: &Matrix<T>) -> Result<HermitianEigen<T>> {
    check_hermitian(m)?;
    jacobi(m)
}

fn jacobi<T: Real>(m: &Matrix<T>) -> Result<HermitianEigen<T>> {
    let n = m.rows();
    let zero = Complex::new(T::zero(), T::zero());
    // Symmetrize so the working copy is exactly Hermitian.
    let mut a: Vec<Complex<T>> = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            (m.get(i, j) + m.get(j, i).conj()).scale(T::lit(0.5))
        })
        .collect();
    let mut v: Vec<Complex<T>> = (0..n * n)
        .map(|idx| {
            if idx / n == idx % n {
                Complex::new(T::one(), T::zero())
            } else {
                zero
            }
        })
        .collect();

    let scale = a.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
    let threshold = T::solver_eps() * scale.max(T::min_positive_value());

    let mut converged = n == 1;
    for _ in 0..MAX_SWEEPS {
        let off: T = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j].norm_sqr())
            .sum::<T>()
            .sqrt();
        if off <= threshold {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r <= threshold * T::lit(1e-3) {
                    continue;
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                // Phase that makes the pivot real, then a real Jacobi rotation.
                let phase = apq / r;
                let theta = (aqq - app) / (r + r);
                let t = theta.signum() / (theta.abs() + (T::one() + theta * theta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                let e_minus = phase.conj();
                // U restricted to (p, q) is [[c, s], [-s e^{-iφ}, c e^{-iφ}]].
                let u_pp = Complex::new(c, T::zero());
                let u_pq = Complex::new(s, T::zero());
                let u_qp = e_minus.scale(-s);
                let u_qq = e_minus.scale(c);

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * u_pp + akq * u_qp;
                    a[k * n + q] = akp * u_pq + akq * u_qq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = u_pp.conj() * apk + u_qp.conj() * aqk;
                    a[q * n + k] = u_pq.conj() * apk + u_qq.conj() * aqk;
                }
                a[p * n + q] = zero;
                a[q * n + p] = zero;
                a[p * n + p] = Complex::new(a[p * n + p].re, T::zero());
                a[q * n + q] = Complex::new(a[q * n + q].re, T::zero());

                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp * u_pp + vkq * u_qp;
                    v[k * n + q] = vkp * u_pq + vkq * u_qq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.partial_cmp(&a[j * n + j].re).unwrap());
    let values = order.iter().map(|&k| a[k * n + k].re).collect();
    let vectors = Matrix::from_fn(n, n, |i, j| v[i * n + order[j]]);
    Ok(HermitianEigen { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_hermitian;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn closed_form_two_by_two() {
        let d = Matrix::<f64>::diagonal(&[0.75, 0.25]);
        assert_eq!(hermitian_eigenvalues(&d).unwrap(), vec![0.25, 0.75]);
        let sx = Matrix::<f64>::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let ev = hermitian_eigenvalues(&sx).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-15 && (ev[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = Matrix::<f64>::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(hermitian_eigenvalues(&m), Err(Error::NotHermitian { .. })));
        let m3 = Matrix::<f64>::from_real(3, 3, &[0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(hermitian_eigen(&m3).is_err());
    }

    #[test]
    fn jacobi_residuals_and_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [3usize, 5, 8, 12] {
            let m = random_hermitian(&mut rng, n);
            let eig = hermitian_eigen(&m).unwrap();
            for k in 0..n {
                let v = eig.vector(k);
                let mv = m.apply(&v).unwrap();
                let res: f64 = mv
                    .iter()
                    .zip(&v)
                    .map(|(a, b)| (a - b * eig.values[k]).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                assert!(res <= 1e-10, "residual {res} for n={n}");
            }
            let sum: f64 = eig.values.iter().sum();
            assert!((sum - m.trace().re).abs() < 1e-10);
            assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
            let rebuilt = eig.map_spectrum(|x| x);
            assert!(rebuilt.max_abs_diff(&m) < 1e-12);
        }
    }

    #[test]
    fn degenerate_spectrum() {
        let m = Matrix::<f64>::identity(4).scale(0.25);
        let eig = hermitian_eigen(&m).unwrap();
        assert!(eig.values.iter().all(|&v| (v - 0.25).abs() < 1e-15));
        let z = Complex64::new(0.0, 0.0);
        assert_eq!(eig.vectors.get(0, 1), z);
    }

    #[test]
    fn single_precision() {
        let m = Matrix::<f32>::from_real(3, 3, &[2.0, 1.0, 0.0, 1.0, 2.0, 1.0, 0.0, 1.0, 2.0]).unwrap();
        let ev = hermitian_eigenvalues(&m).unwrap();
        let s2 = 2f32.sqrt();
        let expected = [2.0 - s2, 2.0, 2.0 + s2];
        for (a, b) in ev.iter().zip(expected) {
            assert!((a - b).abs() < 1e-5);
        }
    }
}
