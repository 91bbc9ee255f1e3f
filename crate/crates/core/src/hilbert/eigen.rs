//! Dense Hermitian eigendecomposition by cyclic Jacobi rotations.
//!
//! The matrices this crate diagonalizes are small (reduced density matrices
//! and two-copy operators under the dense cap), so a classical Jacobi sweep
//! is accurate, dependency-free, and deterministic. Convergence is quadratic
//! once off-diagonal mass is small; the sweep limit below is generous.

use ndarray::Array2;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

const MAX_SWEEPS: usize = 60;

/// Eigenvalues (ascending) and matching eigenvector columns of a Hermitian
/// matrix. The input is symmetrized as (A + A†)/2 before iterating, so tiny
/// non-Hermitian noise is tolerated; callers validate Hermiticity separately
/// where it is a contract.
pub fn hermitian_eigen<T: Scalar>(
    matrix: &Array2<Complex<T>>,
) -> Result<(Vec<T>, Array2<Complex<T>>)> {
    let n = matrix.nrows();
    if matrix.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: matrix.ncols(),
        });
    }
    let mut a = Array2::<Complex<T>>::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = (matrix[(i, j)] + matrix[(j, i)].conj())
                * Complex::new(T::real(0.5), T::zero());
        }
    }
    let mut v = Array2::<Complex<T>>::eye(n);
    if n > 1 {
        let scale = frobenius(&a).max(T::min_positive_value());
        let target = scale * T::epsilon() * T::real(n as f64);
        let mut converged = false;
        for _ in 0..MAX_SWEEPS {
            if off_diagonal_norm(&a) <= target {
                converged = true;
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    rotate(&mut a, &mut v, p, q, scale);
                }
            }
        }
        if !converged && off_diagonal_norm(&a) > target {
            return Err(Error::EigenNoConvergence { sweeps: MAX_SWEEPS });
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<T> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).expect("finite eigenvalues"));
    let values: Vec<T> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = Array2::<Complex<T>>::zeros((n, n));
    for (dst, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, dst)] = v[(row, src)];
        }
    }
    Ok((values, vectors))
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues<T: Scalar>(matrix: &Array2<Complex<T>>) -> Result<Vec<T>> {
    hermitian_eigen(matrix).map(|(values, _)| values)
}

fn frobenius<T: Scalar>(a: &Array2<Complex<T>>) -> T {
    a.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

fn off_diagonal_norm<T: Scalar>(a: &Array2<Complex<T>>) -> T {
    let n = a.nrows();
    let mut sum = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One Jacobi rotation zeroing the (p, q) entry: a unitary acting on the
/// p/q plane with a phase absorbing the complex argument of a[p][q].
fn rotate<T: Scalar>(
    a: &mut Array2<Complex<T>>,
    v: &mut Array2<Complex<T>>,
    p: usize,
    q: usize,
    scale: T,
) {
    let alpha = a[(p, q)];
    let mag = alpha.norm();
    if mag <= scale * T::epsilon() {
        a[(p, q)] = Complex::new(T::zero(), T::zero());
        a[(q, p)] = Complex::new(T::zero(), T::zero());
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (app - aqq) / (mag + mag);
    let t = if tau >= T::zero() {
        T::one() / (tau + (tau * tau + T::one()).sqrt())
    } else {
        T::one() / (tau - (tau * tau + T::one()).sqrt())
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;
    let phase = alpha / Complex::new(mag, T::zero());
    let cs = Complex::new(c, T::zero());
    let sp = phase * Complex::new(s, T::zero());
    let spc = sp.conj();
    let n = a.nrows();
    // Column update A <- A U with U[p][p]=c, U[p][q]=-s*phase,
    // U[q][p]=s*conj(phase), U[q][q]=c.
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * cs + akq * spc;
        a[(k, q)] = akq * cs - akp * sp;
    }
    // Row update A <- U' A.
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * cs + aqk * sp;
        a[(q, k)] = aqk * cs - apk * spc;
    }
    a[(p, q)] = Complex::new(T::zero(), T::zero());
    a[(q, p)] = Complex::new(T::zero(), T::zero());
    a[(p, p)] = Complex::new(a[(p, p)].re, T::zero());
    a[(q, q)] = Complex::new(a[(q, q)].re, T::zero());
    // Accumulate V <- V U so columns converge to eigenvectors.
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * cs + vkq * spc;
        v[(k, q)] = vkq * cs - vkp * sp;
    }
}
