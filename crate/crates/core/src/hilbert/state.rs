use ndarray::{Array1, Array2};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::dims::SubsystemDims;
use super::eigen::hermitian_eigenvalues;
use super::tensor::kron_vectors;

/// A normalized pure state over a multipartite register.
#[derive(Clone, Debug)]
pub struct PureState<T: Scalar> {
    dims: SubsystemDims,
    amplitudes: Array1<Complex<T>>,
}

impl<T: Scalar> PureState<T> {
    /// Validates length against the register and the norm against 1.
    pub fn new(dims: SubsystemDims, amplitudes: Array1<Complex<T>>) -> Result<Self> {
        if amplitudes.len() != dims.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: dims.total_dim(),
                got: amplitudes.len(),
            });
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if (norm - T::one()).abs() > T::TOL_EQ {
            return Err(Error::NotNormalized {
                norm: norm.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { dims, amplitudes })
    }

    /// Normalizes the amplitudes, rejecting the zero vector.
    pub fn normalized(dims: SubsystemDims, mut amplitudes: Array1<Complex<T>>) -> Result<Self> {
        if amplitudes.len() != dims.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: dims.total_dim(),
                got: amplitudes.len(),
            });
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if norm <= T::zero() || !norm.is_finite() {
            return Err(Error::NotNormalized {
                norm: norm.to_f64().unwrap_or(f64::NAN),
            });
        }
        let inv = T::one() / norm;
        amplitudes.mapv_inplace(|z| z.scale(inv));
        Ok(Self { dims, amplitudes })
    }

    pub fn dims(&self) -> &SubsystemDims {
        &self.dims
    }

    pub fn amplitudes(&self) -> &Array1<Complex<T>> {
        &self.amplitudes
    }

    /// <self|other>, defined for matching register shapes.
    pub fn overlap(&self, other: &Self) -> Result<Complex<T>> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch {
                expected: self.dims.total_dim(),
                got: other.dims.total_dim(),
            });
        }
        let mut acc = Complex::new(T::zero(), T::zero());
        for (a, b) in self.amplitudes.iter().zip(other.amplitudes.iter()) {
            acc += a.conj() * *b;
        }
        Ok(acc)
    }

    /// The two-copy vector |psi> x |psi>, with the original register's index
    /// most significant. Length D^2, which the register cap already bounds.
    pub fn two_copy(&self) -> Array1<Complex<T>> {
        kron_vectors(&[self.amplitudes.view(), self.amplitudes.view()])
    }

    /// Projector |psi><psi| as a density matrix.
    pub fn density(&self) -> DensityMatrix<T> {
        let d = self.amplitudes.len();
        let mut m = Array2::zeros((d, d));
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = self.amplitudes[i] * self.amplitudes[j].conj();
            }
        }
        DensityMatrix {
            dims: self.dims.clone(),
            matrix: m,
        }
    }
}

/// A density matrix over a multipartite register: Hermitian, unit trace,
/// positive semidefinite.
#[derive(Clone, Debug)]
pub struct DensityMatrix<T: Scalar> {
    dims: SubsystemDims,
    matrix: Array2<Complex<T>>,
}

impl<T: Scalar> DensityMatrix<T> {
    /// Full validation: shape, Hermiticity, unit trace, and positivity via
    /// eigenvalues (smallest allowed down to -TOL_SPECTRAL).
    pub fn new(dims: SubsystemDims, matrix: Array2<Complex<T>>) -> Result<Self> {
        let d = dims.total_dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: matrix.nrows().max(matrix.ncols()),
            });
        }
        let mut dev = T::zero();
        for i in 0..d {
            for j in i..d {
                let diff = (matrix[(i, j)] - matrix[(j, i)].conj()).norm();
                if diff > dev {
                    dev = diff;
                }
            }
        }
        if dev > T::TOL_EQ {
            return Err(Error::NotHermitian {
                deviation: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        let trace: T = (0..d).map(|i| matrix[(i, i)].re).sum();
        if (trace - T::one()).abs() > T::TOL_EQ {
            return Err(Error::NotUnitTrace {
                trace: trace.to_f64().unwrap_or(f64::NAN),
            });
        }
        let eigenvalues = hermitian_eigenvalues(&matrix)?;
        if let Some(&min) = eigenvalues.first() {
            if min < -T::TOL_SPECTRAL {
                return Err(Error::NotPositive {
                    min_eigenvalue: min.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(Self { dims, matrix })
    }

    /// Wraps a matrix that is Hermitian, unit-trace, and positive by
    /// construction (partial traces, convex mixtures of valid states).
    /// Shape is still checked; the spectral check is skipped.
    pub(crate) fn trusted(dims: SubsystemDims, matrix: Array2<Complex<T>>) -> Self {
        debug_assert_eq!(matrix.nrows(), dims.total_dim());
        debug_assert_eq!(matrix.ncols(), dims.total_dim());
        Self { dims, matrix }
    }

    pub fn dims(&self) -> &SubsystemDims {
        &self.dims
    }

    pub fn matrix(&self) -> &Array2<Complex<T>> {
        &self.matrix
    }

    pub fn trace(&self) -> T {
        (0..self.matrix.nrows()).map(|i| self.matrix[(i, i)].re).sum()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Result<Vec<T>> {
        hermitian_eigenvalues(&self.matrix)
    }
}

/// Tr rho^2, clamped to [0, 1]. For Hermitian rho this is the squared
/// Frobenius norm, so no matrix product is needed.
pub fn purity<T: Scalar>(rho: &DensityMatrix<T>) -> T {
    let raw: T = rho.matrix.iter().map(|z| z.norm_sqr()).sum();
    raw.max(T::zero()).min(T::one())
}
