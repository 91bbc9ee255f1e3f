use ndarray::{Array1, Array2, ArrayView1, ArrayView2};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A tensor product factor: either a ket vector or an operator matrix.
#[derive(Clone, Copy, Debug)]
pub enum Factor<'a, T: Scalar> {
    Vector(ArrayView1<'a, Complex<T>>),
    Matrix(ArrayView2<'a, Complex<T>>),
}

/// Owned result of a tensor product, matching the kind of its factors.
#[derive(Clone, Debug)]
pub enum Product<T: Scalar> {
    Vector(Array1<Complex<T>>),
    Matrix(Array2<Complex<T>>),
}

impl<T: Scalar> Product<T> {
    pub fn into_vector(self) -> Option<Array1<Complex<T>>> {
        match self {
            Product::Vector(v) => Some(v),
            Product::Matrix(_) => None,
        }
    }

    pub fn into_matrix(self) -> Option<Array2<Complex<T>>> {
        match self {
            Product::Matrix(m) => Some(m),
            Product::Vector(_) => None,
        }
    }
}

/// Tensor (Kronecker) product of an ordered list of factors.
///
/// The first factor is most significant in the composite index. All factors
/// must be of the same kind; an empty list or mixed kinds is an error.
pub fn tensor_product<T: Scalar>(factors: &[Factor<'_, T>]) -> Result<Product<T>> {
    let first = factors.first().ok_or(Error::EmptyFactorList)?;
    match first {
        Factor::Vector(_) => {
            let views = factors
                .iter()
                .map(|f| match f {
                    Factor::Vector(v) => Ok(*v),
                    Factor::Matrix(_) => Err(Error::MixedFactorKinds),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Product::Vector(kron_vectors(&views)))
        }
        Factor::Matrix(_) => {
            let views = factors
                .iter()
                .map(|f| match f {
                    Factor::Matrix(m) => Ok(*m),
                    Factor::Vector(_) => Err(Error::MixedFactorKinds),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Product::Matrix(kron_matrices(&views)))
        }
    }
}

/// Kronecker product of ket vectors, first factor most significant.
pub fn kron_vectors<T: Scalar>(factors: &[ArrayView1<'_, Complex<T>>]) -> Array1<Complex<T>> {
    let mut out = Array1::from_elem(1, Complex::new(T::one(), T::zero()));
    for f in factors {
        let mut next = Array1::zeros(out.len() * f.len());
        for (i, a) in out.iter().enumerate() {
            for (j, b) in f.iter().enumerate() {
                next[i * f.len() + j] = *a * *b;
            }
        }
        out = next;
    }
    out
}

/// Kronecker product of square or rectangular matrices, first factor most
/// significant in both row and column indices.
pub fn kron_matrices<T: Scalar>(factors: &[ArrayView2<'_, Complex<T>>]) -> Array2<Complex<T>> {
    let mut out = Array2::from_elem((1, 1), Complex::new(T::one(), T::zero()));
    for f in factors {
        let (ar, ac) = out.dim();
        let (br, bc) = f.dim();
        let mut next = Array2::zeros((ar * br, ac * bc));
        for i in 0..ar {
            for j in 0..ac {
                let a = out[(i, j)];
                for k in 0..br {
                    for l in 0..bc {
                        next[(i * br + k, j * bc + l)] = a * f[(k, l)];
                    }
                }
            }
        }
        out = next;
    }
    out
}
