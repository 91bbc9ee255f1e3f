//! Swap operators and symmetric/antisymmetric projectors on two copies.
//!
//! A register of N subsystems with total dimension D is doubled to D^2;
//! basis index `i * D + i'` holds the original register index `i` and the
//! copy index `i'` (see [`SubsystemDims`] for the digit convention). The
//! projectors here act on one subsystem pair at a time: subsystem j of the
//! original together with subsystem j of the copy. Applying one projector
//! touches each amplitude once, so a full sign string costs O(N D^2) with
//! no operator matrix ever materialized.

use ndarray::{Array1, Array2};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::dims::SubsystemDims;
use super::sign::{Sign, SignString};

/// Swap of one subsystem pair as a dense d^2 x d^2 permutation:
/// |a b> goes to |b a>.
pub fn swap_operator<T: Scalar>(d: usize) -> Array2<Complex<T>> {
    let mut s = Array2::zeros((d * d, d * d));
    let one = Complex::new(T::one(), T::zero());
    for a in 0..d {
        for b in 0..d {
            s[(b * d + a, a * d + b)] = one;
        }
    }
    s
}

/// Dense projector (1 +/- S)/2 onto the symmetric or antisymmetric subspace
/// of one subsystem pair.
pub fn local_projector<T: Scalar>(d: usize, sign: Sign) -> Array2<Complex<T>> {
    let mut p = swap_operator::<T>(d);
    let half = Complex::new(T::real(0.5), T::zero());
    match sign {
        Sign::Plus => {
            p.mapv_inplace(|z| z * half);
            for i in 0..d * d {
                p[(i, i)] += half;
            }
        }
        Sign::Minus => {
            p.mapv_inplace(|z| -z * half);
            for i in 0..d * d {
                p[(i, i)] += half;
            }
        }
    }
    p
}

/// Dense swap of the full original register with the full copy, a D^2 x D^2
/// permutation. Subject to the dense operator cap.
pub fn global_swap_matrix<T: Scalar>(dims: &SubsystemDims) -> Result<Array2<Complex<T>>> {
    dims.check_dense()?;
    let d = dims.total_dim();
    let mut s = Array2::zeros((d * d, d * d));
    let one = Complex::new(T::one(), T::zero());
    for i in 0..d {
        for ip in 0..d {
            s[(ip * d + i, i * d + ip)] = one;
        }
    }
    Ok(s)
}

/// Applies the symmetric or antisymmetric projector of one subsystem pair
/// to a two-copy vector, in place.
pub fn apply_pair_projector<T: Scalar>(
    state2: &mut Array1<Complex<T>>,
    dims: &SubsystemDims,
    subsystem: usize,
    sign: Sign,
) -> Result<()> {
    let total = dims.total_dim();
    if state2.len() != total * total {
        return Err(Error::DimensionMismatch {
            expected: total * total,
            got: state2.len(),
        });
    }
    if subsystem >= dims.len() {
        return Err(Error::InvalidSubset {
            reason: format!(
                "subsystem {subsystem} out of range for {} subsystems",
                dims.len()
            ),
        });
    }
    let v = state2.as_slice_mut().expect("two-copy vectors are contiguous");
    let d = dims.dim(subsystem);
    let st = dims.stride(subsystem);
    let big = st * total;
    let half = T::real(0.5);
    for idx in 0..v.len() {
        let a = (idx / big) % d;
        let b = (idx / st) % d;
        if a < b {
            let partner = idx + (b - a) * st * (total - 1);
            let x = v[idx];
            let y = v[partner];
            match sign {
                Sign::Plus => {
                    let m = (x + y).scale(half);
                    v[idx] = m;
                    v[partner] = m;
                }
                Sign::Minus => {
                    let m = (x - y).scale(half);
                    v[idx] = m;
                    v[partner] = -m;
                }
            }
        } else if a == b && sign == Sign::Minus {
            v[idx] = Complex::new(T::zero(), T::zero());
        }
    }
    Ok(())
}

/// Applies one projector per subsystem, as prescribed by a full sign string,
/// returning the projected two-copy vector.
pub fn apply_sign_string_projector<T: Scalar>(
    state2: &Array1<Complex<T>>,
    dims: &SubsystemDims,
    signs: &SignString,
) -> Result<Array1<Complex<T>>> {
    if signs.len() != dims.len() {
        return Err(Error::SignStringLength {
            expected: dims.len(),
            got: signs.len(),
        });
    }
    let mut out = state2.clone();
    for (j, &sign) in signs.signs().iter().enumerate() {
        apply_pair_projector(&mut out, dims, j, sign)?;
    }
    Ok(out)
}

/// Applies the projector (1 +/- S)/2 of the full register swap, in place.
pub fn apply_global_projector<T: Scalar>(
    state2: &mut Array1<Complex<T>>,
    dims: &SubsystemDims,
    sign: Sign,
) -> Result<()> {
    let total = dims.total_dim();
    if state2.len() != total * total {
        return Err(Error::DimensionMismatch {
            expected: total * total,
            got: state2.len(),
        });
    }
    let v = state2.as_slice_mut().expect("two-copy vectors are contiguous");
    let half = T::real(0.5);
    for i in 0..total {
        for ip in i..total {
            let idx = i * total + ip;
            if i == ip {
                if sign == Sign::Minus {
                    v[idx] = Complex::new(T::zero(), T::zero());
                }
                continue;
            }
            let partner = ip * total + i;
            let x = v[idx];
            let y = v[partner];
            match sign {
                Sign::Plus => {
                    let m = (x + y).scale(half);
                    v[idx] = m;
                    v[partner] = m;
                }
                Sign::Minus => {
                    let m = (x - y).scale(half);
                    v[idx] = m;
                    v[partner] = -m;
                }
            }
        }
    }
    Ok(())
}

/// Dense matrix of a product of pair projectors, one per listed subsystem,
/// identity on the rest. Entries are products of one-pair projector entries,
/// assembled digit by digit so the two-copy index convention is respected.
pub fn dense_product_projector<T: Scalar>(
    dims: &SubsystemDims,
    signs: &[(usize, Sign)],
) -> Result<Array2<Complex<T>>> {
    dims.check_dense()?;
    for window in signs.windows(2) {
        if window[0].0 >= window[1].0 {
            return Err(Error::InvalidSubset {
                reason: "projector subsystems must be strictly increasing".into(),
            });
        }
    }
    if let Some(&(j, _)) = signs.iter().find(|&&(j, _)| j >= dims.len()) {
        return Err(Error::InvalidSubset {
            reason: format!("subsystem {j} out of range for {} subsystems", dims.len()),
        });
    }
    let total = dims.total_dim();
    let rows = total * total;
    let mut out = Array2::zeros((rows, rows));
    let half = T::real(0.5);
    for row in 0..rows {
        let (ri, rip) = (row / total, row % total);
        'col: for col in 0..rows {
            let (ci, cip) = (col / total, col % total);
            let mut entry = T::one();
            let mut sign_iter = signs.iter().peekable();
            for j in 0..dims.len() {
                let rx = dims.digit(ri, j);
                let ry = dims.digit(rip, j);
                let cx = dims.digit(ci, j);
                let cy = dims.digit(cip, j);
                let projected = match sign_iter.peek() {
                    Some(&&(js, sign)) if js == j => {
                        sign_iter.next();
                        Some(sign)
                    }
                    _ => None,
                };
                let factor = match projected {
                    None => {
                        if rx == cx && ry == cy {
                            T::one()
                        } else {
                            continue 'col;
                        }
                    }
                    Some(sign) => {
                        let direct = rx == cx && ry == cy;
                        let swapped = rx == cy && ry == cx;
                        let f = match sign {
                            Sign::Plus => {
                                half * (T::real(direct as u8 as f64)
                                    + T::real(swapped as u8 as f64))
                            }
                            Sign::Minus => {
                                half * (T::real(direct as u8 as f64)
                                    - T::real(swapped as u8 as f64))
                            }
                        };
                        if f == T::zero() {
                            continue 'col;
                        }
                        f
                    }
                };
                entry *= factor;
            }
            out[(row, col)] = Complex::new(entry, T::zero());
        }
    }
    Ok(out)
}

/// A Hermitian operator on the two-copy space, carried with the register
/// shape it acts on and a label naming how it was built.
#[derive(Clone, Debug)]
pub struct TwoCopyOperator<T: Scalar> {
    dims: SubsystemDims,
    matrix: Array2<Complex<T>>,
    label: String,
}

impl<T: Scalar> TwoCopyOperator<T> {
    /// Wraps a Hermitian matrix after checking shape, the dense cap, and
    /// Hermiticity.
    pub fn hermitian(
        dims: SubsystemDims,
        matrix: Array2<Complex<T>>,
        label: impl Into<String>,
    ) -> Result<Self> {
        dims.check_dense()?;
        let rows = dims.two_copy_dim();
        if matrix.nrows() != rows || matrix.ncols() != rows {
            return Err(Error::DimensionMismatch {
                expected: rows,
                got: matrix.nrows().max(matrix.ncols()),
            });
        }
        let mut dev = T::zero();
        for i in 0..rows {
            for j in i..rows {
                let d = (matrix[(i, j)] - matrix[(j, i)].conj()).norm();
                if d > dev {
                    dev = d;
                }
            }
        }
        if dev > T::TOL_EQ {
            return Err(Error::NotHermitian {
                deviation: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self {
            dims,
            matrix,
            label: label.into(),
        })
    }

    /// Wraps a matrix that is declared to be a projector, additionally
    /// checking idempotence.
    pub fn projector(
        dims: SubsystemDims,
        matrix: Array2<Complex<T>>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let op = Self::hermitian(dims, matrix, label)?;
        let squared = op.matrix.dot(&op.matrix);
        let mut dev = T::zero();
        for (a, b) in squared.iter().zip(op.matrix.iter()) {
            let d = (*a - *b).norm();
            if d > dev {
                dev = d;
            }
        }
        if dev > T::TOL_SPECTRAL {
            return Err(Error::NotIdempotent {
                deviation: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(op)
    }

    pub fn dims(&self) -> &SubsystemDims {
        &self.dims
    }

    pub fn matrix(&self) -> &Array2<Complex<T>> {
        &self.matrix
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn trace(&self) -> T {
        (0..self.matrix.nrows()).map(|i| self.matrix[(i, i)].re).sum()
    }

    /// Expectation value of the operator in a two-copy vector; the imaginary
    /// part is discarded (it vanishes for Hermitian operators).
    pub fn expectation(&self, state2: &Array1<Complex<T>>) -> Result<T> {
        let rows = self.matrix.nrows();
        if state2.len() != rows {
            return Err(Error::DimensionMismatch {
                expected: rows,
                got: state2.len(),
            });
        }
        let mut acc = Complex::new(T::zero(), T::zero());
        for i in 0..rows {
            let mut row = Complex::new(T::zero(), T::zero());
            for j in 0..rows {
                row += self.matrix[(i, j)] * state2[j];
            }
            acc += state2[i].conj() * row;
        }
        Ok(acc.re)
    }
}
