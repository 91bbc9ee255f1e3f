use ndarray::Array2;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::dims::SubsystemDims;
use super::state::DensityMatrix;

/// Reduced density matrix over the kept subsystems, tracing out the rest.
///
/// `keep` must be a strictly increasing, nonempty, proper subset of the
/// subsystem indices; the kept subsystems retain their register order.
/// Hermiticity and unit trace carry over exactly (the contraction sums the
/// same terms for mirrored entries), so the result is wrapped without a
/// fresh spectral check.
pub fn partial_trace<T: Scalar>(
    rho: &DensityMatrix<T>,
    keep: &[usize],
) -> Result<DensityMatrix<T>> {
    let dims = rho.dims();
    dims.check_subset(keep)?;
    if keep.len() == dims.len() {
        return Err(Error::InvalidSubset {
            reason: "keeping every subsystem traces out nothing".into(),
        });
    }

    let kept_dims: Vec<usize> = keep.iter().map(|&j| dims.dim(j)).collect();
    let traced: Vec<usize> = (0..dims.len()).filter(|j| !keep.contains(j)).collect();

    // Full index = kept offset + traced offset; the two digit groups occupy
    // disjoint positions, so each multi-index enumerates independently.
    let keep_offsets = offsets(dims, keep);
    let trace_offsets = offsets(dims, &traced);

    let dk = keep_offsets.len();
    let mut out = Array2::<Complex<T>>::zeros((dk, dk));
    for (r, &ro) in keep_offsets.iter().enumerate() {
        for (c, &co) in keep_offsets.iter().enumerate() {
            let mut acc = Complex::new(T::zero(), T::zero());
            for &to in &trace_offsets {
                acc += rho.matrix()[(ro + to, co + to)];
            }
            out[(r, c)] = acc;
        }
    }

    // The kept register inherits the parent's cap.
    let out_dims = SubsystemDims::with_cap(&kept_dims, dims.cap())?;
    Ok(DensityMatrix::trusted(out_dims, out))
}

/// Offsets into the full amplitude index contributed by each multi-index
/// over the listed subsystems, enumerated in row-major order.
fn offsets(dims: &SubsystemDims, subsystems: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize];
    for &j in subsystems {
        let d = dims.dim(j);
        let stride = dims.stride(j);
        let mut next = Vec::with_capacity(out.len() * d);
        for &base in &out {
            for digit in 0..d {
                next.push(base + digit * stride);
            }
        }
        out = next;
    }
    out
}
