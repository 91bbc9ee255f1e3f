//! Multipartite concurrence of pure states, computed three independent ways.
//!
//! For a pure state on N subsystems the concurrence can be written as
//!
//! * a two-copy expectation value: C^2 is the expectation of an operator A
//!   built from products of pair projectors over all even sign strings
//!   except the all-'+' one (route `TwoCopyA`);
//! * a sum of marginal purities: C = 2^(1 - N/2) sqrt((2^N - 2) - sum of
//!   Tr rho_i^2 over every nonempty proper subset i) (route `ReducedRho`);
//! * a single projective outcome: C = 2 sqrt(1 - p_plus), where p_plus is
//!   the probability that every subsystem pair of a doubled state lands in
//!   its symmetric subspace (route `SingleObservable`).
//!
//! The three routes agree on pure states; keeping them separate end to end
//! is what makes cross-checking meaningful, so nothing here shares
//! intermediate results between routes.

use ndarray::Array2;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::hilbert::{
    apply_pair_projector, apply_sign_string_projector, dense_product_projector,
    global_swap_matrix, partial_trace, purity, PureState, Sign, SignString, SubsystemDims,
    TwoCopyOperator,
};
use crate::scalar::Scalar;

/// Which of the three equivalent computations produced a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    TwoCopyA,
    ReducedRho,
    SingleObservable,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::TwoCopyA => "two_copy_A",
            Route::ReducedRho => "reduced_rho",
            Route::SingleObservable => "single_observable",
        }
    }
}

/// A concurrence value tagged with its computation route. When the route
/// went through a symmetric-subspace probability, that probability is kept
/// alongside and stays consistent with the value.
#[derive(Clone, Debug)]
pub struct ConcurrenceResult<T: Scalar> {
    value: T,
    route: Route,
    p_plus: Option<T>,
    dims: SubsystemDims,
}

impl<T: Scalar> ConcurrenceResult<T> {
    fn new(value: T, route: Route, p_plus: Option<T>, dims: SubsystemDims) -> Self {
        debug_assert!(value >= T::zero());
        if let Some(p) = p_plus {
            let implied = (T::one() - p).max(T::zero()).sqrt() * T::real(2.0);
            debug_assert!((value - implied).abs() <= T::TOL_STRICT);
        }
        Self {
            value,
            route,
            p_plus,
            dims,
        }
    }

    pub fn value(&self) -> T {
        self.value
    }

    pub fn route(&self) -> Route {
        self.route
    }

    pub fn p_plus(&self) -> Option<T> {
        self.p_plus
    }

    pub fn dims(&self) -> &SubsystemDims {
        &self.dims
    }
}

fn require_multipartite(dims: &SubsystemDims) -> Result<()> {
    if dims.len() < 2 {
        return Err(Error::TooFewSubsystems { n: dims.len() });
    }
    Ok(())
}

/// All sign strings of length N with an even, nonzero number of '-' entries,
/// in lexicographic order with '+' before '-'. There are 2^(N-1) - 1.
pub fn enumerate_even_sign_strings(n: usize) -> Result<Vec<SignString>> {
    if n < 2 {
        return Err(Error::TooFewSubsystems { n });
    }
    let mut out = Vec::with_capacity((1usize << (n - 1)) - 1);
    for bits in 0..(1usize << n) {
        if bits != 0 && bits.count_ones() % 2 == 0 {
            out.push(SignString::from_bits(bits, n));
        }
    }
    Ok(out)
}

/// Concurrence from the two-copy expectation: four times the total weight
/// the doubled state places on even sign strings other than all-'+'.
pub fn concurrence_two_copy<T: Scalar>(psi: &PureState<T>) -> Result<ConcurrenceResult<T>> {
    let dims = psi.dims();
    require_multipartite(dims)?;
    let two = psi.two_copy();
    let mut total = T::zero();
    for signs in enumerate_even_sign_strings(dims.len())? {
        let projected = apply_sign_string_projector(&two, dims, &signs)?;
        total += projected.iter().map(|z| z.norm_sqr()).sum::<T>();
    }
    let value = T::real(2.0) * total.max(T::zero()).sqrt();
    Ok(ConcurrenceResult::new(
        value,
        Route::TwoCopyA,
        None,
        dims.clone(),
    ))
}

/// Concurrence from marginal mixedness: every nonempty proper subset of the
/// register contributes the purity of its reduced state.
pub fn concurrence_reduced<T: Scalar>(psi: &PureState<T>) -> Result<ConcurrenceResult<T>> {
    let dims = psi.dims();
    require_multipartite(dims)?;
    let n = dims.len();
    let rho = psi.density();
    let mut purity_sum = T::zero();
    for mask in 1..((1usize << n) - 1) {
        let keep: Vec<usize> = (0..n).filter(|j| mask >> j & 1 == 1).collect();
        let reduced = partial_trace(&rho, &keep)?;
        purity_sum += purity(&reduced);
    }
    let subsets = T::real(((1usize << n) - 2) as f64);
    let radicand = (subsets - purity_sum).max(T::zero());
    let prefactor = T::real(2.0).powf(T::one() - T::real(n as f64) / T::real(2.0));
    Ok(ConcurrenceResult::new(
        prefactor * radicand.sqrt(),
        Route::ReducedRho,
        None,
        dims.clone(),
    ))
}

/// Probability that every measured subsystem pair of the doubled state lands
/// in its symmetric subspace. `measured` must cover all subsystems or all
/// but one; on pure states both choices give the same number, which is why
/// one pair can be left unmeasured in practice.
pub fn p_plus_exact<T: Scalar>(psi: &PureState<T>, measured: &[usize]) -> Result<T> {
    let dims = psi.dims();
    require_multipartite(dims)?;
    dims.check_subset(measured)?;
    if measured.len() + 1 < dims.len() {
        return Err(Error::InvalidMeasuredCount {
            measured: measured.len(),
            n: dims.len(),
        });
    }
    let mut two = psi.two_copy();
    for &j in measured {
        apply_pair_projector(&mut two, dims, j, Sign::Plus)?;
    }
    let p = two.iter().map(|z| z.norm_sqr()).sum::<T>();
    Ok(p.max(T::zero()).min(T::one()))
}

/// Concurrence from the single symmetric-subspace probability.
pub fn concurrence_single_observable<T: Scalar>(
    psi: &PureState<T>,
    measured: &[usize],
) -> Result<ConcurrenceResult<T>> {
    let p = p_plus_exact(psi, measured)?;
    let value = T::real(2.0) * (T::one() - p).max(T::zero()).sqrt();
    Ok(ConcurrenceResult::new(
        value,
        Route::SingleObservable,
        Some(p),
        psi.dims().clone(),
    ))
}

/// Dense two-copy concurrence operator: four times the difference between
/// the projector onto the globally symmetric subspace and the product of
/// all pair projectors onto their symmetric subspaces. Oracle use only;
/// subject to the dense cap.
pub fn build_dense_a<T: Scalar>(dims: &SubsystemDims) -> Result<TwoCopyOperator<T>> {
    require_multipartite(dims)?;
    dims.check_dense()?;
    let rows = dims.two_copy_dim();
    let swap = global_swap_matrix::<T>(dims)?;
    let all_plus: Vec<(usize, Sign)> = (0..dims.len()).map(|j| (j, Sign::Plus)).collect();
    let product_plus = dense_product_projector::<T>(dims, &all_plus)?;
    let half = T::real(0.5);
    let four = T::real(4.0);
    let mut a = Array2::zeros((rows, rows));
    for i in 0..rows {
        for j in 0..rows {
            let global_plus = swap[(i, j)].scale(half)
                + if i == j {
                    Complex::new(half, T::zero())
                } else {
                    Complex::new(T::zero(), T::zero())
                };
            a[(i, j)] = (global_plus - product_plus[(i, j)]).scale(four);
        }
    }
    TwoCopyOperator::hermitian(dims.clone(), a, "A")
}

/// Dense relaxed operator: four times (identity minus the product of all
/// pair projectors). Differs from the strict operator by four times the
/// globally antisymmetric projector, which annihilates doubled pure states.
pub fn build_dense_a_tilde<T: Scalar>(dims: &SubsystemDims) -> Result<TwoCopyOperator<T>> {
    require_multipartite(dims)?;
    dims.check_dense()?;
    let rows = dims.two_copy_dim();
    let all_plus: Vec<(usize, Sign)> = (0..dims.len()).map(|j| (j, Sign::Plus)).collect();
    let product_plus = dense_product_projector::<T>(dims, &all_plus)?;
    let four = T::real(4.0);
    let mut a = Array2::zeros((rows, rows));
    for i in 0..rows {
        for j in 0..rows {
            let eye = if i == j { T::one() } else { T::zero() };
            a[(i, j)] = (Complex::new(eye, T::zero()) - product_plus[(i, j)]).scale(four);
        }
    }
    TwoCopyOperator::hermitian(dims.clone(), a, "A_tilde")
}
