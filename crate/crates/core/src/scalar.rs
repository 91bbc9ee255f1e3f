//! Floating point abstraction used throughout the crate.
//!
//! All state vectors and operators are complex, but the underlying real
//! type is generic so the same code runs in `f32` and `f64`. Numerical
//! tolerances scale with the precision of the scalar, so they live here
//! as associated constants rather than as free constants.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, NumAssign};
use rand::Rng;
use rand_distr::StandardNormal;

/// Real scalar underlying all complex amplitudes.
///
/// The three tolerance constants grade the checks the crate performs:
/// `TOL_STRICT` for identities that should hold to rounding error,
/// `TOL_EQ` for linear-algebra identities built from a few operations,
/// and `TOL_SPECTRAL` for eigenvalue-based checks (positivity, idempotence)
/// where iterative solvers add slack.
pub trait Scalar:
    Float + FloatConst + NumAssign + Sum<Self> + Send + Sync + Debug + Display + 'static
{
    /// Tolerance for identities expected to hold to rounding error.
    const TOL_STRICT: Self;
    /// Tolerance for exact linear-algebra identities.
    const TOL_EQ: Self;
    /// Tolerance for eigenvalue and idempotence checks.
    const TOL_SPECTRAL: Self;

    /// One sample from the standard normal distribution.
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Lossy conversion from `f64`, for literals in generic code.
    fn real(x: f64) -> Self {
        Self::from(x).expect("finite f64 converts to any Scalar")
    }
}

impl Scalar for f64 {
    const TOL_STRICT: Self = 1e-12;
    const TOL_EQ: Self = 1e-10;
    const TOL_SPECTRAL: Self = 1e-8;

    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }
}

impl Scalar for f32 {
    const TOL_STRICT: Self = 1e-6;
    const TOL_EQ: Self = 1e-4;
    const TOL_SPECTRAL: Self = 1e-3;

    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }
}
