//! Multipartite concurrence for pure states, with a simulator for the
//! two-copy measurement that estimates it in one experimental setting.
//!
//! The concurrence of a pure state on N subsystems can be obtained three
//! ways that must agree:
//!
//! 1. as a two-copy expectation value over products of symmetric and
//!    antisymmetric pair projectors ([`concurrence::concurrence_two_copy`]),
//! 2. from the purities of all reduced density matrices
//!    ([`concurrence::concurrence_reduced`]),
//! 3. from the probability that a doubled state passes every local
//!    symmetric-subspace check ([`concurrence::concurrence_single_observable`]).
//!
//! The third form is what an experiment measures: prepare two copies,
//! project each subsystem pair onto its symmetric/antisymmetric subspaces,
//! and count sign strings. [`sampling`] produces those outcome
//! distributions exactly and simulates finite-shot runs reproducibly, with
//! odd-parity outcomes doubling as a purity monitor.
//!
//! Everything is generic over the real scalar through [`Scalar`]; the
//! `*64` aliases below fix the common double-precision choices.

pub mod concurrence;
pub mod error;
pub mod hilbert;
pub mod sampling;
pub mod scalar;
pub mod states;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Double-precision complex amplitude.
pub type Amplitude64 = num_complex::Complex<f64>;
/// Single-precision complex amplitude.
pub type Amplitude32 = num_complex::Complex<f32>;

pub type PureState64 = hilbert::PureState<f64>;
pub type PureState32 = hilbert::PureState<f32>;
pub type DensityMatrix64 = hilbert::DensityMatrix<f64>;
pub type DensityMatrix32 = hilbert::DensityMatrix<f32>;
pub type TwoCopyOperator64 = hilbert::TwoCopyOperator<f64>;
pub type TwoCopyOperator32 = hilbert::TwoCopyOperator<f32>;
pub type ConcurrenceResult64 = concurrence::ConcurrenceResult<f64>;
pub type ConcurrenceResult32 = concurrence::ConcurrenceResult<f32>;
pub type OutcomeDistribution64 = sampling::OutcomeDistribution<f64>;
pub type OutcomeDistribution32 = sampling::OutcomeDistribution<f32>;
pub type SampleSummary64 = sampling::SampleSummary<f64>;
pub type SampleSummary32 = sampling::SampleSummary<f32>;
