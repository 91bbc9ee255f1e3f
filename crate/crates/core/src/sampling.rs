//! The measurement side of the protocol: exact outcome distributions for
//! doubled states, finite-shot sampling, and the estimators built on counts.
//!
//! One experimental setting measures, for every subsystem pair, whether the
//! pair sits in its symmetric or antisymmetric subspace; an outcome is a
//! sign string. The concurrence estimator needs only the all-'+' frequency,
//! and the odd-parity mass doubles as a mixedness monitor: doubled states
//! put zero weight on odd strings exactly when the input is pure.
//!
//! Sampling is reproducible by construction. Shots are drawn in fixed-size
//! batches; batch b uses a counter-mode generator seeded by the master seed
//! on stream b. Batches may run on any number of threads and merge by
//! integer addition, so counts depend only on (distribution, shots, seed).

use std::collections::BTreeMap;

use ndarray::Array1;
use num_complex::Complex;
use rand::distributions::WeightedIndex;
use rand::prelude::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hilbert::{
    apply_pair_projector, apply_global_projector, kron_matrices, purity, DensityMatrix,
    PureState, Sign, SignString, SubsystemDims, DENSE_OPERATOR_CAP,
};
use crate::scalar::Scalar;

/// Shots per RNG stream. Fixed so that the mapping from shot index to
/// stream is independent of thread count.
pub const SHOT_BATCH: u64 = 1 << 16;

/// Floor inside the variance propagation denominator, keeping the standard
/// error finite as the all-'+' frequency approaches 1 from below.
const STDERR_FLOOR: f64 = 1e-12;

/// Exact outcome probabilities of the pair measurements on a doubled state.
///
/// Outcomes are sign strings restricted to the measured subsystems, held in
/// lexicographic order ('+' before '-'). Probabilities are nonnegative and
/// sum to one up to rounding.
#[derive(Clone, Debug)]
pub struct OutcomeDistribution<T: Scalar> {
    dims: SubsystemDims,
    measured: Vec<usize>,
    outcomes: Vec<SignString>,
    probs: Vec<T>,
}

impl<T: Scalar> OutcomeDistribution<T> {
    pub fn dims(&self) -> &SubsystemDims {
        &self.dims
    }

    pub fn measured(&self) -> &[usize] {
        &self.measured
    }

    /// True when every subsystem pair is measured, making parity accounting
    /// complete.
    pub fn is_complete(&self) -> bool {
        self.measured.len() == self.dims.len()
    }

    /// Outcome strings in lexicographic order.
    pub fn outcomes(&self) -> &[SignString] {
        &self.outcomes
    }

    /// Probabilities in the same order as [`outcomes`](Self::outcomes).
    pub fn probabilities(&self) -> &[T] {
        &self.probs
    }

    pub fn prob(&self, outcome: &SignString) -> Option<T> {
        self.outcomes
            .binary_search(outcome)
            .ok()
            .map(|i| self.probs[i])
    }

    /// Probability of the all-'+' outcome (always the first in order).
    pub fn all_plus_prob(&self) -> T {
        self.probs[0]
    }

    /// Total probability on strings with an odd number of '-' outcomes.
    pub fn odd_parity_mass(&self) -> T {
        self.outcomes
            .iter()
            .zip(self.probs.iter())
            .filter(|(s, _)| !s.is_even())
            .map(|(_, &p)| p)
            .sum()
    }
}

fn check_measured(dims: &SubsystemDims, measured: &[usize]) -> Result<()> {
    dims.check_subset(measured)?;
    if measured.len() + 1 < dims.len() {
        return Err(Error::InvalidMeasuredCount {
            measured: measured.len(),
            n: dims.len(),
        });
    }
    Ok(())
}

/// Adds `weight` times the outcome masses of one doubled vector into `out`,
/// walking measured subsystems depth-first with '+' before '-'. The '-'
/// branch is the exact remainder of the '+' projection, so each level costs
/// one projector application.
fn accumulate_probs<T: Scalar>(
    v: &Array1<Complex<T>>,
    dims: &SubsystemDims,
    measured: &[usize],
    weight: T,
    slot: usize,
    out: &mut [T],
) -> Result<()> {
    let Some((&j, rest)) = measured.split_first() else {
        let mass: T = v.iter().map(|z| z.norm_sqr()).sum();
        out[slot] += weight * mass;
        return Ok(());
    };
    let mut plus = v.clone();
    apply_pair_projector(&mut plus, dims, j, Sign::Plus)?;
    let minus = v - &plus;
    accumulate_probs(&plus, dims, rest, weight, slot << 1, out)?;
    accumulate_probs(&minus, dims, rest, weight, (slot << 1) | 1, out)?;
    Ok(())
}

fn finish_distribution<T: Scalar>(
    dims: &SubsystemDims,
    measured: &[usize],
    probs: Vec<T>,
) -> OutcomeDistribution<T> {
    let m = measured.len();
    let outcomes: Vec<SignString> = (0..(1usize << m)).map(|b| SignString::from_bits(b, m)).collect();
    OutcomeDistribution {
        dims: dims.clone(),
        measured: measured.to_vec(),
        outcomes,
        probs,
    }
}

/// Exact outcome distribution for a doubled pure state.
pub fn outcome_distribution_pure<T: Scalar>(
    psi: &PureState<T>,
    measured: &[usize],
) -> Result<OutcomeDistribution<T>> {
    let dims = psi.dims();
    check_measured(dims, measured)?;
    let mut probs = vec![T::zero(); 1 << measured.len()];
    let two = psi.two_copy();
    accumulate_probs(&two, dims, measured, T::one(), 0, &mut probs)?;
    Ok(finish_distribution(dims, measured, probs))
}

/// Exact outcome distribution for two copies of a density matrix.
///
/// The doubled state rho x rho is never materialized: rho is diagonalized
/// and each eigenvector pair contributes its outcome masses with weight
/// equal to the product of eigenvalues.
pub fn outcome_distribution<T: Scalar>(
    rho: &DensityMatrix<T>,
    measured: &[usize],
) -> Result<OutcomeDistribution<T>> {
    let dims = rho.dims();
    check_measured(dims, measured)?;
    let (values, vectors) = crate::hilbert::eigen::hermitian_eigen(rho.matrix())?;
    let d = dims.total_dim();
    let kept: Vec<(T, Array1<Complex<T>>)> = values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > T::epsilon())
        .map(|(k, &v)| (v, vectors.column(k).to_owned()))
        .collect();
    let mut probs = vec![T::zero(); 1 << measured.len()];
    let mut pair = Array1::zeros(d * d);
    for (wk, uk) in &kept {
        for (wl, ul) in &kept {
            let weight = *wk * *wl;
            for i in 0..d {
                for ip in 0..d {
                    pair[i * d + ip] = uk[i] * ul[ip];
                }
            }
            accumulate_probs(&pair, dims, measured, weight, 0, &mut probs)?;
        }
    }
    Ok(finish_distribution(dims, measured, probs))
}

/// Counts and estimators from a finite-shot run of the protocol.
#[derive(Clone, Debug)]
pub struct SampleSummary<T: Scalar> {
    counts: BTreeMap<SignString, u64>,
    shots: u64,
    seed: u64,
    measured: Vec<usize>,
    subsystem_count: usize,
    p_plus_hat: T,
    concurrence_hat: T,
    concurrence_stderr: T,
    mixedness_hat: Option<T>,
}

impl<T: Scalar> SampleSummary<T> {
    /// Observed counts, keyed by outcome; every possible outcome is present,
    /// zeros included.
    pub fn counts(&self) -> &BTreeMap<SignString, u64> {
        &self.counts
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn measured(&self) -> &[usize] {
        &self.measured
    }

    pub fn subsystem_count(&self) -> usize {
        self.subsystem_count
    }

    /// Observed all-'+' frequency.
    pub fn p_plus_hat(&self) -> T {
        self.p_plus_hat
    }

    /// Plug-in concurrence estimate 2 sqrt(max(0, 1 - p_plus_hat)).
    pub fn concurrence_hat(&self) -> T {
        self.concurrence_hat
    }

    /// First-order propagated standard error of the concurrence estimate,
    /// infinite when the observed all-'+' frequency is exactly 1.
    pub fn concurrence_stderr(&self) -> T {
        self.concurrence_stderr
    }

    /// Twice the odd-parity fraction, present only when every subsystem
    /// pair was measured.
    pub fn mixedness_hat(&self) -> Option<T> {
        self.mixedness_hat
    }
}

/// Draws multinomial counts from the distribution.
///
/// Identical (distribution, shots, seed) triples give identical counts on
/// any thread count: shots are split into fixed batches, each drawn from
/// its own seed-derived stream, and merged by addition.
pub fn sample_shots<T: Scalar>(
    dist: &OutcomeDistribution<T>,
    shots: u64,
    seed: u64,
) -> Result<SampleSummary<T>> {
    if shots == 0 {
        return Err(Error::InvalidShots);
    }
    let weights: Vec<f64> = dist
        .probs
        .iter()
        .map(|p| p.to_f64().unwrap_or(0.0).max(0.0))
        .collect();
    let index = WeightedIndex::new(&weights).expect("probabilities form a valid distribution");
    let k = weights.len();
    let batches = shots.div_ceil(SHOT_BATCH);
    let counts: Vec<u64> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let batch_shots = SHOT_BATCH.min(shots - b * SHOT_BATCH);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let mut local = vec![0u64; k];
            for _ in 0..batch_shots {
                local[index.sample(&mut rng)] += 1;
            }
            local
        })
        .reduce(
            || vec![0u64; k],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );

    let shots_t = T::real(shots as f64);
    let p_hat = T::real(counts[0] as f64) / shots_t;
    let concurrence_hat = T::real(2.0) * (T::one() - p_hat).max(T::zero()).sqrt();
    let concurrence_stderr = if p_hat >= T::one() {
        T::infinity()
    } else {
        let sigma_p = (p_hat * (T::one() - p_hat) / shots_t).sqrt();
        sigma_p / (T::one() - p_hat).max(T::real(STDERR_FLOOR)).sqrt()
    };
    let mixedness_hat = if dist.is_complete() {
        let odd: u64 = dist
            .outcomes
            .iter()
            .zip(counts.iter())
            .filter(|(s, _)| !s.is_even())
            .map(|(_, &c)| c)
            .sum();
        Some(T::real(2.0) * T::real(odd as f64) / shots_t)
    } else {
        None
    };
    let counts: BTreeMap<SignString, u64> = dist
        .outcomes
        .iter()
        .cloned()
        .zip(counts)
        .collect();
    Ok(SampleSummary {
        counts,
        shots,
        seed,
        measured: dist.measured.clone(),
        subsystem_count: dist.dims.len(),
        p_plus_hat: p_hat,
        concurrence_hat,
        concurrence_stderr,
        mixedness_hat,
    })
}

/// Mixedness estimate from counts: twice the odd-parity fraction. Requires
/// a run that measured every subsystem pair.
pub fn estimate_mixedness<T: Scalar>(summary: &SampleSummary<T>) -> Result<T> {
    summary.mixedness_hat.ok_or(Error::IncompleteMeasurement)
}

/// The exact mixedness 1 - Tr rho^2, cross-checked against an independent
/// dense evaluation where the dense cap allows one.
#[derive(Clone, Debug)]
pub struct MixednessCheck<T: Scalar> {
    /// 1 - Tr rho^2, from the purity of the input.
    pub value: T,
    /// Twice the weight of rho x rho on the globally antisymmetric
    /// subspace, evaluated densely; absent when the register exceeds the
    /// dense operator cap.
    pub projector_side: Option<T>,
}

/// Computes 1 - Tr rho^2 and, within the dense cap, verifies it against
/// twice the globally antisymmetric weight of the doubled state. The two
/// sides are computed by unrelated code paths; disagreement beyond the
/// equality tolerance is an error.
pub fn mixedness_exact<T: Scalar>(rho: &DensityMatrix<T>) -> Result<MixednessCheck<T>> {
    let value = T::one() - purity(rho);
    let dims = rho.dims();
    if dims.two_copy_dim() > DENSE_OPERATOR_CAP {
        return Ok(MixednessCheck {
            value,
            projector_side: None,
        });
    }
    let doubled = kron_matrices(&[rho.matrix().view(), rho.matrix().view()]);
    // Column-wise antisymmetrization evaluates tr(P- (rho x rho)) without
    // building the projector matrix.
    let rows = doubled.nrows();
    let mut trace = T::zero();
    for col in 0..rows {
        let mut column = Array1::from_iter(doubled.column(col).iter().cloned());
        apply_global_projector(&mut column, dims, Sign::Minus)?;
        trace += column[col].re;
    }
    let projector_side = T::real(2.0) * trace;
    if (projector_side - value).abs() > T::TOL_EQ {
        return Err(Error::CrossCheckFailed {
            left: value.to_f64().unwrap_or(f64::NAN),
            right: projector_side.to_f64().unwrap_or(f64::NAN),
            tol: T::TOL_EQ.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(MixednessCheck {
        value,
        projector_side: Some(projector_side),
    })
}
