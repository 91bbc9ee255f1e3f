//! Reference state families used in examples, tests, and experiments.

use ndarray::{Array1, Array2};
use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hilbert::{PureState, SubsystemDims};
use crate::hilbert::DensityMatrix;
use crate::scalar::Scalar;

/// The N-party, d-level analogue of the maximally entangled pair:
/// an even superposition of |k k ... k> over k = 0..d.
pub fn ghz<T: Scalar>(n: usize, d: usize) -> Result<PureState<T>> {
    if n == 0 {
        return Err(Error::NoSubsystems);
    }
    let dims = SubsystemDims::new(&vec![d; n])?;
    let mut amps = Array1::zeros(dims.total_dim());
    // |k k ... k> sits at k * (d^{n-1} + ... + d + 1).
    let repunit: usize = (0..n).map(|p| d.pow(p as u32)).sum();
    let amp = Complex::new(T::one() / T::real(d as f64).sqrt(), T::zero());
    for k in 0..d {
        amps[k * repunit] = amp;
    }
    PureState::new(dims, amps)
}

/// Even superposition of the N single-excitation qubit basis states.
pub fn w_state<T: Scalar>(n: usize) -> Result<PureState<T>> {
    if n == 0 {
        return Err(Error::NoSubsystems);
    }
    let dims = SubsystemDims::new(&vec![2; n])?;
    let mut amps = Array1::zeros(dims.total_dim());
    let amp = Complex::new(T::one() / T::real(n as f64).sqrt(), T::zero());
    for j in 0..n {
        amps[1 << (n - 1 - j)] = amp;
    }
    PureState::new(dims, amps)
}

/// Tensor product of normalized local kets, one per subsystem.
///
/// Each factor must be normalized already; the assembled product is then
/// normalized again to absorb rounding.
pub fn product_state<T: Scalar>(locals: &[Array1<Complex<T>>]) -> Result<PureState<T>> {
    if locals.is_empty() {
        return Err(Error::NoSubsystems);
    }
    let dims: Vec<usize> = locals.iter().map(|l| l.len()).collect();
    let dims = SubsystemDims::new(&dims)?;
    for local in locals {
        let norm = local.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if (norm - T::one()).abs() > T::TOL_EQ {
            return Err(Error::NotNormalized {
                norm: norm.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    let views: Vec<_> = locals.iter().map(|l| l.view()).collect();
    let amps = crate::hilbert::tensor::kron_vectors(&views);
    PureState::normalized(dims, amps)
}

/// A pure state drawn from the unitarily invariant distribution: i.i.d.
/// complex Gaussian amplitudes, normalized. Fully determined by the seed.
pub fn random_pure<T: Scalar>(dims: &SubsystemDims, seed: u64) -> Result<PureState<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut amps = Array1::zeros(dims.total_dim());
    for a in amps.iter_mut() {
        let re = T::standard_normal(&mut rng);
        let im = T::standard_normal(&mut rng);
        *a = Complex::new(re, im);
    }
    PureState::normalized(dims.clone(), amps)
}

/// Convex mixture p |psi><psi| + (1-p) 1/D: the pure state seen through a
/// depolarizing channel with visibility p.
pub fn depolarized<T: Scalar>(psi: &PureState<T>, p: T) -> Result<DensityMatrix<T>> {
    if p < T::zero() || p > T::one() || !p.is_finite() {
        return Err(Error::InvalidVisibility {
            p: p.to_f64().unwrap_or(f64::NAN),
        });
    }
    let d = psi.dims().total_dim();
    let uniform = (T::one() - p) / T::real(d as f64);
    let mut m = Array2::zeros((d, d));
    let amps = psi.amplitudes();
    for i in 0..d {
        for j in 0..d {
            m[(i, j)] = (amps[i] * amps[j].conj()).scale(p);
        }
        m[(i, i)] += Complex::new(uniform, T::zero());
    }
    // Hermitian, unit trace, and positive by construction for p in [0, 1].
    Ok(DensityMatrix::trusted(psi.dims().clone(), m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{partial_trace, purity};
    use ndarray::array;

    type C = Complex<f64>;

    #[test]
    fn ghz_places_equal_weight_on_repeated_labels() {
        let psi = ghz::<f64>(3, 2).unwrap();
        let amps = psi.amplitudes();
        let r = 1.0 / 2f64.sqrt();
        assert!((amps[0] - C::new(r, 0.0)).norm() < 1e-15);
        assert!((amps[7] - C::new(r, 0.0)).norm() < 1e-15);
        for i in 1..7 {
            assert_eq!(amps[i], C::new(0.0, 0.0));
        }
        // Qutrit version: weight 1/sqrt(3) on |000>, |111>, |222>.
        let q = ghz::<f64>(3, 3).unwrap();
        let r3 = 1.0 / 3f64.sqrt();
        for k in 0..3 {
            assert!((q.amplitudes()[k * 13] - C::new(r3, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn w_state_spans_single_excitations() {
        let psi = w_state::<f64>(3).unwrap();
        let r = 1.0 / 3f64.sqrt();
        for idx in [1usize, 2, 4] {
            assert!((psi.amplitudes()[idx] - C::new(r, 0.0)).norm() < 1e-15);
        }
        assert_eq!(psi.amplitudes()[7], C::new(0.0, 0.0));
    }

    #[test]
    fn w_state_single_qubit_marginal_spectrum() {
        // Each qubit of a three-party W state carries populations 2/3, 1/3.
        let rho = w_state::<f64>(3).unwrap().density();
        for j in 0..3 {
            let marginal = partial_trace(&rho, &[j]).unwrap();
            let evs = marginal.eigenvalues().unwrap();
            assert!((evs[0] - 1.0 / 3.0).abs() < 1e-12);
            assert!((evs[1] - 2.0 / 3.0).abs() < 1e-12);
            assert!((purity(&marginal) - 5.0 / 9.0).abs() < 1e-12);
        }
    }

    #[test]
    fn symmetric_families_are_permutation_invariant() {
        // Every single-subsystem marginal of GHZ and W states is the same
        // matrix, so their purities agree across subsystems.
        for psi in [ghz::<f64>(4, 2).unwrap(), w_state::<f64>(4).unwrap()] {
            let rho = psi.density();
            let base = purity(&partial_trace(&rho, &[0]).unwrap());
            for j in 1..4 {
                let p = purity(&partial_trace(&rho, &[j]).unwrap());
                assert!((p - base).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn product_state_requires_normalized_factors() {
        let good = array![C::new(1.0, 0.0), C::new(0.0, 0.0)];
        let bad = array![C::new(1.0, 0.0), C::new(1.0, 0.0)];
        assert!(product_state(&[good.clone(), bad]).is_err());
        let psi = product_state(&[good.clone(), good.clone(), good]).unwrap();
        assert_eq!(psi.amplitudes()[0], C::new(1.0, 0.0));
        assert_eq!(psi.dims().len(), 3);
    }

    #[test]
    fn product_state_marginals_are_pure() {
        let plus = array![C::new(1.0 / 2f64.sqrt(), 0.0), C::new(1.0 / 2f64.sqrt(), 0.0)];
        let up = array![C::new(1.0, 0.0), C::new(0.0, 0.0)];
        let psi = product_state(&[plus, up]).unwrap();
        let rho = psi.density();
        for j in 0..2 {
            assert!((purity(&partial_trace(&rho, &[j]).unwrap()) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn random_pure_is_seed_deterministic_and_normalized() {
        let dims = SubsystemDims::new(&[2, 3]).unwrap();
        let a = random_pure::<f64>(&dims, 99).unwrap();
        let b = random_pure::<f64>(&dims, 99).unwrap();
        let c = random_pure::<f64>(&dims, 100).unwrap();
        assert_eq!(a.amplitudes(), b.amplitudes());
        assert!((a.overlap(&c).unwrap().norm() - 1.0).abs() > 1e-3);
        let norm: f64 = a.amplitudes().iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn random_pure_batch_is_not_degenerate() {
        // Distinct seeds should not pile onto one ray.
        let dims = SubsystemDims::new(&[2, 2]).unwrap();
        let states: Vec<_> = (0..10)
            .map(|s| random_pure::<f64>(&dims, s).unwrap())
            .collect();
        let mut all_close = true;
        for i in 0..states.len() {
            for j in i + 1..states.len() {
                if states[i].overlap(&states[j]).unwrap().norm() <= 0.99 {
                    all_close = false;
                }
            }
        }
        assert!(!all_close);
    }

    #[test]
    fn haar_mean_marginal_purity_for_two_qubits() {
        // Monte Carlo check of the known mean marginal purity
        // (dA + dB) / (dA dB + 1) = 4/5 for a 2x2 register.
        let dims = SubsystemDims::new(&[2, 2]).unwrap();
        let samples = 1000;
        let mut acc = 0.0;
        for seed in 0..samples {
            let rho = random_pure::<f64>(&dims, seed).unwrap().density();
            acc += purity(&partial_trace(&rho, &[0]).unwrap());
        }
        let mean = acc / samples as f64;
        assert!((mean - 0.8).abs() < 0.02, "mean marginal purity {mean}");
    }

    #[test]
    fn depolarized_endpoints_and_validation() {
        let psi = ghz::<f64>(2, 2).unwrap();
        let pure = depolarized(&psi, 1.0).unwrap();
        assert!((purity(&pure) - 1.0).abs() < 1e-12);
        let mixed = depolarized(&psi, 0.0).unwrap();
        assert!((purity(&mixed) - 0.25).abs() < 1e-12);
        assert!(depolarized(&psi, -0.1).is_err());
        assert!(depolarized(&psi, 1.1).is_err());
    }

    #[test]
    fn depolarized_purity_matches_dense_multiplication() {
        // Direct matrix product oracle at p = 1/2, D = 4.
        let psi = ghz::<f64>(2, 2).unwrap();
        let rho = depolarized(&psi, 0.5).unwrap();
        let m = rho.matrix();
        let sq = m.dot(m);
        let tr: f64 = (0..4).map(|i| sq[(i, i)].re).sum();
        assert!((tr - 0.4375).abs() < 1e-14);
        assert!((purity(&rho) - tr).abs() < 1e-14);
    }

    #[test]
    fn depolarized_output_passes_full_validation() {
        let psi = w_state::<f64>(3).unwrap();
        let rho = depolarized(&psi, 0.7).unwrap();
        assert!(DensityMatrix::new(rho.dims().clone(), rho.matrix().clone()).is_ok());
    }
}
