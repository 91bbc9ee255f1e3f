//! Self-contained invariant suite behind `twocopy verify`: seeded random
//! states across a deterministic pool of register shapes, with one worst-case
//! margin per check. Failures are report content, not errors.

use ndarray::Array1;
use num_complex::Complex;
use twocopy::concurrence::{
    concurrence_reduced, concurrence_single_observable, concurrence_two_copy, p_plus_exact,
};
use twocopy::hilbert::{apply_global_projector, kron_vectors, PureState, Sign, SubsystemDims};
use twocopy::sampling::outcome_distribution_pure;
use twocopy::states::random_pure;

use crate::report::Report;
use crate::CliError;

pub const TOL_NORMALIZATION: f64 = 1e-12;
pub const TOL_ROUTES: f64 = 1e-8;
pub const TOL_REDUNDANCY: f64 = 1e-10;
pub const TOL_ODD_PARITY: f64 = 1e-10;
pub const TOL_RELAXED_STRICT: f64 = 1e-10;
pub const TOL_FACTORIZATION: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub tolerance: f64,
    pub worst: f64,
    pub trials: usize,
}

impl CheckOutcome {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            tolerance,
            worst: 0.0,
            trials: 0,
        }
    }

    fn record(&mut self, margin: f64) {
        self.trials += 1;
        self.worst = self.worst.max(margin);
    }

    /// Zero trials pass vacuously; the report still shows the count.
    pub fn pass(&self) -> bool {
        self.trials == 0 || self.worst <= self.tolerance
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub max_n: usize,
    pub trials: usize,
    pub seed: u64,
    pub negative_control: bool,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyOutcome {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(CheckOutcome::pass)
    }

    pub fn report(&self) -> Report {
        let mut report = Report::new();
        report.push_text("command", "verify");
        report.push_uint("max_n", self.max_n as u64);
        report.push_uint("trials", self.trials as u64);
        report.push_uint("seed", self.seed);
        report.push_bool("negative_control", self.negative_control);
        if self.trials == 0 {
            report.push_text("warning", "trials=0: every check passes vacuously");
        }
        for check in &self.checks {
            report.push_uint(&format!("check_{}_trials", check.name), check.trials as u64);
            report.push_float(&format!("check_{}_worst", check.name), check.worst);
            report.push_float(&format!("check_{}_tolerance", check.name), check.tolerance);
            report.push_bool(&format!("check_{}_pass", check.name), check.pass());
        }
        report.push_bool("overall_pass", self.all_pass());
        report
    }
}

/// Every {2,3}-valued shape with 2..=max_n parties whose two-copy vector
/// stays small enough for the suite to run in seconds, in a fixed order.
fn shape_pool(max_n: usize) -> Vec<Vec<usize>> {
    let mut pool = Vec::new();
    for n in 2..=max_n {
        for mask in 0..(1usize << n) {
            let shape: Vec<usize> = (0..n)
                .map(|j| if mask >> j & 1 == 1 { 3 } else { 2 })
                .collect();
            let total: usize = shape.iter().product();
            if total * total <= 1 << 14 {
                pool.push(shape);
            }
        }
    }
    pool
}

fn norm2(v: &Array1<Complex<f64>>) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Deviation of a raw amplitude list from unit norm.
pub fn normalization_deviation(amplitudes: &[Complex<f64>]) -> f64 {
    let total: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
    (total - 1.0).abs()
}

/// Runs `trials` seeded random instances of every invariant check across
/// shapes with at most `max_n` parties. With `negative_control` the first
/// normalization probe is deliberately scaled off unit norm, proving the
/// harness reports failures.
pub fn run_verify(
    max_n: usize,
    trials: usize,
    seed: u64,
    negative_control: bool,
) -> Result<VerifyOutcome, CliError> {
    if max_n < 2 {
        return Err(CliError::Config(format!(
            "max_n must be at least 2, got {max_n}"
        )));
    }
    let pool = shape_pool(max_n);
    let mut normalization = CheckOutcome::new("normalization", TOL_NORMALIZATION);
    let mut routes = CheckOutcome::new("route_equivalence", TOL_ROUTES);
    let mut redundancy = CheckOutcome::new("redundancy", TOL_REDUNDANCY);
    let mut odd_parity = CheckOutcome::new("odd_parity_vanishing", TOL_ODD_PARITY);
    let mut relaxed = CheckOutcome::new("relaxed_vs_strict", TOL_RELAXED_STRICT);
    let mut factorization = CheckOutcome::new("factorization", TOL_FACTORIZATION);

    for t in 0..trials {
        let shape = &pool[t % pool.len()];
        let dims = SubsystemDims::new(shape)?;
        let n = dims.len();
        let state_seed = seed.wrapping_add(9973 * t as u64);
        let psi = random_pure::<f64>(&dims, state_seed)?;
        let measured: Vec<usize> = (0..n).collect();

        if negative_control && t == 0 {
            let corrupted: Vec<Complex<f64>> =
                psi.amplitudes().iter().map(|z| z * 1.01).collect();
            normalization.record(normalization_deviation(&corrupted));
        } else {
            normalization.record(normalization_deviation(
                psi.amplitudes().as_slice().expect("contiguous amplitudes"),
            ));
        }

        let a = concurrence_two_copy(&psi)?.value();
        let b = concurrence_reduced(&psi)?.value();
        let c = concurrence_single_observable(&psi, &measured)?.value();
        routes.record((a - b).abs().max((a - c).abs()).max((b - c).abs()));

        let p_full = p_plus_exact(&psi, &measured)?;
        let mut worst_drop: f64 = 0.0;
        for dropped in 0..n {
            let subset: Vec<usize> = (0..n).filter(|&j| j != dropped).collect();
            worst_drop = worst_drop.max((p_full - p_plus_exact(&psi, &subset)?).abs());
        }
        redundancy.record(worst_drop);

        let dist = outcome_distribution_pure(&psi, &measured)?;
        odd_parity.record(dist.odd_parity_mass());

        // The relaxed and strict observables differ by four times the
        // globally antisymmetric projector, which kills doubled pure states:
        // check both the leftover antisymmetric weight and the expectation
        // gap 4(1 - p_plus) vs the squared two-copy concurrence.
        let mut doubled = psi.two_copy();
        apply_global_projector(&mut doubled, &dims, Sign::Minus)?;
        let antisymmetric_weight = 4.0 * norm2(&doubled);
        let expectation_gap = (4.0 * (1.0 - p_full) - a * a).abs();
        relaxed.record(antisymmetric_weight.max(expectation_gap));

        if n < max_n {
            let extra_dim = if t % 2 == 0 { 2 } else { 3 };
            let local_dims = SubsystemDims::new(&[extra_dim])?;
            let phi = random_pure::<f64>(&local_dims, state_seed ^ 0x5eed)?;
            let joint_amps = kron_vectors(&[psi.amplitudes().view(), phi.amplitudes().view()]);
            let mut joint_shape = shape.clone();
            joint_shape.push(extra_dim);
            let joint = PureState::new(SubsystemDims::new(&joint_shape)?, joint_amps)?;
            let c_joint = concurrence_two_copy(&joint)?.value();
            factorization.record((c_joint - a).abs());
        }
    }

    Ok(VerifyOutcome {
        max_n,
        trials,
        seed,
        negative_control,
        checks: vec![
            normalization,
            routes,
            redundancy,
            odd_parity,
            relaxed,
            factorization,
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        let outcome = run_verify(3, 30, 0, false).unwrap();
        assert!(outcome.all_pass());
        for check in &outcome.checks {
            assert!(check.pass(), "{}: worst {}", check.name, check.worst);
        }
        let factorization = outcome
            .checks
            .iter()
            .find(|c| c.name == "factorization")
            .unwrap();
        assert!(factorization.trials > 0);
    }

    #[test]
    fn negative_control_fails_only_normalization() {
        let outcome = run_verify(2, 10, 0, true).unwrap();
        assert!(!outcome.all_pass());
        for check in &outcome.checks {
            if check.name == "normalization" {
                assert!(!check.pass());
            } else {
                assert!(check.pass(), "{} should pass", check.name);
            }
        }
    }

    #[test]
    fn zero_trials_pass_vacuously_with_warning() {
        let outcome = run_verify(3, 0, 0, false).unwrap();
        assert!(outcome.all_pass());
        let report = outcome.report();
        assert!(report.get("warning").is_some());
        assert!(matches!(
            report.get("overall_pass"),
            Some(crate::report::Value::Bool(true))
        ));
    }

    #[test]
    fn max_n_two_skips_factorization_but_still_passes() {
        let outcome = run_verify(2, 8, 1, false).unwrap();
        assert!(outcome.all_pass());
        let factorization = outcome
            .checks
            .iter()
            .find(|c| c.name == "factorization")
            .unwrap();
        assert_eq!(factorization.trials, 0);
    }

    #[test]
    fn rejects_single_party_registers() {
        assert!(matches!(
            run_verify(1, 5, 0, false),
            Err(CliError::Config(_))
        ));
    }

    #[test]
    fn shape_pool_is_deterministic_and_bounded() {
        let pool = shape_pool(3);
        assert_eq!(pool[0], vec![2, 2]);
        assert!(pool.iter().all(|s| {
            let total: usize = s.iter().product();
            total * total <= 1 << 14
        }));
        assert_eq!(pool, shape_pool(3));
    }
}
