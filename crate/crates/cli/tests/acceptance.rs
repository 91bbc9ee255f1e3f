//! Acceptance gate: eight checks, one test and one printed verdict line
//! each. Tolerances are pinned here, next to the assertions they guard.

use std::process::Command;
use std::time::Instant;

use ndarray::{Array1, Array2};
use num_complex::Complex;
use twocopy::concurrence::{
    build_dense_a, build_dense_a_tilde, concurrence_reduced, concurrence_single_observable,
    concurrence_two_copy, enumerate_even_sign_strings, p_plus_exact,
};
use twocopy::hilbert::{
    dense_product_projector, global_swap_matrix, kron_vectors, purity, PureState, Sign,
    SubsystemDims,
};
use twocopy::sampling::{
    outcome_distribution, outcome_distribution_pure, sample_shots, SHOT_BATCH,
};
use twocopy::states::{depolarized, ghz, product_state, random_pure, w_state};

type C = Complex<f64>;

fn verdict(name: &str, pass: bool, detail: &str) {
    println!(
        "acceptance {name}: {} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
}

fn all_measured(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn route_spread(psi: &PureState<f64>) -> f64 {
    let a = concurrence_two_copy(psi).unwrap().value();
    let b = concurrence_reduced(psi).unwrap().value();
    let c = concurrence_single_observable(psi, &all_measured(psi.dims().len()))
        .unwrap()
        .value();
    (a - b).abs().max((a - c).abs()).max((b - c).abs())
}

#[test]
fn criterion_1_route_equivalence_on_haar_states() {
    const TOL: f64 = 1e-8;
    const BUDGET_SECONDS: f64 = 60.0;
    let shapes: Vec<Vec<usize>> = vec![
        vec![2, 2],
        vec![2, 3],
        vec![3, 3],
        vec![2, 2, 2],
        vec![2, 2, 3],
        vec![2, 3, 3],
        vec![3, 3, 3],
        vec![2, 2, 2, 2],
        vec![2, 2, 2, 3],
        vec![2, 2, 3, 3],
        vec![2, 3, 3, 3],
        vec![3, 3, 3, 3],
    ];
    let seeds_per_shape = 17;
    let started = Instant::now();
    let mut worst: f64 = 0.0;
    let mut states = 0usize;
    for shape in &shapes {
        let dims = SubsystemDims::new(shape).unwrap();
        for seed in 0..seeds_per_shape {
            let psi = random_pure::<f64>(&dims, 1_000 + seed).unwrap();
            worst = worst.max(route_spread(&psi));
            states += 1;
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    let pass = states >= 200 && worst < TOL && elapsed < BUDGET_SECONDS;
    verdict(
        "route_equivalence",
        pass,
        &format!("{states} states, worst spread {worst:.3e}, {elapsed:.1}s"),
    );
    assert!(pass, "worst {worst:.3e} over {states} states in {elapsed:.1}s");
}

#[test]
fn criterion_2_closed_form_values() {
    const TOL: f64 = 1e-9;
    let product = product_state(&[
        Array1::from(vec![C::new(0.6, 0.0), C::new(0.0, 0.8)]),
        Array1::from(vec![C::new(1.0, 0.0), C::new(0.0, 0.0)]),
    ])
    .unwrap();
    let cases: Vec<(&str, PureState<f64>, f64)> = vec![
        ("bell", ghz(2, 2).unwrap(), 1.0),
        ("ghz3", ghz(3, 2).unwrap(), 1.5f64.sqrt()),
        ("ghz4", ghz(4, 2).unwrap(), 7.0f64.sqrt() / 2.0),
        ("w3", w_state(3).unwrap(), 2.0 / 3.0f64.sqrt()),
        ("product", product, 0.0),
    ];
    let mut worst: f64 = 0.0;
    for (name, psi, expected) in &cases {
        let n = psi.dims().len();
        for value in [
            concurrence_two_copy(psi).unwrap().value(),
            concurrence_reduced(psi).unwrap().value(),
            concurrence_single_observable(psi, &all_measured(n))
                .unwrap()
                .value(),
        ] {
            worst = worst.max((value - expected).abs());
        }
        // Independent confirmation through the dense strict observable.
        if n <= 3 {
            let a = build_dense_a::<f64>(psi.dims()).unwrap();
            let dense_value = a.expectation(&psi.two_copy()).unwrap().max(0.0).sqrt();
            worst = worst.max((dense_value - expected).abs());
            let _ = name;
        }
    }
    let pass = worst < TOL;
    verdict("closed_forms", pass, &format!("worst deviation {worst:.3e}"));
    assert!(pass, "worst {worst:.3e}");
}

#[test]
fn criterion_3_operator_identities() {
    const TOL: f64 = 1e-10;
    let mut worst_entry: f64 = 0.0;
    for shape in [vec![2, 2], vec![2, 2, 2]] {
        let dims = SubsystemDims::new(&shape).unwrap();
        let n = dims.len();
        let d2 = dims.two_copy_dim();

        // Strict observable as four times the even-sign-string sum,
        // all-plus excluded.
        let mut string_sum: Array2<C> = Array2::zeros((d2, d2));
        for string in enumerate_even_sign_strings(n).unwrap() {
            if string.is_all_plus() {
                continue;
            }
            let assignments: Vec<(usize, Sign)> =
                string.signs().iter().copied().enumerate().collect();
            string_sum = string_sum + dense_product_projector::<f64>(&dims, &assignments).unwrap();
        }
        string_sum.mapv_inplace(|z| z * 4.0);

        let a = build_dense_a::<f64>(&dims).unwrap();
        for (x, y) in string_sum.iter().zip(a.matrix().iter()) {
            worst_entry = worst_entry.max((x - y).norm());
        }

        // Relaxed minus strict equals four times the globally antisymmetric
        // projector, i.e. 2(1 - S).
        let a_tilde = build_dense_a_tilde::<f64>(&dims).unwrap();
        let swap = global_swap_matrix::<f64>(&dims).unwrap();
        for i in 0..d2 {
            for j in 0..d2 {
                let lhs = a_tilde.matrix()[(i, j)] - a.matrix()[(i, j)];
                let identity = if i == j { C::new(1.0, 0.0) } else { C::new(0.0, 0.0) };
                let rhs = (identity - swap[(i, j)]) * 2.0;
                worst_entry = worst_entry.max((lhs - rhs).norm());
            }
        }

        // On doubled pure states the two observables agree in expectation.
        for seed in 0..20u64 {
            let psi = random_pure::<f64>(&dims, 2_000 + seed).unwrap();
            let doubled = psi.two_copy();
            let gap = a_tilde.expectation(&doubled).unwrap() - a.expectation(&doubled).unwrap();
            worst_entry = worst_entry.max(gap.abs());
        }
    }
    let pass = worst_entry < TOL;
    verdict("operator_identities", pass, &format!("worst entry {worst_entry:.3e}"));
    assert!(pass, "worst {worst_entry:.3e}");
}

#[test]
fn criterion_4_redundancy_of_the_last_pair() {
    const TOL: f64 = 1e-10;
    let shapes: Vec<Vec<usize>> = vec![
        vec![2, 2],
        vec![2, 3],
        vec![3, 3],
        vec![2, 2, 2],
        vec![2, 3, 3],
        vec![2, 2, 2, 2],
        vec![2, 2, 3, 3],
        vec![3, 3, 3, 3],
    ];
    let mut worst: f64 = 0.0;
    for shape in &shapes {
        let dims = SubsystemDims::new(shape).unwrap();
        let n = dims.len();
        for seed in 0..10u64 {
            let psi = random_pure::<f64>(&dims, 3_000 + seed).unwrap();
            let full = p_plus_exact(&psi, &all_measured(n)).unwrap();
            for dropped in 0..n {
                let subset: Vec<usize> = (0..n).filter(|&j| j != dropped).collect();
                let partial = p_plus_exact(&psi, &subset).unwrap();
                worst = worst.max((full - partial).abs());
            }
        }
    }
    let pass = worst < TOL;
    verdict("redundancy", pass, &format!("worst gap {worst:.3e}"));
    assert!(pass, "worst {worst:.3e}");
}

#[test]
fn criterion_5_odd_parity_accounting() {
    const TOL_EXACT: f64 = 1e-10;
    let mut worst_pure: f64 = 0.0;
    for shape in [vec![2, 2], vec![2, 3], vec![2, 2, 2], vec![3, 3, 3]] {
        let dims = SubsystemDims::new(&shape).unwrap();
        let n = dims.len();
        for seed in 0..10u64 {
            let psi = random_pure::<f64>(&dims, 4_000 + seed).unwrap();
            let dist = outcome_distribution_pure(&psi, &all_measured(n)).unwrap();
            worst_pure = worst_pure.max(dist.odd_parity_mass());
        }
    }

    // Depolarized Bell at visibility one half.
    let bell = ghz::<f64>(2, 2).unwrap();
    let rho = depolarized(&bell, 0.5).unwrap();
    let dist = outcome_distribution(&rho, &[0, 1]).unwrap();
    let mixedness = 1.0 - purity(&rho);
    let odd_mass = dist.odd_parity_mass();
    let exact_gap = (2.0 * odd_mass - mixedness).abs();

    let shots = 100_000u64;
    let summary = sample_shots(&dist, shots, 29).unwrap();
    let m_hat = summary.mixedness_hat().unwrap();
    let spread = 2.0 * (odd_mass * (1.0 - odd_mass) / shots as f64).sqrt();
    let sampled_gap = (m_hat - mixedness).abs();

    let pass = worst_pure < TOL_EXACT && exact_gap < TOL_EXACT && sampled_gap < 3.0 * spread;
    verdict(
        "odd_parity",
        pass,
        &format!(
            "pure worst {worst_pure:.3e}, exact gap {exact_gap:.3e}, sampled gap {sampled_gap:.3e} vs 3 sigma {:.3e}",
            3.0 * spread
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_6_estimator_convergence_rate() {
    const BAND: (f64, f64) = (0.35, 0.7);
    let bell = ghz::<f64>(2, 2).unwrap();
    let dist = outcome_distribution_pure(&bell, &[0, 1]).unwrap();
    let shot_levels = [10_000u64, 40_000, 160_000];
    let seeds = 0..20u64;

    let mut mean_errors = Vec::new();
    for &shots in &shot_levels {
        let mut total = 0.0;
        let mut count = 0usize;
        for seed in seeds.clone() {
            let summary = sample_shots(&dist, shots, seed).unwrap();
            total += (summary.concurrence_hat() - 1.0).abs();
            count += 1;
        }
        mean_errors.push(total / count as f64);
    }
    let ratio_a = mean_errors[1] / mean_errors[0];
    let ratio_b = mean_errors[2] / mean_errors[1];
    let pass = (BAND.0..=BAND.1).contains(&ratio_a) && (BAND.0..=BAND.1).contains(&ratio_b);
    verdict(
        "estimator_convergence",
        pass,
        &format!(
            "mean errors {:.3e} {:.3e} {:.3e}, ratios {ratio_a:.3} {ratio_b:.3}",
            mean_errors[0], mean_errors[1], mean_errors[2]
        ),
    );
    assert!(pass, "ratios {ratio_a:.3} {ratio_b:.3} outside {BAND:?}");
}

#[test]
fn criterion_7_factorization_under_uncorrelated_parties() {
    const TOL: f64 = 1e-8;
    let mut worst: f64 = 0.0;
    let mut instances = 0usize;
    for joint_n in [3usize, 4] {
        for seed in 0..25u64 {
            let base_shape = vec![2usize; joint_n - 1];
            let dims = SubsystemDims::new(&base_shape).unwrap();
            let psi = random_pure::<f64>(&dims, 5_000 + seed).unwrap();
            let extra_dim = if seed % 2 == 0 { 2 } else { 3 };
            let local = SubsystemDims::new(&[extra_dim]).unwrap();
            let phi = random_pure::<f64>(&local, 6_000 + seed).unwrap();
            let joint_amps = kron_vectors(&[psi.amplitudes().view(), phi.amplitudes().view()]);
            let mut joint_shape = base_shape.clone();
            joint_shape.push(extra_dim);
            let joint =
                PureState::new(SubsystemDims::new(&joint_shape).unwrap(), joint_amps).unwrap();
            let c_joint = concurrence_two_copy(&joint).unwrap().value();
            let c_base = concurrence_two_copy(&psi).unwrap().value();
            worst = worst.max((c_joint - c_base).abs());
            instances += 1;
        }
    }
    let pass = instances >= 50 && worst < TOL;
    verdict(
        "factorization",
        pass,
        &format!("{instances} instances, worst gap {worst:.3e}"),
    );
    assert!(pass, "worst {worst:.3e} over {instances}");
}

#[test]
fn criterion_8_sampling_determinism() {
    // Library level: fixed seed, thread counts 1 and 4, plus shot counts
    // that are not batch-aligned.
    let w4 = w_state::<f64>(4).unwrap();
    let dist = outcome_distribution_pure(&w4, &[0, 1, 2, 3]).unwrap();
    let shots = 3 * SHOT_BATCH + 1717;
    let baseline = sample_shots(&dist, shots, 99).unwrap();
    let mut library_ok = true;
    for threads in [1usize, 4] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        let run = pool.install(|| sample_shots(&dist, shots, 99)).unwrap();
        library_ok &= run.counts() == baseline.counts();
    }

    // Binary level: byte-identical report files across runs and thread
    // counts.
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("det.json");
    std::fs::write(
        &config_path,
        r#"{"state": {"kind": "ghz", "n": 3, "d": 2}, "shots": 250000, "seed": 31}"#,
    )
    .unwrap();
    let mut outputs = Vec::new();
    for (tag, threads) in [("a", None), ("b", None), ("c", Some("1")), ("d", Some("4"))] {
        let out = dir.path().join(format!("{tag}.json"));
        let mut args = vec![
            "sample".to_string(),
            "--config".into(),
            config_path.to_str().unwrap().into(),
            "--out".into(),
            out.to_str().unwrap().into(),
        ];
        if let Some(t) = threads {
            args.push("--threads".into());
            args.push(t.into());
        }
        let status = Command::new(env!("CARGO_BIN_EXE_twocopy"))
            .args(&args)
            .status()
            .unwrap();
        assert!(status.success());
        outputs.push(std::fs::read(&out).unwrap());
    }
    let binary_ok = outputs.windows(2).all(|w| w[0] == w[1]);

    let pass = library_ok && binary_ok;
    verdict(
        "sampling_determinism",
        pass,
        &format!("library identical: {library_ok}, binary identical: {binary_ok}"),
    );
    assert!(pass);
}
