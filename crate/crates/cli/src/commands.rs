//! The compute and sample workflows behind the CLI subcommands.

use std::time::Instant;

use twocopy::concurrence::{
    concurrence_reduced, concurrence_single_observable, concurrence_two_copy, p_plus_exact, Route,
};
use twocopy::sampling::{
    mixedness_exact, outcome_distribution, outcome_distribution_pure, sample_shots,
    OutcomeDistribution, SampleSummary,
};
use twocopy::states::depolarized;

use crate::config::{
    check_visibility, effective_cap, measured_label, resolve_measured, ExperimentConfig,
};
use crate::report::Report;
use crate::CliError;

/// Standard score of an estimate against its reference. A zero or
/// non-finite spread collapses to 0 for an exact hit and +/-inf otherwise.
fn z_score(estimate: f64, reference: f64, spread: f64) -> f64 {
    if spread.is_finite() && spread > 0.0 {
        (estimate - reference) / spread
    } else if estimate == reference {
        0.0
    } else if estimate > reference {
        f64::INFINITY
    } else {
        f64::NEG_INFINITY
    }
}

fn binomial_spread(p: f64, shots: u64) -> f64 {
    (p.clamp(0.0, 1.0) * (1.0 - p.clamp(0.0, 1.0)) / shots as f64).sqrt()
}

/// Runs all three concurrence routes on a pure state and reports their
/// values, the worst pairwise discrepancy, and the exact symmetric-outcome
/// probability. Wall times go to stderr so the report stays reproducible.
pub fn cmd_compute(
    config: &ExperimentConfig,
    seed_override: Option<u64>,
    cap_flag: Option<usize>,
) -> Result<Report, CliError> {
    if config.shots.is_some() {
        return Err(CliError::Config(
            "`compute` takes no shots; remove the field or run `sample`".into(),
        ));
    }
    if !check_visibility(config.visibility)? {
        return Err(CliError::Config(
            "`compute` requires a pure state (visibility absent or 1): all three routes are \
             pure-state formulas. For mixed inputs run `sample`, which estimates mixedness \
             from odd-parity outcomes and cross-checks it against 1 - Tr rho^2."
                .into(),
        ));
    }

    let psi = config.state.build(effective_cap(cap_flag))?;
    let n = psi.dims().len();
    let measured = resolve_measured(&config.measured, n)?;
    let seed = seed_override.unwrap_or(config.seed);

    let mut values = Vec::new();
    let started = Instant::now();
    let two_copy = concurrence_two_copy(&psi)?;
    eprintln!("route {} took {:?}", Route::TwoCopyA.name(), started.elapsed());
    values.push(two_copy.value());

    let started = Instant::now();
    let reduced = concurrence_reduced(&psi)?;
    eprintln!("route {} took {:?}", Route::ReducedRho.name(), started.elapsed());
    values.push(reduced.value());

    let started = Instant::now();
    let single = concurrence_single_observable(&psi, &measured)?;
    eprintln!(
        "route {} took {:?}",
        Route::SingleObservable.name(),
        started.elapsed()
    );
    values.push(single.value());

    let mut discrepancy: f64 = 0.0;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            discrepancy = discrepancy.max((values[i] - values[j]).abs());
        }
    }
    let p_plus = p_plus_exact(&psi, &measured)?;

    let mut report = Report::new();
    report.push_text("command", "compute");
    report.push_text("state", &config.state.label());
    report.push_text("dims", &psi.dims().to_string());
    report.push_text("measured", &measured_label(&measured));
    report.push_uint("seed", seed);
    report.push_float(
        &format!("concurrence_{}", Route::TwoCopyA.name()),
        two_copy.value(),
    );
    report.push_float(
        &format!("concurrence_{}", Route::ReducedRho.name()),
        reduced.value(),
    );
    report.push_float(
        &format!("concurrence_{}", Route::SingleObservable.name()),
        single.value(),
    );
    report.push_float("max_pairwise_discrepancy", discrepancy);
    report.push_float("p_plus_exact", p_plus);
    Ok(report)
}

/// Simulates the single-setting protocol at finite shots and reports the
/// estimators next to their exact references and standard scores.
pub fn cmd_sample(
    config: &ExperimentConfig,
    seed_override: Option<u64>,
    cap_flag: Option<usize>,
    threads: Option<usize>,
) -> Result<Report, CliError> {
    let shots = config.shots.ok_or_else(|| {
        CliError::Config("`sample` needs a positive `shots` field in the config".into())
    })?;
    let pure = check_visibility(config.visibility)?;
    let psi = config.state.build(effective_cap(cap_flag))?;
    let n = psi.dims().len();
    let measured = resolve_measured(&config.measured, n)?;
    let seed = seed_override.unwrap_or(config.seed);

    let started = Instant::now();
    let density = if pure {
        None
    } else {
        Some(depolarized(&psi, config.visibility.unwrap())?)
    };
    let dist: OutcomeDistribution<f64> = match &density {
        None => outcome_distribution_pure(&psi, &measured)?,
        Some(rho) => outcome_distribution(rho, &measured)?,
    };
    eprintln!("outcome distribution built in {:?}", started.elapsed());

    let started = Instant::now();
    let summary: SampleSummary<f64> = match threads {
        None => sample_shots(&dist, shots, seed)?,
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| CliError::Config(format!("cannot build thread pool: {e}")))?;
            pool.install(|| sample_shots(&dist, shots, seed))?
        }
    };
    eprintln!("{} shots drawn in {:?}", shots, started.elapsed());

    let p_exact = dist.all_plus_prob();
    let c_exact = 2.0 * (1.0 - p_exact).max(0.0).sqrt();

    let mut report = Report::new();
    report.push_text("command", "sample");
    report.push_text("state", &config.state.label());
    report.push_text("dims", &psi.dims().to_string());
    if let Some(p) = config.visibility {
        report.push_float("visibility", p);
    }
    report.push_text("measured", &measured_label(&measured));
    report.push_uint("shots", shots);
    report.push_uint("seed", seed);
    report.push_float("p_plus_hat", summary.p_plus_hat());
    report.push_float("p_plus_exact", p_exact);
    report.push_float(
        "z_p_plus",
        z_score(summary.p_plus_hat(), p_exact, binomial_spread(p_exact, shots)),
    );
    report.push_float("concurrence_hat", summary.concurrence_hat());
    report.push_float("concurrence_exact", c_exact);
    report.push_float("concurrence_stderr", summary.concurrence_stderr());
    report.push_float(
        "z_concurrence",
        z_score(summary.concurrence_hat(), c_exact, summary.concurrence_stderr()),
    );

    // Mixedness accounting only balances when every pair is measured.
    if let Some(m_hat) = summary.mixedness_hat() {
        let odd_exact = dist.odd_parity_mass();
        let check = match &density {
            Some(rho) => mixedness_exact(rho)?,
            None => mixedness_exact(&psi.density())?,
        };
        report.push_float("mixedness_hat", m_hat);
        report.push_float("odd_parity_mass_exact", odd_exact);
        report.push_float("mixedness_exact", check.value);
        if let Some(side) = check.projector_side {
            report.push_float("mixedness_projector_side", side);
        }
        report.push_float(
            "z_mixedness",
            z_score(
                m_hat,
                check.value,
                2.0 * binomial_spread(odd_exact, shots),
            ),
        );
    }

    for (outcome, count) in summary.counts() {
        report.push_uint(&format!("count_{outcome}"), *count);
    }
    Ok(report)
}
