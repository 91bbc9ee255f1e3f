//! Experiment configuration: a single self-contained JSON file describing
//! the input state, optional depolarization, which copy pairs are measured,
//! and the sampling parameters. No environment variables are consulted.

use ndarray::Array1;
use num_complex::Complex;
use serde::Deserialize;
use twocopy::hilbert::{PureState, SubsystemDims, DEFAULT_TWO_COPY_CAP};
use twocopy::states::{ghz, product_state, random_pure, w_state};

use crate::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub state: StateSpec,
    /// Depolarization weight on the pure input; absent or 1 means pure.
    #[serde(default)]
    pub visibility: Option<f64>,
    #[serde(default)]
    pub measured: MeasuredSpec,
    #[serde(default)]
    pub shots: Option<u64>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output_format: Option<OutputFormat>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StateSpec {
    Ghz { n: usize, d: usize },
    W { n: usize },
    /// One amplitude list per subsystem, each entry a [re, im] pair.
    Product { locals: Vec<Vec<[f64; 2]>> },
    Random { dims: Vec<usize>, seed: u64 },
    Amplitudes { dims: Vec<usize>, amplitudes: Vec<[f64; 2]> },
}

/// Which copy pairs the protocol measures.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum MeasuredSpec {
    Named(String),
    Indices(Vec<usize>),
}

impl Default for MeasuredSpec {
    fn default() -> Self {
        MeasuredSpec::Named("all".into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Config(format!("config parse error: {e}")))
}

impl StateSpec {
    /// Local dimensions the spec will occupy, checked before any allocation.
    fn dims_list(&self) -> Result<Vec<usize>, CliError> {
        match self {
            StateSpec::Ghz { n, d } => Ok(vec![*d; *n]),
            StateSpec::W { n } => Ok(vec![2; *n]),
            StateSpec::Product { locals } => Ok(locals.iter().map(Vec::len).collect()),
            StateSpec::Random { dims, .. } => Ok(dims.clone()),
            StateSpec::Amplitudes { dims, .. } => Ok(dims.clone()),
        }
    }

    /// Short human-readable label echoed into reports.
    pub fn label(&self) -> String {
        match self {
            StateSpec::Ghz { n, d } => format!("ghz(n={n},d={d})"),
            StateSpec::W { n } => format!("w(n={n})"),
            StateSpec::Product { locals } => format!("product({} locals)", locals.len()),
            StateSpec::Random { dims, seed } => {
                let parts: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
                format!("random(dims={},seed={seed})", parts.join("x"))
            }
            StateSpec::Amplitudes { dims, .. } => {
                let parts: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
                format!("amplitudes(dims={})", parts.join("x"))
            }
        }
    }

    /// Builds the pure state, enforcing `cap` on the two-copy amplitude
    /// count. The built-in default stays a hard ceiling for the generator
    /// kinds (ghz, w, product); a smaller cap tightens the bound for all.
    pub fn build(&self, cap: usize) -> Result<PureState<f64>, CliError> {
        let list = self.dims_list()?;
        let dims = SubsystemDims::with_cap(&list, cap)?;
        match self {
            StateSpec::Ghz { n, d } => Ok(ghz(*n, *d)?),
            StateSpec::W { n } => Ok(w_state(*n)?),
            StateSpec::Product { locals } => {
                let vectors: Vec<Array1<Complex<f64>>> = locals
                    .iter()
                    .map(|local| local.iter().map(|&[re, im]| Complex::new(re, im)).collect())
                    .collect();
                Ok(product_state(&vectors)?)
            }
            StateSpec::Random { seed, .. } => Ok(random_pure(&dims, *seed)?),
            StateSpec::Amplitudes { amplitudes, .. } => {
                let amps: Array1<Complex<f64>> = amplitudes
                    .iter()
                    .map(|&[re, im]| Complex::new(re, im))
                    .collect();
                Ok(PureState::new(dims, amps)?)
            }
        }
    }
}

pub fn resolve_measured(spec: &MeasuredSpec, n: usize) -> Result<Vec<usize>, CliError> {
    match spec {
        MeasuredSpec::Named(name) if name == "all" => Ok((0..n).collect()),
        MeasuredSpec::Named(name) if name == "drop_last" => {
            if n < 2 {
                return Err(CliError::Config(
                    "drop_last needs at least two subsystems".into(),
                ));
            }
            Ok((0..n - 1).collect())
        }
        MeasuredSpec::Named(name) => Err(CliError::Config(format!(
            "measured must be \"all\", \"drop_last\", or an index list; got \"{name}\""
        ))),
        MeasuredSpec::Indices(list) => Ok(list.clone()),
    }
}

pub fn measured_label(measured: &[usize]) -> String {
    let parts: Vec<String> = measured.iter().map(|j| j.to_string()).collect();
    parts.join(",")
}

/// Validates visibility and reports whether the input is effectively pure.
pub fn check_visibility(visibility: Option<f64>) -> Result<bool, CliError> {
    match visibility {
        None => Ok(true),
        Some(p) if (0.0..=1.0).contains(&p) => Ok(p == 1.0),
        Some(p) => Err(CliError::Config(format!(
            "visibility must lie in [0, 1], got {p}"
        ))),
    }
}

pub fn effective_cap(flag: Option<usize>) -> usize {
    flag.unwrap_or(DEFAULT_TWO_COPY_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_full_config() {
        let text = r#"{
            "state": {"kind": "ghz", "n": 3, "d": 2},
            "visibility": 1.0,
            "measured": "all",
            "shots": 1000,
            "seed": 7,
            "output_format": "csv"
        }"#;
        let cfg = parse_config(text).unwrap();
        assert!(matches!(cfg.state, StateSpec::Ghz { n: 3, d: 2 }));
        assert_eq!(cfg.shots, Some(1000));
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.output_format, Some(OutputFormat::Csv));
    }

    #[test]
    fn minimal_config_gets_defaults() {
        let cfg = parse_config(r#"{"state": {"kind": "w", "n": 3}}"#).unwrap();
        assert!(cfg.visibility.is_none());
        assert!(cfg.shots.is_none());
        assert_eq!(cfg.seed, 0);
        assert!(matches!(cfg.measured, MeasuredSpec::Named(ref s) if s == "all"));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let err = parse_config(r#"{"state": {"kind": "w", "n": 3}, "shotz": 5}"#).unwrap_err();
        assert!(matches!(err, CliError::Config(_)));
    }

    #[test]
    fn measured_variants_resolve() {
        assert_eq!(
            resolve_measured(&MeasuredSpec::Named("all".into()), 3).unwrap(),
            vec![0, 1, 2]
        );
        assert_eq!(
            resolve_measured(&MeasuredSpec::Named("drop_last".into()), 3).unwrap(),
            vec![0, 1]
        );
        assert_eq!(
            resolve_measured(&MeasuredSpec::Indices(vec![0, 2]), 3).unwrap(),
            vec![0, 2]
        );
        assert!(resolve_measured(&MeasuredSpec::Named("some".into()), 3).is_err());
    }

    #[test]
    fn state_specs_build() {
        let cap = effective_cap(None);
        let ghz = StateSpec::Ghz { n: 3, d: 2 }.build(cap).unwrap();
        assert_eq!(ghz.dims().dims(), &[2, 2, 2]);

        let product = StateSpec::Product {
            locals: vec![vec![[1.0, 0.0], [0.0, 0.0]], vec![[0.6, 0.0], [0.0, 0.8]]],
        }
        .build(cap)
        .unwrap();
        assert_eq!(product.dims().dims(), &[2, 2]);

        let explicit = StateSpec::Amplitudes {
            dims: vec![2, 2],
            amplitudes: vec![
                [std::f64::consts::FRAC_1_SQRT_2, 0.0],
                [0.0, 0.0],
                [0.0, 0.0],
                [std::f64::consts::FRAC_1_SQRT_2, 0.0],
            ],
        }
        .build(cap)
        .unwrap();
        assert_eq!(explicit.dims().total_dim(), 4);
    }

    #[test]
    fn caps_are_enforced_before_generation() {
        let err = StateSpec::Random {
            dims: vec![2, 2, 2],
            seed: 0,
        }
        .build(16)
        .unwrap_err();
        assert!(matches!(err, CliError::Cap(_)), "got {err:?}");
    }

    #[test]
    fn visibility_validation() {
        assert!(check_visibility(None).unwrap());
        assert!(check_visibility(Some(1.0)).unwrap());
        assert!(!check_visibility(Some(0.5)).unwrap());
        assert!(check_visibility(Some(1.5)).is_err());
        assert!(check_visibility(Some(-0.1)).is_err());
    }
}
