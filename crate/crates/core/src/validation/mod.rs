//! Named verification suites with reproducible pass/fail reports.

mod airy;
mod completeness;
mod cross_check;
mod orthogonality;
mod residual;
mod symmetry;

pub use airy::{airy_connection_suite, smeared_energy_overlap, AiryConnectionConfig};
pub use completeness::{completeness_suite, CompletenessConfig};
pub use cross_check::{figure_run, propagator_cross_check_suite, CrossCheckConfig, FigureRun, GridSpec};
pub use orthogonality::{orthogonality_suite, OrthogonalityConfig};
pub use residual::{schrodinger_residual_suite, schrodinger_residuals, ResidualConfig, ResidualFamily};
pub use symmetry::{symmetry_operator_suite, SymmetryConfig};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const DEFAULT_SEED: u64 = 1729;

/// CLI names of the suites, in run order.
pub const SUITE_NAMES: [&str; 6] = [
    "schrodinger_residual",
    "orthogonality",
    "completeness",
    "symmetry_operator",
    "airy_connection",
    "propagator_cross_check",
];

/// Accepted ratio of errors between two resolutions for order-2 stencils.
pub const ORDER2_RATIO: (f64, f64) = (3.4, 4.6);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    #[serde(serialize_with = "ser_error", deserialize_with = "de_error")]
    pub error: f64,
    pub tol: f64,
    pub passed: bool,
}

impl Check {
    /// Passes iff `error <= tol`; a NaN error never passes.
    pub fn new(name: impl Into<String>, error: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            error,
            tol,
            passed: error <= tol,
        }
    }

    /// Two-resolution order check: `error` is the distance of the ratio from
    /// the nearest end of [`ORDER2_RATIO`], zero inside it.
    pub fn order2(name: impl Into<String>, coarse: f64, fine: f64) -> Self {
        let ratio = coarse / fine;
        let (lo, hi) = ORDER2_RATIO;
        let outside = if ratio.is_nan() { f64::NAN } else { (lo - ratio).max(ratio - hi).max(0.0) };
        Self::new(name, outside, 0.0)
    }
}

fn ser_error<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_none()
    }
}

fn de_error<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub config_digest: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new<C: Serialize>(suite: &str, seed: u64, config: &C, checks: Vec<Check>) -> Result<Self> {
        Ok(Self {
            suite: suite.to_string(),
            seed,
            config_digest: config_digest(config)?,
            checks,
        })
    }

    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Looks a check up by name.
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Hex SHA-256 of the compact JSON of `config`.
pub fn config_digest<C: Serialize>(config: &C) -> Result<String> {
    let json = serde_json::to_vec(config)?;
    Ok(Sha256::digest(&json).iter().map(|b| format!("{b:02x}")).collect())
}

/// Runs a suite by name with its default configuration.
pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    match name {
        "schrodinger_residual" => {
            let mut merged = Vec::new();
            let mut digests = Vec::new();
            for family in ResidualFamily::defaults() {
                let cfg = ResidualConfig::new(family);
                let r = schrodinger_residual_suite(&cfg, seed)?;
                digests.push(r.config_digest);
                merged.extend(r.checks);
            }
            Ok(SuiteReport {
                suite: name.to_string(),
                seed,
                config_digest: config_digest(&digests)?,
                checks: merged,
            })
        }
        "orthogonality" => orthogonality_suite(&OrthogonalityConfig::default(), seed),
        "completeness" => completeness_suite(&CompletenessConfig::default(), seed),
        "symmetry_operator" => symmetry_operator_suite(&SymmetryConfig::default(), seed),
        "airy_connection" => airy_connection_suite(&AiryConnectionConfig::default(), seed),
        "propagator_cross_check" => propagator_cross_check_suite(&CrossCheckConfig::default(), seed),
        other => Err(Error::Config(format!(
            "unknown suite '{other}'; available: {}",
            SUITE_NAMES.join(", ")
        ))),
    }
}

pub(crate) fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_semantics() {
        assert!(Check::new("a", 1e-7, 1e-6).passed);
        assert!(Check::new("a", 1e-6, 1e-6).passed);
        assert!(!Check::new("a", 2e-6, 1e-6).passed);
        assert!(!Check::new("a", f64::NAN, 1.0).passed);
        assert!(Check::order2("o", 4.0, 1.0).passed);
        assert!(!Check::order2("o", 2.0, 1.0).passed);
        assert!(!Check::order2("o", 0.0, 0.0).passed);
    }

    #[test]
    fn one_failure_fails_the_suite() {
        let checks = vec![Check::new("a", 0.0, 1.0), Check::new("b", 2.0, 1.0)];
        let r = SuiteReport::new("x", 1, &"cfg", checks).unwrap();
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
        assert!(!SuiteReport::new("x", 1, &"cfg", vec![]).unwrap().passed());
    }

    #[test]
    fn json_round_trip_keeps_non_finite() {
        let r = SuiteReport::new("x", 3, &1.5, vec![Check::new("inf", f64::INFINITY, 1.0)]).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"error\":null"));
        let back: SuiteReport = serde_json::from_str(&s).unwrap();
        assert!(back.checks[0].error.is_nan() && !back.checks[0].passed);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        for key in ["suite", "seed", "config_digest", "checks"] {
            assert!(v.get(key).is_some());
        }
    }

    #[test]
    fn digest_is_stable() {
        let a = config_digest(&("a", 1)).unwrap();
        assert_eq!(a.len(), 64);
        assert_eq!(a, config_digest(&("a", 1)).unwrap());
        assert_ne!(a, config_digest(&("a", 2)).unwrap());
    }

    #[test]
    fn unknown_suite_lists_available() {
        let e = run_suite("nope", 0).unwrap_err().to_string();
        assert!(e.contains("orthogonality") && e.contains("airy_connection"));
    }
}
