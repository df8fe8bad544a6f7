use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::states::ModelConfig;

/// When the packet maximum reaches `q`, and how wide the packet is then.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArrivalReport {
    pub tau_q: f64,
    pub omega_q: f64,
    /// Width on arrival for the same data with `F = 0`.
    pub omega_free: f64,
}

/// Arrival time of the maximum at `q > q0` for `p0 > 0`, `F >= 0`.
///
/// `tau_q = sqrt((p0/F)^2 + 2(q - q0)/F) - p0/F` is evaluated in the
/// equivalent form `2(q - q0) / (p0 + sqrt(p0^2 + 2F(q - q0)))`, which has
/// no cancellation at large `F` and reduces to `(q - q0)/p0` at `F = 0`.
pub fn arrival_analysis(q: f64, q0: f64, p0: f64, sigma: f64, cfg: &ModelConfig) -> Result<ArrivalReport> {
    let f = cfg.f_q();
    if !(q > q0) {
        return Err(Error::Domain(format!("arrival needs q > q0, got q = {q}, q0 = {q0}")));
    }
    if !(p0 > 0.0) {
        return Err(Error::Domain(format!("arrival needs p0 > 0, got {p0}")));
    }
    if !(f >= 0.0) {
        return Err(Error::Domain(format!("arrival needs F_q >= 0, got {f}")));
    }
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::Domain(format!("sigma must be positive, got {sigma}")));
    }
    let dist = q - q0;
    let tau_q = 2.0 * dist / (p0 + (p0 * p0 + 2.0 * f * dist).sqrt());
    let width = |t: f64| (sigma * sigma + t * t / (4.0 * sigma * sigma)).sqrt();
    Ok(ArrivalReport {
        tau_q,
        omega_q: width(tau_q),
        omega_free: width(dist / p0),
    })
}

/// Leading large-force form `sigma + (q - q0) / (4 F sigma^3)`.
pub fn large_force_spread(q: f64, q0: f64, sigma: f64, f: f64) -> f64 {
    sigma + (q - q0) / (4.0 * f * sigma.powi(3))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_scenario() {
        let r = arrival_analysis(1.0, 0.0, 1.0, 0.4, &ModelConfig::new(2.0).unwrap()).unwrap();
        assert!((r.tau_q - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-15);
        assert!((r.omega_q - 0.869_955).abs() < 1e-6);
        assert!((r.omega_free - 1.312_44).abs() < 1e-5);
        assert!(r.omega_q < r.omega_free);
    }

    #[test]
    fn quadratic_root_form_agrees() {
        for f in [0.5, 3.0, 40.0] {
            let r = arrival_analysis(2.0, 0.5, 0.7, 1.0, &ModelConfig::new(f).unwrap()).unwrap();
            let root = ((0.7f64 / f).powi(2) + 2.0 * 1.5 / f).sqrt() - 0.7 / f;
            assert!((r.tau_q - root).abs() < 1e-13);
        }
    }

    #[test]
    fn free_case() {
        let r = arrival_analysis(3.0, 1.0, 2.0, 0.5, &ModelConfig::new(0.0).unwrap()).unwrap();
        assert_eq!(r.tau_q, 1.0);
        assert_eq!(r.omega_q, r.omega_free);
    }

    #[test]
    fn domain_errors() {
        let cfg = ModelConfig::new(1.0).unwrap();
        assert!(arrival_analysis(0.0, 0.0, 1.0, 0.4, &cfg).is_err());
        assert!(arrival_analysis(1.0, 0.0, 0.0, 0.4, &cfg).is_err());
        assert!(arrival_analysis(1.0, 0.0, 1.0, 0.4, &ModelConfig::new(-1.0).unwrap()).is_err());
    }
}
