use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{integrate_adaptive_with, AdaptiveOptions, Estimate};
use crate::states::{eta_state, EtaLabel, ModelConfig};

/// Gaussian-windowed Wigner transform of an eta-state,
/// `(1/2 pi) int conj(chi(q - s/2)) chi(q + s/2) exp(-i p s) exp(-s^2 / (2 w^2)) ds`.
///
/// For an eta-state this is `(w / 2 pi) exp(-w^2 (p - eta - F tau)^2 / 2)`, a ridge
/// of width `1/w` in `p` that tends to a delta at `p = eta + F tau` as `w` grows.
pub fn wigner_probe(
    eta: EtaLabel,
    p: f64,
    q: f64,
    tau: f64,
    window_sigma: f64,
    cfg: &ModelConfig,
) -> Result<Estimate<f64>> {
    if !(window_sigma > 0.0 && window_sigma.is_finite()) {
        return Err(Error::Domain(format!("window width must be positive, got {window_sigma}")));
    }
    for (name, v) in [("p", p), ("q", q), ("tau", tau)] {
        crate::error::ensure_finite(name, v)?;
    }
    let cut = 9.0 * window_sigma;
    let drift = (eta.eta() + cfg.f_q() * tau - p).abs();
    let panels = (2.0 * cut * drift / (2.0 * PI)).ceil() as usize + 16;
    let r = integrate_adaptive_with(
        |s| {
            eta_state(q - 0.5 * s, tau, eta, cfg).conj()
                * eta_state(q + 0.5 * s, tau, eta, cfg)
                * Complex64::from_polar((-s * s / (2.0 * window_sigma * window_sigma)).exp(), -p * s)
        },
        -cut,
        cut,
        1e-13,
        AdaptiveOptions::with_panels(panels),
    )?;
    Ok(r.map(|v| v.re / (2.0 * PI)))
}
