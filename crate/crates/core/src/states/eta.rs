//! The nonstationary plane-wave family labelled by the initial momentum.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ModelConfig;
use crate::error::{ensure_finite, Error, Result};
use crate::numerics::{integrate_adaptive_with, AdaptiveOptions, Grid1D, WaveField};

/// Initial-momentum label of an eta-state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EtaLabel {
    eta: f64,
}

impl EtaLabel {
    pub fn new(eta: f64) -> Result<Self> {
        ensure_finite("eta", eta)?;
        Ok(Self { eta })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }
}

/// `(2 pi)^(-1/4)`, the constant modulus of every eta-state.
pub fn eta_amplitude() -> f64 {
    (2.0 * PI).powf(-0.25)
}

/// Normalization carried by the eta-family:
/// `int conj(chi(q|eta)) chi(q|eta') dq = ETA_DELTA_WEIGHT * delta(eta - eta')`.
///
/// With modulus `(2 pi)^(-1/4)` the weight is `(2 pi)^(-1/2) * 2 pi = sqrt(2 pi)`.
pub const ETA_DELTA_WEIGHT: f64 = 2.506_628_274_631_000_7;

/// `chi(q, tau | eta) = (2 pi)^(-1/4) exp{-(i/2)[(eta tau - 2q)(eta + tau F) + F^2 tau^3 / 3]}`.
pub fn eta_state(q: f64, tau: f64, eta: EtaLabel, cfg: &ModelConfig) -> Complex64 {
    eta_state_raw(q, tau, eta.eta, cfg.f_q())
}

#[inline]
pub(crate) fn eta_state_raw(q: f64, tau: f64, eta: f64, f: f64) -> Complex64 {
    let bracket = (eta * tau - 2.0 * q) * (eta + tau * f) + f * f * tau * tau * tau / 3.0;
    Complex64::from_polar(eta_amplitude(), -0.5 * bracket)
}

/// Phase derivative of the eta-state with respect to eta.
fn eta_phase_slope(q: f64, tau: f64, eta: f64, f: f64) -> f64 {
    q - eta * tau - 0.5 * tau * tau * f
}

/// A Gaussian momentum profile `C(eta)` with `|C|^2` a normal density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianProfile {
    pub center: f64,
    /// Standard deviation of `|C(eta)|^2`.
    pub width: f64,
}

impl GaussianProfile {
    pub fn new(center: f64, width: f64) -> Result<Self> {
        ensure_finite("profile center", center)?;
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::Domain(format!("profile width must be positive, got {width}")));
        }
        Ok(Self { center, width })
    }

    pub fn amplitude(&self, eta: f64) -> Complex64 {
        let w = self.width;
        let a = (2.0 * PI * w * w).powf(-0.25);
        Complex64::new(a * (-(eta - self.center).powi(2) / (4.0 * w * w)).exp(), 0.0)
    }

    /// Window holding all but ~1e-16 of the profile.
    pub fn window(&self) -> (f64, f64) {
        (self.center - 17.0 * self.width, self.center + 17.0 * self.width)
    }

    /// `int conj(C_1) C_2 d eta` in closed form.
    pub fn overlap(&self, other: &GaussianProfile) -> f64 {
        let (s1, s2) = (self.width, other.width);
        let d = self.center - other.center;
        let v = s1 * s1 + s2 * s2;
        (2.0 * s1 * s2 / v).sqrt() * (-d * d / (4.0 * v)).exp()
    }
}

/// Output of a node-wise quadrature: the field and whether every node met
/// its error target.
#[derive(Debug, Clone)]
pub struct SuperposedField {
    pub field: WaveField,
    pub converged: bool,
    pub max_error: f64,
}

/// `chi(q, tau) = int C(eta) chi(q, tau | eta) d eta` at every grid node.
pub fn eta_superposition(
    grid: &Grid1D,
    tau: f64,
    profile: &dyn Fn(f64) -> Complex64,
    eta_window: (f64, f64),
    cfg: &ModelConfig,
) -> Result<SuperposedField> {
    let (lo, hi) = eta_window;
    if !(lo < hi) {
        return Err(Error::Domain(format!("empty eta window [{lo}, {hi}]")));
    }
    let f = cfg.f_q();
    let mut converged = true;
    let mut max_error = 0.0f64;
    let mut values = Vec::with_capacity(grid.n_points());
    for q in grid.nodes() {
        let slope = eta_phase_slope(q, tau, lo, f)
            .abs()
            .max(eta_phase_slope(q, tau, hi, f).abs());
        let panels = ((hi - lo) * slope / (2.0 * PI)).ceil() as usize + 16;
        let r = integrate_adaptive_with(
            |eta| profile(eta) * eta_state_raw(q, tau, eta, f),
            lo,
            hi,
            1e-12,
            AdaptiveOptions::with_panels(panels),
        )?;
        converged &= r.converged;
        max_error = max_error.max(r.error);
        values.push(r.value);
    }
    Ok(SuperposedField {
        field: WaveField::new(*grid, tau, values)?,
        converged,
        max_error,
    })
}

/// Closed form of the Gaussian superposition, from the Gaussian integral
/// `int exp(-a eta^2 + b eta + c) = sqrt(pi / a) exp(b^2 / 4a + c)`.
pub fn gaussian_eta_packet(q: f64, tau: f64, profile: &GaussianProfile, cfg: &ModelConfig) -> Complex64 {
    let f = cfg.f_q();
    let w2 = profile.width * profile.width;
    let norm = (2.0 * PI * w2).powf(-0.25) * eta_amplitude();
    let a = Complex64::new(1.0 / (4.0 * w2), 0.5 * tau);
    let b = Complex64::new(profile.center / (2.0 * w2), q - 0.5 * tau * tau * f);
    let c = Complex64::new(
        -profile.center * profile.center / (4.0 * w2),
        q * tau * f - f * f * tau * tau * tau / 6.0,
    );
    (Complex64::new(PI, 0.0) / a).sqrt() * (b * b / (a * 4.0) + c).exp() * norm
}
