//! Stationary states of the linear potential and their construction from
//! the eta-family.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::eta::eta_state_raw;
use super::ModelConfig;
use crate::error::{ensure_finite, Error, Result};
use crate::numerics::airy::ai;
use crate::numerics::{integrate_adaptive_with, richardson, AdaptiveOptions, Estimate};

/// Energy label of a stationary state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyLabel {
    epsilon: f64,
}

impl EnergyLabel {
    pub fn new(epsilon: f64) -> Result<Self> {
        ensure_finite("epsilon", epsilon)?;
        Ok(Self { epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// `xi = (q + eps / F) (2F)^(1/3)`, always recomputed.
    pub fn xi(&self, q: f64, cfg: &ModelConfig) -> Result<f64> {
        let f = positive_force(cfg)?;
        Ok(xi_raw(q, self.epsilon, f))
    }
}

fn xi_raw(q: f64, eps: f64, f: f64) -> f64 {
    (q + eps / f) * (2.0 * f).cbrt()
}

fn positive_force(cfg: &ModelConfig) -> Result<f64> {
    let f = cfg.f_q();
    if f > 0.0 {
        Ok(f)
    } else {
        Err(Error::Domain(format!("stationary states need F_q > 0, got {f}")))
    }
}

/// `Q_eps(eta) = (2 pi F^2)^(-1/4) exp[(i / 2F)(eta^3/3 - 2 eps eta)]`.
pub fn q_epsilon(eta: f64, eps: EnergyLabel, cfg: &ModelConfig) -> Result<Complex64> {
    ensure_finite("eta", eta)?;
    let f = cfg.f_q();
    if f == 0.0 {
        return Err(Error::Domain("Q_eps is undefined for F_q = 0".into()));
    }
    Ok(q_epsilon_raw(eta, eps.epsilon, f))
}

fn q_epsilon_raw(eta: f64, eps: f64, f: f64) -> Complex64 {
    let modulus = (2.0 * PI * f * f).powf(-0.25);
    Complex64::from_polar(modulus, (eta * eta * eta / 3.0 - 2.0 * eps * eta) / (2.0 * f))
}

/// `chi_eps(q) = 2^(1/3) F^(-1/6) Ai(-xi)`.
pub fn stationary_state(q: f64, eps: EnergyLabel, cfg: &ModelConfig) -> Result<f64> {
    ensure_finite("q", q)?;
    let f = positive_force(cfg)?;
    Ok(2f64.cbrt() * f.powf(-1.0 / 6.0) * ai(-xi_raw(q, eps.epsilon, f)))
}

/// Starting damping that pairs with the default [`TransformOptions`].
pub const DEFAULT_DAMPING: f64 = 0.4;

/// Regularization schedule for [`stationary_via_transform`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransformOptions {
    /// Number of damping halvings fed to the Richardson tableau.
    pub levels: usize,
    /// Per-level absolute quadrature tolerance.
    pub tol: f64,
    /// The Gaussian damping is cut where `exp(-damping eta^2) = exp(-tail)`.
    pub tail: f64,
}

impl Default for TransformOptions {
    fn default() -> Self {
        Self {
            levels: 6,
            tol: 1e-9,
            tail: 24.0,
        }
    }
}

/// `(2 pi)^(-1/2) int conj(Q_eps(eta)) chi(q, tau | eta) d eta`, regularized by
/// `exp(-d eta^2)` at `d = damping, damping/2, ...` and extrapolated to `d = 0`.
///
/// The damped integral is analytic in `d`, so the tableau assumes an
/// integer-power error expansion.
pub fn stationary_via_transform(
    q: f64,
    tau: f64,
    eps: EnergyLabel,
    cfg: &ModelConfig,
    damping: f64,
    opts: TransformOptions,
) -> Result<Estimate<Complex64>> {
    ensure_finite("q", q)?;
    ensure_finite("tau", tau)?;
    let f = positive_force(cfg)?;
    if !(damping > 0.0 && damping.is_finite()) {
        return Err(Error::Domain(format!("damping must be positive, got {damping}")));
    }
    if opts.levels == 0 {
        return Err(Error::Domain("at least one damping level is required".into()));
    }
    let e = eps.epsilon;
    let mut converged = true;
    let mut values = Vec::with_capacity(opts.levels);
    for k in 0..opts.levels {
        let d = damping / 2f64.powi(k as i32);
        let cut = (opts.tail / d).sqrt();
        // total phase swept over [-cut, cut], bounded term by term
        let sweep = cut.powi(3) / (3.0 * f)
            + cut * cut * tau.abs()
            + 2.0 * cut * (e.abs() / f + 0.5 * tau * tau * f + q.abs());
        let panels = (sweep / (2.0 * PI)).ceil() as usize + 16;
        let r = integrate_adaptive_with(
            |eta| q_epsilon_raw(eta, e, f).conj() * eta_state_raw(q, tau, eta, f) * (-d * eta * eta).exp(),
            -cut,
            cut,
            opts.tol,
            AdaptiveOptions::with_panels(panels),
        )?;
        converged &= r.converged;
        values.push(r.value / (2.0 * PI).sqrt());
    }
    if values.len() == 1 {
        return Ok(Estimate {
            value: values[0],
            error: f64::INFINITY,
            converged: false,
        });
    }
    let r = richardson(&values, 2.0);
    Ok(Estimate {
        value: r.value,
        error: r.error,
        converged: converged && r.converged,
    })
}
