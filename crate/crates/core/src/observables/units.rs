use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};
use crate::states::{CsParams, ModelConfig};

pub const DEFAULT_SEMICLASSICAL_THRESHOLD: f64 = 0.01;

/// Mass, action and length scales plus the physical force, in any
/// consistent unit system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitsMap {
    m: f64,
    hbar: f64,
    l: f64,
    f_x: f64,
}

impl UnitsMap {
    pub fn new(m: f64, hbar: f64, l: f64, f_x: f64) -> Result<Self> {
        for (name, v) in [("m", m), ("hbar", hbar), ("l", l)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        ensure_finite("F_x", f_x)?;
        Ok(Self { m, hbar, l, f_x })
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn f_x(&self) -> f64 {
        self.f_x
    }

    pub fn q_of_x(&self, x: f64) -> f64 {
        x / self.l
    }

    pub fn x_of_q(&self, q: f64) -> f64 {
        q * self.l
    }

    /// `tau = hbar t / (m l^2)`
    pub fn tau_of_t(&self, t: f64) -> f64 {
        self.hbar * t / (self.m * self.l * self.l)
    }

    pub fn t_of_tau(&self, tau: f64) -> f64 {
        tau * self.m * self.l * self.l / self.hbar
    }

    /// `p_q = l p_x / hbar`
    pub fn p_q_of_p_x(&self, p_x: f64) -> f64 {
        self.l * p_x / self.hbar
    }

    pub fn p_x_of_p_q(&self, p_q: f64) -> f64 {
        p_q * self.hbar / self.l
    }

    /// `F_q = m l^3 F / hbar^2` for an arbitrary dimensional force.
    pub fn f_q_of_f_x(&self, f_x: f64) -> f64 {
        self.m * self.l.powi(3) * f_x / (self.hbar * self.hbar)
    }

    pub fn f_x_of_f_q(&self, f_q: f64) -> f64 {
        f_q * self.hbar * self.hbar / (self.m * self.l.powi(3))
    }

    pub fn model(&self) -> ModelConfig {
        ModelConfig::new(self.f_q_of_f_x(self.f_x)).expect("finite by construction")
    }
}

/// Coherent state in dimensional variables.
///
/// `cs` carries the dimensionless width and label; with `sigma_x = l sigma_q`,
/// `x0 = l q0`, `p0x = hbar p0 / l` the closed form is
///
/// `Psi = [(sigma_x + i hbar t/(2 m sigma_x)) sqrt(2 pi)]^(-1/2)
///        exp{(i/hbar)[p_x(t) x - p0x^2 t/(2m) - (F/m)(F t/3 + p0x) t^2/2]
///            - (x - x(t))^2 / (4(sigma_x^2 + i hbar t/(2m)))}`.
///
/// Returns `(Psi, |Psi|^2)`.
pub fn dimensionalize(cs: &CsParams, units: &UnitsMap, x: f64, t: f64) -> (Complex64, f64) {
    let (m, hbar, fx) = (units.m, units.hbar, units.f_x);
    let sx = units.x_of_q(cs.sigma_q());
    let x0 = units.x_of_q(cs.q0());
    let p0x = units.p_x_of_p_q(cs.p0());
    let x_t = x0 + p0x * t / m + fx * t * t / (2.0 * m);
    let p_t = p0x + fx * t;
    let d = x - x_t;
    let phase = (p_t * x - p0x * p0x * t / (2.0 * m) - fx / m * (fx * t / 3.0 + p0x) * t * t / 2.0) / hbar;
    let gauss = Complex64::new(d * d, 0.0) / (Complex64::new(sx * sx, hbar * t / (2.0 * m)) * 4.0);
    let pref = Complex64::new(sx, hbar * t / (2.0 * m * sx)) * (2.0 * PI).sqrt();
    let psi = Complex64::new(-gauss.re, phase - gauss.im).exp() / pref.sqrt();
    (psi, psi.norm_sqr())
}

/// Semiclassicality diagnostics at time `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SemiclassReport {
    /// `(hbar t / (2 sigma_x))^2`
    pub lhs: f64,
    /// `(p0x t + F t^2 / 2)^2`
    pub rhs: f64,
    /// `lhs / rhs`; `+inf` when `rhs = 0`.
    pub ratio: f64,
    /// `2 pi hbar / p0x`; `+inf` when `p0x = 0`.
    pub lambda: f64,
    /// `lambda / |1 + lambda F t / (4 pi hbar)|`, to be compared with `4 pi sigma_x`.
    pub lambda_lhs: f64,
    pub lambda_rhs: f64,
    pub verdict: bool,
}

pub fn semiclassicality(t: f64, p0x: f64, sigma_x: f64, units: &UnitsMap, threshold: f64) -> Result<SemiclassReport> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("t must be positive, got {t}")));
    }
    if !(sigma_x > 0.0 && sigma_x.is_finite()) {
        return Err(Error::Domain(format!("sigma_x must be positive, got {sigma_x}")));
    }
    ensure_finite("p0x", p0x)?;
    let (hbar, fx) = (units.hbar, units.f_x);
    let lhs = (hbar * t / (2.0 * sigma_x)).powi(2);
    let rhs = (p0x * t + fx * t * t / 2.0).powi(2);
    let ratio = if rhs > 0.0 { lhs / rhs } else { f64::INFINITY };
    let lambda = if p0x != 0.0 { 2.0 * PI * hbar / p0x } else { f64::INFINITY };
    let lambda_lhs = if p0x != 0.0 {
        lambda / (1.0 + lambda * fx * t / (4.0 * PI * hbar)).abs()
    } else {
        f64::INFINITY
    };
    Ok(SemiclassReport {
        lhs,
        rhs,
        ratio,
        lambda,
        lambda_lhs,
        lambda_rhs: 4.0 * PI * sigma_x,
        verdict: ratio < threshold,
    })
}
