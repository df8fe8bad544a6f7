//! The linear integral of motion `A(tau) = f q + i g p + phi` and its labels.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ModelConfig;
use crate::error::{ensure_finite, Error, Result};

/// Tolerance on the constraint `2 Re(conj(c1) c2) = 1`.
const CONSTRAINT_TOL: f64 = 1e-12;

/// The constants `c1`, `c2` of the integral of motion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IomParams {
    c1: Complex64,
    c2: Complex64,
}

impl IomParams {
    pub fn new(c1: Complex64, c2: Complex64) -> Result<Self> {
        for (name, c) in [("c1", c1), ("c2", c2)] {
            ensure_finite(name, c.re)?;
            ensure_finite(name, c.im)?;
            if c == Complex64::new(0.0, 0.0) {
                return Err(Error::Domain(format!("{name} must be nonzero")));
            }
        }
        let constraint = 2.0 * (c1.conj() * c2).re;
        if (constraint - 1.0).abs() > CONSTRAINT_TOL {
            return Err(Error::Domain(format!(
                "2 Re(conj(c1) c2) must equal 1, got {constraint}"
            )));
        }
        Ok(Self { c1, c2 })
    }

    /// Builds a valid pair from polar data: `|c1|`, the phase `mu1` and the
    /// phase difference `mu2 - mu1` with `|cos(mu2 - mu1)| > 0`; `|c2|` is fixed
    /// by the constraint.
    pub fn from_polar(c1_abs: f64, mu1: f64, delta_mu: f64) -> Result<Self> {
        let cos = delta_mu.cos();
        if !(c1_abs > 0.0) || !(cos > 0.0) {
            return Err(Error::Domain(format!(
                "need |c1| > 0 and cos(mu2 - mu1) > 0, got {c1_abs}, {cos}"
            )));
        }
        let c2_abs = 0.5 / (c1_abs * cos);
        Self::new(
            Complex64::from_polar(c1_abs, mu1),
            Complex64::from_polar(c2_abs, mu1 + delta_mu),
        )
    }

    /// The oscillator pair `c1 = c2 = 1/sqrt(2)`, for which `A(0) = (q + i p)/sqrt(2)`.
    pub fn oscillator() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            c1: Complex64::new(s, 0.0),
            c2: Complex64::new(s, 0.0),
        }
    }

    pub fn c1(&self) -> Complex64 {
        self.c1
    }

    pub fn c2(&self) -> Complex64 {
        self.c2
    }
}

/// `f`, `g`, `phi` of the integral of motion at one instant (`c3 = 0`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IomCoeffs {
    pub f: Complex64,
    pub g: Complex64,
    pub phi: Complex64,
    pub tau: f64,
}

/// `f = c1`, `g = c2 + i c1 tau`, `phi = F c1 tau^2/2 - i F c2 tau`.
pub fn iom_coefficients(p: &IomParams, tau: f64, cfg: &ModelConfig) -> IomCoeffs {
    let i = Complex64::i();
    let f_q = cfg.f_q();
    IomCoeffs {
        f: p.c1,
        g: p.c2 + i * p.c1 * tau,
        phi: p.c1 * (f_q * tau * tau / 2.0) - i * p.c2 * (f_q * tau),
        tau,
    }
}

/// Eigenvalue `z` of `A(tau)` together with the classical initial data it encodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GcsLabel {
    z: Complex64,
    q0: f64,
    p0: f64,
}

impl GcsLabel {
    /// `q0 = 2 Re(conj(c2) z)`, `p0 = 2 Im(conj(c1) z)`.
    pub fn from_z(z: Complex64, p: &IomParams) -> Result<Self> {
        ensure_finite("Re z", z.re)?;
        ensure_finite("Im z", z.im)?;
        Ok(Self {
            z,
            q0: 2.0 * (p.c2.conj() * z).re,
            p0: 2.0 * (p.c1.conj() * z).im,
        })
    }

    /// `z = c1 q0 + i c2 p0`.
    pub fn from_initial(q0: f64, p0: f64, p: &IomParams) -> Result<Self> {
        ensure_finite("q0", q0)?;
        ensure_finite("p0", p0)?;
        Ok(Self {
            z: p.c1 * q0 + Complex64::i() * p.c2 * p0,
            q0,
            p0,
        })
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn q0(&self) -> f64 {
        self.q0
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }
}

/// Coherent-state family member: initial width `sigma_q` and label `z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CsParams {
    sigma_q: f64,
    z: Complex64,
}

impl CsParams {
    pub fn new(sigma_q: f64, z: Complex64) -> Result<Self> {
        if !(sigma_q > 0.0 && sigma_q.is_finite()) {
            return Err(Error::Domain(format!("sigma_q must be positive, got {sigma_q}")));
        }
        ensure_finite("Re z", z.re)?;
        ensure_finite("Im z", z.im)?;
        Ok(Self { sigma_q, z })
    }

    /// `z = q0 / (2 sigma) + i sigma p0`.
    pub fn from_initial(sigma_q: f64, q0: f64, p0: f64) -> Result<Self> {
        ensure_finite("q0", q0)?;
        ensure_finite("p0", p0)?;
        Self::new(sigma_q, Complex64::new(q0 / (2.0 * sigma_q), sigma_q * p0))
    }

    pub fn sigma_q(&self) -> f64 {
        self.sigma_q
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn q0(&self) -> f64 {
        2.0 * self.sigma_q * self.z.re
    }

    pub fn p0(&self) -> f64 {
        self.z.im / self.sigma_q
    }

    /// `c1 = 1/(2 sigma)`, `c2 = sigma`; the constraint holds exactly.
    pub fn iom(&self) -> IomParams {
        IomParams {
            c1: Complex64::new(0.5 / self.sigma_q, 0.0),
            c2: Complex64::new(self.sigma_q, 0.0),
        }
    }

    pub fn label(&self) -> GcsLabel {
        GcsLabel {
            z: self.z,
            q0: self.q0(),
            p0: self.p0(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn coefficients_at_time_zero() {
        let p = IomParams::from_polar(0.7, 0.3, 0.5).unwrap();
        let c = iom_coefficients(&p, 0.0, &ModelConfig::new(2.0).unwrap());
        assert_eq!((c.f, c.g, c.phi), (p.c1(), p.c2(), Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn free_oscillator_pair_at_unit_time() {
        let c = iom_coefficients(&IomParams::oscillator(), 1.0, &ModelConfig::new(0.0).unwrap());
        assert!((c.g - Complex64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!((c.g.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn commutator_is_preserved() {
        let cfg = ModelConfig::new(-1.3).unwrap();
        for (a, mu, d) in [(0.2, 0.0, 1.2), (3.0, 2.0, -0.7), (1.0, 5.5, 0.0)] {
            let p = IomParams::from_polar(a, mu, d).unwrap();
            let c = iom_coefficients(&p, 3.7, &cfg);
            assert!((2.0 * (c.g.conj() * c.f).re - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn constraint_is_enforced() {
        assert!(IomParams::new(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)).is_err());
        assert!(IomParams::new(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)).is_err());
        assert!(IomParams::from_polar(1.0, 0.0, 2.0).is_err());
    }

    #[test]
    fn label_round_trip() {
        let p = IomParams::from_polar(0.9, 1.1, 0.6).unwrap();
        let l = GcsLabel::from_initial(1.5, -0.3, &p).unwrap();
        let back = GcsLabel::from_z(l.z(), &p).unwrap();
        assert!((back.q0() - 1.5).abs() < 1e-14 && (back.p0() + 0.3).abs() < 1e-14);
    }

    #[test]
    fn cs_label_round_trip() {
        let cs = CsParams::from_initial(0.4, 0.0, 1.0).unwrap();
        assert_eq!(cs.z(), Complex64::new(0.0, 0.4));
        assert!((cs.p0() - 1.0).abs() < 1e-15);
        let p = cs.iom();
        assert_eq!(2.0 * (p.c1().conj() * p.c2()).re, 1.0);
        let l = GcsLabel::from_z(cs.z(), &p).unwrap();
        assert!((l.q0() - cs.q0()).abs() < 1e-15 && (l.p0() - cs.p0()).abs() < 1e-15);
        assert!(CsParams::new(0.0, Complex64::new(0.0, 0.0)).is_err());
    }
}
