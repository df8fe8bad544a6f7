use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::classical_trajectory;
use crate::error::{Error, Result};
use crate::numerics::{first_derivative, WaveField};
use crate::states::{iom_coefficients, GcsLabel, IomParams, ModelConfig};

/// First and second moments of a state at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentSet {
    pub mean_q: f64,
    pub mean_p: f64,
    pub sigma_q: f64,
    pub sigma_p: f64,
    /// Symmetrized covariance `<(dq dp + dp dq)/2>`.
    pub sigma_qp: f64,
    pub tau: f64,
}

impl MomentSet {
    /// `sigma_q^2 sigma_p^2 - sigma_qp^2`, bounded below by 1/4.
    pub fn robertson_schrodinger(&self) -> f64 {
        self.sigma_q.powi(2) * self.sigma_p.powi(2) - self.sigma_qp.powi(2)
    }

    pub fn heisenberg(&self) -> f64 {
        self.sigma_q * self.sigma_p
    }
}

/// Closed-form GCS moments: `sigma_q = |g|`, `sigma_p = |c1|`,
/// `sigma_qp = i[1/2 - g conj(f)]`.
pub fn analytic_moments(tau: f64, p: &IomParams, label: &GcsLabel, cfg: &ModelConfig) -> MomentSet {
    let c = iom_coefficients(p, tau, cfg);
    let cov = Complex64::i() * (Complex64::new(0.5, 0.0) - c.g * c.f.conj());
    debug_assert!(cov.im.abs() < 1e-12, "covariance residue {}", cov.im);
    let (mean_q, mean_p) = classical_trajectory(tau, label.q0(), label.p0(), cfg);
    MomentSet {
        mean_q,
        mean_p,
        sigma_q: c.g.norm(),
        sigma_p: c.f.norm(),
        sigma_qp: cov.re,
        tau,
    }
}

/// `sqrt(1/4 + [|c2||c1| sin(mu2 - mu1) + |c1|^2 tau]^2)`.
pub fn heisenberg_product(tau: f64, p: &IomParams) -> f64 {
    let (c1, c2) = (p.c1(), p.c2());
    let s = c2.norm() * c1.norm() * (c2.arg() - c1.arg()).sin() + c1.norm_sqr() * tau;
    (0.25 + s * s).sqrt()
}

/// Moments of a sampled state by Simpson quadrature, with `p = -i d/dq`
/// applied through the five-point stencil.
pub fn numeric_moments(field: &WaveField) -> Result<MomentSet> {
    let norm = field.norm_sqr();
    if (norm - 1.0).abs() > 1e-6 {
        return Err(Error::Contract(format!("moments need a normalized field, norm is {norm}")));
    }
    let grid = field.grid();
    let w = grid.simpson_weights();
    let d = first_derivative(field);
    let (mut q1, mut q2, mut p1, mut p2, mut qp) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (i, (v, dv)) in field.values().iter().zip(&d).enumerate() {
        let q = grid.node(i);
        let rho = v.norm_sqr();
        // conj(psi) (-i psi')
        let pv = (v.conj() * dv * Complex64::new(0.0, -1.0)).re;
        q1 += w[i] * q * rho;
        q2 += w[i] * q * q * rho;
        p1 += w[i] * pv;
        p2 += w[i] * dv.norm_sqr();
        qp += w[i] * q * pv;
    }
    Ok(MomentSet {
        mean_q: q1,
        mean_p: p1,
        sigma_q: (q2 - q1 * q1).max(0.0).sqrt(),
        sigma_p: (p2 - p1 * p1).max(0.0).sqrt(),
        sigma_qp: qp - q1 * p1,
        tau: field.tau(),
    })
}
