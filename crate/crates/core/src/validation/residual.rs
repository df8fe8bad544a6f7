use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{rng, Check, SuiteReport};
use crate::error::Result;
use crate::numerics::airy::SEAM_POINTS;
use crate::observables::analytic_moments;
use crate::states::{
    cs_wavefunction, eta_state, gcs_wavefunction, stationary_state, CsParams, EnergyLabel, EtaLabel, GcsLabel,
    IomParams, ModelConfig,
};

/// State family and its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ResidualFamily {
    /// eta drawn uniformly from `[-eta_max, eta_max]`.
    Eta { f_q: f64, eta_max: f64 },
    Gcs { c1_abs: f64, mu1: f64, delta_mu: f64, z_re: f64, z_im: f64, f_q: f64 },
    Cs { sigma_q: f64, q0: f64, p0: f64, f_q: f64 },
    /// Checked as the eigenvalue equation on `xi in [-6, 4]`.
    Stationary { f_q: f64, epsilon: f64 },
}

impl ResidualFamily {
    pub fn defaults() -> [Self; 4] {
        [
            Self::Eta { f_q: 1.0, eta_max: 2.0 },
            Self::Gcs { c1_abs: 0.8, mu1: 0.4, delta_mu: 0.9, z_re: 0.3, z_im: 0.5, f_q: 1.5 },
            Self::Cs { sigma_q: 0.4, q0: 0.0, p0: 1.0, f_q: 2.0 },
            Self::Stationary { f_q: 0.5, epsilon: 0.0 },
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Eta { .. } => "eta",
            Self::Gcs { .. } => "gcs",
            Self::Cs { .. } => "cs",
            Self::Stationary { .. } => "stationary",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualConfig {
    pub family: ResidualFamily,
    pub h: f64,
    pub dt: f64,
    pub samples: usize,
    pub tol: f64,
}

impl ResidualConfig {
    /// Step 1e-3 in q and tau; tolerance 1e-6 for the stationary eigenvalue
    /// equation and 1e-4 otherwise.
    pub fn new(family: ResidualFamily) -> Self {
        let tol = match family {
            ResidualFamily::Stationary { .. } => 1e-6,
            _ => 1e-4,
        };
        Self { family, h: 1e-3, dt: 1e-3, samples: 64, tol }
    }
}

type Sampler = Box<dyn Fn(f64, f64, f64) -> Complex64>;

/// `(q, tau, eta)` points and the function evaluated at them.
fn setup(cfg: &ResidualConfig, seed: u64) -> Result<(Vec<(f64, f64, f64)>, Sampler, f64)> {
    let mut r = rng(seed);
    let n = cfg.samples;
    Ok(match cfg.family {
        ResidualFamily::Eta { f_q, eta_max } => {
            let model = ModelConfig::new(f_q)?;
            let pts = (0..n)
                .map(|_| (r.gen_range(-3.0..3.0), r.gen_range(0.0..1.0), r.gen_range(-eta_max..=eta_max)))
                .collect();
            let f: Sampler = Box::new(move |q, t, eta| eta_state(q, t, EtaLabel::new(eta).expect("finite"), &model));
            (pts, f, f_q)
        }
        ResidualFamily::Gcs { c1_abs, mu1, delta_mu, z_re, z_im, f_q } => {
            let model = ModelConfig::new(f_q)?;
            let p = IomParams::from_polar(c1_abs, mu1, delta_mu)?;
            let label = GcsLabel::from_z(Complex64::new(z_re, z_im), &p)?;
            let pts = packet_points(&mut r, n, |t| {
                let m = analytic_moments(t, &p, &label, &model);
                (m.mean_q, m.sigma_q)
            });
            let f: Sampler = Box::new(move |q, t, _| gcs_wavefunction(q, t, &label, &p, &model));
            (pts, f, f_q)
        }
        ResidualFamily::Cs { sigma_q, q0, p0, f_q } => {
            let model = ModelConfig::new(f_q)?;
            let cs = CsParams::from_initial(sigma_q, q0, p0)?;
            let pts = packet_points(&mut r, n, |t| {
                let m = analytic_moments(t, &cs.iom(), &cs.label(), &model);
                (m.mean_q, m.sigma_q)
            });
            let f: Sampler = Box::new(move |q, t, _| cs_wavefunction(q, t, &cs, &model));
            (pts, f, f_q)
        }
        ResidualFamily::Stationary { f_q, epsilon } => {
            let model = ModelConfig::new(f_q)?;
            let eps = EnergyLabel::new(epsilon)?;
            let k = (2.0 * f_q).cbrt();
            let q_of = |xi: f64| xi / k - epsilon / f_q;
            let mut pts: Vec<(f64, f64, f64)> = (0..n).map(|_| (q_of(r.gen_range(-6.0..4.0)), 0.0, 0.0)).collect();
            // stencils straddling every method switch of Ai(-xi) in range
            for s in SEAM_POINTS {
                let xi = -s;
                if (-6.0..=4.0).contains(&xi) {
                    for off in [-0.5, 0.5] {
                        pts.push((q_of(xi) + off * cfg.h, 0.0, 0.0));
                    }
                }
            }
            let f: Sampler = Box::new(move |q, _, _| Complex64::new(stationary_state(q, eps, &model).unwrap_or(f64::NAN), 0.0));
            (pts, f, f_q)
        }
    })
}

fn packet_points(r: &mut impl Rng, n: usize, shape: impl Fn(f64) -> (f64, f64)) -> Vec<(f64, f64, f64)> {
    (0..n)
        .map(|_| {
            let t = r.gen_range(0.1..1.0);
            let (mean, sigma) = shape(t);
            (mean + r.gen_range(-2.0..2.0) * sigma, t, 0.0)
        })
        .collect()
}

fn max_residual(pts: &[(f64, f64, f64)], f: &Sampler, f_q: f64, h: f64, dt: f64, stationary: Option<f64>) -> f64 {
    let mut worst = 0.0f64;
    for &(q, t, eta) in pts {
        let c = f(q, t, eta);
        let d2 = (f(q + h, t, eta) - c * 2.0 + f(q - h, t, eta)) / (h * h);
        let r = match stationary {
            // H chi - eps chi
            Some(eps) => -d2 * 0.5 - c * (f_q * q) - c * eps,
            None => {
                let dtau = (f(q, t + dt, eta) - f(q, t - dt, eta)) / (2.0 * dt);
                Complex64::i() * dtau + d2 * 0.5 + c * (f_q * q)
            }
        };
        let a = r.norm();
        worst = if a.is_nan() { f64::NAN } else { worst.max(a) };
    }
    worst
}

/// Largest residual at `(h, dt)` and at `(h/2, dt/2)` on the same points.
pub fn schrodinger_residuals(cfg: &ResidualConfig, seed: u64) -> Result<(f64, f64)> {
    let (pts, f, f_q) = setup(cfg, seed)?;
    let stationary = match cfg.family {
        ResidualFamily::Stationary { epsilon, .. } => Some(epsilon),
        _ => None,
    };
    let coarse = max_residual(&pts, &f, f_q, cfg.h, cfg.dt, stationary);
    let fine = max_residual(&pts, &f, f_q, 0.5 * cfg.h, 0.5 * cfg.dt, stationary);
    Ok((coarse, fine))
}

/// Central-difference residual of `(i d_tau - H) Psi` at random points
/// inside the packet, with a two-resolution order check.
pub fn schrodinger_residual_suite(cfg: &ResidualConfig, seed: u64) -> Result<SuiteReport> {
    let (coarse, fine) = schrodinger_residuals(cfg, seed)?;
    let name = cfg.family.name();
    let checks = vec![
        Check::new(format!("{name}/max_residual"), coarse, cfg.tol),
        Check::order2(format!("{name}/convergence_ratio"), coarse, fine),
    ];
    SuiteReport::new("schrodinger_residual", seed, cfg, checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_families_pass() {
        for fam in ResidualFamily::defaults() {
            let cfg = ResidualConfig::new(fam);
            let r = schrodinger_residual_suite(&cfg, 11).unwrap();
            assert!(r.passed(), "{r:?}");
            let (c, f) = schrodinger_residuals(&cfg, 11).unwrap();
            assert!(((c / f).log2() - 2.0).abs() < 0.3, "{} {c} {f}", fam.name());
        }
    }

    #[test]
    fn deterministic_for_seed() {
        let cfg = ResidualConfig::new(ResidualFamily::defaults()[2]);
        assert_eq!(schrodinger_residuals(&cfg, 5).unwrap(), schrodinger_residuals(&cfg, 5).unwrap());
    }
}
