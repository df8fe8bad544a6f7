use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{rng, Check, SuiteReport};
use crate::error::Result;
use crate::numerics::{grid_inner_product, Grid1D, WaveField};
use crate::observables::analytic_moments;
use crate::states::{
    displaced_vacuum, fock_states, gcs_overlap, gcs_wavefunction, GcsLabel, IomParams, ModelConfig,
};

/// `(|c1|, mu1, mu2 - mu1)` of an integral of motion.
pub type PolarIom = (f64, f64, f64);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompletenessConfig {
    pub iom: PolarIom,
    pub f_q: f64,
    pub tau: f64,
    pub n_max: usize,
    /// Label of the coherent test state for the Fock sum.
    pub z_fock: (f64, f64),
    pub fock_tol: f64,
    /// Gaussian test state for the disk resolution: another GCS family.
    pub test_iom: PolarIom,
    pub test_z: (f64, f64),
    pub disk_radius: f64,
    pub disk_tol: f64,
    pub overlap_pairs: usize,
    pub overlap_z_max: f64,
    pub overlap_tol: f64,
}

impl Default for CompletenessConfig {
    fn default() -> Self {
        Self {
            iom: (0.8, 0.4, 0.9),
            f_q: 1.0,
            tau: 0.4,
            n_max: 40,
            z_fock: (0.6, 0.8),
            fock_tol: 1e-8,
            test_iom: (0.7, 0.2, 0.5),
            test_z: (0.4, -0.3),
            disk_radius: 6.0,
            disk_tol: 1e-6,
            overlap_pairs: 20,
            overlap_z_max: 2.0,
            overlap_tol: 1e-7,
        }
    }
}

fn iom(p: PolarIom) -> Result<IomParams> {
    IomParams::from_polar(p.0, p.1, p.2)
}

fn test_state(cfg: &CompletenessConfig) -> Result<(IomParams, GcsLabel)> {
    let p = iom(cfg.test_iom)?;
    Ok((p, GcsLabel::from_z(Complex64::new(cfg.test_z.0, cfg.test_z.1), &p)?))
}

/// `sum_{n <= n_max} |<n|psi>|^2` and the individual weights.
pub(crate) fn fock_weights(
    p: &IomParams,
    tau: f64,
    model: &ModelConfig,
    n_max: usize,
    grid: &Grid1D,
    psi: &WaveField,
) -> Result<Vec<f64>> {
    let w = grid.simpson_weights();
    let mut amps = vec![Complex64::new(0.0, 0.0); n_max + 1];
    for (i, q) in grid.nodes().enumerate() {
        let states = fock_states(n_max, q, tau, p, model)?;
        let v = psi.values()[i] * w[i];
        for (a, s) in amps.iter_mut().zip(&states) {
            *a += s.conj() * v;
        }
    }
    Ok(amps.iter().map(|a| a.norm_sqr()).collect())
}

/// `(1/pi) int_{|z| <= R} |<Phi_z|psi>|^2 d^2 z` on a polar mesh.
pub(crate) fn disk_resolution(cfg: &CompletenessConfig) -> Result<f64> {
    let model = ModelConfig::new(cfg.f_q)?;
    let p = iom(cfg.iom)?;
    let (tp, tl) = test_state(cfg)?;
    let m = analytic_moments(cfg.tau, &tp, &tl, &model);
    let grid = Grid1D::centered(m.mean_q, 10.0 * m.sigma_q, 1201)?;
    let psi = WaveField::from_fn(grid, cfg.tau, |q| gcs_wavefunction(q, cfg.tau, &tl, &tp, &model))?;
    let radial = Grid1D::new(0.0, cfg.disk_radius, 121)?;
    let n_theta = 64;
    let mut ring = Vec::with_capacity(radial.n_points());
    for r in radial.nodes() {
        let mut s = 0.0;
        for k in 0..n_theta {
            let z = Complex64::from_polar(r, 2.0 * PI * k as f64 / n_theta as f64);
            let l = GcsLabel::from_z(z, &p)?;
            let phi = WaveField::from_fn(grid, cfg.tau, |q| displaced_vacuum(q, cfg.tau, &l, &p, &model))?;
            s += grid_inner_product(&phi, &psi)?.norm_sqr();
        }
        ring.push(r * s * 2.0 * PI / n_theta as f64);
    }
    Ok(radial.integrate(&ring) / PI)
}

fn fock_grid(p: &IomParams, tau: f64, model: &ModelConfig, label: &GcsLabel, n_max: usize) -> Result<Grid1D> {
    let m = analytic_moments(tau, p, label, model);
    let half = (2.0 * (2.0 * n_max as f64 + 1.0)).sqrt() * m.sigma_q + 10.0 * m.sigma_q;
    let origin = analytic_moments(tau, p, &GcsLabel::from_z(Complex64::new(0.0, 0.0), p)?, model).mean_q;
    Grid1D::centered(0.5 * (origin + m.mean_q), half + (m.mean_q - origin).abs(), 4001)
}

/// Fock-basis and coherent-state resolutions of the identity, plus the
/// closed-form coherent-state overlap against quadrature.
pub fn completeness_suite(cfg: &CompletenessConfig, seed: u64) -> Result<SuiteReport> {
    let model = ModelConfig::new(cfg.f_q)?;
    let p = iom(cfg.iom)?;
    let tau = cfg.tau;
    let mut checks = Vec::new();

    let vac = GcsLabel::from_z(Complex64::new(0.0, 0.0), &p)?;
    let grid = fock_grid(&p, tau, &model, &vac, 0)?;
    let psi = WaveField::from_fn(grid, tau, |q| displaced_vacuum(q, tau, &vac, &p, &model))?;
    let w0 = fock_weights(&p, tau, &model, 0, &grid, &psi)?;
    checks.push(Check::new("vacuum_fock_sum", (w0[0] - 1.0).abs(), 1e-12));

    let z = Complex64::new(cfg.z_fock.0, cfg.z_fock.1);
    let label = GcsLabel::from_z(z, &p)?;
    let grid = fock_grid(&p, tau, &model, &label, cfg.n_max)?;
    let psi = WaveField::from_fn(grid, tau, |q| displaced_vacuum(q, tau, &label, &p, &model))?;
    let weights = fock_weights(&p, tau, &model, cfg.n_max, &grid, &psi)?;
    let deficit = psi.norm_sqr() - weights.iter().sum::<f64>();
    checks.push(Check::new("displaced_fock_deficit", deficit.abs(), cfg.fock_tol));
    let mut poisson = 0.0f64;
    let mut term = (-z.norm_sqr()).exp();
    for (n, w) in weights.iter().enumerate() {
        if n > 0 {
            term *= z.norm_sqr() / n as f64;
        }
        poisson = poisson.max((w - term).abs());
    }
    checks.push(Check::new("poisson_weights", poisson, cfg.fock_tol));

    let disk = disk_resolution(cfg)?;
    checks.push(Check::new("gcs_disk_deficit", (1.0 - disk).abs(), cfg.disk_tol));

    let mut r = rng(seed);
    let mut draw = || {
        let rad = cfg.overlap_z_max * r.gen_range(0.0f64..1.0).sqrt();
        Complex64::from_polar(rad, r.gen_range(0.0..2.0 * PI))
    };
    let pairs: Vec<(Complex64, Complex64)> = (0..cfg.overlap_pairs).map(|_| (draw(), draw())).collect();
    let grid = fock_grid(&p, tau, &model, &vac, 12)?;
    let mut worst = 0.0f64;
    for (z1, z2) in pairs {
        let (l1, l2) = (GcsLabel::from_z(z1, &p)?, GcsLabel::from_z(z2, &p)?);
        let a = WaveField::from_fn(grid, tau, |q| displaced_vacuum(q, tau, &l1, &p, &model))?;
        let b = WaveField::from_fn(grid, tau, |q| displaced_vacuum(q, tau, &l2, &p, &model))?;
        worst = worst.max((grid_inner_product(&a, &b)? - gcs_overlap(z1, z2)).norm());
    }
    checks.push(Check::new("overlap_vs_quadrature", worst, cfg.overlap_tol));
    SuiteReport::new("completeness", seed, cfg, checks)
}
