use serde::{Deserialize, Serialize};

use super::airy::smeared_energy_overlap;
use super::{Check, SuiteReport};
use crate::error::Result;
use crate::numerics::{grid_inner_product, Grid1D, WaveField};
use crate::states::{eta_superposition, gaussian_eta_packet, GaussianProfile, ModelConfig, ETA_DELTA_WEIGHT};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrthogonalityConfig {
    pub f_q: f64,
    /// `(center, width)` of the two overlapping eta-profiles.
    pub pair: [(f64, f64); 2],
    /// Centers of the two well-separated profiles, width `separated_width`.
    pub separated: [f64; 2],
    pub separated_width: f64,
    pub taus: Vec<f64>,
    /// Nodes of the q-grid used for the numerical superposition.
    pub n_points: usize,
    pub tol: f64,
    pub tau_tol: f64,
    /// `(center, width)` pairs of the energy profiles, with their force.
    pub energy_pair: [(f64, f64); 2],
    pub energy_f_q: f64,
    pub energy_tol: f64,
}

impl Default for OrthogonalityConfig {
    fn default() -> Self {
        Self {
            f_q: 1.0,
            pair: [(0.3, 0.5), (0.8, 0.5)],
            separated: [-3.0, 3.0],
            separated_width: 0.5,
            taus: vec![0.0, 0.5, 1.0],
            n_points: 881,
            tol: 1e-6,
            tau_tol: 1e-7,
            energy_pair: [(0.0, 0.5), (0.3, 0.5)],
            energy_f_q: 0.5,
            energy_tol: 1e-4,
        }
    }
}

/// q-space inner products of numerically superposed eta-packets against
/// `sqrt(2 pi) int conj(C1) C2 d eta`, for every configured time.
///
/// Returns `(tau, <a|a>, <a|b>, expected <a|a>, expected <a|b>)` rows.
pub(crate) fn eta_pair_overlaps(cfg: &OrthogonalityConfig) -> Result<Vec<(f64, f64, num_complex::Complex64, f64, f64)>> {
    let model = ModelConfig::new(cfg.f_q)?;
    let a = GaussianProfile::new(cfg.pair[0].0, cfg.pair[0].1)?;
    let b = GaussianProfile::new(cfg.pair[1].0, cfg.pair[1].1)?;
    let tau_max = cfg.taus.iter().cloned().fold(0.0, f64::max);
    let centre = 0.5 * (a.center + b.center) * (1.0 + tau_max) + 0.25 * cfg.f_q * tau_max * tau_max;
    let grid = Grid1D::centered(centre, 11.0, cfg.n_points)?;
    // amplitude exp(-25) at the ends
    let window = |p: &GaussianProfile| (p.center - 10.0 * p.width, p.center + 10.0 * p.width);
    let mut rows = Vec::new();
    for &tau in &cfg.taus {
        let fa = eta_superposition(&grid, tau, &|e| a.amplitude(e), window(&a), &model)?.field;
        let fb = eta_superposition(&grid, tau, &|e| b.amplitude(e), window(&b), &model)?.field;
        let aa = grid_inner_product(&fa, &fa)?.re;
        let ab = grid_inner_product(&fa, &fb)?;
        rows.push((tau, aa, ab, ETA_DELTA_WEIGHT * a.overlap(&a), ETA_DELTA_WEIGHT * a.overlap(&b)));
    }
    Ok(rows)
}

/// Smeared forms of the delta orthogonality of the eta- and energy-families.
pub fn orthogonality_suite(cfg: &OrthogonalityConfig, seed: u64) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    let rows = eta_pair_overlaps(cfg)?;
    for &(tau, aa, ab, aa_exact, ab_exact) in &rows {
        checks.push(Check::new(format!("identical/tau={tau}"), (aa / aa_exact - 1.0).abs(), cfg.tol));
        checks.push(Check::new(format!("pair/tau={tau}"), (ab - ab_exact).norm(), cfg.tol));
    }
    let drift = rows
        .iter()
        .map(|r| (r.2 - rows[0].2).norm().max((r.1 - rows[0].1).abs()))
        .fold(0.0, f64::max);
    checks.push(Check::new("tau_independence", drift, cfg.tau_tol));

    let model = ModelConfig::new(cfg.f_q)?;
    let w = cfg.separated_width;
    let (p, m) = (GaussianProfile::new(cfg.separated[0], w)?, GaussianProfile::new(cfg.separated[1], w)?);
    let grid = Grid1D::centered(0.5 * cfg.f_q, 16.0, 2001)?;
    let mut worst = 0.0f64;
    for &tau in &cfg.taus {
        let fp = WaveField::from_fn(grid, tau, |q| gaussian_eta_packet(q, tau, &p, &model))?;
        let fm = WaveField::from_fn(grid, tau, |q| gaussian_eta_packet(q, tau, &m, &model))?;
        worst = worst.max(grid_inner_product(&fp, &fm)?.norm() / ETA_DELTA_WEIGHT);
    }
    checks.push(Check::new("separated", worst, cfg.tol));

    let (qs, es) = smeared_energy_overlap(cfg.energy_pair[0], cfg.energy_pair[1], cfg.energy_f_q)?;
    checks.push(Check::new("stationary_smeared", (qs - es).abs(), cfg.energy_tol));
    SuiteReport::new("orthogonality", seed, cfg, checks)
}
