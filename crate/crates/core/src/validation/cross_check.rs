use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Check, SuiteReport};
use crate::error::Result;
use crate::numerics::{Grid1D, WaveField};
use crate::observables::{arrival_analysis, extract_peak_and_fwhm, numeric_moments, MomentSet};
use crate::propagator::{propagate, reference_error, BoundaryReport, PropagatorConfig};
use crate::states::{
    cs_wavefunction, gaussian_eta_packet, gcs_wavefunction, CsParams, GaussianProfile, GcsLabel, IomParams,
    ModelConfig,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub q_min: f64,
    pub q_max: f64,
    pub n_points: usize,
    pub max_dt: f64,
}

impl GridSpec {
    pub fn grid(&self) -> Result<Grid1D> {
        Grid1D::new(self.q_min, self.q_max, self.n_points)
    }

    pub fn to_time(&self, tau: f64) -> Result<PropagatorConfig> {
        PropagatorConfig::to_time(self.grid()?, tau, self.max_dt)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossCheckConfig {
    pub grid: GridSpec,
    pub tau: f64,
    /// `(sigma, q0, p0, F)`
    pub cs: (f64, f64, f64, f64),
    pub cs_tol: f64,
    /// `(|c1|, mu1, mu2 - mu1, Re z, Im z, F)`
    pub gcs: (f64, f64, f64, f64, f64, f64),
    pub gcs_tol: f64,
    /// `(center, width, F)` of the eta-profile
    pub eta_packet: (f64, f64, f64),
    pub eta_tol: f64,
    /// Forces of the two accelerated figure scenarios.
    pub figure_forces: [f64; 2],
    pub figure_tol: f64,
    pub figure_sigma_tol: f64,
    pub ehrenfest_tol: f64,
}

impl Default for CrossCheckConfig {
    fn default() -> Self {
        Self {
            grid: GridSpec { q_min: -10.0, q_max: 10.0, n_points: 4096, max_dt: 1e-4 },
            tau: 0.6,
            cs: (0.5, 0.0, 1.0, 2.0),
            cs_tol: 1e-4,
            gcs: (1.0, 0.3, -0.5, 0.3, 0.5, 1.5),
            gcs_tol: 1e-4,
            eta_packet: (1.0, 0.5, 1.0),
            eta_tol: 1e-3,
            figure_forces: [2.0, 6.0],
            figure_tol: 2e-3,
            figure_sigma_tol: 1e-3,
            ehrenfest_tol: 1e-4,
        }
    }
}

/// Crank-Nicolson run of the figure packet (`sigma = 0.4`, `q0 = 0`, `p0 = 1`)
/// to the time its maximum reaches `q = 1`.
pub struct FigureRun {
    pub tau_arrival: f64,
    pub moments: MomentSet,
    pub peak_q: f64,
    pub boundary: BoundaryReport,
    pub norm_drift: f64,
}

pub fn figure_run(f_q: f64, grid: &GridSpec) -> Result<FigureRun> {
    let model = ModelConfig::new(f_q)?;
    let cs = CsParams::from_initial(0.4, 0.0, 1.0)?;
    let tau = arrival_analysis(1.0, 0.0, 1.0, 0.4, &model)?.tau_q;
    let cfg = grid.to_time(tau)?;
    let start = WaveField::from_fn(cfg.grid, 0.0, |q| cs_wavefunction(q, 0.0, &cs, &model))?;
    let run = propagate(&start, &cfg, &model)?;
    let moments = numeric_moments(&run.field)?;
    let q: Vec<f64> = cfg.grid.nodes().collect();
    let (peak_q, _, _) = extract_peak_and_fwhm(&q, &run.field.density())?;
    Ok(FigureRun {
        tau_arrival: tau,
        moments,
        peak_q,
        boundary: run.boundary,
        norm_drift: run.norm_drift,
    })
}

/// Propagated solutions of every family against their closed forms, the
/// Ehrenfest trajectory and the accelerated-packet figure numbers.
pub fn propagator_cross_check_suite(cfg: &CrossCheckConfig, seed: u64) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    let pc = cfg.grid.to_time(cfg.tau)?;

    let (s, q0, p0, f) = cfg.cs;
    let model = ModelConfig::new(f)?;
    let cs = CsParams::from_initial(s, q0, p0)?;
    let e = reference_error(|q, t| cs_wavefunction(q, t, &cs, &model), &pc, &model)?;
    checks.push(Check::new("cs_reference", e, cfg.cs_tol));

    let (a, mu, dmu, zr, zi, f) = cfg.gcs;
    let model = ModelConfig::new(f)?;
    let p = IomParams::from_polar(a, mu, dmu)?;
    let label = GcsLabel::from_z(Complex64::new(zr, zi), &p)?;
    let e = reference_error(|q, t| gcs_wavefunction(q, t, &label, &p, &model), &pc, &model)?;
    checks.push(Check::new("gcs_reference", e, cfg.gcs_tol));

    let (c, w, f) = cfg.eta_packet;
    let model = ModelConfig::new(f)?;
    let profile = GaussianProfile::new(c, w)?;
    let e = reference_error(|q, t| gaussian_eta_packet(q, t, &profile, &model), &pc, &model)?;
    checks.push(Check::new("eta_packet_reference", e, cfg.eta_tol));

    for f in cfg.figure_forces {
        let run = figure_run(f, &cfg.grid)?;
        let tag = format!("figure/F={f}");
        let p_exact = 1.0 + f * run.tau_arrival;
        checks.push(Check::new(format!("{tag}/ehrenfest_q"), (run.moments.mean_q - 1.0).abs(), cfg.ehrenfest_tol));
        checks.push(Check::new(format!("{tag}/peak_q"), (run.peak_q - 1.0).abs(), cfg.figure_tol));
        checks.push(Check::new(format!("{tag}/mean_p"), (run.moments.mean_p - p_exact).abs(), cfg.figure_tol));
        let sigma = (0.16 + run.tau_arrival.powi(2) / 0.64).sqrt();
        checks.push(Check::new(format!("{tag}/sigma_q"), (run.moments.sigma_q - sigma).abs(), cfg.figure_sigma_tol));
        checks.push(Check::new(format!("{tag}/norm_drift"), run.norm_drift, 1e-10));
        checks.push(Check::new(format!("{tag}/edge_mass"), run.boundary.edge_mass, crate::propagator::EDGE_MASS_LIMIT));
    }
    SuiteReport::new("propagator_cross_check", seed, cfg, checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        let r = propagator_cross_check_suite(&CrossCheckConfig::default(), 0).unwrap();
        assert!(r.passed(), "{:#?}", r.checks);
    }
}
