use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Check, SuiteReport};
use crate::error::{Error, Result};
use crate::numerics::Grid1D;
use crate::states::{
    stationary_state, stationary_via_transform, EnergyLabel, GaussianProfile, ModelConfig, TransformOptions,
    DEFAULT_DAMPING,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AiryConnectionConfig {
    pub f_q: f64,
    pub qs: Vec<f64>,
    pub epsilons: Vec<f64>,
    pub taus: Vec<f64>,
    pub damping: f64,
    pub transform: TransformOptions,
    pub tol: f64,
    pub energy_pair: [(f64, f64); 2],
}

impl Default for AiryConnectionConfig {
    fn default() -> Self {
        Self {
            f_q: 0.5,
            qs: linspace(-2.0, 2.0, 5),
            epsilons: linspace(-1.0, 1.0, 5),
            taus: vec![0.0, 0.5, 1.0],
            damping: DEFAULT_DAMPING,
            transform: TransformOptions::default(),
            tol: 1e-4,
            energy_pair: [(0.0, 0.5), (0.3, 0.5)],
        }
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

/// Deviation of the eta-transform from `chi_eps(q) exp(-i eps tau)` at every
/// lattice point: `(q, eps, tau, transform, closed form)`.
pub(crate) fn lattice(cfg: &AiryConnectionConfig) -> Result<Vec<(f64, f64, f64, Complex64, Complex64)>> {
    let model = ModelConfig::new(cfg.f_q)?;
    let mut out = Vec::with_capacity(cfg.qs.len() * cfg.epsilons.len() * cfg.taus.len());
    for &q in &cfg.qs {
        for &e in &cfg.epsilons {
            let eps = EnergyLabel::new(e)?;
            let closed = stationary_state(q, eps, &model)?;
            for &tau in &cfg.taus {
                let t = stationary_via_transform(q, tau, eps, &model, cfg.damping, cfg.transform)?;
                out.push((q, e, tau, t.value, Complex64::from_polar(closed, -e * tau)));
            }
        }
    }
    Ok(out)
}

/// `(q-space inner product, int P1 P2 d eps)` for two Gaussian energy
/// profiles `(center, width)` superposed over the closed-form stationary states.
pub fn smeared_energy_overlap(a: (f64, f64), b: (f64, f64), f_q: f64) -> Result<(f64, f64)> {
    if !(f_q > 0.0) {
        return Err(Error::Domain(format!("energy smearing needs F_q > 0, got {f_q}")));
    }
    let model = ModelConfig::new(f_q)?;
    let pa = GaussianProfile::new(a.0, a.1)?;
    let pb = GaussianProfile::new(b.0, b.1)?;
    let lo = (a.0 - 8.0 * a.1).min(b.0 - 8.0 * b.1);
    let hi = (a.0 + 8.0 * a.1).max(b.0 + 8.0 * b.1);
    let e_grid = Grid1D::new(lo, hi, 801)?;
    let k = (2.0 * f_q).cbrt();
    // Ai(xi) below 1e-10 left of xi = 10; the smeared tail dies like exp(-c q) on the right
    let q_lo = -hi / f_q - 10.0 / k;
    let q_grid = Grid1D::new(q_lo, 24.0 / k - lo / f_q, 4001)?;
    let weights = e_grid.simpson_weights();
    let wa: Vec<f64> = e_grid.nodes().zip(&weights).map(|(e, w)| pa.amplitude(e).re * w).collect();
    let wb: Vec<f64> = e_grid.nodes().zip(&weights).map(|(e, w)| pb.amplitude(e).re * w).collect();
    let labels: Vec<EnergyLabel> = e_grid.nodes().map(EnergyLabel::new).collect::<Result<_>>()?;
    let mut prod = Vec::with_capacity(q_grid.n_points());
    for q in q_grid.nodes() {
        let (mut sa, mut sb) = (0.0, 0.0);
        for (i, eps) in labels.iter().enumerate() {
            let chi = stationary_state(q, *eps, &model)?;
            sa += wa[i] * chi;
            sb += wb[i] * chi;
        }
        prod.push(sa * sb);
    }
    Ok((q_grid.integrate(&prod), pa.overlap(&pb)))
}

/// The transform of `conj(Q_eps)` over eta-states against the closed-form
/// Airy state, plus smeared energy orthogonality.
pub fn airy_connection_suite(cfg: &AiryConnectionConfig, seed: u64) -> Result<SuiteReport> {
    let pts = lattice(cfg)?;
    let worst = pts.iter().map(|p| (p.3 - p.4).norm()).fold(0.0, f64::max);
    let mut checks = vec![Check::new("lattice_max_deviation", worst, cfg.tol)];
    if let Some(p) = pts.iter().find(|p| p.0 == 0.0 && p.1 == 0.0 && p.2 == 0.0) {
        checks.push(Check::new("origin", (p.3 - p.4).norm(), cfg.tol));
    }
    let mut phase = 0.0f64;
    for p in pts.iter().filter(|p| p.2 == 1.0 && p.4.norm() > 0.05) {
        // transform / chi_eps against exp(-i eps)
        let real = p.4 * Complex64::from_polar(1.0, p.1);
        phase = phase.max((p.3 / real - Complex64::from_polar(1.0, -p.1)).norm());
    }
    checks.push(Check::new("tau_one_phase", phase, cfg.tol));
    let (qs, es) = smeared_energy_overlap(cfg.energy_pair[0], cfg.energy_pair[1], cfg.f_q)?;
    checks.push(Check::new("epsilon_orthogonality", (qs - es).abs(), cfg.tol));
    SuiteReport::new("airy_connection", seed, cfg, checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smeared_overlap_matches_profile_overlap() {
        let (q, e) = smeared_energy_overlap((0.0, 0.5), (0.3, 0.5), 0.5).unwrap();
        assert!((q - e).abs() < 1e-6, "{q} {e}");
        let (q, e) = smeared_energy_overlap((0.2, 0.4), (0.2, 0.4), 1.0).unwrap();
        assert!((q - 1.0).abs() < 1e-6 && (e - 1.0).abs() < 1e-12);
    }

    #[test]
    fn small_lattice() {
        let cfg = AiryConnectionConfig {
            qs: vec![0.0, 1.0],
            epsilons: vec![0.0, 0.5],
            taus: vec![0.0, 1.0],
            ..Default::default()
        };
        let r = airy_connection_suite(&cfg, 0).unwrap();
        assert!(r.passed(), "{:#?}", r.checks);
        let origin = lattice(&cfg).unwrap()[0];
        assert!((origin.3.re - 0.502_09).abs() < 1e-4);
    }
}
