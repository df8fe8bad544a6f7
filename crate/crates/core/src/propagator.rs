//! Crank-Nicolson evolution of `i d_tau chi = [-(1/2) d_q^2 - F_q q] chi`
//! on a uniform grid with zero Dirichlet boundaries.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{Grid1D, WaveField};
use crate::states::ModelConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    #[default]
    DirichletZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PropagatorConfig {
    pub grid: Grid1D,
    pub dt: f64,
    pub n_steps: usize,
    #[serde(default)]
    pub boundary: Boundary,
}

impl PropagatorConfig {
    pub fn new(grid: Grid1D, dt: f64, n_steps: usize) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::Domain(format!("dt must be positive, got {dt}")));
        }
        Ok(Self { grid, dt, n_steps, boundary: Boundary::DirichletZero })
    }

    /// Steps of at most `max_dt` that land exactly on `tau_end`.
    pub fn to_time(grid: Grid1D, tau_end: f64, max_dt: f64) -> Result<Self> {
        if !(tau_end >= 0.0 && tau_end.is_finite()) {
            return Err(Error::Domain(format!("final time must be non-negative, got {tau_end}")));
        }
        if !(max_dt > 0.0) {
            return Err(Error::Domain(format!("dt must be positive, got {max_dt}")));
        }
        let n = (tau_end / max_dt).ceil() as usize;
        if n == 0 {
            return Self::new(grid, max_dt, 0);
        }
        Self::new(grid, tau_end / n as f64, n)
    }

    pub fn duration(&self) -> f64 {
        self.dt * self.n_steps as f64
    }
}

/// Post-hoc check that the walls never saw the packet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryReport {
    /// Largest mass seen in the outer 5% of the domain on either side.
    pub edge_mass: f64,
    /// Smallest distance from `mean +- 5 sigma` to the nearest wall; negative
    /// when the packet core reaches outside.
    pub margin: f64,
    pub clean: bool,
}

pub const EDGE_MASS_LIMIT: f64 = 1e-10;
const EDGE_FRACTION: f64 = 0.05;
const CHECKPOINTS: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct Propagation {
    pub field: WaveField,
    pub boundary: BoundaryReport,
    /// `| ||chi_end|| - ||chi_0|| |` in the discrete norm `h sum |chi_i|^2`.
    pub norm_drift: f64,
}

/// Tridiagonal system `(I + i dt H / 2) x = r` over the interior nodes,
/// factored once.
struct CnSolver {
    // H = tridiag(off, diag_i, off)
    off: f64,
    diag: Vec<f64>,
    half_dt: f64,
    c_prime: Vec<Complex64>,
    inv_denom: Vec<Complex64>,
}

impl CnSolver {
    fn new(grid: &Grid1D, dt: f64, f_q: f64) -> Self {
        let h = grid.spacing();
        let n = grid.n_points() - 2;
        let off = -0.5 / (h * h);
        let diag: Vec<f64> = (1..=n).map(|i| 1.0 / (h * h) - f_q * grid.node(i)).collect();
        let half_dt = 0.5 * dt;
        let a = Complex64::new(0.0, half_dt * off);
        let mut c_prime = vec![Complex64::new(0.0, 0.0); n];
        let mut inv_denom = vec![Complex64::new(0.0, 0.0); n];
        let mut prev = Complex64::new(0.0, 0.0);
        for i in 0..n {
            let b = Complex64::new(1.0, half_dt * diag[i]);
            let d = (b - a * prev).inv();
            inv_denom[i] = d;
            prev = a * d;
            c_prime[i] = prev;
        }
        Self { off, diag, half_dt, c_prime, inv_denom }
    }

    /// One step on the full node vector; the end nodes stay zero.
    fn step(&self, psi: &mut [Complex64], rhs: &mut [Complex64]) {
        let n = self.diag.len();
        let i_half = Complex64::new(0.0, self.half_dt);
        let a = i_half * self.off;
        for k in 0..n {
            let j = k + 1;
            let h_psi = self.diag[k] * psi[j] + self.off * (psi[j - 1] + psi[j + 1]);
            rhs[k] = psi[j] - i_half * h_psi;
        }
        // forward sweep
        let mut prev = Complex64::new(0.0, 0.0);
        for k in 0..n {
            prev = (rhs[k] - a * prev) * self.inv_denom[k];
            rhs[k] = prev;
        }
        // back substitution
        psi[n] = rhs[n - 1];
        for k in (0..n - 1).rev() {
            psi[k + 1] = rhs[k] - self.c_prime[k] * psi[k + 2];
        }
        psi[0] = Complex64::new(0.0, 0.0);
        psi[n + 1] = Complex64::new(0.0, 0.0);
    }
}

fn discrete_norm(grid: &Grid1D, psi: &[Complex64]) -> f64 {
    grid.spacing() * psi.iter().map(|v| v.norm_sqr()).sum::<f64>()
}

/// `h Re sum conj(chi) H chi` with the same stencil as the propagator.
pub fn discrete_energy(field: &WaveField, model: &ModelConfig) -> f64 {
    let grid = field.grid();
    let h = grid.spacing();
    let psi = field.values();
    let n = psi.len();
    let mut e = 0.0;
    for j in 1..n - 1 {
        let h_psi = (1.0 / (h * h) - model.f_q() * grid.node(j)) * psi[j] - 0.5 / (h * h) * (psi[j - 1] + psi[j + 1]);
        e += (psi[j].conj() * h_psi).re;
    }
    e * h
}

fn boundary_probe(grid: &Grid1D, psi: &[Complex64]) -> (f64, f64) {
    let n = psi.len();
    let band = ((n as f64 * EDGE_FRACTION).ceil() as usize).max(1);
    let h = grid.spacing();
    let left: f64 = psi[..band].iter().map(|v| v.norm_sqr()).sum::<f64>() * h;
    let right: f64 = psi[n - band..].iter().map(|v| v.norm_sqr()).sum::<f64>() * h;
    let (mut m0, mut m1, mut m2) = (0.0, 0.0, 0.0);
    for (i, v) in psi.iter().enumerate() {
        let q = grid.node(i);
        let r = v.norm_sqr();
        m0 += r;
        m1 += r * q;
        m2 += r * q * q;
    }
    let mean = m1 / m0;
    let sigma = (m2 / m0 - mean * mean).max(0.0).sqrt();
    let margin = (mean - 5.0 * sigma - grid.q_min()).min(grid.q_max() - mean - 5.0 * sigma);
    (left.max(right), margin)
}

/// Applies `n_steps` Crank-Nicolson steps
/// `(I + i dt H/2) chi^(n+1) = (I - i dt H/2) chi^n`.
///
/// The boundary check runs at ten checkpoints; a contaminated run is
/// returned with `boundary.clean = false`, not as an error.
pub fn propagate(initial: &WaveField, cfg: &PropagatorConfig, model: &ModelConfig) -> Result<Propagation> {
    if initial.grid() != &cfg.grid {
        return Err(Error::Contract("initial field and propagator use different grids".into()));
    }
    if cfg.grid.n_points() < 3 {
        return Err(Error::Domain("propagation needs at least one interior node".into()));
    }
    let norm = initial.norm_sqr();
    if (norm - 1.0).abs() > 1e-6 {
        return Err(Error::Contract(format!("initial state must be normalized, norm is {norm}")));
    }
    let grid = cfg.grid;
    let mut psi = initial.values().to_vec();
    psi[0] = Complex64::new(0.0, 0.0);
    let last = psi.len() - 1;
    psi[last] = Complex64::new(0.0, 0.0);
    let norm0 = discrete_norm(&grid, &psi);

    let (mut edge_mass, mut margin) = boundary_probe(&grid, &psi);
    if cfg.n_steps > 0 {
        let solver = CnSolver::new(&grid, cfg.dt, model.f_q());
        let mut rhs = vec![Complex64::new(0.0, 0.0); psi.len() - 2];
        let every = (cfg.n_steps / CHECKPOINTS).max(1);
        for s in 1..=cfg.n_steps {
            solver.step(&mut psi, &mut rhs);
            if s % every == 0 || s == cfg.n_steps {
                let (e, m) = boundary_probe(&grid, &psi);
                edge_mass = edge_mass.max(e);
                margin = margin.min(m);
            }
        }
    }
    let norm_drift = (discrete_norm(&grid, &psi) - norm0).abs();
    let tau = initial.tau() + cfg.duration();
    let field = WaveField::new(grid, tau, psi)?;
    Ok(Propagation {
        field,
        boundary: BoundaryReport {
            edge_mass,
            margin,
            clean: edge_mass < EDGE_MASS_LIMIT && margin >= 0.0,
        },
        norm_drift,
    })
}

/// `sqrt(int |chi_num - chi_exact|^2 dq)` at the final time for the analytic
/// state sampled at `tau = 0` and propagated.
///
/// The sampled initial state is scaled to unit grid norm and the same factor
/// is applied to the reference, so families with a non-unit normalization
/// (eta packets) are accepted. A run that touches the walls is an error.
pub fn reference_error<F>(analytic: F, cfg: &PropagatorConfig, model: &ModelConfig) -> Result<f64>
where
    F: Fn(f64, f64) -> Complex64,
{
    let grid = cfg.grid;
    let raw = WaveField::from_fn(grid, 0.0, |q| analytic(q, 0.0))?;
    let norm = raw.norm_sqr();
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(Error::Contract("analytic state has no mass on the grid".into()));
    }
    let scale = norm.sqrt().recip();
    let start = WaveField::from_fn(grid, 0.0, |q| analytic(q, 0.0) * scale)?;
    let run = propagate(&start, cfg, model)?;
    if !run.boundary.clean {
        return Err(Error::Contract(format!(
            "boundary contamination: edge mass {:.3e}, margin {:.3}",
            run.boundary.edge_mass, run.boundary.margin
        )));
    }
    let tau = cfg.duration();
    let diff: Vec<f64> = run
        .field
        .values()
        .iter()
        .zip(grid.nodes())
        .map(|(v, q)| (v - analytic(q, tau) * scale).norm_sqr())
        .collect();
    Ok(grid.integrate(&diff).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::observables::numeric_moments;
    use crate::states::{cs_wavefunction, CsParams};

    fn cs_case(sigma: f64, p0: f64) -> CsParams {
        CsParams::from_initial(sigma, 0.0, p0).unwrap()
    }

    #[test]
    fn zero_steps_is_identity() {
        let grid = Grid1D::new(-10.0, 10.0, 1001).unwrap();
        let cs = cs_case(1.0, 0.0);
        let cfg0 = ModelConfig::new(0.0).unwrap();
        let f = WaveField::from_fn(grid, 0.0, |q| cs_wavefunction(q, 0.0, &cs, &cfg0)).unwrap();
        let r = propagate(&f, &PropagatorConfig::new(grid, 1e-3, 0).unwrap(), &cfg0).unwrap();
        let inner = &r.field.values()[1..1000];
        assert_eq!(inner, &f.values()[1..1000]);
        assert!(r.boundary.clean);
    }

    #[test]
    fn matches_coherent_state() {
        let grid = Grid1D::new(-10.0, 10.0, 4096).unwrap();
        let cs = cs_case(0.5, 1.0);
        let model = ModelConfig::new(2.0).unwrap();
        let cfg = PropagatorConfig::to_time(grid, 0.6, 1e-4).unwrap();
        let err = reference_error(|q, t| cs_wavefunction(q, t, &cs, &model), &cfg, &model).unwrap();
        assert!(err < 1e-4, "{err}");
    }

    #[test]
    fn second_order_when_refining() {
        let cs = cs_case(0.5, 1.0);
        let model = ModelConfig::new(1.0).unwrap();
        let err = |n: usize, dt: f64| {
            let grid = Grid1D::new(-8.0, 8.0, n).unwrap();
            let cfg = PropagatorConfig::to_time(grid, 0.5, dt).unwrap();
            reference_error(|q, t| cs_wavefunction(q, t, &cs, &model), &cfg, &model).unwrap()
        };
        let coarse = err(401, 4e-2);
        let fine = err(801, 2e-2);
        let ratio = coarse / fine;
        assert!((3.4..4.6).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn conserves_norm_and_energy() {
        let grid = Grid1D::new(-12.0, 12.0, 1024).unwrap();
        let cs = cs_case(0.7, 0.5);
        let model = ModelConfig::new(0.3).unwrap();
        let f = WaveField::from_fn(grid, 0.0, |q| cs_wavefunction(q, 0.0, &cs, &model)).unwrap();
        let e0 = discrete_energy(&f, &model);
        let r = propagate(&f, &PropagatorConfig::new(grid, 1e-4, 10_000).unwrap(), &model).unwrap();
        assert!(r.norm_drift < 1e-10);
        let e1 = discrete_energy(&r.field, &model);
        assert!(((e1 - e0) / e0).abs() < 1e-8, "{e0} {e1}");
    }

    #[test]
    fn follows_classical_mean() {
        let grid = Grid1D::new(-10.0, 10.0, 4096).unwrap();
        let cs = cs_case(0.4, 1.0);
        let model = ModelConfig::new(2.0).unwrap();
        let tau = 0.5;
        let f = WaveField::from_fn(grid, 0.0, |q| cs_wavefunction(q, 0.0, &cs, &model)).unwrap();
        let r = propagate(&f, &PropagatorConfig::to_time(grid, tau, 1e-4).unwrap(), &model).unwrap();
        let m = numeric_moments(&r.field).unwrap();
        assert!((m.mean_q - (tau + tau * tau)).abs() < 1e-4);
        assert!((r.field.tau() - tau).abs() < 1e-15);
    }

    #[test]
    fn flags_wall_contact() {
        let grid = Grid1D::new(-3.0, 3.0, 600).unwrap();
        let cs = cs_case(0.5, 4.0);
        let model = ModelConfig::new(0.0).unwrap();
        let f = WaveField::from_fn(grid, 0.0, |q| cs_wavefunction(q, 0.0, &cs, &model)).unwrap();
        let r = propagate(&f, &PropagatorConfig::new(grid, 1e-3, 1000).unwrap(), &model).unwrap();
        assert!(!r.boundary.clean);
        let cfg = PropagatorConfig::new(grid, 1e-3, 1000).unwrap();
        assert!(reference_error(|q, t| cs_wavefunction(q, t, &cs, &model), &cfg, &model).is_err());
    }

    #[test]
    fn rejects_unnormalized_start() {
        let grid = Grid1D::new(-1.0, 1.0, 11).unwrap();
        let f = WaveField::from_fn(grid, 0.0, |_| Complex64::new(3.0, 0.0)).unwrap();
        let cfg = PropagatorConfig::new(grid, 1e-3, 1).unwrap();
        assert!(matches!(propagate(&f, &cfg, &ModelConfig::new(0.0).unwrap()), Err(Error::Contract(_))));
    }
}
