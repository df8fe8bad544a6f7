//! Trajectories, moments and uncertainty products, packet shape, arrival
//! statistics, the Wigner probe and the dimensional form.

mod arrival;
mod geometry;
mod moments;
mod units;
mod wigner;

pub use arrival::{arrival_analysis, large_force_spread, ArrivalReport};
pub use geometry::{density, extract_peak_and_fwhm, packet_geometry, PacketGeometry, PEAK_WIDTH_PRODUCT};
pub use moments::{analytic_moments, heisenberg_product, numeric_moments, MomentSet};
pub use units::{dimensionalize, semiclassicality, SemiclassReport, UnitsMap, DEFAULT_SEMICLASSICAL_THRESHOLD};
pub use wigner::wigner_probe;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::states::ModelConfig;

/// `q = q0 + p0 tau + F tau^2 / 2`, `p = p0 + F tau`.
pub fn classical_trajectory(tau: f64, q0: f64, p0: f64, cfg: &ModelConfig) -> (f64, f64) {
    let f = cfg.f_q();
    (q0 + p0 * tau + 0.5 * f * tau * tau, p0 + f * tau)
}

/// Coherent-state label `z = q0 / (2 sigma) + i sigma p0`.
pub fn label_convert(q0: f64, p0: f64, sigma_q: f64) -> Result<Complex64> {
    check_sigma(sigma_q)?;
    Ok(Complex64::new(q0 / (2.0 * sigma_q), sigma_q * p0))
}

/// Inverse of [`label_convert`]: `(q0, p0) = (2 sigma Re z, Im z / sigma)`.
pub fn label_invert(z: Complex64, sigma_q: f64) -> Result<(f64, f64)> {
    check_sigma(sigma_q)?;
    Ok((2.0 * sigma_q * z.re, z.im / sigma_q))
}

fn check_sigma(sigma_q: f64) -> Result<()> {
    if sigma_q > 0.0 && sigma_q.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("sigma_q must be positive, got {sigma_q}")))
    }
}
