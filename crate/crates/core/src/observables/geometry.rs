use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::classical_trajectory;
use crate::error::{Error, Result};
use crate::states::{CsParams, ModelConfig};

/// `sqrt(4 ln 2 / pi)`, the product of a Gaussian's FWHM and its peak height.
pub const PEAK_WIDTH_PRODUCT: f64 = 0.939_437_278_699_651_3;

/// Height `L` and full width at half maximum `Delta l` of a Gaussian density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PacketGeometry {
    pub height_l: f64,
    pub half_width: f64,
}

/// `L = 1/(sqrt(2 pi) sigma)`, `Delta l = sqrt(8 ln 2) sigma`.
pub fn packet_geometry(sigma: f64) -> Result<PacketGeometry> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::Domain(format!("sigma must be positive, got {sigma}")));
    }
    Ok(PacketGeometry {
        height_l: 1.0 / ((2.0 * PI).sqrt() * sigma),
        half_width: (8.0 * std::f64::consts::LN_2).sqrt() * sigma,
    })
}

/// Coherent-state density: a normal density with mean `q(tau)` and
/// standard deviation `sqrt(sigma^2 + tau^2 / (4 sigma^2))`.
pub fn density(q: f64, tau: f64, cs: &CsParams, cfg: &ModelConfig) -> f64 {
    let s = cs.sigma_q();
    let var = s * s + tau * tau / (4.0 * s * s);
    let (mean, _) = classical_trajectory(tau, cs.q0(), cs.p0(), cfg);
    (-(q - mean).powi(2) / (2.0 * var)).exp() / (2.0 * PI * var).sqrt()
}

/// Peak location, peak height and FWHM of a sampled single-peaked profile.
///
/// The peak comes from a parabola through the three largest samples; the
/// half-maximum crossings are located by linear interpolation between the
/// bracketing samples.
pub fn extract_peak_and_fwhm(q: &[f64], rho: &[f64]) -> Result<(f64, f64, f64)> {
    if q.len() != rho.len() || q.len() < 3 {
        return Err(Error::Contract("profile needs at least 3 matching samples".into()));
    }
    let (imax, _) = rho
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, &r)| if r > acc.1 { (i, r) } else { acc });
    if imax == 0 || imax + 1 == rho.len() {
        return Err(Error::Domain("profile maximum lies on the sampling boundary".into()));
    }
    let (r0, r1, r2) = (rho[imax - 1], rho[imax], rho[imax + 1]);
    let h = q[imax + 1] - q[imax];
    let denom = r0 - 2.0 * r1 + r2;
    let shift = if denom != 0.0 { 0.5 * (r0 - r2) / denom } else { 0.0 };
    let peak_q = q[imax] + shift * h;
    let peak = r1 - 0.25 * (r0 - r2) * shift;
    let half = 0.5 * peak;
    let cross = |range: &mut dyn Iterator<Item = usize>| -> Option<f64> {
        for i in range {
            let (a, b) = (rho[i], rho[i + 1]);
            if (a - half) * (b - half) <= 0.0 && a != b {
                return Some(q[i] + (half - a) / (b - a) * (q[i + 1] - q[i]));
            }
        }
        None
    };
    let left = cross(&mut (0..imax).rev());
    let right = cross(&mut (imax..rho.len() - 1));
    match (left, right) {
        (Some(l), Some(r)) => Ok((peak_q, peak, r - l)),
        _ => Err(Error::Domain("profile does not fall to half maximum inside the samples".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn closed_form_geometry() {
        let g = packet_geometry(0.2).unwrap();
        assert!((g.height_l - 1.994_71).abs() < 1e-5);
        assert!((g.half_width - 0.470_96).abs() < 1e-5);
        assert!((g.half_width * g.height_l - PEAK_WIDTH_PRODUCT).abs() < 1e-12);
        assert!((PEAK_WIDTH_PRODUCT - (4.0 * std::f64::consts::LN_2 / PI).sqrt()).abs() < 1e-15);
        assert!((packet_geometry(1.0).unwrap().half_width - 2.354_82).abs() < 1e-5);
        assert!(packet_geometry(0.0).is_err());
    }

    #[test]
    fn density_at_peak() {
        let cs = CsParams::new(0.2, Complex64::new(0.0, 0.0)).unwrap();
        let cfg = ModelConfig::new(0.0).unwrap();
        assert!((density(0.0, 0.0, &cs, &cfg) - 1.994_71).abs() < 1e-5);
    }

    #[test]
    fn extracted_fwhm_matches_law() {
        let cs = CsParams::from_initial(0.4, 0.0, 1.0).unwrap();
        let cfg = ModelConfig::new(2.0).unwrap();
        let tau = 0.5;
        let q: Vec<f64> = (0..=6000).map(|i| -2.0 + i as f64 * 1e-3).collect();
        let rho: Vec<f64> = q.iter().map(|&x| density(x, tau, &cs, &cfg)).collect();
        let (peak_q, _, fwhm) = extract_peak_and_fwhm(&q, &rho).unwrap();
        let s_t = (0.16f64 + 0.25 / 0.64).sqrt();
        assert!((peak_q - (0.5 + 0.25)).abs() < 1e-6);
        assert!((fwhm / packet_geometry(s_t).unwrap().half_width - 1.0).abs() < 1e-3);
    }

    #[test]
    fn extraction_rejects_edge_peak() {
        let q = [0.0, 1.0, 2.0];
        assert!(extract_peak_and_fwhm(&q, &[3.0, 2.0, 1.0]).is_err());
    }
}
