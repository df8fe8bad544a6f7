//! Generalized coherent states, the coherent-state subfamily and the
//! displaced vacuum.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::iom::{iom_coefficients, CsParams, GcsLabel, IomParams};
use super::ModelConfig;

/// Eigenfunction of `A(tau)` with eigenvalue `z` that solves the Schrödinger
/// equation:
///
/// `Phi_z = [sqrt(2 pi) (|c2|/c2) g]^(-1/2) exp{i[p(tau) q - p0^2 tau/2]
///          - (c1/g)(q - q(tau))^2/2 - (i/2) F (F tau/3 + p0) tau^2}`.
///
/// The square root is principal. `g/c2 = 1 + i (c1/c2) tau` with
/// `Re(c1/c2) = 1/(2|c2|^2) > 0`, so its imaginary part vanishes only at
/// `tau = 0`, where it equals 1: the path never meets the branch cut and the
/// phase is continuous in tau for every valid parameter pair.
pub fn gcs_wavefunction(q: f64, tau: f64, label: &GcsLabel, p: &IomParams, cfg: &ModelConfig) -> Complex64 {
    let c = iom_coefficients(p, tau, cfg);
    let f = cfg.f_q();
    let (q0, p0) = (label.q0(), label.p0());
    let q_t = q0 + p0 * tau + 0.5 * f * tau * tau;
    let p_t = p0 + f * tau;
    let c2 = p.c2();
    let scale = (c.g / c2) * ((2.0 * PI).sqrt() * c2.norm());
    let d = q - q_t;
    let exponent = Complex64::new(
        -(c.f / c.g * (0.5 * d * d)).re,
        p_t * q - 0.5 * p0 * p0 * tau - 0.5 * f * (f * tau / 3.0 + p0) * tau * tau - (c.f / c.g * (0.5 * d * d)).im,
    );
    exponent.exp() / scale.sqrt()
}

/// Coherent state of width `sigma_q`:
///
/// `exp{i[p(tau) q - p0^2 tau/2] - (q - q(tau))^2 / (4(sigma^2 + i tau/2)) - (i/2) F (F tau/3 + p0) tau^2}
///  / sqrt((sigma + i tau/(2 sigma)) sqrt(2 pi))`.
pub fn cs_wavefunction(q: f64, tau: f64, cs: &CsParams, cfg: &ModelConfig) -> Complex64 {
    let s = cs.sigma_q();
    let f = cfg.f_q();
    let (q0, p0) = (cs.q0(), cs.p0());
    let q_t = q0 + p0 * tau + 0.5 * f * tau * tau;
    let p_t = p0 + f * tau;
    let d = q - q_t;
    let gauss = Complex64::new(d * d, 0.0) / (Complex64::new(s * s, 0.5 * tau) * 4.0);
    let phase = p_t * q - 0.5 * p0 * p0 * tau - 0.5 * f * (f * tau / 3.0 + p0) * tau * tau;
    let exponent = Complex64::new(-gauss.re, phase - gauss.im);
    let denom = Complex64::new(s, 0.5 * tau / s) * (2.0 * PI).sqrt();
    exponent.exp() / denom.sqrt()
}

/// `D(z, tau)|0, tau>` in the coordinate representation, equal to
/// `exp(-(i/2) q0 p0) Phi_z`.
pub fn displaced_vacuum(q: f64, tau: f64, label: &GcsLabel, p: &IomParams, cfg: &ModelConfig) -> Complex64 {
    Complex64::from_polar(1.0, -0.5 * label.q0() * label.p0()) * gcs_wavefunction(q, tau, label, p, cfg)
}

/// `exp(conj(z1) z2 - (|z1|^2 + |z2|^2)/2)`.
pub fn gcs_overlap(z1: Complex64, z2: Complex64) -> Complex64 {
    (z1.conj() * z2 - (z1.norm_sqr() + z2.norm_sqr()) / 2.0).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{grid_inner_product, Grid1D, WaveField};

    fn general() -> IomParams {
        IomParams::from_polar(0.8, 0.4, 0.9).unwrap()
    }

    #[test]
    fn oscillator_ground_state_peak() {
        let cs = CsParams::new(std::f64::consts::FRAC_1_SQRT_2, Complex64::new(0.0, 0.0)).unwrap();
        let v = cs_wavefunction(0.0, 0.0, &cs, &ModelConfig::new(0.0).unwrap());
        assert!((v.re - 0.751_125_5).abs() < 1e-7);
        assert!((v.re - PI.powf(-0.25)).abs() < 1e-15 && v.im == 0.0);
    }

    #[test]
    fn narrow_cs_peak_amplitude() {
        let cs = CsParams::new(0.2, Complex64::new(0.0, 0.0)).unwrap();
        let v = cs_wavefunction(0.0, 0.0, &cs, &ModelConfig::new(1.0).unwrap());
        assert!((v.norm() - 1.412_342_5).abs() < 1e-6);
    }

    #[test]
    fn normalized_at_later_time() {
        let cfg = ModelConfig::new(2.0).unwrap();
        let p = general();
        let label = GcsLabel::from_z(Complex64::new(0.3, -0.5), &p).unwrap();
        let tau = 1.3;
        let q_t = label.q0() + label.p0() * tau + tau * tau;
        let grid = Grid1D::centered(q_t, 30.0, 6001).unwrap();
        let field = WaveField::from_fn(grid, tau, |q| gcs_wavefunction(q, tau, &label, &p, &cfg)).unwrap();
        assert!((grid_inner_product(&field, &field).unwrap().re - 1.0).abs() < 1e-8);
    }

    #[test]
    fn eigenvalue_by_finite_differences() {
        let cfg = ModelConfig::new(1.5).unwrap();
        let p = general();
        let z = Complex64::new(-0.4, 0.7);
        let label = GcsLabel::from_z(z, &p).unwrap();
        let h = 1e-4;
        for tau in [0.0, 0.5, 1.0, 2.0] {
            let c = iom_coefficients(&p, tau, &cfg);
            let phi = |q: f64| gcs_wavefunction(q, tau, &label, &p, &cfg);
            let q_t = label.q0() + label.p0() * tau + 0.75 * tau * tau;
            for dq in [-1.0, -0.3, 0.0, 0.6] {
                let q = q_t + dq;
                let d = (phi(q + h) - phi(q - h)) / (2.0 * h);
                let az = (c.f * q + c.phi) + c.g * d / phi(q);
                assert!((az - z).norm() < 1e-6, "tau {tau}, q {q}: {az}");
            }
        }
    }

    #[test]
    fn cs_equals_gcs_with_induced_params() {
        let cfg = ModelConfig::new(-0.7).unwrap();
        let cs = CsParams::from_initial(0.45, 0.3, 1.2).unwrap();
        let p = cs.iom();
        let label = cs.label();
        for tau in [0.0, 0.4, 2.5] {
            for q in [-2.0, 0.1, 1.7] {
                let a = cs_wavefunction(q, tau, &cs, &cfg);
                let b = gcs_wavefunction(q, tau, &label, &p, &cfg);
                assert!((a - b).norm() <= 1e-13 * a.norm(), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn density_peak_follows_trajectory() {
        let cfg = ModelConfig::new(2.0).unwrap();
        let cs = CsParams::from_initial(0.4, 0.0, 1.0).unwrap();
        let tau = 0.7;
        let q_t = tau + tau * tau;
        let s_t = (0.16 + tau * tau / 0.64f64).sqrt();
        let rho = cs_wavefunction(q_t, tau, &cs, &cfg).norm_sqr();
        assert!((rho - 1.0 / ((2.0 * PI).sqrt() * s_t)).abs() < 1e-12);
    }

    #[test]
    fn free_particle_limit() {
        // with F = 0 only the Gaussian and the p0 phase remain
        let cfg = ModelConfig::new(0.0).unwrap();
        let cs = CsParams::from_initial(0.5, 0.2, 0.8).unwrap();
        let (tau, q) = (1.1, 0.9);
        let d = q - 0.2 - 0.8 * tau;
        let expected = (Complex64::new(0.0, 0.8 * q - 0.32 * tau)
            - Complex64::new(d * d, 0.0) / Complex64::new(0.25, 0.5 * tau) / 4.0)
            .exp()
            / (Complex64::new(0.5, tau) * (2.0 * PI).sqrt()).sqrt();
        assert!((cs_wavefunction(q, tau, &cs, &cfg) - expected).norm() < 1e-14);
    }

    #[test]
    fn phase_is_continuous_in_time() {
        // a parameter pair whose g/c2 swings far into the left half-plane
        let p = IomParams::from_polar(2.0, 0.3, 1.4).unwrap();
        let cfg = ModelConfig::new(0.0).unwrap();
        let label = GcsLabel::from_z(Complex64::new(0.0, 0.0), &p).unwrap();
        let mut prev = gcs_wavefunction(0.0, 0.0, &label, &p, &cfg);
        let mut tau = 0.0;
        while tau < 20.0 {
            tau += 1e-3;
            let v = gcs_wavefunction(0.0, tau, &label, &p, &cfg);
            assert!((v / prev).arg().abs() < 0.05, "jump at tau = {tau}");
            prev = v;
        }
    }

    #[test]
    fn displaced_vacuum_phase() {
        let p = IomParams::oscillator();
        let cfg = ModelConfig::new(1.0).unwrap();
        let at_rest = GcsLabel::from_initial(2.0, 0.0, &p).unwrap();
        assert_eq!(
            displaced_vacuum(0.3, 0.2, &at_rest, &p, &cfg),
            gcs_wavefunction(0.3, 0.2, &at_rest, &p, &cfg)
        );
        let moving = GcsLabel::from_initial(2.0, 1.0, &p).unwrap();
        let ratio = displaced_vacuum(0.3, 0.2, &moving, &p, &cfg) / gcs_wavefunction(0.3, 0.2, &moving, &p, &cfg);
        assert!((ratio - Complex64::from_polar(1.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn overlap_formula() {
        let z = Complex64::new(0.3, -1.2);
        assert!((gcs_overlap(z, z) - 1.0).norm() < 1e-15);
        let v = gcs_overlap(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        assert!((v.re - 0.606_530_659_7).abs() < 1e-10);
        let w = Complex64::new(-0.5, 0.4);
        assert!((gcs_overlap(z, w).norm() - (-(z - w).norm_sqr() / 2.0).exp()).abs() < 1e-15);
    }

    #[test]
    fn overlap_against_quadrature() {
        let p = IomParams::oscillator();
        let cfg = ModelConfig::new(0.0).unwrap();
        let grid = Grid1D::centered(0.0, 24.0, 4801).unwrap();
        let field = |z: Complex64| {
            let l = GcsLabel::from_z(z, &p).unwrap();
            WaveField::from_fn(grid, 0.0, |q| displaced_vacuum(q, 0.0, &l, &p, &cfg)).unwrap()
        };
        let (a, b) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        let ip = grid_inner_product(&field(a), &field(b)).unwrap();
        assert!((ip - gcs_overlap(a, b)).norm() < 1e-10);
    }
}
