//! Airy function `Ai` on the real line.
//!
//! Three regimes: the Maclaurin series in the middle, the exponentially
//! decaying asymptotic expansion for large positive x and the oscillatory
//! (modulus/phase) expansion for large negative x. Both asymptotic series
//! are truncated at their smallest term. Across each seam window the two
//! neighbouring forms are blended with a C2 step, so finite differences of
//! Ai see no jump.

use std::f64::consts::{FRAC_1_PI, FRAC_PI_4, PI};
use std::sync::atomic::{AtomicBool, Ordering};

use num_complex::Complex64;
use twofloat::TwoFloat;

use super::quadrature::{integrate_adaptive_with, richardson, AdaptiveOptions, Estimate};
use crate::error::{ensure_finite, Error, Result};

/// Ai(0) = 3^(-2/3) / Gamma(2/3)
pub const AI_ZERO: f64 = 0.355_028_053_887_817_2;
/// -Ai'(0) = 3^(-1/3) / Gamma(1/3)
pub const MINUS_AI_PRIME_ZERO: f64 = 0.258_819_403_792_806_8;

/// Window over which the series hands over to the decaying expansion.
pub const POSITIVE_SEAM: (f64, f64) = (5.0, 6.0);
/// Window over which the oscillatory expansion hands over to the series.
pub const NEGATIVE_SEAM: (f64, f64) = (-7.5, -6.5);

/// Every point where the evaluation method changes.
pub const SEAM_POINTS: [f64; 4] = [NEGATIVE_SEAM.0, NEGATIVE_SEAM.1, POSITIVE_SEAM.0, POSITIVE_SEAM.1];

const MAX_ASYMPTOTIC_TERMS: usize = 60;

static SEAM_FAULT: AtomicBool = AtomicBool::new(false);

/// Mutation hook: while set, the positive seam switches hard to a decaying
/// expansion scaled by 1.001. Only the validation fault fixture uses it.
#[doc(hidden)]
pub fn set_seam_fault(on: bool) {
    SEAM_FAULT.store(on, Ordering::SeqCst);
}

#[doc(hidden)]
pub fn seam_fault() -> bool {
    SEAM_FAULT.load(Ordering::Relaxed)
}

/// Ai(x) with the convention `Ai(x) = (1/pi) int_0^inf cos(u^3/3 + u x) du`.
pub fn airy_ai(x: f64) -> Result<f64> {
    ensure_finite("Airy argument", x)?;
    Ok(ai(x))
}

/// Unchecked evaluation for inner loops; NaN propagates.
#[inline]
pub(crate) fn ai(x: f64) -> f64 {
    let (p0, p1) = POSITIVE_SEAM;
    let (n0, n1) = NEGATIVE_SEAM;
    if x >= p1 {
        ai_decaying(x)
    } else if x > p0 {
        if seam_fault() {
            return 1.001 * ai_decaying(x);
        }
        let w = smooth_step((x - p0) / (p1 - p0));
        (1.0 - w) * ai_series(x) + w * ai_decaying(x)
    } else if x <= n0 {
        ai_oscillatory(x)
    } else if x < n1 {
        let w = smooth_step((x - n0) / (n1 - n0));
        (1.0 - w) * ai_oscillatory(x) + w * ai_series(x)
    } else {
        ai_series(x)
    }
}

/// Quintic step with vanishing first and second derivatives at 0 and 1.
fn smooth_step(t: f64) -> f64 {
    t * t * t * (10.0 - 15.0 * t + 6.0 * t * t)
}

/// `Ai = c1 f - c2 g` with the two Maclaurin solutions of `y'' = x y`.
///
/// For negative x the two sums cancel to a few parts in 1e5, so they are
/// accumulated in double-double; the result is then smooth to the last bit,
/// which finite-difference checks of the ODE rely on.
pub(crate) fn ai_series(x: f64) -> f64 {
    let c1 = TwoFloat::new_add(AI_ZERO, 2.052_336_324_362_12e-17);
    let c2 = TwoFloat::new_add(MINUS_AI_PRIME_ZERO, -2.522_243_111_610_832e-17);
    let xd = TwoFloat::from(x);
    let x3 = xd * xd * xd;
    let mut f_term = TwoFloat::from(1.0);
    let mut g_term = xd;
    let mut f = f_term;
    let mut g = g_term;
    for k in 1..200 {
        let k3 = 3.0 * k as f64;
        f_term = f_term * x3 / ((k3 - 1.0) * k3);
        g_term = g_term * x3 / (k3 * (k3 + 1.0));
        f += f_term;
        g += g_term;
        if f_term.hi().abs() <= 1e-33 * f.hi().abs().max(1.0) && g_term.hi().abs() <= 1e-33 * g.hi().abs().max(1.0) {
            break;
        }
    }
    (c1 * f - c2 * g).hi()
}

/// Coefficients u_k of the Airy asymptotic expansions.
fn asymptotic_coefficients() -> [f64; MAX_ASYMPTOTIC_TERMS] {
    let mut u = [0.0; MAX_ASYMPTOTIC_TERMS];
    u[0] = 1.0;
    for k in 1..MAX_ASYMPTOTIC_TERMS {
        let kf = k as f64;
        u[k] = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / ((2.0 * kf - 1.0) * 216.0 * kf);
    }
    u
}

fn ai_decaying(x: f64) -> f64 {
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let u = asymptotic_coefficients();
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    for (k, uk) in u.iter().enumerate() {
        let t = uk / zeta.powi(k as i32);
        if t > prev {
            break;
        }
        sum += if k % 2 == 0 { t } else { -t };
        prev = t;
        if t < 1e-17 {
            break;
        }
    }
    (-zeta).exp() / (2.0 * PI.sqrt() * x.powf(0.25)) * sum
}

fn ai_oscillatory(x: f64) -> f64 {
    let y = -x;
    let zeta = 2.0 / 3.0 * y * y.sqrt();
    let u = asymptotic_coefficients();
    let (mut even, mut odd) = (0.0, 0.0);
    let mut prev = f64::INFINITY;
    for (k, uk) in u.iter().enumerate() {
        let t = uk / zeta.powi(k as i32);
        if t > prev {
            break;
        }
        prev = t;
        let signed = if (k / 2) % 2 == 0 { t } else { -t };
        if k % 2 == 0 {
            even += signed;
        } else {
            odd += signed;
        }
        if t < 1e-17 {
            break;
        }
    }
    let theta = zeta - FRAC_PI_4;
    (theta.cos() * even + theta.sin() * odd) / (PI.sqrt() * y.powf(0.25))
}

/// The damped, truncated integral `(1/pi) int_0^u_max cos(u^3/3 + u x) exp(-damping u^2) du`.
///
/// Independent of the series/asymptotic evaluator; converges to Ai(x) as
/// `damping -> 0` and `u_max -> inf`.
pub fn airy_ai_quadrature_oracle(x: f64, u_max: f64, damping: f64) -> Result<Estimate<f64>> {
    ensure_finite("Airy argument", x)?;
    if !(u_max >= 0.0) || !u_max.is_finite() {
        return Err(Error::Domain(format!("u_max must be non-negative, got {u_max}")));
    }
    if !(damping >= 0.0) {
        return Err(Error::Domain(format!("damping must be non-negative, got {damping}")));
    }
    if u_max == 0.0 {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
            converged: true,
        });
    }
    // one panel per oscillation at the fastest local frequency
    let cycles = u_max * (u_max * u_max + x.abs()) / (2.0 * PI);
    let opts = AdaptiveOptions::with_panels((cycles.ceil() as usize).max(8));
    let r = integrate_adaptive_with(
        |u| Complex64::new((u * u * u / 3.0 + u * x).cos() * (-damping * u * u).exp(), 0.0),
        0.0,
        u_max,
        1e-10,
        opts,
    )?;
    Ok(r.map(|v| v.re * FRAC_1_PI))
}

/// Ai(x) from the quadrature oracle, extrapolated to zero damping.
///
/// Each damping level integrates far enough that the Gaussian tail is below
/// 1e-14, so the only remaining bias is the smooth damping dependence.
pub fn airy_ai_extrapolated_oracle(x: f64, damping0: f64, levels: usize) -> Result<Estimate<f64>> {
    let mut values = Vec::with_capacity(levels);
    let mut converged = true;
    for k in 0..levels {
        let d = damping0 / 2f64.powi(k as i32);
        let u_max = (32.0 / d).sqrt();
        let r = airy_ai_quadrature_oracle(x, u_max, d)?;
        converged &= r.converged;
        values.push(Complex64::new(r.value, 0.0));
    }
    let r = richardson(&values, 2.0);
    Ok(Estimate {
        value: r.value.re,
        error: r.error,
        converged: converged && r.converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Maclaurin oracle in closed form: Ai(0) = 3^(-2/3)/Gamma(2/3).
    #[test]
    fn value_at_origin() {
        let gamma_two_thirds = 1.354_117_939_426_400_4;
        let expected = 3f64.powf(-2.0 / 3.0) / gamma_two_thirds;
        assert!((airy_ai(0.0).unwrap() - expected).abs() < 1e-15);
        assert!((airy_ai(0.0).unwrap() - 0.355_028_053_9).abs() < 1e-10);
    }

    #[test]
    fn reference_values() {
        // frozen from a 30-digit reference evaluation
        let cases = [
            (1.0, 0.135_292_416_312_881_4),
            (-1.0, 0.535_560_883_292_352_1),
            (-10.0, 0.040_241_238_486_443_19),
            (-8.0, -0.052_705_050_356_386_2),
            (-7.0, 0.184_280_835_250_505_65),
            (-6.0, -0.329_145_173_629_823_1),
            (-2.0, 0.227_407_428_201_685_58),
            (2.0, 0.034_924_130_423_274_38),
            (5.0, 1.083_444_281_360_744_2e-4),
            (6.0, 9.947_694_360_252_889e-6),
            (10.0, 1.104_753_255_289_868_6e-10),
        ];
        for (x, v) in cases {
            let got = airy_ai(x).unwrap();
            assert!((got - v).abs() <= 1e-10, "Ai({x}) = {got}, expected {v}");
        }
    }

    #[test]
    fn non_finite_argument_is_a_domain_error() {
        assert!(matches!(airy_ai(f64::NAN), Err(Error::Domain(_))));
        assert!(matches!(airy_ai(f64::INFINITY), Err(Error::Domain(_))));
    }

    #[test]
    fn seams_are_continuous() {
        for seam in SEAM_POINTS {
            let series = ai_series(seam);
            let asym = if seam > 0.0 { ai_decaying(seam) } else { ai_oscillatory(seam) };
            assert!((series - asym).abs() <= 1e-10, "seam {seam}: {series} vs {asym}");
            let eps = 1e-12;
            assert!((ai(seam - eps) - ai(seam + eps)).abs() <= 1e-10);
        }
    }

    #[test]
    fn ode_residual_with_five_point_stencil() {
        let h = 1e-3;
        let mut x = -8.0;
        while x <= 4.0 {
            let d2 = (-ai(x + 2.0 * h) + 16.0 * ai(x + h) - 30.0 * ai(x) + 16.0 * ai(x - h)
                - ai(x - 2.0 * h))
                / (12.0 * h * h);
            let r = d2 - x * ai(x);
            assert!(r.abs() < 1e-7, "residual {r} at {x}");
            x += 0.0137;
        }
    }

    #[test]
    fn empty_quadrature_range_is_zero() {
        assert_eq!(airy_ai_quadrature_oracle(0.3, 0.0, 1e-4).unwrap().value, 0.0);
    }

    #[test]
    fn truncated_oracle_values() {
        // The endpoint at u = 40 still carries exp(-0.16) of the integrand,
        // which leaves a few 1e-4 of truncation bias; frozen from an
        // independent 4e6-node Simpson evaluation of the same integral.
        let r0 = airy_ai_quadrature_oracle(0.0, 40.0, 1e-4).unwrap();
        assert!(r0.converged);
        assert!((r0.value - 0.355_187_395_655_936).abs() < 1e-8, "{}", r0.value);
        let r1 = airy_ai_quadrature_oracle(1.0, 40.0, 1e-4).unwrap();
        assert!((r1.value - 0.135_156_642_909_72).abs() < 1e-8, "{}", r1.value);
        assert!((r0.value - ai(0.0)).abs() < 2e-4);
    }

    /// The series/asymptotic values near every seam agree with the
    /// independent integral representation.
    #[test]
    fn seams_cross_validated_against_quadrature() {
        for x in [-8.0, NEGATIVE_SEAM.0, -7.0, NEGATIVE_SEAM.1, -1.0, 0.0, 1.0, POSITIVE_SEAM.0, POSITIVE_SEAM.1] {
            let oracle = airy_ai_extrapolated_oracle(x, 0.04, 5).unwrap();
            assert!(oracle.converged);
            assert!(
                (oracle.value - ai(x)).abs() < 1e-7,
                "x = {x}: oracle {} vs {}",
                oracle.value,
                ai(x)
            );
        }
    }
}
