use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{rng, Check, SuiteReport};
use crate::error::Result;
use crate::states::{eta_state, EtaLabel, ModelConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetryConfig {
    pub samples: usize,
    /// Step for the eigen-relations on eta-states.
    pub h_eigen: f64,
    /// Step for the nested differences in the commutators.
    pub h_commutator: f64,
    pub f_max: f64,
    pub eta_max: f64,
    pub tol: f64,
}

impl Default for SymmetryConfig {
    fn default() -> Self {
        Self {
            samples: 100,
            h_eigen: 1e-4,
            h_commutator: 5e-4,
            f_max: 2.0,
            eta_max: 2.0,
            tol: 1e-6,
        }
    }
}

type Field<'a> = Box<dyn Fn(f64, f64) -> Complex64 + 'a>;

fn i() -> Complex64 {
    Complex64::i()
}

fn dq<'a>(psi: &'a dyn Fn(f64, f64) -> Complex64, h: f64) -> Field<'a> {
    Box::new(move |q, t| (psi(q + h, t) - psi(q - h, t)) / (2.0 * h))
}

fn dt<'a>(psi: &'a dyn Fn(f64, f64) -> Complex64, h: f64) -> Field<'a> {
    Box::new(move |q, t| (psi(q, t + h) - psi(q, t - h)) / (2.0 * h))
}

/// `Y2 = d_q - i F tau`
fn y2<'a>(psi: &'a dyn Fn(f64, f64) -> Complex64, f: f64, h: f64) -> Field<'a> {
    Box::new(move |q, t| dq(psi, h)(q, t) - i() * f * t * psi(q, t))
}

/// `Y3 = tau d_q - (i/2)(F tau^2 + 2q)`
fn y3<'a>(psi: &'a dyn Fn(f64, f64) -> Complex64, f: f64, h: f64) -> Field<'a> {
    Box::new(move |q, t| dq(psi, h)(q, t) * t - i() * 0.5 * (f * t * t + 2.0 * q) * psi(q, t))
}

/// `Y4 = d_tau + F Y3`
fn y4<'a>(psi: &'a dyn Fn(f64, f64) -> Complex64, f: f64, h: f64) -> Field<'a> {
    Box::new(move |q, t| dt(psi, h)(q, t) + y3(psi, f, h)(q, t) * f)
}

struct Point {
    q: f64,
    tau: f64,
    eta: f64,
    f: f64,
}

fn points(cfg: &SymmetryConfig, seed: u64) -> Vec<Point> {
    let mut r = rng(seed);
    (0..cfg.samples)
        .map(|_| Point {
            q: r.gen_range(-3.0..3.0),
            tau: r.gen_range(0.0..1.0),
            eta: r.gen_range(-cfg.eta_max..=cfg.eta_max),
            f: r.gen_range(-cfg.f_max..=cfg.f_max),
        })
        .collect()
}

/// Largest error of the three eta-state eigen-relations at step `h`:
/// `Y2 chi = i eta chi`, `Y3 chi = -d_eta chi`, `Y4 chi = -(i/2) eta^2 chi`.
fn eigen_errors(pts: &[Point], h: f64) -> Result<[f64; 3]> {
    let mut worst = [0.0f64; 3];
    for p in pts {
        let model = ModelConfig::new(p.f)?;
        let chi = |q: f64, t: f64| eta_state(q, t, EtaLabel::new(p.eta).expect("finite"), &model);
        let at = |eta: f64| eta_state(p.q, p.tau, EtaLabel::new(eta).expect("finite"), &model);
        let c = chi(p.q, p.tau);
        let d_eta = (at(p.eta + h) - at(p.eta - h)) / (2.0 * h);
        let e = [
            (y2(&chi, p.f, h)(p.q, p.tau) - i() * p.eta * c).norm(),
            (y3(&chi, p.f, h)(p.q, p.tau) + d_eta).norm(),
            (y4(&chi, p.f, h)(p.q, p.tau) + i() * 0.5 * p.eta * p.eta * c).norm(),
        ];
        for k in 0..3 {
            worst[k] = worst[k].max(e[k]);
        }
    }
    Ok(worst)
}

/// `[Y2, Y3] psi - Y1 psi` on `exp(-q^2)` and `[Y3, Y4] psi + Y2 psi` on
/// `exp(-q^2 + i q tau)`, with `Y1 = -i`.
fn commutator_errors(pts: &[Point], h: f64) -> [f64; 2] {
    let g = |q: f64, _t: f64| Complex64::new((-q * q).exp(), 0.0);
    let s = |q: f64, t: f64| Complex64::new(-q * q, q * t).exp();
    let mut worst = [0.0f64; 2];
    for p in pts {
        let f = p.f;
        let a = y3(&g, f, h);
        let b = y2(&g, f, h);
        let lhs = y2(&*a, f, h)(p.q, p.tau) - y3(&*b, f, h)(p.q, p.tau);
        worst[0] = worst[0].max((lhs + i() * g(p.q, p.tau)).norm());

        let a = y4(&s, f, h);
        let b = y3(&s, f, h);
        let lhs = y3(&*a, f, h)(p.q, p.tau) - y4(&*b, f, h)(p.q, p.tau);
        worst[1] = worst[1].max((lhs + y2(&s, f, h)(p.q, p.tau)).norm());
    }
    worst
}

/// Finite-difference verification of the symmetry algebra, each relation
/// with a two-resolution order check.
pub fn symmetry_operator_suite(cfg: &SymmetryConfig, seed: u64) -> Result<SuiteReport> {
    let pts = points(cfg, seed);
    let coarse = eigen_errors(&pts, cfg.h_eigen)?;
    let fine = eigen_errors(&pts, 0.5 * cfg.h_eigen)?;
    let mut checks = Vec::new();
    for (k, name) in ["y2_eigen", "y3_eigen", "y4_eigen"].iter().enumerate() {
        checks.push(Check::new(*name, coarse[k], cfg.tol));
        checks.push(Check::order2(format!("{name}/convergence_ratio"), coarse[k], fine[k]));
    }
    let coarse = commutator_errors(&pts, cfg.h_commutator);
    let fine = commutator_errors(&pts, 0.5 * cfg.h_commutator);
    for (k, name) in ["y2_y3_commutator", "y3_y4_commutator"].iter().enumerate() {
        checks.push(Check::new(*name, coarse[k], cfg.tol));
        checks.push(Check::order2(format!("{name}/convergence_ratio"), coarse[k], fine[k]));
    }
    SuiteReport::new("symmetry_operator", seed, cfg, checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        let r = symmetry_operator_suite(&SymmetryConfig::default(), 9).unwrap();
        assert!(r.passed(), "{:#?}", r.checks);
    }

    #[test]
    fn commutator_is_not_plus_i() {
        let pts = points(&SymmetryConfig::default(), 1);
        let g = |q: f64, _t: f64| Complex64::new((-q * q).exp(), 0.0);
        let p = &pts[0];
        let lhs = y2(&*y3(&g, p.f, 5e-4), p.f, 5e-4)(p.q, p.tau) - y3(&*y2(&g, p.f, 5e-4), p.f, 5e-4)(p.q, p.tau);
        assert!((lhs - i() * g(p.q, p.tau)).norm() > 0.1 * g(p.q, p.tau).norm());
    }
}
