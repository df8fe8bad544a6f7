//! Fock states of the integral of motion and truncated ladder matrices.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::gcs::gcs_wavefunction;
use super::iom::{iom_coefficients, GcsLabel, IomParams};
use super::ModelConfig;
use crate::error::{Error, Result};

pub const DEFAULT_N_MAX: usize = 60;

/// `<q|n, tau>` for `n <= n_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockBasis {
    n_max: usize,
}

impl Default for FockBasis {
    fn default() -> Self {
        Self { n_max: DEFAULT_N_MAX }
    }
}

impl FockBasis {
    pub fn new(n_max: usize) -> Self {
        Self { n_max }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `<q|0>, ..., <q|n>` at one point.
    ///
    /// From `A|n> = sqrt(n)|n-1>` the derivative of `<q|n>` is eliminated from
    /// `A^dagger = conj(c1) q - conj(g) d/dq + conj(phi)`, which with
    /// `2 Re(conj(g) c1) = 1` leaves the three-term recurrence
    ///
    /// `g sqrt(n+1) psi_{n+1} = (q + 2 Re(conj(g) phi)) psi_n - conj(g) sqrt(n) psi_{n-1}`,
    ///
    /// a Hermite-type recurrence that involves no numerical differentiation.
    pub fn states(&self, n: usize, q: f64, tau: f64, p: &IomParams, cfg: &ModelConfig) -> Result<Vec<Complex64>> {
        if n > self.n_max {
            return Err(Error::Capability(format!(
                "Fock index {n} exceeds the configured maximum {}",
                self.n_max
            )));
        }
        let c = iom_coefficients(p, tau, cfg);
        let shift = q + 2.0 * (c.g.conj() * c.phi).re;
        let vacuum = GcsLabel::from_z(Complex64::new(0.0, 0.0), p)?;
        let mut out = Vec::with_capacity(n + 1);
        out.push(gcs_wavefunction(q, tau, &vacuum, p, cfg));
        let mut prev = Complex64::new(0.0, 0.0);
        for k in 0..n {
            let cur = out[k];
            let kf = k as f64;
            let next = (cur * shift - c.g.conj() * kf.sqrt() * prev) / (c.g * (kf + 1.0).sqrt());
            prev = cur;
            out.push(next);
        }
        Ok(out)
    }

    pub fn wavefunction(&self, n: usize, q: f64, tau: f64, p: &IomParams, cfg: &ModelConfig) -> Result<Complex64> {
        Ok(*self.states(n, q, tau, p, cfg)?.last().expect("at least the vacuum"))
    }
}

/// `<q|n, tau>` with the default capability limit.
pub fn fock_wavefunction(n: usize, q: f64, tau: f64, p: &IomParams, cfg: &ModelConfig) -> Result<Complex64> {
    FockBasis::default().wavefunction(n, q, tau, p, cfg)
}

/// `<q|0>, ..., <q|n>` with the default capability limit.
pub fn fock_states(n: usize, q: f64, tau: f64, p: &IomParams, cfg: &ModelConfig) -> Result<Vec<Complex64>> {
    FockBasis::default().states(n, q, tau, p, cfg)
}

/// Partial sum `exp(-|z|^2/2) sum_{n <= n_terms} z^n / sqrt(n!) <q|n, tau>`.
pub fn fock_series(
    q: f64,
    tau: f64,
    z: Complex64,
    n_terms: usize,
    basis: &FockBasis,
    p: &IomParams,
    cfg: &ModelConfig,
) -> Result<Complex64> {
    let states = basis.states(n_terms, q, tau, p, cfg)?;
    let mut coeff = Complex64::new((-z.norm_sqr() / 2.0).exp(), 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for (n, psi) in states.iter().enumerate() {
        if n > 0 {
            coeff *= z / (n as f64).sqrt();
        }
        sum += coeff * psi;
    }
    Ok(sum)
}

/// `A` in the basis `|0>, ..., |dim-1>`: `A_{n-1, n} = sqrt(n)`.
pub fn annihilation_matrix(dim: usize) -> DMatrix<f64> {
    DMatrix::from_fn(dim, dim, |m, n| if m + 1 == n { (n as f64).sqrt() } else { 0.0 })
}

pub fn creation_matrix(dim: usize) -> DMatrix<f64> {
    annihilation_matrix(dim).transpose()
}

/// `H = (1/4)[a^dagger a + a a^dagger - (a^dagger)^2 - a^2] - (F/sqrt 2)(a + a^dagger)`
/// assembled from truncated ladder matrices. The truncation corrupts only
/// the last diagonal entry, through `a a^dagger`.
pub fn hamiltonian_matrix_from_ladders(dim: usize, cfg: &ModelConfig) -> DMatrix<f64> {
    let a = annihilation_matrix(dim);
    let ad = creation_matrix(dim);
    ((&ad * &a) + (&a * &ad) - (&ad * &ad) - (&a * &a)) * 0.25 - (a + ad) * (cfg.f_q() * FRAC_1_SQRT_2)
}

/// Matrix elements of `p^2/2 - F q` between oscillator eigenstates,
/// written down directly:
/// `<n|p^2|n> = n + 1/2`, `<n+2|p^2|n> = -sqrt((n+1)(n+2))/2`,
/// `<n+1|q|n> = sqrt((n+1)/2)`.
pub fn hamiltonian_matrix_oscillator_basis(dim: usize, cfg: &ModelConfig) -> DMatrix<f64> {
    let f = cfg.f_q();
    DMatrix::from_fn(dim, dim, |m, n| {
        let (lo, hi) = (m.min(n) as f64, m.max(n));
        match m.abs_diff(n) {
            0 => 0.5 * (lo + 0.5),
            1 => -f * (hi as f64 / 2.0).sqrt(),
            2 => -0.25 * ((lo + 1.0) * (lo + 2.0)).sqrt(),
            _ => 0.0,
        }
    })
}
