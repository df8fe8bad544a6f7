//! Closed-form wave functions: eta-states, stationary Airy states, the
//! linear integral of motion and its coherent and Fock states.
//!
//! Everything is in the dimensionless variables `q = x/l`, `tau = hbar t / (m l^2)`,
//! with Hamiltonian `H = p^2/2 - F q`.

mod eta;
mod fock;
mod gcs;
mod iom;
mod stationary;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Result};

pub use eta::{
    eta_amplitude, eta_state, eta_superposition, gaussian_eta_packet, EtaLabel, GaussianProfile,
    SuperposedField, ETA_DELTA_WEIGHT,
};
pub use fock::{
    annihilation_matrix, creation_matrix, fock_series, fock_states, fock_wavefunction,
    hamiltonian_matrix_from_ladders, hamiltonian_matrix_oscillator_basis, FockBasis, DEFAULT_N_MAX,
};
pub use gcs::{cs_wavefunction, displaced_vacuum, gcs_overlap, gcs_wavefunction};
pub use iom::{iom_coefficients, CsParams, GcsLabel, IomCoeffs, IomParams};
pub use stationary::{
    q_epsilon, stationary_state, stationary_via_transform, EnergyLabel, TransformOptions, DEFAULT_DAMPING,
};

/// The single physics knob: the dimensionless force `F_q = m l^3 F_x / hbar^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    #[serde(rename = "f_q")]
    f_q: f64,
}

impl ModelConfig {
    pub fn new(f_q: f64) -> Result<Self> {
        ensure_finite("F_q", f_q)?;
        Ok(Self { f_q })
    }

    pub fn f_q(&self) -> f64 {
        self.f_q
    }
}
