//! Quantum states of a particle in a uniform force field.
//!
//! Closed-form stationary (Airy) states, the nonstationary plane-wave family
//! labelled by the initial momentum, generalized coherent states built from a
//! linear integral of motion, and the coherent-state subfamily, together with
//! independent numerical oracles (quadrature, finite differences,
//! Crank-Nicolson propagation) that check every relation between them.
//!
//! All quantities are in the dimensionless variables `q = x / l`,
//! `tau = hbar t / (m l^2)`, `F_q = m l^3 F_x / hbar^2`; see
//! [`observables::UnitsMap`] for the conversion.

pub mod cli;
pub mod error;
pub mod numerics;
pub mod observables;
pub mod propagator;
pub mod states;
pub mod validation;

pub use error::{Error, Result};
