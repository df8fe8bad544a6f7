//! Special functions, quadrature, finite differences and grid inner products.

pub mod airy;
pub mod grid;
pub mod quadrature;

pub use airy::{airy_ai, airy_ai_extrapolated_oracle, airy_ai_quadrature_oracle};
pub use grid::{central_second_derivative, first_derivative, grid_inner_product, Grid1D, WaveField};
pub use quadrature::{
    integrate_adaptive, integrate_adaptive_with, integrate_real_with, richardson, AdaptiveOptions,
    Estimate,
};
