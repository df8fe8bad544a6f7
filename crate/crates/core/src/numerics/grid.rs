use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform discretization of the dimensionless coordinate axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    q_min: f64,
    q_max: f64,
    n_points: usize,
}

impl Grid1D {
    pub fn new(q_min: f64, q_max: f64, n_points: usize) -> Result<Self> {
        if !(q_min.is_finite() && q_max.is_finite()) {
            return Err(Error::Domain("grid bounds must be finite".into()));
        }
        if q_max <= q_min {
            return Err(Error::Domain(format!(
                "grid requires q_max > q_min, got [{q_min}, {q_max}]"
            )));
        }
        if n_points < 3 {
            return Err(Error::Domain(format!(
                "grid requires at least 3 nodes, got {n_points}"
            )));
        }
        Ok(Self {
            q_min,
            q_max,
            n_points,
        })
    }

    /// Grid of `n_points` nodes centred on `center` with half-width `half_width`.
    pub fn centered(center: f64, half_width: f64, n_points: usize) -> Result<Self> {
        Self::new(center - half_width, center + half_width, n_points)
    }

    pub fn q_min(&self) -> f64 {
        self.q_min
    }

    pub fn q_max(&self) -> f64 {
        self.q_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        (self.q_max - self.q_min) / (self.n_points - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            self.q_max
        } else {
            self.q_min + i as f64 * self.spacing()
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(move |i| self.node(i))
    }

    /// Index of the node closest to `q`, clamped to the grid.
    pub fn nearest_index(&self, q: f64) -> usize {
        let t = ((q - self.q_min) / self.spacing()).round();
        t.clamp(0.0, (self.n_points - 1) as f64) as usize
    }

    /// Composite Simpson weights. An even node count closes the last three
    /// intervals with the 3/8 rule so every weight stays fourth-order.
    pub fn simpson_weights(&self) -> Vec<f64> {
        let n = self.n_points;
        let h = self.spacing();
        let mut w = vec![0.0; n];
        let simpson_end = if n % 2 == 1 { n - 1 } else { n - 4 };
        if simpson_end > 0 {
            for (i, wi) in w.iter_mut().enumerate().take(simpson_end + 1) {
                *wi = if i == 0 || i == simpson_end {
                    h / 3.0
                } else if i % 2 == 1 {
                    4.0 * h / 3.0
                } else {
                    2.0 * h / 3.0
                };
            }
        }
        if n % 2 == 0 {
            let s = simpson_end;
            let c = 3.0 * h / 8.0;
            w[s] += c;
            w[s + 1] += 3.0 * c;
            w[s + 2] += 3.0 * c;
            w[s + 3] += c;
        }
        w
    }

    /// Simpson quadrature of real samples taken on this grid.
    pub fn integrate(&self, samples: &[f64]) -> f64 {
        debug_assert_eq!(samples.len(), self.n_points);
        self.simpson_weights()
            .iter()
            .zip(samples)
            .map(|(w, s)| w * s)
            .sum()
    }
}

/// Complex samples of a wave function on a grid at a fixed time.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveField {
    grid: Grid1D,
    tau: f64,
    values: Vec<Complex64>,
}

impl WaveField {
    pub fn new(grid: Grid1D, tau: f64, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n_points() {
            return Err(Error::Contract(format!(
                "field has {} samples for a grid of {} nodes",
                values.len(),
                grid.n_points()
            )));
        }
        if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Domain(format!("non-finite sample at node {i}")));
        }
        Ok(Self { grid, tau, values })
    }

    /// Samples `psi(q)` at every node.
    pub fn from_fn(grid: Grid1D, tau: f64, mut psi: impl FnMut(f64) -> Complex64) -> Result<Self> {
        let values = grid.nodes().map(&mut psi).collect();
        Self::new(grid, tau, values)
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    #[cfg(test)]
    fn with_tau(mut self, tau: f64) -> Self {
        self.tau = tau;
        self
    }

    pub fn density(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm_sqr()).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.grid.integrate(&self.density())
    }

    /// Rescales the samples so the Simpson norm is one.
    pub fn normalized(mut self) -> Self {
        let n = self.norm_sqr().sqrt();
        if n > 0.0 {
            self.values.iter_mut().for_each(|v| *v /= n);
        }
        self
    }
}

/// `sum_i w_i conj(A_i) B_i` with composite Simpson weights.
pub fn grid_inner_product(a: &WaveField, b: &WaveField) -> Result<Complex64> {
    if a.grid != b.grid {
        return Err(Error::Contract("inner product of fields on different grids".into()));
    }
    if a.tau != b.tau {
        return Err(Error::Contract(format!(
            "inner product of fields at different times ({} vs {})",
            a.tau, b.tau
        )));
    }
    let w = a.grid.simpson_weights();
    Ok(w
        .iter()
        .zip(a.values.iter().zip(&b.values))
        .map(|(w, (x, y))| x.conj() * y * *w)
        .sum())
}

/// Three-point second difference at interior node `i`.
pub fn central_second_derivative(field: &WaveField, i: usize) -> Result<Complex64> {
    let n = field.grid.n_points();
    if i == 0 || i + 1 >= n {
        return Err(Error::Contract(format!(
            "second difference needs an interior node, got {i} of {n}"
        )));
    }
    let h = field.grid.spacing();
    let v = &field.values;
    Ok((v[i - 1] - v[i] * 2.0 + v[i + 1]) / (h * h))
}

/// First derivative of the samples: five-point central stencil in the
/// interior, three-point one-sided/central near the ends.
pub fn first_derivative(field: &WaveField) -> Vec<Complex64> {
    let v = &field.values;
    let n = v.len();
    let h = field.grid.spacing();
    let mut d = vec![Complex64::new(0.0, 0.0); n];
    for i in 0..n {
        d[i] = if i >= 2 && i + 2 < n {
            (v[i - 2] - v[i - 1] * 8.0 + v[i + 1] * 8.0 - v[i + 2]) / (12.0 * h)
        } else if i == 0 {
            (v[0] * -3.0 + v[1] * 4.0 - v[2]) / (2.0 * h)
        } else if i + 1 == n {
            (v[n - 3] - v[n - 2] * 4.0 + v[n - 1] * 3.0) / (2.0 * h)
        } else {
            (v[i + 1] - v[i - 1]) / (2.0 * h)
        };
    }
    d
}
