use num_complex::Complex64;

use crate::error::{Error, Result};

/// A numerical value with its estimated absolute error.
///
/// `converged == false` marks a best-effort result: a subdivision or
/// evaluation budget ran out before the error target was met.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub error: f64,
    pub converged: bool,
}

impl<T> Estimate<T> {
    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Estimate<U> {
        Estimate {
            value: f(self.value),
            error: self.error,
            converged: self.converged,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct AdaptiveOptions {
    /// Equal panels the range is split into before adaptive refinement.
    /// Oscillatory integrands need roughly one panel per oscillation.
    pub panels: usize,
    /// Every panel is bisected at least this many times.
    pub min_depth: u32,
    pub max_depth: u32,
    pub max_evals: usize,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        Self {
            panels: 1,
            min_depth: 3,
            max_depth: 50,
            max_evals: 20_000_000,
        }
    }
}

impl AdaptiveOptions {
    pub fn with_panels(panels: usize) -> Self {
        Self {
            panels: panels.max(1),
            ..Self::default()
        }
    }
}

struct Segment {
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    whole: Complex64,
    depth: u32,
}

/// Adaptive composite Simpson quadrature with interval bisection and an
/// absolute error target.
pub fn integrate_adaptive<F>(f: F, a: f64, b: f64, tol: f64) -> Result<Estimate<Complex64>>
where
    F: FnMut(f64) -> Complex64,
{
    integrate_adaptive_with(f, a, b, tol, AdaptiveOptions::default())
}

pub fn integrate_adaptive_with<F>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
    opts: AdaptiveOptions,
) -> Result<Estimate<Complex64>>
where
    F: FnMut(f64) -> Complex64,
{
    if !(a.is_finite() && b.is_finite()) || a >= b {
        return Err(Error::Domain(format!("integration needs a < b, got [{a}, {b}]")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let length = b - a;
    let panels = opts.panels.max(1);
    let width = length / panels as f64;

    let mut total = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    let mut converged = true;
    let mut evals = 0usize;
    let mut stack: Vec<Segment> = Vec::with_capacity(2 * opts.max_depth as usize + 8);

    let mut f_left = f(a);
    evals += 1;
    for p in 0..panels {
        let pa = a + p as f64 * width;
        let pb = if p + 1 == panels { b } else { a + (p + 1) as f64 * width };
        let pm = 0.5 * (pa + pb);
        let fm = f(pm);
        let fb = f(pb);
        evals += 2;
        stack.push(Segment {
            a: pa,
            b: pb,
            fa: f_left,
            fm,
            fb,
            whole: (f_left + fm * 4.0 + fb) * ((pb - pa) / 6.0),
            depth: 0,
        });
        f_left = fb;

        while let Some(s) = stack.pop() {
            let m = 0.5 * (s.a + s.b);
            let fl = f(0.5 * (s.a + m));
            let fr = f(0.5 * (m + s.b));
            evals += 2;
            let left = (s.fa + fl * 4.0 + s.fm) * ((m - s.a) / 6.0);
            let right = (s.fm + fr * 4.0 + s.fb) * ((s.b - m) / 6.0);
            let delta = left + right - s.whole;
            let local_tol = tol * (s.b - s.a) / length;
            let within = delta.norm() <= 15.0 * local_tol;
            let exhausted = s.depth >= opts.max_depth || evals >= opts.max_evals;
            if (within && s.depth >= opts.min_depth) || exhausted {
                total += left + right + delta / 15.0;
                error += delta.norm() / 15.0;
                if !within {
                    converged = false;
                }
            } else {
                stack.push(Segment {
                    a: m,
                    b: s.b,
                    fa: s.fm,
                    fm: fr,
                    fb: s.fb,
                    whole: right,
                    depth: s.depth + 1,
                });
                stack.push(Segment {
                    a: s.a,
                    b: m,
                    fa: s.fa,
                    fm: fl,
                    fb: s.fm,
                    whole: left,
                    depth: s.depth + 1,
                });
            }
        }
    }

    Ok(Estimate {
        value: total,
        error,
        converged,
    })
}

/// Real-valued convenience wrapper around [`integrate_adaptive_with`].
pub fn integrate_real_with<F>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
    opts: AdaptiveOptions,
) -> Result<Estimate<f64>>
where
    F: FnMut(f64) -> f64,
{
    Ok(integrate_adaptive_with(|x| Complex64::new(f(x), 0.0), a, b, tol, opts)?.map(|v| v.re))
}

/// Richardson extrapolation to a vanishing parameter.
///
/// `values[k]` must be computed at `h0 / ratio^k`, with an error expansion in
/// integer powers `h, h^2, ...`. The error estimate is the change between the
/// last two diagonal entries of the tableau.
pub fn richardson(values: &[Complex64], ratio: f64) -> Estimate<Complex64> {
    assert!(!values.is_empty(), "richardson needs at least one value");
    let n = values.len();
    // level[k] holds T[k + j][j] of the Neville tableau
    let mut level: Vec<Complex64> = values.to_vec();
    let mut diagonal = vec![values[0]];
    for j in 1..n {
        let factor = ratio.powi(j as i32) - 1.0;
        level = level
            .windows(2)
            .map(|w| w[1] + (w[1] - w[0]) / factor)
            .collect();
        diagonal.push(level[0]);
    }
    let best = *diagonal.last().unwrap();
    let error = if n >= 2 {
        (best - diagonal[n - 2]).norm()
    } else {
        f64::INFINITY
    };
    Estimate {
        value: best,
        error,
        converged: error.is_finite(),
    }
}
