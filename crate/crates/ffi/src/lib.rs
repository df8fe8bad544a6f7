//! C ABI over `accel-cs`.
//!
//! Every fallible function returns an [`AcsStatus`] and writes results
//! through out-pointers. On failure the message is available from
//! [`acs_last_error`] on the same thread. Handles are opaque and must be
//! released with their `_free` function; strings returned by the library are
//! released with [`acs_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use accel_cs::numerics::{airy_ai, Grid1D, WaveField};
use accel_cs::observables::{analytic_moments, MomentSet};
use accel_cs::propagator::{propagate, PropagatorConfig};
use accel_cs::states::{
    cs_wavefunction, eta_state, gcs_wavefunction, stationary_state, CsParams, EnergyLabel, EtaLabel, GcsLabel,
    IomParams, ModelConfig,
};
use accel_cs::validation::run_suite;
use accel_cs::Error;
use num_complex::Complex64;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcsStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Contract = 3,
    Capability = 4,
    Unconverged = 5,
    Io = 6,
    Config = 7,
    InvalidUtf8 = 8,
    Panic = 9,
}

/// First and second moments of a coherent state at time `tau`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct AcsMoments {
    pub mean_q: f64,
    pub mean_p: f64,
    pub sigma_q: f64,
    pub sigma_p: f64,
    pub sigma_qp: f64,
    pub tau: f64,
}

pub struct AcsModel(ModelConfig);

pub struct AcsCoherentState {
    iom: IomParams,
    label: GcsLabel,
    cs: Option<CsParams>,
}

pub struct AcsPropagation {
    field: WaveField,
    norm_drift: f64,
    edge_mass: f64,
    clean: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

enum Fail {
    Null(&'static str),
    Utf8,
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> AcsStatus {
    let (status, msg) = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => return AcsStatus::Ok,
        Ok(Err(Fail::Null(name))) => (AcsStatus::NullPointer, format!("null pointer: {name}")),
        Ok(Err(Fail::Utf8)) => (AcsStatus::InvalidUtf8, "string argument is not valid UTF-8".to_string()),
        Ok(Err(Fail::Lib(e))) => {
            let s = match e {
                Error::Domain(_) => AcsStatus::Domain,
                Error::Contract(_) => AcsStatus::Contract,
                Error::Capability(_) => AcsStatus::Capability,
                Error::Unconverged(_) => AcsStatus::Unconverged,
                Error::Io(_) => AcsStatus::Io,
                Error::Config(_) => AcsStatus::Config,
            };
            (s, e.to_string())
        }
        Err(_) => (AcsStatus::Panic, "internal panic".to_string()),
    };
    set_last_error(msg);
    status
}

fn out<'a, T>(p: *mut T, name: &'static str) -> Result<&'a mut T, Fail> {
    // SAFETY: non-null pointers come from the caller, who guarantees validity.
    unsafe { p.as_mut() }.ok_or(Fail::Null(name))
}

fn handle<'a, T>(p: *const T, name: &'static str) -> Result<&'a T, Fail> {
    // SAFETY: as for `out`.
    unsafe { p.as_ref() }.ok_or(Fail::Null(name))
}

fn write_complex(v: Complex64, re: *mut f64, im: *mut f64) -> Result<(), Fail> {
    let (r, i) = (out(re, "out_re")?, out(im, "out_im")?);
    *r = v.re;
    *i = v.im;
    Ok(())
}

fn boxed<T>(v: T, dst: *mut *mut T, name: &'static str) -> Result<(), Fail> {
    *out(dst, name)? = Box::into_raw(Box::new(v));
    Ok(())
}

/// Message of the last failed call on this thread; empty if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn acs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn acs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn acs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub extern "C" fn acs_airy_ai(x: f64, out_value: *mut f64) -> AcsStatus {
    guard(|| {
        let slot = out(out_value, "out_value")?;
        *slot = airy_ai(x)?;
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn acs_model_new(f_q: f64, out_model: *mut *mut AcsModel) -> AcsStatus {
    guard(|| boxed(AcsModel(ModelConfig::new(f_q)?), out_model, "out_model"))
}

/// # Safety
/// `model` must be null or a handle from [`acs_model_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn acs_model_free(model: *mut AcsModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Coherent state of width `sigma_q` centred at `(q0, p0)` at `tau = 0`.
#[no_mangle]
pub extern "C" fn acs_cs_new(sigma_q: f64, q0: f64, p0: f64, out_state: *mut *mut AcsCoherentState) -> AcsStatus {
    guard(|| {
        let cs = CsParams::from_initial(sigma_q, q0, p0)?;
        boxed(AcsCoherentState { iom: cs.iom(), label: cs.label(), cs: Some(cs) }, out_state, "out_state")
    })
}

/// Generalized coherent state: integral of motion `(|c1|, mu1, mu2 - mu1)` and label `z`.
#[no_mangle]
pub extern "C" fn acs_gcs_new(
    c1_abs: f64,
    mu1: f64,
    delta_mu: f64,
    z_re: f64,
    z_im: f64,
    out_state: *mut *mut AcsCoherentState,
) -> AcsStatus {
    guard(|| {
        let iom = IomParams::from_polar(c1_abs, mu1, delta_mu)?;
        let label = GcsLabel::from_z(Complex64::new(z_re, z_im), &iom)?;
        boxed(AcsCoherentState { iom, label, cs: None }, out_state, "out_state")
    })
}

/// # Safety
/// `state` must be null or a handle from [`acs_cs_new`] or [`acs_gcs_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn acs_state_free(state: *mut AcsCoherentState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

fn state_value(s: &AcsCoherentState, q: f64, tau: f64, m: &ModelConfig) -> Complex64 {
    match &s.cs {
        Some(cs) => cs_wavefunction(q, tau, cs, m),
        None => gcs_wavefunction(q, tau, &s.label, &s.iom, m),
    }
}

#[no_mangle]
pub extern "C" fn acs_state_eval(
    state: *const AcsCoherentState,
    model: *const AcsModel,
    q: f64,
    tau: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> AcsStatus {
    guard(|| {
        let (s, m) = (handle(state, "state")?, handle(model, "model")?);
        write_complex(state_value(s, q, tau, &m.0), out_re, out_im)
    })
}

#[no_mangle]
pub extern "C" fn acs_state_moments(
    state: *const AcsCoherentState,
    model: *const AcsModel,
    tau: f64,
    out_moments: *mut AcsMoments,
) -> AcsStatus {
    guard(|| {
        let (s, m) = (handle(state, "state")?, handle(model, "model")?);
        let MomentSet { mean_q, mean_p, sigma_q, sigma_p, sigma_qp, tau } = analytic_moments(tau, &s.iom, &s.label, &m.0);
        *out(out_moments, "out_moments")? = AcsMoments { mean_q, mean_p, sigma_q, sigma_p, sigma_qp, tau };
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn acs_eta_state(
    model: *const AcsModel,
    eta: f64,
    q: f64,
    tau: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> AcsStatus {
    guard(|| {
        let m = handle(model, "model")?;
        write_complex(eta_state(q, tau, EtaLabel::new(eta)?, &m.0), out_re, out_im)
    })
}

/// Real stationary state of energy `epsilon` at `q`; multiply by `exp(-i epsilon tau)` for the time dependence.
#[no_mangle]
pub extern "C" fn acs_stationary_state(
    model: *const AcsModel,
    epsilon: f64,
    q: f64,
    out_value: *mut f64,
) -> AcsStatus {
    guard(|| {
        let m = handle(model, "model")?;
        let v = stationary_state(q, EnergyLabel::new(epsilon)?, &m.0)?;
        *out(out_value, "out_value")? = v;
        Ok(())
    })
}

/// Crank-Nicolson evolution of `state` (sampled at `tau = 0` on `n_points`
/// nodes of `[q_min, q_max]` and normalized) to `tau_end`, steps at most `max_dt`.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub extern "C" fn acs_propagate(
    state: *const AcsCoherentState,
    model: *const AcsModel,
    q_min: f64,
    q_max: f64,
    n_points: usize,
    tau_end: f64,
    max_dt: f64,
    out_run: *mut *mut AcsPropagation,
) -> AcsStatus {
    guard(|| {
        let (s, m) = (handle(state, "state")?, handle(model, "model")?);
        let grid = Grid1D::new(q_min, q_max, n_points)?;
        let start = WaveField::from_fn(grid, 0.0, |q| state_value(s, q, 0.0, &m.0))?.normalized();
        let cfg = PropagatorConfig::to_time(grid, tau_end, max_dt)?;
        let run = propagate(&start, &cfg, &m.0)?;
        let p = AcsPropagation {
            field: run.field,
            norm_drift: run.norm_drift,
            edge_mass: run.boundary.edge_mass,
            clean: run.boundary.clean,
        };
        boxed(p, out_run, "out_run")
    })
}

/// # Safety
/// `run` must be null or a handle from [`acs_propagate`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn acs_propagation_free(run: *mut AcsPropagation) {
    if !run.is_null() {
        drop(Box::from_raw(run));
    }
}

/// Number of grid nodes; 0 for a null handle.
#[no_mangle]
pub extern "C" fn acs_propagation_len(run: *const AcsPropagation) -> usize {
    // SAFETY: caller passes null or a live handle.
    unsafe { run.as_ref() }.map_or(0, |r| r.field.values().len())
}

/// Copies the final wave function into `re` and `im`, each of length `len`
/// equal to [`acs_propagation_len`]. Either buffer may be null to skip it.
///
/// # Safety
/// Non-null buffers must hold `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn acs_propagation_values(
    run: *const AcsPropagation,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> AcsStatus {
    guard(|| {
        let r = handle(run, "run")?;
        let v = r.field.values();
        if len != v.len() {
            return Err(Error::Contract(format!("buffer length {len} does not match {} nodes", v.len())).into());
        }
        for (i, z) in v.iter().enumerate() {
            if !re.is_null() {
                *re.add(i) = z.re;
            }
            if !im.is_null() {
                *im.add(i) = z.im;
            }
        }
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn acs_propagation_diagnostics(
    run: *const AcsPropagation,
    out_norm_drift: *mut f64,
    out_edge_mass: *mut f64,
    out_clean: *mut bool,
) -> AcsStatus {
    guard(|| {
        let r = handle(run, "run")?;
        *out(out_norm_drift, "out_norm_drift")? = r.norm_drift;
        *out(out_edge_mass, "out_edge_mass")? = r.edge_mass;
        *out(out_clean, "out_clean")? = r.clean;
        Ok(())
    })
}

/// Runs the named verification suite. `out_report` receives the JSON report
/// (free with [`acs_string_free`]) and may be null.
///
/// # Safety
/// `suite` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn acs_validate(
    suite: *const c_char,
    seed: u64,
    out_passed: *mut bool,
    out_report: *mut *mut c_char,
) -> AcsStatus {
    guard(|| {
        if suite.is_null() {
            return Err(Fail::Null("suite"));
        }
        let name = CStr::from_ptr(suite).to_str().map_err(|_| Fail::Utf8)?;
        let passed = out(out_passed, "out_passed")?;
        let report = run_suite(name, seed)?;
        *passed = report.passed();
        if !out_report.is_null() {
            let json = serde_json::to_string(&report).map_err(Error::from)?;
            *out_report = CString::new(json).map_err(|e| Error::Contract(e.to_string()))?.into_raw();
        }
        Ok(())
    })
}
