use std::ffi::{CStr, CString};
use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use accel_cs_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(acs_last_error()) }.to_string_lossy().into_owned()
}

fn model(f: f64) -> *mut AcsModel {
    let mut m = ptr::null_mut();
    assert_eq!(acs_model_new(f, &mut m), AcsStatus::Ok);
    m
}

#[test]
fn coherent_state_round_trip() {
    let m = model(2.0);
    let mut s = ptr::null_mut();
    assert_eq!(acs_cs_new(0.4, 0.0, 1.0, &mut s), AcsStatus::Ok);
    let (mut re, mut im) = (0.0, 0.0);
    assert_eq!(acs_state_eval(s, m, 0.0, 0.0, &mut re, &mut im), AcsStatus::Ok);
    assert!((re - (2.0 * PI * 0.16f64).powf(-0.25)).abs() < 1e-14 && im.abs() < 1e-14);

    let tau = (5f64.sqrt() - 1.0) / 2.0;
    let mut mo = AcsMoments::default();
    assert_eq!(acs_state_moments(s, m, tau, &mut mo), AcsStatus::Ok);
    assert!((mo.mean_q - 1.0).abs() < 1e-12);
    assert!((mo.mean_p - 5f64.sqrt()).abs() < 1e-12);
    assert!((mo.sigma_q.powi(2) * mo.sigma_p.powi(2) - mo.sigma_qp.powi(2) - 0.25).abs() < 1e-12);
    unsafe {
        acs_state_free(s);
        acs_model_free(m);
    }
}

#[test]
fn errors_set_status_and_message() {
    let mut s = ptr::null_mut();
    assert_eq!(acs_cs_new(-1.0, 0.0, 0.0, &mut s), AcsStatus::Domain);
    assert!(s.is_null());
    assert!(last_error().contains("domain"), "{}", last_error());

    assert_eq!(acs_model_new(0.0, ptr::null_mut()), AcsStatus::NullPointer);
    assert!(last_error().contains("out_model"));

    let (mut re, mut im) = (0.0, 0.0);
    assert_eq!(acs_state_eval(ptr::null(), ptr::null(), 0.0, 0.0, &mut re, &mut im), AcsStatus::NullPointer);

    let m = model(0.0);
    let mut v = 0.0;
    assert_eq!(acs_stationary_state(m, 0.0, 0.0, &mut v), AcsStatus::Domain);
    unsafe { acs_model_free(m) };

    let name = CString::new("nope").unwrap();
    let mut passed = true;
    assert_eq!(unsafe { acs_validate(name.as_ptr(), 1, &mut passed, ptr::null_mut()) }, AcsStatus::Config);
    assert!(last_error().contains("available"));
}

#[test]
fn free_functions_accept_null() {
    unsafe {
        acs_model_free(ptr::null_mut());
        acs_state_free(ptr::null_mut());
        acs_propagation_free(ptr::null_mut());
        acs_string_free(ptr::null_mut());
    }
    assert_eq!(acs_propagation_len(ptr::null()), 0);
}

#[test]
fn airy_and_eta() {
    let mut v = 0.0;
    assert_eq!(acs_airy_ai(0.0, &mut v), AcsStatus::Ok);
    assert!((v - 0.355_028_053_887_817_2).abs() < 1e-15);
    let m = model(1.0);
    let (mut re, mut im) = (0.0, 0.0);
    assert_eq!(acs_eta_state(m, 0.3, 1.0, 0.0, &mut re, &mut im), AcsStatus::Ok);
    assert!((re * re + im * im - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-14);
    unsafe { acs_model_free(m) };
    let version = unsafe { CStr::from_ptr(acs_version()) }.to_str().unwrap();
    assert_eq!(version, env!("CARGO_PKG_VERSION"));
}

#[test]
fn propagation_handle() {
    let m = model(2.0);
    let mut s = ptr::null_mut();
    assert_eq!(acs_gcs_new(1.0, 0.3, -0.5, 0.3, 0.5, &mut s), AcsStatus::Ok);
    let mut run = ptr::null_mut();
    assert_eq!(acs_propagate(s, m, -10.0, 10.0, 2048, 0.3, 1e-3, &mut run), AcsStatus::Ok);
    let n = acs_propagation_len(run);
    assert_eq!(n, 2048);
    let (mut re, mut im) = (vec![0.0; n], vec![0.0; n]);
    assert_eq!(unsafe { acs_propagation_values(run, re.as_mut_ptr(), im.as_mut_ptr(), n) }, AcsStatus::Ok);
    assert_eq!(unsafe { acs_propagation_values(run, re.as_mut_ptr(), ptr::null_mut(), n - 1) }, AcsStatus::Contract);
    let h = 20.0 / (n - 1) as f64;
    let mut err = 0.0;
    for i in 0..n {
        let q = -10.0 + h * i as f64;
        let (mut a, mut b) = (0.0, 0.0);
        acs_state_eval(s, m, q, 0.3, &mut a, &mut b);
        err += ((re[i] - a).powi(2) + (im[i] - b).powi(2)) * h;
    }
    assert!(err.sqrt() < 1e-3, "{}", err.sqrt());
    let (mut drift, mut edge, mut clean) = (1.0, 1.0, false);
    assert_eq!(acs_propagation_diagnostics(run, &mut drift, &mut edge, &mut clean), AcsStatus::Ok);
    assert!(drift < 1e-10 && clean);
    unsafe {
        acs_propagation_free(run);
        acs_state_free(s);
        acs_model_free(m);
    }
}

#[test]
fn validate_returns_json_report() {
    let name = CString::new("symmetry_operator").unwrap();
    let mut passed = false;
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { acs_validate(name.as_ptr(), 5, &mut passed, &mut report) }, AcsStatus::Ok);
    assert!(passed);
    let text = unsafe { CStr::from_ptr(report) }.to_str().unwrap().to_owned();
    unsafe { acs_string_free(report) };
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["suite"], "symmetry_operator");
    assert_eq!(v["seed"], 5);
}

const C_PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include <string.h>
#include "accel_cs.h"

int main(void) {
    AcsModel *m = NULL;
    AcsCoherentState *s = NULL;
    double re = 0, im = 0;
    if (acs_model_new(1.0, &m) != ACS_STATUS_OK) return 1;
    if (acs_cs_new(0.5, 0.0, 0.0, &s) != ACS_STATUS_OK) return 2;
    if (acs_state_eval(s, m, 0.0, 0.0, &re, &im) != ACS_STATUS_OK) return 3;
    if (fabs(re - pow(2.0 * M_PI * 0.25, -0.25)) > 1e-14) return 4;
    AcsCoherentState *bad = NULL;
    if (acs_cs_new(0.0, 0.0, 0.0, &bad) != ACS_STATUS_DOMAIN || bad != NULL) return 5;
    if (strlen(acs_last_error()) == 0) return 6;
    acs_state_free(s);
    acs_model_free(m);
    printf("%s\n", acs_version());
    return 0;
}
"#;

fn artifact_dir() -> PathBuf {
    // target/<profile>/deps/abi-<hash> -> target/<profile>
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links_from_c() {
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let lib = artifact_dir().join("libaccel_cs_ffi.a");
    assert!(include.join("accel_cs.h").exists());
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let exe = dir.path().join("main");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new("cc")
        .args(["-std=c11", "-D_DEFAULT_SOURCE", "-Wall", "-Werror", "-o"])
        .arg(&exe)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .expect("cc");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), env!("CARGO_PKG_VERSION"));
}
