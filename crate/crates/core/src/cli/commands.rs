use std::path::{Path, PathBuf};
use std::time::Instant;

use serde_json::{json, Value};

use super::config::{Family, RunConfig, StateArgs};
use super::output::{emit, fmt_num, header, resolve_out, Cell, Format, Table, TOOL, VERSION};
use super::{Cli, Direction, FigureArgs, UnitsArgs, ValidateArgs, Which, EXIT_OK, EXIT_VALIDATION};
use crate::error::{Error, Result};
use crate::numerics::{airy::set_seam_fault, Grid1D, WaveField};
use crate::observables::{arrival_analysis, classical_trajectory, density, extract_peak_and_fwhm, UnitsMap};
use crate::propagator::{propagate as cn_propagate, PropagatorConfig};
use crate::states::{CsParams, ModelConfig};
use crate::validation::{run_suite, Check, SuiteReport, SUITE_NAMES};

fn run_config(cli: &Cli, a: &StateArgs, command: &str) -> Result<(RunConfig, Option<PathBuf>)> {
    let mut cfg = a.resolve()?;
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    cfg.validate()?;
    let name = format!("{command}.{}", cfg.format.extension());
    let from_cfg = cfg.output_path.as_deref().map(Path::new);
    let path = resolve_out(cli.out.as_deref().or(from_cfg), cli.out_dir.as_deref(), &name);
    cfg.output_path = path.as_ref().map(|p| p.display().to_string());
    Ok((cfg, path))
}

pub fn eval(cli: &Cli, a: &StateArgs) -> Result<i32> {
    let (cfg, path) = run_config(cli, a, "eval")?;
    let psi = cfg.family.evaluator(cfg.model)?;
    let grid = cfg.grid.grid()?;
    let mut t = Table::new("eval", serde_json::to_value(&cfg)?, vec!["q", "tau", "re_psi", "im_psi", "rho"]);
    for &tau in &cfg.tau_list {
        for q in grid.nodes() {
            let v = psi(q, tau)?;
            t.push(vec![q.into(), tau.into(), v.re.into(), v.im.into(), v.norm_sqr().into()]);
        }
    }
    emit(&t.render(cfg.format)?, path.as_deref())?;
    Ok(EXIT_OK)
}

pub fn propagate(cli: &Cli, a: &StateArgs) -> Result<i32> {
    let (cfg, path) = run_config(cli, a, "propagate")?;
    if matches!(cfg.family, Family::Eta { .. } | Family::Stationary { .. }) {
        return Err(Error::Config(format!(
            "propagate needs a normalizable family (cs or gcs), got {}",
            cfg.family.name()
        )));
    }
    if cfg.tau_list.iter().any(|&t| t < 0.0) || cfg.tau_list.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Config("propagate needs non-negative, non-decreasing tau values".into()));
    }
    let psi = cfg.family.evaluator(cfg.model)?;
    let grid = cfg.grid.grid()?;
    let sample = |tau: f64| -> Result<Vec<_>> { grid.nodes().map(|q| psi(q, tau)).collect() };
    let mut current = WaveField::new(grid, 0.0, sample(0.0)?)?.normalized();
    let h = grid.spacing();

    let mut results = Vec::new();
    let mut t = Table::new("propagate", Value::Null, vec!["q", "tau", "re_psi", "im_psi", "rho"]);
    for &tau in &cfg.tau_list {
        let pc = PropagatorConfig::to_time(grid, tau - current.tau(), cfg.max_dt)?;
        let run = cn_propagate(&current, &pc, &cfg.model)?;
        let exact = sample(tau)?;
        let err = run.field.values().iter().zip(&exact).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>() * h;
        if !run.boundary.clean {
            eprintln!(
                "warning: tau={tau}: packet reached the walls (edge mass {:e}, margin {})",
                run.boundary.edge_mass, run.boundary.margin
            );
        }
        results.push(json!({
            "tau": tau,
            "n_steps": pc.n_steps,
            "dt": pc.dt,
            "norm_drift": run.norm_drift,
            "edge_mass": run.boundary.edge_mass,
            "margin": run.boundary.margin,
            "clean": run.boundary.clean,
            "l2_error": err.sqrt(),
        }));
        for (q, v) in grid.nodes().zip(run.field.values()) {
            t.push(vec![q.into(), tau.into(), v.re.into(), v.im.into(), v.norm_sqr().into()]);
        }
        current = run.field;
    }
    t.header = header("propagate", serde_json::to_value(&cfg)?);
    t.header["results"] = Value::Array(results);
    emit(&t.render(cfg.format)?, path.as_deref())?;
    Ok(EXIT_OK)
}

struct Series {
    label: String,
    f_q: f64,
    tau: f64,
}

pub fn figure(cli: &Cli, a: &FigureArgs) -> Result<i32> {
    let (name, sigma, p0, q_range, series) = match a.which {
        Which::Fig1 => ("fig1", 0.2, 0.0, (-1.0, 1.0), vec![Series { label: "initial".into(), f_q: 0.0, tau: 0.0 }]),
        Which::Fig2 => {
            let mut s = vec![Series { label: "initial".into(), f_q: 0.0, tau: 0.0 }];
            for f in [2.0, 6.0] {
                let tau = arrival_analysis(1.0, 0.0, 1.0, 0.4, &ModelConfig::new(f)?)?.tau_q;
                s.push(Series { label: format!("F_q={f}"), f_q: f, tau });
            }
            ("fig2", 0.4, 1.0, (-2.0, 4.0), s)
        }
    };
    let grid = Grid1D::new(q_range.0, q_range.1, a.n_points)?;
    let cs = CsParams::from_initial(sigma, 0.0, p0)?;
    let q: Vec<f64> = grid.nodes().collect();
    let mut rows = Vec::new();
    let mut meta = Vec::new();
    for s in &series {
        let model = ModelConfig::new(s.f_q)?;
        let rho: Vec<f64> = q.iter().map(|&x| density(x, s.tau, &cs, &model)).collect();
        let (peak_q, peak, fwhm) = extract_peak_and_fwhm(&q, &rho)?;
        let (mean_q, mean_p) = classical_trajectory(s.tau, 0.0, p0, &model);
        meta.push(json!({
            "label": s.label,
            "f_q": s.f_q,
            "tau": s.tau,
            "mean_q": mean_q,
            "mean_p": mean_p,
            "peak_q": peak_q,
            "peak_rho": peak,
            "fwhm": fwhm,
            "width_height_product": fwhm * peak,
        }));
        for (x, r) in q.iter().zip(rho) {
            rows.push(vec![Cell::from(*x), r.into(), s.label.as_str().into()]);
        }
    }
    let params = json!({
        "which": name,
        "sigma_q": sigma,
        "q0": 0.0,
        "p0": p0,
        "grid": { "q_min": grid.q_min(), "q_max": grid.q_max(), "n_points": grid.n_points() },
        "series": meta,
    });
    let mut t = Table::new("figure", params, vec!["q", "rho", "series_label"]);
    t.rows = rows;
    let format = cli.format.unwrap_or_default();
    let path = resolve_out(cli.out.as_deref(), cli.out_dir.as_deref(), &format!("{name}.{}", format.extension()));
    emit(&t.render(format)?, path.as_deref())?;
    Ok(EXIT_OK)
}

fn failed_run(name: &str, seed: u64, e: &Error) -> SuiteReport {
    eprintln!("error: suite {name}: {e}");
    SuiteReport {
        suite: name.to_string(),
        seed,
        config_digest: String::new(),
        checks: vec![Check::new("run_error", f64::NAN, 0.0)],
    }
}

pub fn validate(cli: &Cli, a: &ValidateArgs) -> Result<i32> {
    let mut names: Vec<String> = if a.all { SUITE_NAMES.iter().map(|s| s.to_string()).collect() } else { Vec::new() };
    for s in &a.suites {
        if !SUITE_NAMES.contains(&s.as_str()) {
            return Err(Error::Config(format!("unknown suite '{s}'; available: {}", SUITE_NAMES.join(", "))));
        }
        if !names.contains(s) {
            names.push(s.clone());
        }
    }
    if names.is_empty() {
        return Err(Error::Config(format!(
            "no suite requested; name one or pass --all (available: {})",
            SUITE_NAMES.join(", ")
        )));
    }
    let format = cli.format.unwrap_or(Format::Json);
    let path = resolve_out(cli.out.as_deref(), cli.out_dir.as_deref(), &format!("validate.{}", format.extension()));
    set_seam_fault(a.inject_seam_fault);

    let mut reports = Vec::new();
    for name in &names {
        let start = Instant::now();
        let r = run_suite(name, cli.seed).unwrap_or_else(|e| failed_run(name, cli.seed, &e));
        let failed = r.failures().count();
        eprintln!(
            "{} {name} ({} checks, {failed} failed, {:.1} s)",
            if r.passed() { "PASS" } else { "FAIL" },
            r.checks.len(),
            start.elapsed().as_secs_f64()
        );
        for c in r.failures() {
            eprintln!("  {}: error {} tol {}", c.name, fmt_num(c.error), fmt_num(c.tol));
        }
        reports.push(r);
    }
    let passed = reports.iter().all(SuiteReport::passed);
    let mut params = json!({ "seed": cli.seed, "suites": names, "passed": passed });
    if a.inject_seam_fault {
        params["inject_seam_fault"] = json!(true);
    }
    let text = match format {
        Format::Json => {
            let doc = json!({
                "tool": TOOL,
                "version": VERSION,
                "command": "validate",
                "config": params,
                "reports": reports,
            });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Format::Csv => {
            let mut t = Table::new("validate", params, vec!["suite", "check", "error", "tol", "passed"]);
            for r in &reports {
                for c in &r.checks {
                    t.push(vec![r.suite.as_str().into(), c.name.as_str().into(), c.error.into(), c.tol.into(), c.passed.into()]);
                }
            }
            t.render(Format::Csv)?
        }
    };
    emit(&text, path.as_deref())?;
    Ok(if passed { EXIT_OK } else { EXIT_VALIDATION })
}

pub fn units(cli: &Cli, a: &UnitsArgs) -> Result<i32> {
    let u = UnitsMap::new(a.m, a.hbar, a.l, a.f_x)?;
    type Conv = fn(&UnitsMap, f64) -> f64;
    let table: [(&str, &[f64], Conv); 4] = match a.to {
        Direction::Dimensionless => [
            ("x -> q", &a.length, UnitsMap::q_of_x),
            ("t -> tau", &a.time, UnitsMap::tau_of_t),
            ("p_x -> p_q", &a.momentum, UnitsMap::p_q_of_p_x),
            ("F_x -> F_q", &a.force, UnitsMap::f_q_of_f_x),
        ],
        Direction::Dimensional => [
            ("q -> x", &a.length, UnitsMap::x_of_q),
            ("tau -> t", &a.time, UnitsMap::t_of_tau),
            ("p_q -> p_x", &a.momentum, UnitsMap::p_x_of_p_q),
            ("F_q -> F_x", &a.force, UnitsMap::f_x_of_f_q),
        ],
    };
    let mut rows: Vec<(&str, f64, f64)> = vec![("F_x -> F_q", a.f_x, u.f_q_of_f_x(a.f_x))];
    for (label, values, conv) in table {
        rows.extend(values.iter().map(|&v| (label, v, conv(&u, v))));
    }
    if cli.format.is_none() && cli.out.is_none() {
        println!("{:<12} {:>24} {:>24}", "quantity", "input", "output");
        for (label, i, o) in rows {
            println!("{label:<12} {:>24} {:>24}", fmt_num(i), fmt_num(o));
        }
        return Ok(EXIT_OK);
    }
    let format = cli.format.unwrap_or_default();
    let dir = match a.to {
        Direction::Dimensionless => "dimensionless",
        Direction::Dimensional => "dimensional",
    };
    let params = json!({ "m": a.m, "hbar": a.hbar, "l": a.l, "f_x": a.f_x, "to": dir });
    let mut t = Table::new("units", params, vec!["quantity", "input", "output"]);
    for (label, i, o) in rows {
        t.push(vec![label.into(), i.into(), o.into()]);
    }
    emit(&t.render(format)?, cli.out.as_deref())?;
    Ok(EXIT_OK)
}
