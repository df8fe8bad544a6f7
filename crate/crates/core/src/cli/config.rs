use std::path::Path;

use clap::{Args, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::output::Format;
use crate::error::{Error, Result};
use crate::numerics::Grid1D;
use crate::states::{
    cs_wavefunction, eta_state, gcs_wavefunction, stationary_state, CsParams, EnergyLabel, EtaLabel, GcsLabel,
    IomParams, ModelConfig,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Cs,
    Gcs,
    Eta,
    Stationary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Family {
    Cs { sigma_q: f64, q0: f64, p0: f64 },
    Gcs { c1_abs: f64, mu1: f64, delta_mu: f64, z_re: f64, z_im: f64 },
    Eta { eta: f64 },
    Stationary { epsilon: f64 },
}

impl Family {
    pub fn default_for(kind: FamilyKind) -> Self {
        match kind {
            FamilyKind::Cs => Family::Cs { sigma_q: 0.2, q0: 0.0, p0: 0.0 },
            FamilyKind::Gcs => Family::Gcs { c1_abs: 1.0, mu1: 0.3, delta_mu: -0.5, z_re: 0.0, z_im: 0.0 },
            FamilyKind::Eta => Family::Eta { eta: 0.0 },
            FamilyKind::Stationary => Family::Stationary { epsilon: 0.0 },
        }
    }

    pub fn kind(&self) -> FamilyKind {
        match self {
            Family::Cs { .. } => FamilyKind::Cs,
            Family::Gcs { .. } => FamilyKind::Gcs,
            Family::Eta { .. } => FamilyKind::Eta,
            Family::Stationary { .. } => FamilyKind::Stationary,
        }
    }

    pub fn name(&self) -> &'static str {
        match self.kind() {
            FamilyKind::Cs => "cs",
            FamilyKind::Gcs => "gcs",
            FamilyKind::Eta => "eta",
            FamilyKind::Stationary => "stationary",
        }
    }

    /// Validated closed-form evaluator `psi(q, tau)`.
    pub fn evaluator(&self, model: ModelConfig) -> Result<Box<dyn Fn(f64, f64) -> Result<Complex64>>> {
        Ok(match *self {
            Family::Cs { sigma_q, q0, p0 } => {
                let cs = CsParams::from_initial(sigma_q, q0, p0)?;
                Box::new(move |q, t| Ok(cs_wavefunction(q, t, &cs, &model)))
            }
            Family::Gcs { c1_abs, mu1, delta_mu, z_re, z_im } => {
                let p = IomParams::from_polar(c1_abs, mu1, delta_mu)?;
                let label = GcsLabel::from_z(Complex64::new(z_re, z_im), &p)?;
                Box::new(move |q, t| Ok(gcs_wavefunction(q, t, &label, &p, &model)))
            }
            Family::Eta { eta } => {
                let eta = EtaLabel::new(eta)?;
                Box::new(move |q, t| Ok(eta_state(q, t, eta, &model)))
            }
            Family::Stationary { epsilon } => {
                let eps = EnergyLabel::new(epsilon)?;
                stationary_state(0.0, eps, &model)?;
                Box::new(move |q, t| Ok(Complex64::from_polar(stationary_state(q, eps, &model)?, -epsilon * t)))
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub q_min: f64,
    pub q_max: f64,
    pub n_points: usize,
}

impl GridConfig {
    pub fn grid(&self) -> Result<Grid1D> {
        Grid1D::new(self.q_min, self.q_max, self.n_points)
    }
}

/// Everything `eval` and `propagate` need; parsable from JSON, overridable by flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelConfig,
    pub family: Family,
    pub grid: GridConfig,
    pub tau_list: Vec<f64>,
    /// Largest Crank-Nicolson step; unused by `eval`.
    pub max_dt: f64,
    pub output_path: Option<String>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            model: ModelConfig::new(1.0).expect("finite"),
            family: Family::default_for(FamilyKind::Cs),
            grid: GridConfig { q_min: -5.0, q_max: 5.0, n_points: 1001 },
            tau_list: vec![0.0],
            max_dt: 1e-4,
            output_path: None,
            format: Format::Csv,
        }
    }
}

impl RunConfig {
    /// Reads a plain config, or the header of a previous output (CSV `#` line
    /// or JSON `header` object) so that any output can be replayed.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let value: Value = match text.strip_prefix('#') {
            Some(rest) => serde_json::from_str(rest.lines().next().unwrap_or(""))?,
            None => serde_json::from_str(&text)?,
        };
        let value = match value.get("header") {
            Some(h) => h.clone(),
            None => value,
        };
        let value = match (value.get("tool"), value.get("config")) {
            (Some(_), Some(c)) => c.clone(),
            _ => value,
        };
        serde_json::from_value(value).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<()> {
        ModelConfig::new(self.model.f_q())?;
        self.grid.grid()?;
        if self.tau_list.is_empty() {
            return Err(Error::Config("tau_list is empty".into()));
        }
        if let Some(t) = self.tau_list.iter().find(|t| !t.is_finite()) {
            return Err(Error::Config(format!("tau values must be finite, got {t}")));
        }
        if !(self.max_dt > 0.0 && self.max_dt.is_finite()) {
            return Err(Error::Config(format!("max_dt must be positive, got {}", self.max_dt)));
        }
        self.family.evaluator(self.model).map(|_| ())
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct StateArgs {
    /// JSON run configuration, or a previous output file to replay.
    #[arg(long)]
    pub config: Option<std::path::PathBuf>,
    #[arg(long, value_enum)]
    pub family: Option<FamilyKind>,
    /// Dimensionless force F_q.
    #[arg(long, allow_negative_numbers = true)]
    pub f_q: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub sigma_q: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub q0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub p0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub c1_abs: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub mu1: Option<f64>,
    /// mu2 - mu1
    #[arg(long, allow_negative_numbers = true)]
    pub delta_mu: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub z_re: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub z_im: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub eta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub epsilon: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub q_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub q_max: Option<f64>,
    #[arg(long)]
    pub n_points: Option<usize>,
    /// Output times, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub tau: Option<Vec<f64>>,
    /// Largest Crank-Nicolson step.
    #[arg(long)]
    pub max_dt: Option<f64>,
}

fn set(slot: &mut f64, v: Option<f64>) {
    if let Some(v) = v {
        *slot = v;
    }
}

impl StateArgs {
    /// File (if any) overlaid with flags.
    pub fn resolve(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        if let Some(f) = self.f_q {
            cfg.model = ModelConfig::new(f)?;
        }
        if let Some(kind) = self.family {
            if kind != cfg.family.kind() {
                cfg.family = Family::default_for(kind);
            }
        }
        let stray = |flag: &str, fam: &Family| Error::Config(format!("--{flag} does not apply to family {}", fam.name()));
        let family_flags: [(&str, Option<f64>); 9] = [
            ("sigma-q", self.sigma_q),
            ("q0", self.q0),
            ("p0", self.p0),
            ("c1-abs", self.c1_abs),
            ("mu1", self.mu1),
            ("delta-mu", self.delta_mu),
            ("z-re", self.z_re),
            ("z-im", self.z_im),
            ("eta", self.eta),
        ];
        let allowed: &[&str] = match cfg.family {
            Family::Cs { .. } => &["sigma-q", "q0", "p0"],
            Family::Gcs { .. } => &["c1-abs", "mu1", "delta-mu", "z-re", "z-im"],
            Family::Eta { .. } => &["eta"],
            Family::Stationary { .. } => &[],
        };
        for (flag, v) in family_flags {
            if v.is_some() && !allowed.contains(&flag) {
                return Err(stray(flag, &cfg.family));
            }
        }
        if self.epsilon.is_some() && cfg.family.kind() != FamilyKind::Stationary {
            return Err(stray("epsilon", &cfg.family));
        }
        match &mut cfg.family {
            Family::Cs { sigma_q, q0, p0 } => {
                set(sigma_q, self.sigma_q);
                set(q0, self.q0);
                set(p0, self.p0);
            }
            Family::Gcs { c1_abs, mu1, delta_mu, z_re, z_im } => {
                set(c1_abs, self.c1_abs);
                set(mu1, self.mu1);
                set(delta_mu, self.delta_mu);
                set(z_re, self.z_re);
                set(z_im, self.z_im);
            }
            Family::Eta { eta } => set(eta, self.eta),
            Family::Stationary { epsilon } => set(epsilon, self.epsilon),
        }
        set(&mut cfg.grid.q_min, self.q_min);
        set(&mut cfg.grid.q_max, self.q_max);
        if let Some(n) = self.n_points {
            cfg.grid.n_points = n;
        }
        if let Some(t) = &self.tau {
            cfg.tau_list = t.clone();
        }
        set(&mut cfg.max_dt, self.max_dt);
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.json");
        std::fs::write(&p, r#"{"family":{"kind":"eta","eta":0.5},"tau_list":[0.1,0.2]}"#).unwrap();
        let args = StateArgs { config: Some(p.clone()), eta: Some(1.5), ..Default::default() };
        let cfg = args.resolve().unwrap();
        assert_eq!(cfg.family, Family::Eta { eta: 1.5 });
        assert_eq!(cfg.tau_list, vec![0.1, 0.2]);
        assert_eq!(cfg.grid, RunConfig::default().grid);
    }

    #[test]
    fn stray_flag_is_rejected() {
        let args = StateArgs { family: Some(FamilyKind::Cs), eta: Some(1.0), ..Default::default() };
        assert!(matches!(args.resolve(), Err(Error::Config(_))));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.json");
        std::fs::write(&p, r#"{"modle":{"f_q":1}}"#).unwrap();
        assert!(RunConfig::load(&p).is_err());
    }

    #[test]
    fn invalid_family_fails_validation() {
        let cfg = RunConfig { family: Family::Cs { sigma_q: -1.0, q0: 0.0, p0: 0.0 }, ..Default::default() };
        assert!(cfg.validate().is_err());
        let cfg = RunConfig {
            model: ModelConfig::new(0.0).unwrap(),
            family: Family::Stationary { epsilon: 0.0 },
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
    }
}
