use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub const TOOL: &str = "accel-cs";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
/// Default output directory when `--out` is absent.
pub const OUT_DIR_ENV: &str = "ACCEL_CS_OUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Text(v.to_string())
    }
}

/// Plain decimals in the usual range, shortest round-trip exponent form outside it.
pub fn fmt_num(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 {
        "0".to_string()
    } else if (1e-4..1e15).contains(&a) {
        format!("{v}")
    } else if v.is_finite() {
        format!("{v:e}")
    } else {
        "nan".to_string()
    }
}

/// Column data with a self-describing JSON header.
pub struct Table {
    pub header: Value,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(command: &str, params: Value, columns: Vec<&'static str>) -> Self {
        Self {
            header: header(command, params),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => {
                let mut s = format!("# {}\n{}\n", serde_json::to_string(&self.header)?, self.columns.join(","));
                for row in &self.rows {
                    let cells: Vec<String> = row
                        .iter()
                        .map(|c| match c {
                            Cell::Num(v) => fmt_num(*v),
                            Cell::Text(t) => t.clone(),
                        })
                        .collect();
                    let _ = writeln!(s, "{}", cells.join(","));
                }
                Ok(s)
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        Value::Array(
                            r.iter()
                                .map(|c| match c {
                                    Cell::Num(v) => json!(v),
                                    Cell::Text(t) => json!(t),
                                })
                                .collect(),
                        )
                    })
                    .collect();
                let doc = json!({ "header": self.header, "columns": self.columns, "rows": rows });
                Ok(serde_json::to_string_pretty(&doc)? + "\n")
            }
        }
    }
}

pub fn header(command: &str, params: Value) -> Value {
    json!({ "tool": TOOL, "version": VERSION, "command": command, "config": params })
}

/// `--out` wins, then `$ACCEL_CS_OUT_DIR/<default_name>`; `None` means stdout.
pub fn resolve_out(out: Option<&Path>, out_dir: Option<&Path>, default_name: &str) -> Option<PathBuf> {
    out.map(Path::to_path_buf).or_else(|| out_dir.map(|d| d.join(default_name)))
}

pub fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
            }
            std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for v in [0.0, 1.0, -0.25, 1.99471, 3.2e-17, 6.02e23, -1e-300] {
            assert_eq!(fmt_num(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(fmt_num(1e-20), "1e-20");
    }

    #[test]
    fn csv_has_header_and_columns() {
        let mut t = Table::new("eval", json!({"a": 1}), vec!["q", "label"]);
        t.push(vec![0.5.into(), "x".into()]);
        let s = t.render(Format::Csv).unwrap();
        let mut lines = s.lines();
        let h: Value = serde_json::from_str(lines.next().unwrap().trim_start_matches("# ")).unwrap();
        assert_eq!(h["version"], VERSION);
        assert_eq!(h["config"]["a"], 1);
        assert_eq!(lines.next(), Some("q,label"));
        assert_eq!(lines.next(), Some("0.5,x"));
    }

    #[test]
    fn out_resolution() {
        let d = Path::new("/tmp/d");
        assert_eq!(resolve_out(None, Some(d), "a.csv"), Some(d.join("a.csv")));
        assert_eq!(resolve_out(Some(Path::new("b")), Some(d), "a.csv"), Some(PathBuf::from("b")));
        assert_eq!(resolve_out(None, None, "a.csv"), None);
    }
}
