//! Run manifests and the plain-text defaults file.
//!
//! Every file-producing subcommand writes a manifest next to its outputs
//! with the fully resolved parameter set (all defaults materialized), the
//! solver settings, and per-parameter provenance (`default`, `file`, or
//! `flag`), so any figure can be regenerated from its manifest alone.
//!
//! The defaults file is `key = value` per line; `#` starts a comment.
//! Recognized keys: `n, d, t0, tb, gamma, dt, t_avg, m0`. Unknown keys are
//! hard errors — no silent typo tolerance.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::IoError;

// Built-in defaults (the reference lattice of the intensity-map figures).
pub const DEFAULT_N: usize = 32;
pub const DEFAULT_D: usize = 16;
pub const DEFAULT_T0: f64 = 0.5;
pub const DEFAULT_TB: f64 = 1.0;
pub const DEFAULT_GAMMA: f64 = 0.0;
pub const DEFAULT_M0: usize = 8;
pub const DEFAULT_DT: f64 = 0.05;
pub const DEFAULT_T_AVG: f64 = 500.0;

/// Numerical settings recorded in every manifest.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolverSettings {
    /// |Im λ| threshold scale for phase classification.
    pub imag_tol_scale: f64,
    /// Absolute bisection tolerance scale for the critical strength.
    pub bisect_tol_scale: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        SolverSettings {
            imag_tol_scale: crate::spectrum::IMAG_TOL_SCALE,
            bisect_tol_scale: crate::spectrum::GAMMA_PT_TOL_SCALE,
        }
    }
}

/// Optional values read from a defaults file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FileValues {
    pub n: Option<usize>,
    pub d: Option<usize>,
    pub t0: Option<f64>,
    pub tb: Option<f64>,
    pub gamma: Option<f64>,
    pub dt: Option<f64>,
    pub t_avg: Option<f64>,
    pub m0: Option<usize>,
}

/// Parse a defaults file. Malformed lines and unknown keys are hard
/// errors carrying the line number.
pub fn load_config_file(path: &Path) -> Result<FileValues, IoError> {
    let text = std::fs::read_to_string(path)?;
    parse_config_text(&text, &path.display().to_string())
}

pub fn parse_config_text(text: &str, path: &str) -> Result<FileValues, IoError> {
    let mut values = FileValues::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| IoError::ParseLine {
            path: path.to_string(),
            line: line_no,
            content: raw.to_string(),
        })?;
        let key = key.trim();
        let value = value.trim();
        let bad = |detail: String| IoError::BadValue {
            path: path.to_string(),
            line: line_no,
            key: key.to_string(),
            detail,
        };
        match key {
            "n" => values.n = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
            "d" => values.d = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
            "m0" => values.m0 = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
            "t0" => values.t0 = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
            "tb" => values.tb = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
            "gamma" => values.gamma = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
            "dt" => values.dt = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
            "t_avg" => values.t_avg = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
            other => {
                return Err(IoError::UnknownKey {
                    path: path.to_string(),
                    line: line_no,
                    key: other.to_string(),
                })
            }
        }
    }
    Ok(values)
}

/// Resolves each parameter as flag > file > built-in default, recording
/// where the winning value came from.
#[derive(Debug, Clone)]
pub struct Resolver {
    file: FileValues,
    pub provenance: BTreeMap<String, String>,
}

impl Resolver {
    pub fn new(file: FileValues) -> Self {
        Resolver {
            file,
            provenance: BTreeMap::new(),
        }
    }

    fn pick<T: Clone>(&mut self, key: &str, flag: Option<T>, file: Option<T>, default: T) -> T {
        let (value, source) = match (flag, file) {
            (Some(v), _) => (v, "flag"),
            (None, Some(v)) => (v, "file"),
            (None, None) => (default, "default"),
        };
        self.provenance.insert(key.to_string(), source.to_string());
        value
    }

    pub fn n(&mut self, flag: Option<usize>) -> usize {
        let file = self.file.n;
        self.pick("n", flag, file, DEFAULT_N)
    }

    pub fn d(&mut self, flag: Option<usize>) -> usize {
        let file = self.file.d;
        self.pick("d", flag, file, DEFAULT_D)
    }

    pub fn t0(&mut self, flag: Option<f64>) -> f64 {
        let file = self.file.t0;
        self.pick("t0", flag, file, DEFAULT_T0)
    }

    pub fn tb(&mut self, flag: Option<f64>) -> f64 {
        let file = self.file.tb;
        self.pick("tb", flag, file, DEFAULT_TB)
    }

    pub fn gamma(&mut self, flag: Option<f64>) -> f64 {
        let file = self.file.gamma;
        self.pick("gamma", flag, file, DEFAULT_GAMMA)
    }

    pub fn m0(&mut self, flag: Option<usize>) -> usize {
        let file = self.file.m0;
        self.pick("m0", flag, file, DEFAULT_M0)
    }

    pub fn dt(&mut self, flag: Option<f64>) -> f64 {
        let file = self.file.dt;
        self.pick("dt", flag, file, DEFAULT_DT)
    }

    pub fn t_avg(&mut self, flag: Option<f64>) -> f64 {
        let file = self.file.t_avg;
        self.pick("t_avg", flag, file, DEFAULT_T_AVG)
    }

    /// Parameters without config-file keys (lists, rendering options).
    pub fn flag_only<T: Clone>(&mut self, key: &str, flag: Option<T>, default: T) -> T {
        self.pick(key, flag, None, default)
    }
}

/// Self-describing record of one run, written next to the output files.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    /// Fully resolved parameters, every default materialized.
    pub params: BTreeMap<String, serde_json::Value>,
    /// Per-parameter source: `default`, `file`, or `flag`.
    pub provenance: BTreeMap<String, String>,
    pub solver: SolverSettings,
    pub timestamp_unix: u64,
    /// Files produced by this run (relative to the manifest location).
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(subcommand: &str, resolver: &Resolver) -> Self {
        let timestamp_unix = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        RunManifest {
            tool: "pt-ring".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            subcommand: subcommand.to_string(),
            params: BTreeMap::new(),
            provenance: resolver.provenance.clone(),
            solver: SolverSettings::default(),
            timestamp_unix,
            outputs: Vec::new(),
        }
    }

    pub fn set<T: Serialize>(&mut self, key: &str, value: T) {
        self.params.insert(
            key.to_string(),
            serde_json::to_value(value).expect("manifest values are plain data"),
        );
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn param_f64(&self, key: &str) -> Option<f64> {
        self.params.get(key).and_then(|v| v.as_f64())
    }

    pub fn param_usize(&self, key: &str) -> Option<usize> {
        self.params.get(key).and_then(|v| v.as_u64()).map(|v| v as usize)
    }

    pub fn param_str(&self, key: &str) -> Option<&str> {
        self.params.get(key).and_then(|v| v.as_str())
    }

    pub fn param_usize_list(&self, key: &str) -> Option<Vec<usize>> {
        self.params.get(key).and_then(|v| v.as_array()).map(|a| {
            a.iter()
                .filter_map(|x| x.as_u64())
                .map(|x| x as usize)
                .collect()
        })
    }

    pub fn param_f64_list(&self, key: &str) -> Option<Vec<f64>> {
        self.params
            .get(key)
            .and_then(|v| v.as_array())
            .map(|a| a.iter().filter_map(|x| x.as_f64()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_builtin_defaults() {
        let values = parse_config_text("", "test.cfg").unwrap();
        assert_eq!(values, FileValues::default());
        let mut r = Resolver::new(values);
        assert_eq!(r.n(None), 32);
        assert_eq!(r.d(None), 16);
        assert_eq!(r.t0(None), 0.5);
        assert_eq!(r.tb(None), 1.0);
        assert_eq!(r.m0(None), 8);
        assert_eq!(r.provenance["n"], "default");
    }

    #[test]
    fn flag_overrides_file_overrides_default() {
        let values = parse_config_text("n = 40\ndt = 0.1\n", "test.cfg").unwrap();
        let mut r = Resolver::new(values);
        assert_eq!(r.n(Some(20)), 20);
        assert_eq!(r.provenance["n"], "flag");
        assert!((r.dt(None) - 0.1).abs() < 1e-15);
        assert_eq!(r.provenance["dt"], "file");
        assert_eq!(r.m0(None), 8);
        assert_eq!(r.provenance["m0"], "default");
    }

    #[test]
    fn unknown_key_is_hard_error() {
        let err = parse_config_text("nsites = 10\n", "c.cfg").unwrap_err();
        match err {
            IoError::UnknownKey { line, key, .. } => {
                assert_eq!(line, 1);
                assert_eq!(key, "nsites");
            }
            other => panic!("expected UnknownKey, got {other:?}"),
        }
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = parse_config_text("n = 10\njunk line\n", "c.cfg").unwrap_err();
        match err {
            IoError::ParseLine { line, .. } => assert_eq!(line, 2),
            other => panic!("expected ParseLine, got {other:?}"),
        }
    }

    #[test]
    fn bad_value_names_key() {
        let err = parse_config_text("t0 = fast\n", "c.cfg").unwrap_err();
        match err {
            IoError::BadValue { key, line, .. } => {
                assert_eq!(key, "t0");
                assert_eq!(line, 1);
            }
            other => panic!("expected BadValue, got {other:?}"),
        }
    }

    #[test]
    fn comments_and_blanks_skipped() {
        let values =
            parse_config_text("# lattice\n\n  n = 12\n# done\n", "c.cfg").unwrap();
        assert_eq!(values.n, Some(12));
    }

    #[test]
    fn manifest_json_round_trip() {
        let mut r = Resolver::new(FileValues::default());
        let _ = r.n(Some(24));
        let mut m = RunManifest::new("spectrum", &r);
        m.set("n", 24usize);
        m.set("gamma", 0.25f64);
        m.set("d_list", vec![3usize, 5, 7]);
        let text = m.to_json();
        let back = RunManifest::from_json(&text).unwrap();
        assert_eq!(back.subcommand, "spectrum");
        assert_eq!(back.param_usize("n"), Some(24));
        assert_eq!(back.param_f64("gamma"), Some(0.25));
        assert_eq!(back.param_usize_list("d_list"), Some(vec![3, 5, 7]));
        assert_eq!(back.provenance["n"], "flag");
    }
}
