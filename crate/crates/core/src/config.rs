//! JSON run configuration for the command-line front end.
//!
//! ```json
//! {
//!   "cycle":    { "omega1": 0.1, "omega2": 0.5, "beta1": 1.0, "beta2": 0.75, "tau": 10.0 },
//!   "sweep":    { "tau_min": 0.5, "tau_max": 45.0, "points": 200, "spacing": "log" },
//!   "numerics": { "ode_rtol": 1e-10, "ode_atol": 1e-12, "quadrature_tol": 1e-10, "fock_dim": 80 },
//!   "output":   { "path": "sweep.csv", "format": "csv" }
//! }
//! ```
//!
//! Only `cycle` is mandatory, and within it only `tau` may be left out
//! (commands that work at a single driving time then refuse to run).
//! Unknown keys are rejected so that typos surface as errors.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::ode::OdeOptions;
use crate::quad::QuadOptions;
use crate::thermo::{CycleConfig, Numerics};

/// A configuration problem, located by its JSON field path.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub path: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() || self.path == "." {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycleSection {
    pub omega1: f64,
    pub omega2: f64,
    pub beta1: f64,
    pub beta2: f64,
    #[serde(default)]
    pub tau: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepSection {
    pub tau_min: f64,
    pub tau_max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self {
            tau_min: 0.5,
            tau_max: 45.0,
            points: 200,
            spacing: Spacing::Log,
        }
    }
}

impl SweepSection {
    /// The driving times of the sweep in ascending order.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.points;
        if n == 1 {
            return vec![self.tau_min];
        }
        let last = (n - 1) as f64;
        (0..n)
            .map(|k| {
                if k == n - 1 {
                    return self.tau_max;
                }
                let s = k as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.tau_min + s * (self.tau_max - self.tau_min),
                    Spacing::Log => (self.tau_min.ln() + s * (self.tau_max.ln() - self.tau_min.ln())).exp(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NumericsSection {
    pub ode_rtol: f64,
    pub ode_atol: f64,
    pub quadrature_tol: f64,
    pub fock_dim: usize,
}

impl Default for NumericsSection {
    fn default() -> Self {
        Self {
            ode_rtol: 1e-10,
            ode_atol: 1e-12,
            quadrature_tol: 1e-10,
            fock_dim: 80,
        }
    }
}

impl NumericsSection {
    pub fn numerics(&self) -> Numerics {
        Numerics {
            ode: OdeOptions {
                rtol: self.ode_rtol,
                atol: self.ode_atol,
                ..OdeOptions::default()
            },
            quad: QuadOptions {
                rel_tol: self.quadrature_tol,
                ..QuadOptions::default()
            },
            ..Numerics::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    /// Destination file; standard output when absent.
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub cycle: CycleSection,
    #[serde(default)]
    pub sweep: SweepSection,
    #[serde(default)]
    pub numerics: NumericsSection,
    #[serde(default)]
    pub output: OutputSection,
}

const MAX_TOLERANCE: f64 = 1e-2;

fn positive(path: &str, value: f64) -> Result<(), ConfigError> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(ConfigError::new(
            path,
            format!("must be positive and finite, got {value}"),
        ))
    }
}

fn tolerance(path: &str, value: f64) -> Result<(), ConfigError> {
    if value > 0.0 && value <= MAX_TOLERANCE {
        Ok(())
    } else {
        Err(ConfigError::new(
            path,
            format!("must lie in (0, {MAX_TOLERANCE:e}], got {value}"),
        ))
    }
}

impl RunConfig {
    /// Parses and checks a JSON document.
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let config: Self = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            ConfigError::new(path, e.into_inner().to_string())
        })?;
        config.check()?;
        Ok(config)
    }

    /// Reads and parses a configuration file. The `Err` side separates I/O
    /// failures from content problems.
    pub fn load(path: &Path) -> Result<Self, LoadError> {
        let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(LoadError::Config)
    }

    /// Checks everything that does not depend on the command being run.
    /// Frequencies and temperatures only need to be positive here; the
    /// ordering constraints are enforced by [`RunConfig::cycle_config`].
    pub fn check(&self) -> Result<(), ConfigError> {
        let c = &self.cycle;
        positive("cycle.omega1", c.omega1)?;
        positive("cycle.omega2", c.omega2)?;
        positive("cycle.beta1", c.beta1)?;
        positive("cycle.beta2", c.beta2)?;
        if let Some(tau) = c.tau {
            positive("cycle.tau", tau)?;
        }
        let s = &self.sweep;
        positive("sweep.tau_min", s.tau_min)?;
        positive("sweep.tau_max", s.tau_max)?;
        if s.tau_max < s.tau_min {
            return Err(ConfigError::new(
                "sweep.tau_max",
                format!("must not be below tau_min = {}, got {}", s.tau_min, s.tau_max),
            ));
        }
        if s.points == 0 {
            return Err(ConfigError::new("sweep.points", "must be at least 1"));
        }
        let n = &self.numerics;
        tolerance("numerics.ode_rtol", n.ode_rtol)?;
        tolerance("numerics.ode_atol", n.ode_atol)?;
        tolerance("numerics.quadrature_tol", n.quadrature_tol)?;
        if n.fock_dim < 4 {
            return Err(ConfigError::new(
                "numerics.fock_dim",
                format!("must be at least 4, got {}", n.fock_dim),
            ));
        }
        Ok(())
    }

    /// Cycle parameters at driving time `tau` with the refrigerator
    /// orderings `omega2 > omega1` and `beta1 > beta2` enforced.
    pub fn cycle_config(&self, tau: f64) -> Result<CycleConfig, ConfigError> {
        let c = &self.cycle;
        if c.omega2 <= c.omega1 {
            return Err(ConfigError::new(
                "cycle.omega2",
                format!("must exceed omega1 = {}, got {}", c.omega1, c.omega2),
            ));
        }
        if c.beta1 <= c.beta2 {
            return Err(ConfigError::new(
                "cycle.beta1",
                format!("must exceed beta2 = {}, got {}", c.beta2, c.beta1),
            ));
        }
        Ok(self.raw_cycle(tau))
    }

    /// Cycle parameters without the ordering checks.
    pub fn raw_cycle(&self, tau: f64) -> CycleConfig {
        let c = &self.cycle;
        CycleConfig {
            omega1: c.omega1,
            omega2: c.omega2,
            beta1: c.beta1,
            beta2: c.beta2,
            tau,
        }
    }

    /// The single driving time, required by `evaluate` and `validate`.
    pub fn tau(&self) -> Result<f64, ConfigError> {
        self.cycle
            .tau
            .ok_or_else(|| ConfigError::new("cycle.tau", "required for a single-point evaluation"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LoadError {
    Io(String),
    Config(ConfigError),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Io(msg) => write!(f, "cannot read configuration: {msg}"),
            LoadError::Config(e) => write!(f, "invalid configuration: {e}"),
        }
    }
}

impl std::error::Error for LoadError {}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{"cycle": {"omega1": 0.1, "omega2": 0.5, "beta1": 1.0, "beta2": 0.75}}"#;

    #[test]
    fn defaults_fill_missing_sections() {
        let c = RunConfig::from_json(MINIMAL).unwrap();
        assert_eq!(c.sweep, SweepSection::default());
        assert_eq!(c.numerics.fock_dim, 80);
        assert!(c.output.path.is_none());
        assert!(c.tau().is_err());
    }

    #[test]
    fn unknown_field_reports_its_path() {
        let text = r#"{"cycle": {"omega1": 0.1, "omega2": 0.5, "beta1": 1.0, "beta2": 0.75},
                       "numerics": {"ode_rtol": 1e-8, "odeatol": 1e-9}}"#;
        let e = RunConfig::from_json(text).unwrap_err();
        assert_eq!(e.path, "numerics.odeatol");
        assert!(e.message.contains("odeatol"));
    }

    #[test]
    fn wrong_type_reports_its_path() {
        let text = r#"{"cycle": {"omega1": "fast", "omega2": 0.5, "beta1": 1.0, "beta2": 0.75}}"#;
        assert_eq!(RunConfig::from_json(text).unwrap_err().path, "cycle.omega1");
    }

    #[test]
    fn invariants() {
        let with = |patch: &str| {
            format!(r#"{{"cycle": {{"omega1": 0.1, "omega2": 0.5, "beta1": 1.0, "beta2": 0.75}}, {patch}}}"#)
        };
        let cases = [
            (with(r#""sweep": {"tau_min": 0.0}"#), "sweep.tau_min"),
            (with(r#""sweep": {"points": 0}"#), "sweep.points"),
            (with(r#""numerics": {"ode_rtol": 0.1}"#), "numerics.ode_rtol"),
            (
                with(r#""numerics": {"quadrature_tol": 0.0}"#),
                "numerics.quadrature_tol",
            ),
            (with(r#""sweep": {"tau_min": 5.0, "tau_max": 1.0}"#), "sweep.tau_max"),
        ];
        for (text, path) in cases {
            assert_eq!(RunConfig::from_json(&text).unwrap_err().path, path, "{text}");
        }
        assert!(RunConfig::from_json(&with(r#""numerics": {"ode_rtol": 1e-2}"#)).is_ok());
    }

    #[test]
    fn orderings_are_checked_per_command() {
        let equal = r#"{"cycle": {"omega1": 0.5, "omega2": 0.5, "beta1": 1.0, "beta2": 0.75, "tau": 1.0}}"#;
        let c = RunConfig::from_json(equal).unwrap();
        assert_eq!(c.cycle_config(1.0).unwrap_err().path, "cycle.omega2");
        assert_eq!(c.raw_cycle(1.0).omega2, 0.5);
        let hot_cold = r#"{"cycle": {"omega1": 0.1, "omega2": 0.5, "beta1": 0.5, "beta2": 0.75}}"#;
        assert_eq!(
            RunConfig::from_json(hot_cold)
                .unwrap()
                .cycle_config(1.0)
                .unwrap_err()
                .path,
            "cycle.beta1"
        );
    }

    #[test]
    fn grids() {
        let log = SweepSection::default().grid();
        assert_eq!(log.len(), 200);
        assert_eq!(log[0], 0.5);
        assert_eq!(log[199], 45.0);
        assert!(log.windows(2).all(|w| w[0] < w[1]));
        let ratio = log[1] / log[0];
        assert!((log[100] / log[99] - ratio).abs() < 1e-12);
        let lin = SweepSection {
            tau_min: 1.0,
            tau_max: 3.0,
            points: 5,
            spacing: Spacing::Linear,
        };
        assert_eq!(lin.grid(), vec![1.0, 1.5, 2.0, 2.5, 3.0]);
        let single = SweepSection { points: 1, ..lin };
        assert_eq!(single.grid(), vec![1.0]);
    }
}
