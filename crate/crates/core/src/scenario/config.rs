//! Scenario configuration: schema, loading (JSON or TOML), validation.

use std::f64::consts::TAU;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{io, CurveKind, MIN_POINTS};
use crate::grid::PolarGrid;
use crate::harmonic::{PhaseMap, DEFAULT_SAMPLES, MIN_SAMPLES};
use crate::lipschitz::{DEFAULT_PAIRS, MIN_PAIRS};
use crate::{barrier, qc};

pub const SCHEMA_VERSION: u32 = 1;
/// Smallest barrier grid accepted by validation.
pub const MIN_BARRIER_GRID: PolarGrid = PolarGrid::new(16, 128);

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid scenario:\n  {}", .0.join("\n  "))]
    Invalid(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Shape {
    Circle {
        #[serde(default = "one")]
        radius: f64,
    },
    /// `(a cos t, b sin t)`.
    Ellipse { a: f64, b: f64 },
    /// `r(t) = radius (1 + amplitude cos(lobes t))`.
    Star {
        #[serde(default = "one")]
        radius: f64,
        amplitude: f64,
        lobes: u32,
    },
    /// Image of the unit circle under `z + k z̄`.
    AffineImage { k: f64 },
}

fn one() -> f64 {
    1.0
}

impl Shape {
    pub fn sample(&self, n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|j| {
                let t = TAU * j as f64 / n as f64;
                let u = Complex64::from_polar(1.0, t);
                match *self {
                    Shape::Circle { radius } => u * radius,
                    Shape::Ellipse { a, b } => Complex64::new(a * t.cos(), b * t.sin()),
                    Shape::Star { radius, amplitude, lobes } => u * radius * (1.0 + amplitude * (lobes as f64 * t).cos()),
                    Shape::AffineImage { k } => u + u.conj() * k,
                }
            })
            .collect()
    }
}

/// Exactly one of `points`, `shape`, `file` must be given.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    #[serde(default)]
    pub kind: CurveKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<Shape>,
    /// Sample count for `shape`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// Point file, relative to the config file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<PathBuf>,
}

impl CurveSpec {
    pub const DEFAULT_SHAPE_SAMPLES: usize = 64;

    /// The sample points and interpolation kind.
    pub fn resolve(&self, base: &Path) -> Result<(Vec<Complex64>, CurveKind), ConfigError> {
        match (&self.points, &self.shape, &self.file) {
            (Some(p), None, None) => Ok((p.iter().map(|q| Complex64::new(q[0], q[1])).collect(), self.kind)),
            (None, Some(s), None) => Ok((s.sample(self.samples.unwrap_or(Self::DEFAULT_SHAPE_SAMPLES)), self.kind)),
            (None, None, Some(f)) => io::read_points(&base.join(f), self.kind).map_err(|e| ConfigError::Parse(e.to_string())),
            _ => Err(ConfigError::Invalid(vec!["curve needs exactly one of points, shape, file".into()])),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundarySpec {
    pub phase: PhaseMap,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grids {
    #[serde(default = "default_qc_grid")]
    pub qc: PolarGrid,
    #[serde(default = "default_barrier_grid")]
    pub barrier: PolarGrid,
    #[serde(default = "default_pairs")]
    pub pairs: usize,
}

fn default_qc_grid() -> PolarGrid {
    qc::DEFAULT_GRID
}

fn default_barrier_grid() -> PolarGrid {
    barrier::DEFAULT_GRID
}

fn default_pairs() -> usize {
    DEFAULT_PAIRS
}

impl Default for Grids {
    fn default() -> Self {
        Self { qc: default_qc_grid(), barrier: default_barrier_grid(), pairs: default_pairs() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputKind {
    AuditCsv,
    FieldCsv,
    Coefficients,
    Plots,
    Summary,
}

impl OutputKind {
    pub const ALL: [OutputKind; 5] = [Self::AuditCsv, Self::FieldCsv, Self::Coefficients, Self::Plots, Self::Summary];
}

fn all_outputs() -> Vec<OutputKind> {
    OutputKind::ALL.to_vec()
}

fn default_n() -> usize {
    DEFAULT_SAMPLES
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema_version: u32,
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub curve: CurveSpec,
    pub boundary: BoundarySpec,
    #[serde(rename = "N", default = "default_n")]
    pub n: usize,
    #[serde(default)]
    pub grids: Grids,
    #[serde(rename = "B", default)]
    pub pde_constant: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "all_outputs")]
    pub outputs: Vec<OutputKind>,
}

impl Scenario {
    /// Parses JSON, or TOML when `toml` is set.
    pub fn parse(text: &str, toml: bool) -> Result<Self, ConfigError> {
        if toml {
            ::toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))
        } else {
            serde_json::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))
        }
    }

    /// Loads a `.json` or `.toml` file.
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.into(), source })?;
        let toml = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("toml"));
        Self::parse(&text, toml)
    }

    /// Schema findings; empty when the scenario is runnable.
    pub fn diagnostics(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.schema_version != SCHEMA_VERSION {
            out.push(format!("unsupported schema_version {} (expected {SCHEMA_VERSION})", self.schema_version));
        }
        let safe = |c: char| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.');
        if self.name.is_empty() || !self.name.chars().all(safe) || self.name.starts_with('.') {
            out.push(format!("name {:?} must be nonempty and use only [A-Za-z0-9_.-]", self.name));
        }
        if self.n < MIN_SAMPLES {
            out.push(format!("N below minimum {MIN_SAMPLES}"));
        } else if !self.n.is_power_of_two() {
            out.push(format!("N = {} is not a power of two", self.n));
        }
        let c = &self.curve;
        let sources = [c.points.is_some(), c.shape.is_some(), c.file.is_some()].iter().filter(|&&b| b).count();
        if sources != 1 {
            out.push("curve needs exactly one of points, shape, file".into());
        }
        if let Some(p) = &c.points {
            if p.len() < MIN_POINTS {
                out.push(format!("curve has {} points, minimum is {MIN_POINTS}", p.len()));
            }
        }
        if c.samples.is_some() && c.shape.is_none() {
            out.push("curve.samples applies only to shapes".into());
        }
        if let Some(n) = c.samples {
            if n < MIN_POINTS {
                out.push(format!("curve.samples below minimum {MIN_POINTS}"));
            }
        }
        if let Err(e) = self.boundary.phase.validate(f64::INFINITY) {
            out.push(format!("boundary.phase: {e}"));
        }
        let g = &self.grids;
        if g.qc.radial < qc::MIN_GRID.radial || g.qc.angular < qc::MIN_GRID.angular {
            out.push(format!("grids.qc {} below minimum {}", g.qc, qc::MIN_GRID));
        }
        if g.barrier.radial < MIN_BARRIER_GRID.radial || g.barrier.angular < MIN_BARRIER_GRID.angular {
            out.push(format!("grids.barrier {} below minimum {MIN_BARRIER_GRID}", g.barrier));
        }
        if g.pairs < MIN_PAIRS {
            out.push(format!("grids.pairs {} below minimum {MIN_PAIRS}", g.pairs));
        }
        if !(self.pde_constant >= 0.0 && self.pde_constant.is_finite()) {
            out.push(format!("B = {} must be finite and non-negative", self.pde_constant));
        }
        out
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let d = self.diagnostics();
        if d.is_empty() {
            Ok(())
        } else {
            Err(ConfigError::Invalid(d))
        }
    }

    pub fn wants(&self, kind: OutputKind) -> bool {
        self.outputs.contains(&kind)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "schema_version": 1,
        "name": "disk",
        "curve": {"shape": {"type": "circle"}},
        "boundary": {"phase": {"kind": "uniform"}}
    }"#;

    #[test]
    fn defaults() {
        let s = Scenario::parse(MINIMAL, false).unwrap();
        assert_eq!(s.n, 1024);
        assert_eq!(s.grids.qc, PolarGrid::new(64, 1024));
        assert_eq!(s.grids.pairs, 100_000);
        assert_eq!(s.pde_constant, 0.0);
        assert_eq!(s.outputs.len(), 5);
        assert!(s.diagnostics().is_empty());
        let (pts, kind) = s.curve.resolve(Path::new(".")).unwrap();
        assert_eq!((pts.len(), kind), (64, CurveKind::TrigPoly));
    }

    #[test]
    fn small_n_is_reported() {
        let mut s = Scenario::parse(MINIMAL, false).unwrap();
        s.n = 10;
        assert!(s.diagnostics().contains(&"N below minimum 64".to_string()));
        s.n = 100;
        assert_eq!(s.diagnostics(), vec!["N = 100 is not a power of two".to_string()]);
    }

    #[test]
    fn structural_findings() {
        let mut s = Scenario::parse(MINIMAL, false).unwrap();
        s.name = "../x".into();
        s.schema_version = 2;
        s.curve.points = Some(vec![[0.0, 0.0]; 3]);
        s.grids.qc = PolarGrid::new(8, 64);
        s.grids.pairs = 5;
        s.pde_constant = -1.0;
        s.boundary.phase = PhaseMap::PerturbedUniform { amplitude: 0.5, frequency: 3, offset: 0.0 };
        assert_eq!(s.diagnostics().len(), 8, "{:?}", s.diagnostics());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let bad = MINIMAL.replace("\"name\"", "\"nmae\"");
        assert!(matches!(Scenario::parse(&bad, false), Err(ConfigError::Parse(_))));
    }

    #[test]
    fn toml_front_end() {
        let text = r#"
            schema_version = 1
            name = "ellipse"
            N = 512
            seed = 3
            [curve]
            kind = "periodic_spline"
            samples = 96
            shape = { type = "ellipse", a = 1.5, b = 1.0 }
            [boundary.phase]
            kind = "perturbed_uniform"
            amplitude = 0.1
            frequency = 2
            [grids]
            qc = { radial = 32, angular = 256 }
        "#;
        let s = Scenario::parse(text, true).unwrap();
        assert!(s.diagnostics().is_empty());
        assert_eq!(s.curve.kind, CurveKind::PeriodicSpline);
        assert_eq!(s.grids.barrier, PolarGrid::new(64, 1024));
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(Scenario::parse(&json, false).unwrap(), s);
    }

    #[test]
    fn shapes() {
        let pts = Shape::AffineImage { k: 2.0 }.sample(8);
        assert!((pts[0] - 3.0).norm() < 1e-15);
        assert!((pts[2] - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        let star = Shape::Star { radius: 1.0, amplitude: 0.08, lobes: 3 }.sample(64);
        assert!((star[0].norm() - 1.08).abs() < 1e-15);
    }
}
