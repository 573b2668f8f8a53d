//! The staged pipeline behind `qcharmlab run`.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use log::{info, warn};
use serde::Serialize;

use super::config::{ConfigError, OutputKind, Scenario};
use super::svg;
use crate::barrier::{audit_subharmonicity, write_audit_csv, BarrierAudit, BarrierSpec};
use crate::curve::{io, DistanceField, JordanCurve};
use crate::harmonic::{poisson_extend, BoundaryCorrespondence, HarmonicMap};
use crate::lipschitz::{
    boundary_colip, compute_rho, empirical_bilipschitz, hopf_bound, interior_extension, summary_table, BoundaryColip,
    HopfCertificate, InteriorExtension, LipschitzReport, PairStats, RhoScan, SummaryRow,
};
use crate::qc::{certify_diffeomorphism, dilatation_profile, DiffeoCertificate, QcProfile};

pub const REPORT_SCHEMA_VERSION: u32 = 1;
/// Boundary samples used for the Jacobian certificate.
pub const CERTIFY_SAMPLES: usize = 2048;
/// Formula-vs-stencil tolerance met by most collar points.
pub const FD_TOLERANCE: f64 = 5e-4;
/// Formula-vs-stencil tolerance met by every collar point.
pub const FD_TOLERANCE_ALL: f64 = 5e-3;
/// Fraction of collar points that must meet [`FD_TOLERANCE`].
pub const FD_FRACTION: f64 = 0.99;
/// Slack allowed in `C/K ≤ empirical colip`.
pub const CHAIN_TOLERANCE: f64 = 2e-3;

/// A stage failure, by variant name and message.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageError {
    pub kind: String,
    pub message: String,
}

impl StageError {
    fn from_error<E: Debug + std::fmt::Display>(e: &E) -> Self {
        Self { kind: variant_name(&format!("{e:?}")), message: e.to_string() }
    }
}

/// Innermost variant name of a `Debug` rendering such as
/// `Harmonic(BoundaryDivergence { tail: .. })`.
fn variant_name(debug: &str) -> String {
    const WRAPPERS: [&str; 4] = ["Harmonic(", "Geometry(", "Barrier(", "Config("];
    let mut s = debug;
    while let Some(w) = WRAPPERS.iter().find(|w| s.starts_with(**w)) {
        s = &s[w.len()..];
    }
    s.chars().take_while(|c| c.is_alphanumeric() || *c == '_').collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageStatus {
    pub stage: &'static str,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<StageError>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeometrySummary {
    pub samples: usize,
    pub length: f64,
    pub counterclockwise: bool,
    pub kappa0: f64,
    pub reach_mu: f64,
    pub collar_bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtensionSummary {
    #[serde(rename = "N")]
    pub n: usize,
    pub base_value: [f64; 2],
    pub boundary_tail: f64,
}

/// Formula-vs-stencil agreement of `Δχ` over the audited collar points.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LaplacianAgreement {
    pub points: usize,
    pub fraction_within: f64,
    pub max_rel_error: f64,
}

/// Everything a run produced, stage by stage. Wall-clock times are kept out of
/// this structure so that reports are reproducible byte for byte.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub scenario: Scenario,
    pub stages: Vec<StageStatus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geometry: Option<GeometrySummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extension: Option<ExtensionSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diffeomorphism: Option<DiffeoCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qc: Option<QcProfile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub barrier_spec: Option<BarrierSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub barrier: Option<BarrierAudit>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub laplacian: Option<LaplacianAgreement>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<RhoScan>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hopf: Option<HopfCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary: Option<BoundaryColip>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interior: Option<InteriorExtension>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairs: Option<PairStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lipschitz: Option<LipschitzReport>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl RunReport {
    fn new(scenario: Scenario) -> Self {
        Self {
            schema_version: REPORT_SCHEMA_VERSION,
            scenario,
            stages: Vec::new(),
            geometry: None,
            extension: None,
            diffeomorphism: None,
            qc: None,
            barrier_spec: None,
            barrier: None,
            laplacian: None,
            rho: None,
            hopf: None,
            boundary: None,
            interior: None,
            pairs: None,
            lipschitz: None,
            checks: Vec::new(),
            pass: false,
        }
    }

    /// First failed stage, if any.
    pub fn failure(&self) -> Option<&StageStatus> {
        self.stages.iter().find(|s| !s.ok)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn summary_row(&self) -> Option<SummaryRow> {
        let (qc, hopf, lip) = (self.qc.as_ref()?, self.hopf.as_ref()?, self.lipschitz.as_ref()?);
        Some(SummaryRow {
            scenario: self.scenario.name.clone(),
            dilatation: qc.dilatation,
            kappa0: hopf.kappa0,
            exponent: hopf.exponent,
            rho: hopf.rho,
            m_rho: hopf.m_rho,
            colip_boundary: hopf.boundary_bound,
            theoretical_colip: lip.theoretical_colip,
            empirical_colip: lip.empirical_colip,
        })
    }
}

/// Products of a run besides the report.
pub struct RunOutput {
    pub report: RunReport,
    /// Seconds per stage, in execution order.
    pub timings: Vec<(&'static str, f64)>,
    pub map: Option<HarmonicMap>,
    pub field: Option<DistanceField>,
}

struct Runner {
    report: RunReport,
    timings: Vec<(&'static str, f64)>,
}

impl Runner {
    /// Runs one stage, recording its status and time. `None` on failure.
    fn stage<T, E: Debug + std::fmt::Display>(&mut self, name: &'static str, f: impl FnOnce() -> Result<T, E>) -> Option<T> {
        let start = Instant::now();
        let out = f();
        let secs = start.elapsed().as_secs_f64();
        self.timings.push((name, secs));
        match out {
            Ok(v) => {
                info!("{name}: ok ({secs:.3} s)");
                self.report.stages.push(StageStatus { stage: name, ok: true, error: None });
                Some(v)
            }
            Err(e) => {
                warn!("{name}: {e}");
                self.report.stages.push(StageStatus { stage: name, ok: false, error: Some(StageError::from_error(&e)) });
                None
            }
        }
    }

    fn check(&mut self, name: &'static str, pass: bool, detail: String) {
        self.report.checks.push(Check { name, pass, detail });
    }
}

/// Executes the pipeline. Stage failures are recorded in the report; only a
/// scenario that fails validation is an error.
pub fn run_scenario(scenario: &Scenario, base_dir: &Path) -> Result<RunOutput, ConfigError> {
    scenario.validate()?;
    let (points, kind) = scenario.curve.resolve(base_dir)?;
    let mut run = Runner { report: RunReport::new(scenario.clone()), timings: Vec::new() };
    let (map, field) = pipeline(&mut run, scenario, &points, kind);
    let report = &mut run.report;
    report.pass = report.stages.iter().all(|s| s.ok) && report.checks.iter().all(|c| c.pass);
    Ok(RunOutput { report: run.report, timings: run.timings, map, field })
}

fn pipeline(
    run: &mut Runner,
    scenario: &Scenario,
    points: &[num_complex::Complex64],
    kind: crate::curve::CurveKind,
) -> (Option<HarmonicMap>, Option<DistanceField>) {
    let Some(field) = run.stage("geometry", || {
        JordanCurve::build(points, kind).map(|c| DistanceField::new(Arc::new(c)))
    }) else {
        return (None, None);
    };
    let curve = field.shared_curve();
    run.report.geometry = Some(GeometrySummary {
        samples: curve.samples().len(),
        length: curve.length(),
        counterclockwise: curve.is_counterclockwise(),
        kappa0: field.kappa0(),
        reach_mu: field.reach_mu(),
        collar_bound: field.collar_bound(),
    });

    let Some(map) = run.stage("extension", || {
        BoundaryCorrespondence::new(Arc::clone(&curve), scenario.boundary.phase.clone(), scenario.n)
            .and_then(|corr| poisson_extend(&corr, scenario.n))
    }) else {
        return (None, Some(field));
    };
    run.report.extension = Some(ExtensionSummary {
        n: map.n_samples(),
        base_value: [map.base_value().re, map.base_value().im],
        boundary_tail: map.boundary_tail(),
    });

    // Both certification and the profile run before short-circuiting so a
    // failed certificate still comes with its dilatation data.
    let cert = run.stage("certify", || certify_diffeomorphism(&map, CERTIFY_SAMPLES));
    if let Some(c) = &cert {
        run.check("diffeomorphism", c.certified, format!("min boundary J = {:e}", c.min_jacobian));
        run.report.diffeomorphism = Some(c.clone());
    }
    let profile = run.stage("qc", || dilatation_profile(&map, scenario.grids.qc));
    if let Some(p) = &profile {
        run.report.qc = Some(p.clone());
    }
    let (Some(cert), Some(profile)) = (cert, profile) else {
        return (Some(map), Some(field));
    };
    if !cert.certified {
        return (Some(map), Some(field));
    }
    let k = profile.dilatation;

    let Some(spec) = run.stage("barrier_spec", || BarrierSpec::new(field.kappa0(), k, scenario.pde_constant)) else {
        return (Some(map), Some(field));
    };
    run.report.barrier_spec = Some(spec);
    run.check(
        "exponent",
        spec.exponent == spec.required_exponent(),
        format!("A = {} = (2κ₀ + B) K²", spec.exponent),
    );
    let Some(audit) = run.stage("barrier", || audit_subharmonicity(&map, &field, &spec, scenario.grids.barrier)) else {
        return (Some(map), Some(field));
    };
    run.check(
        "sandwich",
        audit.sandwich_failures == 0,
        format!("{} of {} collar points fail", audit.sandwich_failures, audit.points_in_collar),
    );
    run.check(
        "subharmonic",
        audit.subharmonic,
        format!("min Δφ_w = {:e}, max |Δφ_w| = {:e}", audit.min_laplacian_phi, audit.max_abs_laplacian_phi),
    );
    let within = audit
        .rows
        .iter()
        .filter(|r| (r.laplacian_chi - r.laplacian_chi_fd).abs() / (1.0 + r.laplacian_chi.abs()) < FD_TOLERANCE)
        .count();
    let agreement = LaplacianAgreement {
        points: audit.points_in_collar,
        fraction_within: within as f64 / audit.points_in_collar as f64,
        max_rel_error: audit.max_fd_rel_error,
    };
    run.check(
        "laplacian_formula",
        agreement.fraction_within >= FD_FRACTION && agreement.max_rel_error < FD_TOLERANCE_ALL,
        format!(
            "{:.4} of points within {FD_TOLERANCE:e}, max relative error {:e}",
            agreement.fraction_within, agreement.max_rel_error
        ),
    );
    run.report.laplacian = Some(agreement);
    run.report.barrier = Some(audit.clone());

    let Some(rho) = run.stage("rho", || compute_rho(&map, &field, &spec)) else {
        return (Some(map), Some(field));
    };
    run.report.rho = Some(rho);
    let Some(hopf) = run.stage("hopf", || hopf_bound(&map, &field, &spec, &audit, &rho)) else {
        return (Some(map), Some(field));
    };
    run.check(
        "hopf_constant",
        hopf.hopf_constant > 0.0 && hopf.m_rho < 0.0,
        format!("C = {:e}, M(ρ) = {:e}", hopf.hopf_constant, hopf.m_rho),
    );
    run.report.hopf = Some(hopf.clone());
    let Some(bc) = run.stage("boundary_colip", || boundary_colip(&map, &hopf)) else {
        return (Some(map), Some(field));
    };
    run.check(
        "boundary_bound",
        bc.bound < bc.min_radial,
        format!("bound {:e} < min |∂w/∂r| = {:e} at {} angles", bc.bound, bc.min_radial, bc.samples),
    );
    run.report.boundary = Some(bc.clone());
    let Some(ext) = run.stage("interior", || interior_extension(&map, bc.bound, k, scenario.grids.qc)) else {
        return (Some(map), Some(field));
    };
    run.check("max_principle", ext.ab_check <= 1.0 + 1e-8, format!("max |a| + |b| = {}", ext.ab_check));
    run.check("interior_colip", ext.colip_verified, format!("min l(∇w) = {:e} vs C/K = {:e}", ext.min_l, ext.theoretical_colip));
    run.report.interior = Some(ext.clone());
    let Some(stats) = run.stage("pairs", || empirical_bilipschitz(&map, scenario.grids.pairs, scenario.seed)) else {
        return (Some(map), Some(field));
    };
    let lip = LipschitzReport::new(&ext, &stats);
    run.check("colip_le_lip", stats.colip <= stats.lip, format!("colip {} ≤ lip {}", stats.colip, stats.lip));
    run.check(
        "chain",
        lip.theoretical_colip <= lip.empirical_colip + CHAIN_TOLERANCE,
        format!("C/K = {:e} ≤ empirical colip {:e}", lip.theoretical_colip, lip.empirical_colip),
    );
    run.report.pairs = Some(stats);
    run.report.lipschitz = Some(lip);
    (Some(map), Some(field))
}

/// Writes `report.json`, `timings.json`, and the requested artifacts into
/// `out`. Returns the paths written.
pub fn write_artifacts(output: &RunOutput, out: &Path) -> std::io::Result<Vec<PathBuf>> {
    fs::create_dir_all(out)?;
    let scenario = &output.report.scenario;
    let mut written = Vec::new();
    let mut put = |name: &str, bytes: &[u8]| -> std::io::Result<()> {
        let p = out.join(name);
        if let Some(dir) = p.parent() {
            fs::create_dir_all(dir)?;
        }
        fs::write(&p, bytes)?;
        written.push(p);
        Ok(())
    };
    put("report.json", output.report.to_json().as_bytes())?;
    let timings: BTreeMap<String, f64> = output
        .timings
        .iter()
        .enumerate()
        .map(|(i, (name, s))| (format!("{i:02}_{name}"), *s))
        .collect();
    put("timings.json", serde_json::to_string_pretty(&timings).expect("timings serialize").as_bytes())?;

    let audit = output.report.barrier.as_ref();
    if scenario.wants(OutputKind::AuditCsv) {
        if let Some(a) = audit {
            let mut buf = Vec::new();
            write_audit_csv(BufWriter::new(&mut buf), a).map_err(std::io::Error::other)?;
            put("audit.csv", &buf)?;
        }
    }
    if scenario.wants(OutputKind::FieldCsv) {
        if let (Some(a), Some(map), Some(field)) = (audit, &output.map, &output.field) {
            let rows: Vec<_> = a
                .rows
                .iter()
                .filter_map(|r| field.field_sample(map.eval(num_complex::Complex64::new(r.x, r.y))).ok())
                .collect();
            let mut buf = Vec::new();
            io::write_field_csv(BufWriter::new(&mut buf), &rows).map_err(std::io::Error::other)?;
            put("field.csv", &buf)?;
        }
    }
    if scenario.wants(OutputKind::Coefficients) {
        if let Some(map) = &output.map {
            put("coefficients.json", serde_json::to_string(&map.to_dump()).expect("dump serializes").as_bytes())?;
        }
    }
    if scenario.wants(OutputKind::Plots) {
        if let (Some(map), Some(field)) = (&output.map, &output.field) {
            put("plots/image_circles.svg", svg::image_circles(map, field.curve()).as_bytes())?;
        }
        if let Some(a) = audit {
            put("plots/laplacian_phi.svg", svg::laplacian_heatmap(a).as_bytes())?;
        }
    }
    if scenario.wants(OutputKind::Summary) {
        if let Some(row) = output.report.summary_row() {
            put("summary.txt", summary_table(&[row]).as_bytes())?;
        }
    }
    Ok(written)
}
