//! The Hopf-type lower bound for `|∂w/∂r|` on the circle, its extension to the
//! disk through the pair `a = conj(w_z̄)/w_z`, `b = (C/K)/w_z`, and sampled
//! bi-Lipschitz constants.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::barrier::{phi, BarrierAudit, BarrierError, BarrierSpec};
use crate::curve::{DistanceField, GeometryError};
use crate::grid::PolarGrid;
use crate::harmonic::{HarmonicError, HarmonicMap};
use crate::qc::LEWY_FLOOR;

pub const RHO_ANGLES: usize = 1024;
pub const RHO_RADIAL_STEPS: usize = 256;
pub const RHO_TOLERANCE: f64 = 1e-8;
pub const M_RHO_SAMPLES: usize = 2048;
pub const BOUNDARY_SAMPLES: usize = 2048;
pub const MIN_PAIRS: usize = 10_000;
pub const DEFAULT_PAIRS: usize = 100_000;
/// Pairs closer than this are skipped.
pub const MIN_SEPARATION: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CertifyError {
    #[error(transparent)]
    Barrier(#[from] BarrierError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Harmonic(#[from] HarmonicError),
    #[error("ray at θ = {theta} never reaches the collar depth")]
    CollarEscape { theta: f64 },
    #[error("barrier audit failed; the Hopf bound is not available")]
    NotSubharmonic,
    #[error("barrier is not negative where required (max {value})")]
    SignError { value: f64 },
    #[error("|∂w/∂r| = {radial} < bound {bound} at θ = {theta}")]
    VerificationFailure { theta: f64, radial: f64, bound: f64 },
    #[error("w_z vanishes at z = ({x}, {y})")]
    LewyViolation { x: f64, y: f64 },
    #[error("|a| + |b| = {value} exceeds 1 at z = ({x}, {y})")]
    MaxPrincipleFailure { x: f64, y: f64, value: f64 },
    #[error("at least {MIN_PAIRS} pairs are required, got {0}")]
    TooFewPairs(usize),
}

/// Radius of the outermost preimage of the collar boundary.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RhoScan {
    pub rho: f64,
    pub argmax_theta: f64,
    pub angles: usize,
}

/// Largest root in `r` of `d(w(r e^{iθ})) = 1/(2κ₀)` per ray, maximized over
/// `angles` rays.
pub fn compute_rho_with(map: &HarmonicMap, field: &DistanceField, spec: &BarrierSpec, angles: usize) -> Result<RhoScan, CertifyError> {
    let depth = spec.collar_bound;
    let roots: Vec<(f64, f64)> = (0..angles)
        .into_par_iter()
        .map(|j| {
            let theta = TAU * j as f64 / angles as f64;
            let u = Complex64::from_polar(1.0, theta);
            let f = |r: f64| -> Result<f64, CertifyError> { Ok(field.distance(map.eval(u * r))? - depth) };
            // the image of the circle sits on the curve up to rounding
            let on_curve = match f(1.0) {
                Err(CertifyError::Geometry(GeometryError::OutsideDomain { .. })) => -depth,
                other => other?,
            };
            let mut outer = 1.0;
            for i in 1..=RHO_RADIAL_STEPS {
                let inner = 1.0 - i as f64 / RHO_RADIAL_STEPS as f64;
                if on_curve < 0.0 && f(inner)? >= 0.0 {
                    let (mut lo, mut hi) = (inner, outer);
                    while hi - lo > RHO_TOLERANCE * 1e-3 {
                        let mid = 0.5 * (lo + hi);
                        if f(mid)? >= 0.0 {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    return Ok((lo, theta));
                }
                outer = inner;
            }
            Err(CertifyError::CollarEscape { theta })
        })
        .collect::<Result<_, _>>()?;
    let mut best = roots[0];
    for &r in &roots {
        if r.0 > best.0 {
            best = r;
        }
    }
    Ok(RhoScan { rho: best.0, argmax_theta: best.1, angles })
}

pub fn compute_rho(map: &HarmonicMap, field: &DistanceField, spec: &BarrierSpec) -> Result<RhoScan, CertifyError> {
    compute_rho_with(map, field, spec, RHO_ANGLES)
}

/// `2M / (ρ² (1 - e^{1/ρ² - 1}))`.
pub fn hopf_constant(m_rho: f64, rho: f64) -> f64 {
    2.0 * m_rho / (rho * rho * -(1.0 / (rho * rho) - 1.0).exp_m1())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HopfCertificate {
    pub rho: f64,
    #[serde(rename = "M_rho")]
    pub m_rho: f64,
    pub hopf_constant: f64,
    /// `e^{-K²} · hopf_constant`, the lower bound for `|∂w/∂r|` on the circle.
    pub boundary_bound: f64,
    #[serde(rename = "A")]
    pub exponent: f64,
    pub kappa0: f64,
    #[serde(rename = "K")]
    pub dilatation: f64,
}

/// Assembles the Hopf constant from `ρ` and `M(φ_w, ρ) = max_{|z|=ρ} φ_w`.
pub fn hopf_bound(map: &HarmonicMap, field: &DistanceField, spec: &BarrierSpec, audit: &BarrierAudit, rho: &RhoScan) -> Result<HopfCertificate, CertifyError> {
    if !audit.pass {
        return Err(CertifyError::NotSubharmonic);
    }
    let annulus_max = audit
        .rows
        .iter()
        .filter(|r| r.x.hypot(r.y) >= rho.rho)
        .map(|r| r.phi)
        .fold(f64::NEG_INFINITY, f64::max);
    if annulus_max >= 0.0 {
        return Err(CertifyError::SignError { value: annulus_max });
    }
    let values: Vec<f64> = (0..M_RHO_SAMPLES)
        .into_par_iter()
        .map(|j| phi(map, field, spec, Complex64::from_polar(rho.rho, TAU * j as f64 / M_RHO_SAMPLES as f64)))
        .collect::<Result<_, _>>()?;
    let m_rho = values.into_iter().fold(f64::NEG_INFINITY, f64::max);
    if m_rho >= 0.0 {
        return Err(CertifyError::SignError { value: m_rho });
    }
    let c = hopf_constant(m_rho, rho.rho);
    let k = spec.dilatation;
    Ok(HopfCertificate {
        rho: rho.rho,
        m_rho,
        hopf_constant: c,
        boundary_bound: (-k * k).exp() * c,
        exponent: spec.exponent,
        kappa0: spec.kappa0,
        dilatation: k,
    })
}

/// The boundary bound together with its sampled verification.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryColip {
    pub bound: f64,
    pub min_radial: f64,
    pub argmin_theta: f64,
    pub samples: usize,
}

/// Checks `|∂w/∂r(θ)| ≥ e^{-K²} C` at [`BOUNDARY_SAMPLES`] angles.
pub fn boundary_colip(map: &HarmonicMap, cert: &HopfCertificate) -> Result<BoundaryColip, CertifyError> {
    let thetas: Vec<f64> = (0..BOUNDARY_SAMPLES).map(|j| TAU * j as f64 / BOUNDARY_SAMPLES as f64).collect();
    let radial: Vec<f64> = thetas
        .par_iter()
        .map(|&t| map.radial_derivative(t).map(|v| v.norm()))
        .collect::<Result<_, _>>()?;
    let (mut arg, mut min) = (0, radial[0]);
    for (i, &v) in radial.iter().enumerate() {
        if v < min {
            (arg, min) = (i, v);
        }
    }
    if min < cert.boundary_bound {
        return Err(CertifyError::VerificationFailure { theta: thetas[arg], radial: min, bound: cert.boundary_bound });
    }
    Ok(BoundaryColip { bound: cert.boundary_bound, min_radial: min, argmin_theta: thetas[arg], samples: BOUNDARY_SAMPLES })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InteriorExtension {
    /// `C / K`.
    pub theoretical_colip: f64,
    /// `max (|a| + |b|)` over the grid.
    pub ab_check: f64,
    pub ab_argmax: [f64; 2],
    /// `min l(∇w)` over the grid.
    pub min_l: f64,
    /// `l(∇w) ≥ C/K - 1e-8` everywhere on the grid.
    pub colip_verified: bool,
    pub grid: PolarGrid,
}

/// Forms `|a| + |b|` with `a = conj(w_z̄)/w_z`, `b = (C/K)/w_z` on the closed
/// grid and checks the maximum principle bound `|a| + |b| ≤ 1`.
pub fn interior_extension(map: &HarmonicMap, colip_boundary: f64, dilatation: f64, grid: PolarGrid) -> Result<InteriorExtension, CertifyError> {
    let ck = colip_boundary / dilatation;
    let pts = grid.closed_points();
    let samples: Vec<(Complex64, f64, f64, f64)> = pts
        .par_iter()
        .map(|&z| {
            let (_, wz, wzbar) = map.jet(z);
            let (p, q) = (wz.norm(), wzbar.norm());
            (z, p, (q + ck) / p, p - q)
        })
        .collect();
    if let Some(s) = samples.iter().find(|s| s.1 <= LEWY_FLOOR) {
        return Err(CertifyError::LewyViolation { x: s.0.re, y: s.0.im });
    }
    let mut worst = (f64::NEG_INFINITY, samples[0].0);
    let mut min_l = f64::INFINITY;
    for &(z, _, ab, l) in &samples {
        if ab > worst.0 {
            worst = (ab, z);
        }
        min_l = min_l.min(l.abs());
    }
    if worst.0 > 1.0 + 1e-8 {
        return Err(CertifyError::MaxPrincipleFailure { x: worst.1.re, y: worst.1.im, value: worst.0 });
    }
    Ok(InteriorExtension {
        theoretical_colip: ck,
        ab_check: worst.0,
        ab_argmax: [worst.1.re, worst.1.im],
        min_l,
        colip_verified: min_l >= ck - 1e-8,
        grid,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairSpec {
    pub random: usize,
    pub structured: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairStats {
    pub lip: f64,
    pub colip: f64,
    pub lip_pair: [[f64; 2]; 2],
    pub colip_pair: [[f64; 2]; 2],
    pub pairs: PairSpec,
}

fn clamp_disk(z: Complex64) -> Complex64 {
    let r = z.norm();
    if r > 1.0 {
        z / r
    } else {
        z
    }
}

/// Radial, tangential, near-boundary, and fixed-direction pairs.
fn structured_pairs() -> Vec<(Complex64, Complex64)> {
    let mut out = Vec::new();
    let radii = [0.0, 0.3, 0.6, 0.9, 0.99, 0.999];
    let angles: Vec<f64> = (0..16).map(|j| TAU * j as f64 / 16.0).collect();
    for &r in &radii {
        for &t in &angles {
            let z = Complex64::from_polar(r, t);
            for k in 0..16 {
                let dir = Complex64::from_polar(1.0, std::f64::consts::PI * k as f64 / 16.0);
                for h in [1e-3, 1e-2] {
                    out.push((clamp_disk(z - dir * h * 0.5), clamp_disk(z + dir * h * 0.5)));
                }
            }
            for h in [1e-3, 1e-2] {
                let u = Complex64::from_polar(1.0, t);
                let (a, b) = ((r - h).max(0.0), (r + h).min(1.0));
                out.push((u * a, u * b));
                out.push((Complex64::from_polar(r, t - h), Complex64::from_polar(r, t + h)));
            }
        }
    }
    for &t in &angles {
        for h in [1e-3, 1e-2, 0.1] {
            out.push((Complex64::from_polar(0.999, t), Complex64::from_polar(0.999, t + h)));
            out.push((Complex64::from_polar(1.0, t), Complex64::from_polar(1.0, t + h)));
        }
    }
    out
}

/// Extreme difference quotients `|w(z₁) - w(z₂)| / |z₁ - z₂|` over seeded
/// random pairs in the closed disk plus structured pairs.
pub fn empirical_bilipschitz(map: &HarmonicMap, n_pairs: usize, seed: u64) -> Result<PairStats, CertifyError> {
    if n_pairs < MIN_PAIRS {
        return Err(CertifyError::TooFewPairs(n_pairs));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let point = |rng: &mut ChaCha8Rng| {
        let r = rng.random::<f64>().sqrt();
        Complex64::from_polar(r, TAU * rng.random::<f64>())
    };
    let mut pairs: Vec<(Complex64, Complex64)> = (0..n_pairs).map(|_| (point(&mut rng), point(&mut rng))).collect();
    let structured = structured_pairs();
    let n_structured = structured.len();
    pairs.extend(structured);
    let quotients: Vec<Option<f64>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let dz = (a - b).norm();
            (dz >= MIN_SEPARATION).then(|| (map.eval(a) - map.eval(b)).norm() / dz)
        })
        .collect();
    let mut lip = (f64::NEG_INFINITY, 0);
    let mut colip = (f64::INFINITY, 0);
    for (i, q) in quotients.iter().enumerate() {
        if let Some(q) = *q {
            if q > lip.0 {
                lip = (q, i);
            }
            if q < colip.0 {
                colip = (q, i);
            }
        }
    }
    let pair = |i: usize| [[pairs[i].0.re, pairs[i].0.im], [pairs[i].1.re, pairs[i].1.im]];
    Ok(PairStats {
        lip: lip.0,
        colip: colip.0,
        lip_pair: pair(lip.1),
        colip_pair: pair(colip.1),
        pairs: PairSpec { random: n_pairs, structured: n_structured, seed },
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LipschitzReport {
    pub theoretical_colip: f64,
    pub empirical_lip: f64,
    pub empirical_colip: f64,
    pub ab_check: f64,
    pub pairs: PairSpec,
    /// `empirical_colip - theoretical_colip`.
    pub margin: f64,
}

impl LipschitzReport {
    pub fn new(ext: &InteriorExtension, stats: &PairStats) -> Self {
        Self {
            theoretical_colip: ext.theoretical_colip,
            empirical_lip: stats.lip,
            empirical_colip: stats.colip,
            ab_check: ext.ab_check,
            pairs: stats.pairs.clone(),
            margin: stats.colip - ext.theoretical_colip,
        }
    }
}

/// One line of the plain-text summary table.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub scenario: String,
    pub dilatation: f64,
    pub kappa0: f64,
    pub exponent: f64,
    pub rho: f64,
    pub m_rho: f64,
    /// The certified boundary bound `C`.
    pub colip_boundary: f64,
    pub theoretical_colip: f64,
    pub empirical_colip: f64,
}

pub fn summary_table(rows: &[SummaryRow]) -> String {
    let header = ["scenario", "K", "κ₀", "A", "ρ", "M(ρ)", "C", "C/K", "empirical colip", "margin"];
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![r.scenario.clone()];
            for x in [r.dilatation, r.kappa0, r.exponent, r.rho, r.m_rho, r.colip_boundary, r.theoretical_colip, r.empirical_colip] {
                v.push(format!("{x:.6}"));
            }
            v.push(format!("{:.6}", r.empirical_colip - r.theoretical_colip));
            v
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|i| body.iter().map(|row| row[i].chars().count()).chain([header[i].chars().count()]).max().unwrap())
        .collect();
    let mut out = String::new();
    let line = |out: &mut String, cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(&mut out, header.to_vec());
    line(&mut out, widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect());
    for row in &body {
        line(&mut out, row.iter().map(String::as_str).collect());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barrier::audit_subharmonicity;
    use crate::curve::{CurveKind, JordanCurve};
    use std::f64::consts::PI;

    fn c(x: f64, y: f64) -> Complex64 {
        Complex64::new(x, y)
    }

    fn affine(k: f64) -> HarmonicMap {
        HarmonicMap::from_coefficients(256, [(1, c(1.0, 0.0)), (-1, c(k, 0.0))])
    }

    fn disk() -> DistanceField {
        let pts: Vec<Complex64> = (0..64).map(|j| Complex64::from_polar(1.0, TAU * j as f64 / 64.0)).collect();
        DistanceField::new(JordanCurve::build(&pts, CurveKind::TrigPoly).unwrap())
    }

    fn ellipse() -> DistanceField {
        let pts: Vec<Complex64> =
            (0..64).map(|j| Complex64::from_polar(1.0, TAU * j as f64 / 64.0)).map(|z| z + z.conj() / 3.0).collect();
        DistanceField::new(JordanCurve::build(&pts, CurveKind::TrigPoly).unwrap())
    }

    #[test]
    fn hopf_constant_closed_form() {
        let m = ((-1.0f64).exp() - 1.0) / 2.0;
        assert!((m + 0.316060).abs() < 1e-6);
        let c = hopf_constant(m, 0.5);
        assert!((c - 2.0 * m / (0.25 * (1.0 - 3.0f64.exp()))).abs() < 1e-15);
        assert!((c - 0.132482).abs() < 1e-6);
        assert!(((-1.0f64).exp() * c - 0.048737).abs() < 1e-6);
    }

    #[test]
    fn identity_chain() {
        let (w, d) = (affine(0.0), disk());
        let spec = BarrierSpec::new(d.kappa0(), 1.0, 0.0).unwrap();
        let rho = compute_rho_with(&w, &d, &spec, 64).unwrap();
        assert!((rho.rho - 0.5).abs() < 1e-8);
        let audit = audit_subharmonicity(&w, &d, &spec, PolarGrid::new(32, 256)).unwrap();
        let cert = hopf_bound(&w, &d, &spec, &audit, &rho).unwrap();
        assert!((cert.m_rho - ((-1.0f64).exp() - 1.0) / 2.0).abs() < 1e-7);
        assert!((cert.hopf_constant - 0.132482).abs() < 1e-6);
        let bc = boundary_colip(&w, &cert).unwrap();
        assert!((bc.bound - 0.048733).abs() < 1e-5);
        assert!((bc.min_radial - 1.0).abs() < 1e-14);
        let ext = interior_extension(&w, bc.bound, 1.0, PolarGrid::new(32, 256)).unwrap();
        assert!((ext.ab_check - bc.bound).abs() < 1e-14);
        assert!(ext.colip_verified);
    }

    #[test]
    fn rotation_rho() {
        let w = HarmonicMap::from_coefficients(64, [(1, Complex64::from_polar(1.0, PI / 7.0))]);
        let d = disk();
        let spec = BarrierSpec::new(d.kappa0(), 1.0, 0.0).unwrap();
        assert!((compute_rho_with(&w, &d, &spec, 64).unwrap().rho - 0.5).abs() < 1e-8);
    }

    #[test]
    fn ellipse_rho_refines() {
        let (w, e) = (affine(1.0 / 3.0), ellipse());
        let spec = BarrierSpec::new(e.kappa0(), 2.0, 0.0).unwrap();
        let coarse = compute_rho(&w, &e, &spec).unwrap();
        let fine = compute_rho_with(&w, &e, &spec, 10 * RHO_ANGLES).unwrap();
        assert!(coarse.rho > 0.0 && coarse.rho < 1.0);
        assert!((coarse.rho - fine.rho).abs() < 1e-4);
        let depth = e.distance(w.eval(Complex64::from_polar(coarse.rho, coarse.argmax_theta))).unwrap();
        assert!((depth - spec.collar_bound).abs() < 1e-6);
    }

    #[test]
    fn ellipse_chain() {
        let (w, e) = (affine(1.0 / 3.0), ellipse());
        let spec = BarrierSpec::new(e.kappa0(), 2.0, 0.0).unwrap();
        let rho = compute_rho(&w, &e, &spec).unwrap();
        let audit = audit_subharmonicity(&w, &e, &spec, PolarGrid::new(32, 256)).unwrap();
        let cert = hopf_bound(&w, &e, &spec, &audit, &rho).unwrap();
        assert!(cert.hopf_constant > 0.0 && cert.m_rho < 0.0);
        let bc = boundary_colip(&w, &cert).unwrap();
        assert!(bc.bound <= 2.0 / 3.0);
        assert!((bc.min_radial - 2.0 / 3.0).abs() < 1e-12);
        let ext = interior_extension(&w, bc.bound, 2.0, PolarGrid::new(32, 256)).unwrap();
        assert!((ext.ab_check - (1.0 / 3.0 + bc.bound / 2.0)).abs() < 1e-12);
        let stats = empirical_bilipschitz(&w, MIN_PAIRS, 7).unwrap();
        assert!(ext.theoretical_colip <= stats.colip + 2e-3);
    }

    #[test]
    fn failed_audit_blocks_hopf() {
        let (w, d) = (affine(0.0), disk());
        let spec = BarrierSpec::new(d.kappa0(), 1.0, 0.0).unwrap();
        let rho = compute_rho_with(&w, &d, &spec, 16).unwrap();
        let mut audit = audit_subharmonicity(&w, &d, &spec, PolarGrid::new(16, 64)).unwrap();
        audit.pass = false;
        assert_eq!(hopf_bound(&w, &d, &spec, &audit, &rho), Err(CertifyError::NotSubharmonic));
    }

    #[test]
    fn collar_escape() {
        let shrink = HarmonicMap::from_coefficients(64, [(1, c(0.1, 0.0))]);
        let d = disk();
        let spec = BarrierSpec::new(1.0, 1.0, 0.0).unwrap();
        assert!(matches!(compute_rho_with(&shrink, &d, &spec, 8), Err(CertifyError::CollarEscape { .. })));
        // a thin ellipse never gets deeper than 0.1 while its collar depth is larger
        let thin: Vec<Complex64> = (0..64).map(|j| Complex64::from_polar(1.0, TAU * j as f64 / 64.0)).map(|z| c(z.re, 0.1 * z.im)).collect();
        let field = DistanceField::new(JordanCurve::build(&thin, CurveKind::TrigPoly).unwrap());
        let w = HarmonicMap::from_coefficients(64, [(1, c(0.55, 0.0)), (-1, c(0.45, 0.0))]);
        let wide = BarrierSpec::new(1.0, 1.0, 0.0).unwrap();
        assert!(matches!(compute_rho_with(&w, &field, &wide, 8), Err(CertifyError::CollarEscape { .. })));
    }

    #[test]
    fn boundary_verification_failure() {
        let cert = HopfCertificate {
            rho: 0.5,
            m_rho: -0.3,
            hopf_constant: 2.0,
            boundary_bound: 0.7,
            exponent: 24.0,
            kappa0: 3.0,
            dilatation: 2.0,
        };
        match boundary_colip(&affine(1.0 / 3.0), &cert) {
            Err(CertifyError::VerificationFailure { radial, theta, .. }) => {
                assert!((radial - 2.0 / 3.0).abs() < 1e-12);
                assert!((theta - PI / 2.0).abs() < 1e-2 || (theta - 3.0 * PI / 2.0).abs() < 1e-2);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn interior_extension_examples() {
        let k = 0.25;
        let kk = (1.0 + k) / (1.0 - k);
        let ok = interior_extension(&affine(k), 0.5 * kk * (1.0 - k), kk, PolarGrid::new(32, 256)).unwrap();
        assert!((ok.ab_check - (k + 0.5 * (1.0 - k))).abs() < 1e-12);
        let bad = interior_extension(&affine(k), 1.1 * kk * (1.0 - k), kk, PolarGrid::new(32, 256));
        assert!(matches!(bad, Err(CertifyError::MaxPrincipleFailure { .. })));
        let flat = HarmonicMap::from_coefficients(64, [(2, c(1.0, 0.0))]);
        assert!(matches!(interior_extension(&flat, 0.1, 1.0, PolarGrid::new(32, 256)), Err(CertifyError::LewyViolation { .. })));
    }

    #[test]
    fn empirical_examples() {
        let id = empirical_bilipschitz(&affine(0.0), MIN_PAIRS, 1).unwrap();
        assert!((id.lip - 1.0).abs() < 1e-12 && (id.colip - 1.0).abs() < 1e-12);
        let rot = HarmonicMap::from_coefficients(64, [(1, Complex64::from_polar(1.0, 0.4))]);
        let r = empirical_bilipschitz(&rot, MIN_PAIRS, 2).unwrap();
        assert!((r.lip - 1.0).abs() < 1e-12 && (r.colip - 1.0).abs() < 1e-12);
        let a = empirical_bilipschitz(&affine(1.0 / 3.0), DEFAULT_PAIRS, 3).unwrap();
        assert!((a.lip - 4.0 / 3.0).abs() < 2e-3 && a.lip <= 4.0 / 3.0 + 1e-12);
        assert!((a.colip - 2.0 / 3.0).abs() < 2e-3 && a.colip >= 2.0 / 3.0 - 1e-12);
        assert!(a.colip <= a.lip);
        assert_eq!(empirical_bilipschitz(&affine(0.0), 10, 1), Err(CertifyError::TooFewPairs(10)));
    }

    #[test]
    fn empirical_is_deterministic() {
        let w = affine(0.2);
        assert_eq!(empirical_bilipschitz(&w, MIN_PAIRS, 9).unwrap(), empirical_bilipschitz(&w, MIN_PAIRS, 9).unwrap());
    }

    #[test]
    fn table_layout() {
        let row = SummaryRow {
            scenario: "unit_disk_identity".into(),
            dilatation: 1.0,
            kappa0: 1.0,
            exponent: 2.0,
            rho: 0.5,
            m_rho: -0.31606,
            colip_boundary: 0.048737,
            theoretical_colip: 0.048738,
            empirical_colip: 1.0,
        };
        let t = summary_table(&[row]);
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("scenario"));
        assert!(lines[0].contains("empirical colip") && lines[0].ends_with("margin"));
        assert!(lines[2].contains("0.951262"));
    }
}
