//! The composed distance `χ = -d(w(z))` and the exponential barrier
//! `φ_w = -1/A + e^{-A d(w(z))}/A` on the collar preimage `w⁻¹(Γ_{1/(2κ₀)})`.

use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{hessian_frame, DistanceField, Foot, GeometryError};
use crate::grid::PolarGrid;
use crate::harmonic::{HarmonicError, HarmonicMap};

pub const DEFAULT_GRID: PolarGrid = PolarGrid::new(64, 1024);
/// Central-difference step for the Laplacian of `χ`.
pub const FD_STEP: f64 = 1e-4;
/// Tolerance of the gradient sandwich.
pub const SANDWICH_TOLERANCE: f64 = 1e-9;
/// Relative floor below which a negative `Δφ_w` is attributed to rounding.
pub const SUBHARMONIC_FLOOR: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BarrierError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Harmonic(#[from] HarmonicError),
    #[error("no point of the {0} grid lands in the collar")]
    EmptyCollar(PolarGrid),
    #[error("invalid barrier parameters: {0}")]
    InvalidSpec(String),
}

/// Barrier parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BarrierSpec {
    #[serde(rename = "A")]
    pub exponent: f64,
    #[serde(rename = "B")]
    pub pde_constant: f64,
    pub kappa0: f64,
    #[serde(rename = "K")]
    pub dilatation: f64,
    pub collar_bound: f64,
}

impl BarrierSpec {
    /// `A = (2κ₀ + B) K²`, collar `d < 1/(2κ₀)`.
    pub fn new(kappa0: f64, dilatation: f64, pde_constant: f64) -> Result<Self, BarrierError> {
        if !(kappa0 > 0.0 && kappa0.is_finite()) {
            return Err(BarrierError::InvalidSpec(format!("κ₀ = {kappa0} must be positive")));
        }
        if !(dilatation >= 1.0) {
            return Err(BarrierError::InvalidSpec(format!("K = {dilatation} must be at least 1")));
        }
        if !(pde_constant >= 0.0) {
            return Err(BarrierError::InvalidSpec(format!("B = {pde_constant} must be non-negative")));
        }
        Ok(Self {
            exponent: (2.0 * kappa0 + pde_constant) * dilatation * dilatation,
            pde_constant,
            kappa0,
            dilatation,
            collar_bound: 0.5 / kappa0,
        })
    }

    /// Same collar, different exponent.
    pub fn with_exponent(mut self, a: f64) -> Self {
        self.exponent = a;
        self
    }

    /// `(2κ₀ + B) K²`.
    pub fn required_exponent(&self) -> f64 {
        (2.0 * self.kappa0 + self.pde_constant) * self.dilatation * self.dilatation
    }

    /// `g(t) = -1/A + e^{A t}/A` evaluated at `t = χ = -d`.
    pub fn phi_of_distance(&self, d: f64) -> f64 {
        let a = self.exponent;
        (-a * d).exp_m1() / a
    }
}

/// First-order data of `χ` at one point.
#[derive(Clone, Copy, Debug)]
struct ChiJet {
    foot: Foot,
    wz: Complex64,
    wzbar: Complex64,
}

impl ChiJet {
    fn at(map: &HarmonicMap, field: &DistanceField, z: Complex64) -> Result<Self, BarrierError> {
        let (w, wz, wzbar) = map.jet(z);
        let foot = field.foot(w)?;
        Ok(Self { foot, wz, wzbar })
    }

    /// `∇χ` as a complex number `χ_x + i χ_y`.
    fn grad_chi(&self) -> Complex64 {
        let nu = self.foot.frame.inner_normal;
        -(nu.conj() * self.wz + nu * self.wzbar.conj()).conj()
    }

    fn grad_w(&self) -> f64 {
        self.wz.norm() + self.wzbar.norm()
    }

    /// `|(O ∇w)ᵀ e₁|`, the tangential component of `∇w` at the foot.
    fn tangential(&self) -> f64 {
        let t = self.foot.frame.tangent;
        (t.conj() * self.wz + t * self.wzbar.conj()).norm()
    }
}

/// `Δχ = κ/(1 - κd) |(O∇w)ᵀe₁|² - ⟨∇d(w), Δw⟩`.
pub fn laplacian_chi_formula(kappa_foot: f64, distance: f64, tangential: f64, inner_normal: Complex64, laplacian_w: Complex64) -> f64 {
    let drift = inner_normal.re * laplacian_w.re + inner_normal.im * laplacian_w.im;
    kappa_foot / (1.0 - kappa_foot * distance) * tangential * tangential - drift
}

/// `χ(z) = -d(w(z))`.
pub fn chi(map: &HarmonicMap, field: &DistanceField, z: Complex64) -> Result<f64, BarrierError> {
    Ok(-field.distance(map.eval(z))?)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Sandwich {
    pub grad_chi: f64,
    pub grad_w: f64,
    pub pass: bool,
}

/// Checks `|∇χ| ≤ |∇w| ≤ K |∇χ|` at `z`.
pub fn gradient_sandwich(map: &HarmonicMap, field: &DistanceField, z: Complex64, k: f64) -> Result<Sandwich, BarrierError> {
    let jet = ChiJet::at(map, field, z)?;
    Ok(sandwich(&jet, k))
}

fn sandwich(jet: &ChiJet, k: f64) -> Sandwich {
    let (gc, gw) = (jet.grad_chi().norm(), jet.grad_w());
    Sandwich {
        grad_chi: gc,
        grad_w: gw,
        pass: gc <= gw + SANDWICH_TOLERANCE && gw <= k * gc + SANDWICH_TOLERANCE,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LaplacianChi {
    pub formula: f64,
    /// Five-point stencil with step `h`.
    pub fd: f64,
    /// Five-point stencil with step `h/2`.
    pub fd_half: f64,
    /// `(4 fd_half - fd) / 3`.
    pub richardson: f64,
    /// `|formula - fd| / (1 + |formula|)`.
    pub rel_error: f64,
}

fn five_point(map: &HarmonicMap, field: &DistanceField, z: Complex64, h: f64) -> Result<f64, BarrierError> {
    let f = |p: Complex64| chi(map, field, p);
    let i = Complex64::new(0.0, 1.0);
    Ok((f(z + h)? + f(z - h)? + f(z + i * h)? + f(z - i * h)? - 4.0 * f(z)?) / (h * h))
}

/// Stencil step at `z`, shrunk so the stencil stays inside the disk.
fn step_at(z: Complex64) -> f64 {
    FD_STEP.min(0.5 * (1.0 - z.norm()))
}

fn laplacian_of(map: &HarmonicMap, field: &DistanceField, z: Complex64, jet: &ChiJet, laplacian_w: Complex64) -> Result<LaplacianChi, BarrierError> {
    hessian_frame(&jet.foot)?;
    let f = &jet.foot;
    let formula = laplacian_chi_formula(f.frame.curvature, f.distance, jet.tangential(), f.frame.inner_normal, laplacian_w);
    let h = step_at(z);
    let fd = five_point(map, field, z, h)?;
    let fd_half = five_point(map, field, z, 0.5 * h)?;
    Ok(LaplacianChi {
        formula,
        fd,
        fd_half,
        richardson: (4.0 * fd_half - fd) / 3.0,
        rel_error: (formula - fd).abs() / (1.0 + formula.abs()),
    })
}

/// `Δχ` from the distance-Hessian formula and from finite differences. The
/// map is harmonic, so the `⟨∇d, Δw⟩` term vanishes.
pub fn laplacian_chi(map: &HarmonicMap, field: &DistanceField, z: Complex64) -> Result<LaplacianChi, BarrierError> {
    let jet = ChiJet::at(map, field, z)?;
    laplacian_of(map, field, z, &jet, Complex64::new(0.0, 0.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BarrierValue {
    pub phi: f64,
    pub laplacian_phi: f64,
    pub chi: f64,
    pub grad_chi: f64,
    pub grad_w: f64,
    pub laplacian_chi: f64,
    pub in_collar: bool,
}

fn barrier_from_jet(spec: &BarrierSpec, jet: &ChiJet) -> Result<BarrierValue, BarrierError> {
    hessian_frame(&jet.foot)?;
    let f = &jet.foot;
    let a = spec.exponent;
    let decay = (-a * f.distance).exp();
    let gc = jet.grad_chi().norm();
    let lap_chi = laplacian_chi_formula(f.frame.curvature, f.distance, jet.tangential(), f.frame.inner_normal, Complex64::new(0.0, 0.0));
    Ok(BarrierValue {
        phi: spec.phi_of_distance(f.distance),
        laplacian_phi: a * decay * gc * gc + decay * lap_chi,
        chi: -f.distance,
        grad_chi: gc,
        grad_w: jet.grad_w(),
        laplacian_chi: lap_chi,
        in_collar: f.distance < spec.collar_bound,
    })
}

/// `φ_w(z)` and `Δφ_w(z) = g''(χ)|∇χ|² + g'(χ)Δχ`.
pub fn barrier(map: &HarmonicMap, field: &DistanceField, spec: &BarrierSpec, z: Complex64) -> Result<BarrierValue, BarrierError> {
    barrier_from_jet(spec, &ChiJet::at(map, field, z)?)
}

/// `φ_w(z)` alone; needs neither a unique foot point nor the collar.
pub fn phi(map: &HarmonicMap, field: &DistanceField, spec: &BarrierSpec, z: Complex64) -> Result<f64, BarrierError> {
    Ok(spec.phi_of_distance(field.distance(map.eval(z))?))
}

/// One audited grid point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AuditRow {
    pub x: f64,
    pub y: f64,
    pub chi: f64,
    pub grad_chi: f64,
    pub grad_w: f64,
    pub laplacian_chi: f64,
    pub laplacian_chi_fd: f64,
    pub laplacian_chi_richardson: f64,
    pub phi: f64,
    pub laplacian_phi: f64,
    pub sandwich: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BarrierAudit {
    pub spec: BarrierSpec,
    pub grid: PolarGrid,
    pub points_in_collar: usize,
    pub min_laplacian_phi: f64,
    pub argmin: [f64; 2],
    pub max_abs_laplacian_phi: f64,
    /// `min Δφ_w ≥ -1e-8 (1 + max |Δφ_w|)`.
    pub subharmonic: bool,
    pub sandwich_failures: usize,
    pub sandwich_witness: Option<[f64; 2]>,
    /// Largest `|Δχ_formula - Δχ_fd| / (1 + |Δχ_formula|)`.
    pub max_fd_rel_error: f64,
    /// Smallest slack in `|Δχ| ≤ (2κ₀ + B) K² |∇χ|²`, relative to the right side.
    pub curvature_margin: f64,
    /// `spec.A ≥ (2κ₀ + B) K²` up to rounding.
    pub exponent_admissible: bool,
    pub pass: bool,
    #[serde(skip)]
    pub rows: Vec<AuditRow>,
}

/// Evaluates `Δφ_w` at every point of `grid` (open radii) whose image lies in
/// the collar `d < 1/(2κ₀)`.
pub fn audit_subharmonicity(map: &HarmonicMap, field: &DistanceField, spec: &BarrierSpec, grid: PolarGrid) -> Result<BarrierAudit, BarrierError> {
    let pts = grid.open_points();
    let in_collar: Vec<Option<Complex64>> = pts
        .par_iter()
        .map(|&z| Ok::<_, BarrierError>((field.distance(map.eval(z))? < spec.collar_bound).then_some(z)))
        .collect::<Result<_, _>>()?;
    let collar: Vec<Complex64> = in_collar.into_iter().flatten().collect();
    if collar.is_empty() {
        return Err(BarrierError::EmptyCollar(grid));
    }
    let rows: Vec<AuditRow> = collar
        .par_iter()
        .map(|&z| {
            let jet = ChiJet::at(map, field, z)?;
            let b = barrier_from_jet(spec, &jet)?;
            let lap = laplacian_of(map, field, z, &jet, Complex64::new(0.0, 0.0))?;
            Ok(AuditRow {
                x: z.re,
                y: z.im,
                chi: b.chi,
                grad_chi: b.grad_chi,
                grad_w: b.grad_w,
                laplacian_chi: b.laplacian_chi,
                laplacian_chi_fd: lap.fd,
                laplacian_chi_richardson: lap.richardson,
                phi: b.phi,
                laplacian_phi: b.laplacian_phi,
                sandwich: sandwich(&jet, spec.dilatation).pass,
            })
        })
        .collect::<Result<_, BarrierError>>()?;

    let mut min = (f64::INFINITY, [0.0, 0.0]);
    let mut max_abs: f64 = 0.0;
    let mut max_fd: f64 = 0.0;
    let mut margin = f64::INFINITY;
    let mut failures = 0;
    let mut witness = None;
    let c = spec.required_exponent();
    for r in &rows {
        if r.laplacian_phi < min.0 {
            min = (r.laplacian_phi, [r.x, r.y]);
        }
        max_abs = max_abs.max(r.laplacian_phi.abs());
        max_fd = max_fd.max((r.laplacian_chi - r.laplacian_chi_fd).abs() / (1.0 + r.laplacian_chi.abs()));
        let bound = c * r.grad_chi * r.grad_chi;
        if bound > 0.0 {
            margin = margin.min(1.0 - r.laplacian_chi.abs() / bound);
        }
        if !r.sandwich {
            failures += 1;
            witness.get_or_insert([r.x, r.y]);
        }
    }
    let subharmonic = min.0 >= -SUBHARMONIC_FLOOR * (1.0 + max_abs);
    let exponent_admissible = spec.exponent >= c * (1.0 - 1e-12);
    Ok(BarrierAudit {
        spec: *spec,
        grid,
        points_in_collar: rows.len(),
        min_laplacian_phi: min.0,
        argmin: min.1,
        max_abs_laplacian_phi: max_abs,
        subharmonic,
        sandwich_failures: failures,
        sandwich_witness: witness,
        max_fd_rel_error: max_fd,
        curvature_margin: margin,
        exponent_admissible,
        pass: subharmonic && failures == 0,
        rows,
    })
}

/// One CSV row per audited grid point.
pub fn write_audit_csv<W: Write>(out: W, audit: &BarrierAudit) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for r in &audit.rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{CurveKind, JordanCurve};
    use std::f64::consts::TAU;

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
    fn spec_arithmetic() {
        let s = BarrierSpec::new(3.0, 2.0, 0.0).unwrap();
        assert_eq!(s.exponent, 24.0);
        assert_eq!(s.collar_bound * s.kappa0, 0.5);
        assert!(BarrierSpec::new(1.0, 0.9, 0.0).is_err());
        assert!(BarrierSpec::new(0.0, 1.0, 0.0).is_err());
        assert_eq!(BarrierSpec::new(1.0, 1.0, 2.0).unwrap().exponent, 4.0);
    }

    #[test]
    fn chi_examples() {
        let id = affine(0.0);
        assert!((chi(&id, &disk(), c(0.25, 0.0)).unwrap() + 0.75).abs() < 1e-9);
        assert!(chi(&id, &disk(), Complex64::from_polar(1.0 - 1e-12, 0.7)).unwrap().abs() < 1e-9);
        let e = ellipse();
        assert!((chi(&affine(1.0 / 3.0), &e, c(0.0, 0.0)).unwrap() + 2.0 / 3.0).abs() < 1e-9);
        // brute-force scan of the ellipse boundary
        let brute = (0..200_000)
            .map(|j| {
                let z = Complex64::from_polar(1.0, TAU * j as f64 / 200_000.0);
                (z + z.conj() / 3.0 - c(0.3, 0.2)).norm()
            })
            .fold(f64::INFINITY, f64::min);
        let w = affine(1.0 / 3.0);
        let z = c(0.3 * 0.75, 0.2 * 1.5);
        assert!((w.eval(z) - c(0.3, 0.2)).norm() < 1e-14);
        assert!((chi(&w, &e, z).unwrap() + brute).abs() < 1e-8);
        assert!(matches!(
            chi(&HarmonicMap::from_coefficients(64, [(1, c(2.0, 0.0))]), &disk(), c(0.9, 0.0)),
            Err(BarrierError::Geometry(GeometryError::OutsideDomain { .. }))
        ));
    }

    #[test]
    fn sandwich_examples() {
        let s = gradient_sandwich(&affine(0.0), &disk(), c(0.3, 0.6), 1.0).unwrap();
        assert!((s.grad_chi - 1.0).abs() < 1e-12 && (s.grad_w - 1.0).abs() < 1e-12 && s.pass);
        let (w, e) = (affine(1.0 / 3.0), ellipse());
        let mut worst: f64 = 1.0;
        for j in 0..64 {
            let z = Complex64::from_polar(0.8, TAU * j as f64 / 64.0);
            let s = gradient_sandwich(&w, &e, z, 2.0).unwrap();
            assert!(s.pass);
            assert!((s.grad_w - 4.0 / 3.0).abs() < 1e-12);
            assert!(s.grad_chi >= 2.0 / 3.0 - 1e-12 && s.grad_chi <= 4.0 / 3.0 + 1e-12);
            worst = worst.min(s.grad_chi);
        }
        // on the minor axis ∇d is vertical, the contracted direction of w
        let s = gradient_sandwich(&w, &e, c(0.0, 0.8), 1.01).unwrap();
        assert!((s.grad_chi - 2.0 / 3.0).abs() < 1e-12);
        assert!(!s.pass);
        assert!(worst < 2.0 / 3.0 + 1e-3);
    }

    #[test]
    fn chi_gradient_matches_finite_differences() {
        let (w, e) = (affine(1.0 / 3.0), ellipse());
        let h = 1e-6;
        for z in [c(0.7, 0.3), c(-0.2, -0.85), c(0.5, -0.6)] {
            let g = ChiJet::at(&w, &e, z).unwrap().grad_chi();
            let f = |p| chi(&w, &e, p).unwrap();
            let fd = c((f(z + h) - f(z - h)) / (2.0 * h), (f(z + c(0.0, h)) - f(z - c(0.0, h))) / (2.0 * h));
            assert!((g - fd).norm() < 1e-7, "{z}: {g} vs {fd}");
        }
    }

    #[test]
    fn laplacian_identity_examples() {
        let (id, d) = (affine(0.0), disk());
        let l = laplacian_chi(&id, &d, c(0.5, 0.0)).unwrap();
        assert!((l.formula - 2.0).abs() < 1e-9);
        assert!(l.rel_error < 5e-4);
        assert!((l.richardson - 2.0).abs() < 5e-4);
        let l = laplacian_chi(&id, &d, Complex64::from_polar(0.8, 2.0)).unwrap();
        assert!((l.formula - 1.25).abs() < 1e-9);
        assert!(l.rel_error < 5e-4);
        assert_eq!(laplacian_chi_formula(1.0, 0.5, 1.0, c(0.0, 1.0), c(0.0, 0.0)), 2.0);
        assert_eq!(laplacian_chi_formula(1.0, 0.5, 1.0, c(0.0, 1.0), c(0.0, 0.5)), 1.5);
    }

    #[test]
    fn laplacian_ellipse_matches_finite_differences() {
        let (w, e) = (affine(1.0 / 3.0), ellipse());
        for j in 0..16 {
            let z = Complex64::from_polar(0.9, TAU * (j as f64 + 0.3) / 16.0);
            let l = laplacian_chi(&w, &e, z).unwrap();
            assert!(l.rel_error < 5e-4, "{z}: {l:?}");
        }
    }

    #[test]
    fn barrier_identity_closed_forms() {
        let (id, d) = (affine(0.0), disk());
        let spec = BarrierSpec::new(1.0, 1.0, 0.0).unwrap();
        assert_eq!(spec.exponent, 2.0);
        for r in [0.5, 0.7, 0.95] {
            let b = barrier(&id, &d, &spec, c(0.0, r)).unwrap();
            let decay = (-2.0 * (1.0 - r)).exp();
            assert!((b.phi - (-0.5 + decay / 2.0)).abs() < 1e-9);
            assert!((b.laplacian_phi - decay * (2.0 + 1.0 / r)).abs() < 1e-8);
        }
        let b = barrier(&id, &d, &spec, c(0.5, 0.0)).unwrap();
        assert!((b.phi + 0.316060).abs() < 1e-6);
        assert!(phi(&id, &d, &spec, c(1.0 - 1e-13, 0.0)).unwrap().abs() < 1e-9);
    }

    #[test]
    fn audit_identity() {
        let (id, d) = (affine(0.0), disk());
        let spec = BarrierSpec::new(d.kappa0(), 1.0, 0.0).unwrap();
        let a = audit_subharmonicity(&id, &d, &spec, PolarGrid::new(32, 256)).unwrap();
        assert!(a.pass && a.exponent_admissible);
        let rmin = a.rows.iter().map(|r| 1.0 + r.chi).fold(f64::INFINITY, f64::min);
        let expect = (-2.0 * (1.0 - rmin)).exp() * (2.0 + 1.0 / rmin);
        assert!((a.min_laplacian_phi - expect).abs() < 1e-6);
        assert!(a.min_laplacian_phi > 4.0 * (-1.0f64).exp() - 1e-9);
        assert!(a.max_fd_rel_error < 5e-4);

        let weak = audit_subharmonicity(&id, &d, &spec.with_exponent(1.0), PolarGrid::new(32, 256)).unwrap();
        assert!(weak.pass && !weak.exponent_admissible);
    }

    #[test]
    fn audit_ellipse() {
        let (w, e) = (affine(1.0 / 3.0), ellipse());
        assert!((e.kappa0() - 3.0).abs() < 1e-6);
        let spec = BarrierSpec::new(e.kappa0(), 2.0, 0.0).unwrap();
        let a = audit_subharmonicity(&w, &e, &spec, PolarGrid::new(32, 256)).unwrap();
        assert!(a.pass, "{a:?}");
        assert!(a.max_fd_rel_error < 5e-4);
        assert!(a.curvature_margin >= 0.0);
        let mut csv = Vec::new();
        write_audit_csv(&mut csv, &a).unwrap();
        assert_eq!(String::from_utf8(csv).unwrap().lines().count(), a.points_in_collar + 1);
    }

    #[test]
    fn barrier_increases_toward_boundary() {
        let (w, e) = (affine(1.0 / 3.0), ellipse());
        let spec = BarrierSpec::new(e.kappa0(), 2.0, 0.0).unwrap();
        let grid = PolarGrid::new(32, 64);
        let radii = grid.open_radii();
        for t in grid.angles() {
            let values: Vec<(f64, f64)> = radii
                .iter()
                .map(|&r| {
                    let z = Complex64::from_polar(r, t);
                    (chi(&w, &e, z).unwrap(), phi(&w, &e, &spec, z).unwrap())
                })
                .collect();
            for a in &values {
                for b in &values {
                    if a.0 < b.0 {
                        assert!(a.1 < b.1);
                    }
                }
            }
        }
    }

    #[test]
    fn empty_collar() {
        let spec = BarrierSpec::new(1.0, 1.0, 0.0).unwrap();
        let shrink = HarmonicMap::from_coefficients(64, [(1, c(0.1, 0.0))]);
        assert_eq!(
            audit_subharmonicity(&shrink, &disk(), &spec, PolarGrid::new(8, 16)).unwrap_err(),
            BarrierError::EmptyCollar(PolarGrid::new(8, 16))
        );
    }
}
