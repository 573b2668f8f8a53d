//! Quasiconformality of harmonic maps: dilatation over a polar grid, the
//! `|∇f|² ≤ K J_f` inequality, Jacobian positivity on the circle, and Möbius
//! normalization by arc trisection.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{polygon, JordanCurve};
use crate::grid::PolarGrid;
use crate::harmonic::{GradientSample, HarmonicError, HarmonicMap};
use crate::quad::gauss_legendre;

pub const DEFAULT_GRID: PolarGrid = PolarGrid::new(64, 1024);
pub const MIN_GRID: PolarGrid = PolarGrid::new(32, 256);
/// Largest accepted change of `K_global` between a grid and its doubling.
pub const REFINEMENT_TOLERANCE: f64 = 1e-3;
pub const MAX_DOUBLINGS: usize = 3;
/// Minimum boundary Jacobian required for a diffeomorphism certificate.
pub const JACOBIAN_TOLERANCE: f64 = 1e-10;
/// `|w_z|` at or below this is treated as a Lewy violation.
pub const LEWY_FLOOR: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QcError {
    #[error("Jacobian {jacobian:e} ≤ 0 at z = ({x}, {y})")]
    OrientationFailure { x: f64, y: f64, jacobian: f64 },
    #[error("grid {0} is coarser than the minimum {MIN_GRID}")]
    GridTooCoarse(PolarGrid),
    #[error("K_global did not stabilise under grid doubling (changes {deltas:?})")]
    RefinementUnstable { deltas: Vec<f64> },
    #[error("dilatation constant {0} is below 1")]
    InvalidConstant(f64),
    #[error("boundary image is not a simple closed curve: {0}")]
    NotHomeomorphism(String),
    #[error("map is not a certified diffeomorphism (min boundary Jacobian {min_jacobian:e})")]
    NotCertified { min_jacobian: f64 },
    #[error("normalization failed: {0}")]
    NormalizationFailed(String),
    #[error(transparent)]
    Harmonic(#[from] HarmonicError),
}

/// Grid summary of the dilatation of a harmonic map.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QcProfile {
    /// Grid max of `|∇w| / l(∇w)`.
    #[serde(rename = "K_global")]
    pub dilatation: f64,
    /// Grid max of `|w_z̄ / w_z|`.
    #[serde(rename = "k_global")]
    pub beltrami: f64,
    /// `K` restricted to the unit circle.
    #[serde(rename = "K_boundary")]
    pub boundary_dilatation: f64,
    pub min_boundary_jacobian: f64,
    pub certified: bool,
    pub grid: PolarGrid,
    /// `|K_global(grid) - K_global(previous grid)|` for the accepted grid.
    pub refinement_delta: Option<f64>,
    pub worst_point: [f64; 2],
    pub min_jacobian_point: [f64; 2],
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn sample_all(map: &HarmonicMap, pts: &[Complex64]) -> Result<Vec<GradientSample>, QcError> {
    if pts.iter().any(|z| z.norm() >= 1.0 - 1e-12) && !map.boundary_admissible() {
        return Err(HarmonicError::BoundaryDivergence { tail: map.boundary_tail() }.into());
    }
    Ok(pts.par_iter().map(|&z| map.gradient(z)).collect::<Result<_, _>>()?)
}

/// First grid point (in grid order) where orientation fails.
fn orientation_witness(samples: &[GradientSample]) -> Option<QcError> {
    samples.iter().find(|g| g.jacobian <= 0.0 || g.wz.norm() <= LEWY_FLOOR).map(|g| QcError::OrientationFailure {
        x: g.z.re,
        y: g.z.im,
        jacobian: g.jacobian,
    })
}

/// Dilatation profile on one grid without refinement.
pub fn dilatation_on_grid(map: &HarmonicMap, grid: PolarGrid) -> Result<QcProfile, QcError> {
    if grid.radial < MIN_GRID.radial || grid.angular < MIN_GRID.angular {
        return Err(QcError::GridTooCoarse(grid));
    }
    let samples = sample_all(map, &grid.closed_points())?;
    if let Some(err) = orientation_witness(&samples) {
        return Err(err);
    }
    let mut worst = &samples[0];
    for g in &samples {
        if g.beltrami() > worst.beltrami() {
            worst = g;
        }
    }
    let boundary = &samples[samples.len() - grid.angular..];
    let mut boundary_k: f64 = 0.0;
    let mut min_j = &boundary[0];
    for g in boundary {
        boundary_k = boundary_k.max(g.beltrami());
        if g.jacobian < min_j.jacobian {
            min_j = g;
        }
    }
    let k = worst.beltrami();
    Ok(QcProfile {
        dilatation: worst.grad_norm / worst.l_norm,
        beltrami: k,
        boundary_dilatation: (1.0 + boundary_k) / (1.0 - boundary_k),
        min_boundary_jacobian: min_j.jacobian,
        certified: min_j.jacobian > 0.0,
        grid,
        refinement_delta: None,
        worst_point: pair(worst.z),
        min_jacobian_point: pair(min_j.z),
    })
}

/// Dilatation profile, doubling the grid until `K_global` changes by less than
/// [`REFINEMENT_TOLERANCE`]. The returned profile is the finest one computed.
pub fn dilatation_profile(map: &HarmonicMap, grid: PolarGrid) -> Result<QcProfile, QcError> {
    let mut current = dilatation_on_grid(map, grid)?;
    let mut deltas = Vec::new();
    for _ in 0..MAX_DOUBLINGS {
        let mut finer = dilatation_on_grid(map, current.grid.doubled())?;
        let delta = (finer.dilatation - current.dilatation).abs();
        finer.refinement_delta = Some(delta);
        if delta < REFINEMENT_TOLERANCE {
            return Ok(finer);
        }
        deltas.push(delta);
        current = finer;
    }
    Err(QcError::RefinementUnstable { deltas })
}

/// Outcome of checking `|∇f|² ≤ K J_f` on a grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QcCheck {
    pub pass: bool,
    /// Largest `|∇f|² / J_f` (infinite where `J_f ≤ 0`).
    pub worst_ratio: f64,
    pub worst_point: [f64; 2],
}

pub fn check_qc_inequality(map: &HarmonicMap, k: f64, grid: PolarGrid) -> Result<QcCheck, QcError> {
    if !(k >= 1.0) {
        return Err(QcError::InvalidConstant(k));
    }
    let samples = sample_all(map, &grid.closed_points())?;
    let mut pass = true;
    let mut worst = (f64::NEG_INFINITY, samples[0].z);
    for g in &samples {
        let lhs = g.grad_norm * g.grad_norm;
        pass &= lhs <= k * g.jacobian + 1e-12;
        let ratio = if g.jacobian > 0.0 { lhs / g.jacobian } else { f64::INFINITY };
        if ratio > worst.0 {
            worst = (ratio, g.z);
        }
    }
    Ok(QcCheck { pass, worst_ratio: worst.0, worst_point: pair(worst.1) })
}

/// Jacobian positivity on the unit circle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiffeoCertificate {
    pub certified: bool,
    pub min_jacobian: f64,
    pub argmin_theta: f64,
    pub samples: usize,
    /// Winding number of the boundary image about its centroid.
    pub winding: i64,
}

pub fn certify_diffeomorphism(map: &HarmonicMap, boundary_samples: usize) -> Result<DiffeoCertificate, QcError> {
    if !map.boundary_admissible() {
        return Err(HarmonicError::BoundaryDivergence { tail: map.boundary_tail() }.into());
    }
    let thetas: Vec<f64> = (0..boundary_samples).map(|j| TAU * j as f64 / boundary_samples as f64).collect();
    let image: Vec<Complex64> = thetas.iter().map(|&t| map.eval(Complex64::from_polar(1.0, t))).collect();
    if let Some((i, j)) = polygon::first_self_intersection(&image) {
        return Err(QcError::NotHomeomorphism(format!("boundary image edges {i} and {j} cross")));
    }
    let centroid = image.iter().sum::<Complex64>() / image.len() as f64;
    let winding = polygon::winding_number(&image, centroid);
    if winding.abs() != 1 {
        return Err(QcError::NotHomeomorphism(format!("boundary image winds {winding} times")));
    }
    let jac: Vec<f64> = thetas
        .par_iter()
        .map(|&t| {
            let (_, wz, wzbar) = map.jet(Complex64::from_polar(1.0, t));
            wz.norm_sqr() - wzbar.norm_sqr()
        })
        .collect();
    let (mut arg, mut min) = (0, jac[0]);
    for (i, &j) in jac.iter().enumerate() {
        if j < min {
            (arg, min) = (i, j);
        }
    }
    Ok(DiffeoCertificate {
        certified: min > JACOBIAN_TOLERANCE,
        min_jacobian: min,
        argmin_theta: thetas[arg],
        samples: boundary_samples,
        winding,
    })
}

/// Disk automorphism `z ↦ (a z + b) / (c z + d)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mobius {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl Mobius {
    pub fn identity() -> Self {
        let (one, zero) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Self { a: one, b: zero, c: zero, d: one }
    }

    /// `e^{iα} (z - p) / (1 - p̄ z)` for `|p| < 1`.
    pub fn disk(alpha: f64, p: Complex64) -> Self {
        let rot = Complex64::from_polar(1.0, alpha);
        Self { a: rot, b: -rot * p, c: -p.conj(), d: Complex64::new(1.0, 0.0) }
    }

    /// The map sending `z0, z1, z2` to `0, 1, ∞`.
    fn to_standard(z: [Complex64; 3]) -> Self {
        Self {
            a: z[1] - z[2],
            b: -z[0] * (z[1] - z[2]),
            c: z[1] - z[0],
            d: -z[2] * (z[1] - z[0]),
        }
    }

    /// The unique Möbius map sending `from[k]` to `to[k]`.
    pub fn through(from: [Complex64; 3], to: [Complex64; 3]) -> Self {
        Self::to_standard(to).inverse().compose(&Self::to_standard(from))
    }

    pub fn inverse(&self) -> Self {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// `self ∘ other`.
    pub fn compose(&self, o: &Self) -> Self {
        let m = Self {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        };
        let s = (m.a * m.d - m.b * m.c).sqrt();
        Self { a: m.a / s, b: m.b / s, c: m.c / s, d: m.d / s }
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    /// `T(0)`; zero exactly when the map is a rotation.
    pub fn center_image(&self) -> Complex64 {
        self.b / self.d
    }
}

/// Result of [`moebius_normalize`].
#[derive(Clone, Debug)]
pub struct Normalized {
    pub map: HarmonicMap,
    pub automorphism: Mobius,
    /// Angles `θ_k` with `T(e^{2πik/3}) = e^{iθ_k}`.
    pub preimages: [f64; 3],
    /// Largest arc-length distance from `w∘T(e^{2πik/3})` to the target point.
    pub trisection_error: f64,
}

/// Cumulative arc length `θ ↦ ∫₀^θ |∂_θ w|` of the boundary image.
struct ImageArc<'a> {
    map: &'a HarmonicMap,
    breaks: Vec<f64>,
    cum: Vec<f64>,
}

impl<'a> ImageArc<'a> {
    fn new(map: &'a HarmonicMap) -> Result<Self, QcError> {
        map.boundary_tangent(0.0)?;
        let panels = map.n_samples().max(256);
        let breaks: Vec<f64> = (0..=panels).map(|k| TAU * k as f64 / panels as f64).collect();
        let mut cum = vec![0.0];
        for w in breaks.windows(2) {
            cum.push(cum.last().unwrap() + gauss_legendre(w[0], w[1], |t| speed(map, t)));
        }
        Ok(Self { map, breaks, cum })
    }

    fn total(&self) -> f64 {
        *self.cum.last().unwrap()
    }

    fn at(&self, theta: f64) -> f64 {
        let turns = (theta / TAU).floor();
        let t = theta - turns * TAU;
        let h = self.breaks[1];
        let i = ((t / h) as usize).min(self.breaks.len() - 2);
        self.cum[i] + gauss_legendre(self.breaks[i], t, |x| speed(self.map, x)) + turns * self.total()
    }

    /// Smallest `θ ≥ start` with `at(θ) = at(start) + len`, by bisection.
    fn advance(&self, start: f64, len: f64) -> f64 {
        let target = self.at(start) + len;
        let (mut lo, mut hi) = (start, start + TAU);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.at(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-14 {
                break;
            }
        }
        0.5 * (lo + hi)
    }
}

fn speed(map: &HarmonicMap, t: f64) -> f64 {
    let z = Complex64::from_polar(1.0, t);
    let (_, wz, wzbar) = map.jet(z);
    (z * wz - z.conj() * wzbar).norm()
}

/// The angle whose image is nearest to `p`, located as a sign change of
/// `Re(conj(∂_θ w) (w - p))`.
fn nearest_angle(map: &HarmonicMap, p: Complex64) -> f64 {
    let scan = 4096;
    let h = TAU / scan as f64;
    let at = |t: f64| map.eval(Complex64::from_polar(1.0, t));
    let mut best = (f64::INFINITY, 0.0);
    for k in 0..scan {
        let t = h * k as f64;
        let d = (at(t) - p).norm();
        if d < best.0 {
            best = (d, t);
        }
    }
    let g = |t: f64| {
        let z = Complex64::from_polar(1.0, t);
        let (w, wz, wzbar) = map.jet(z);
        let tangent = Complex64::new(0.0, 1.0) * (z * wz - z.conj() * wzbar);
        (tangent.conj() * (w - p)).re
    };
    let (mut lo, mut hi) = (best.1 - h, best.1 + h);
    if g(lo) > 0.0 || g(hi) < 0.0 {
        return best.1.rem_euclid(TAU);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    (0.5 * (lo + hi)).rem_euclid(TAU)
}

/// Precomposes `map` with the disk automorphism `T` that sends the cube roots
/// of unity to the preimages of the three points splitting `curve` into arcs of
/// length `L/3`, the first being the curve's arc-length origin.
pub fn moebius_normalize(map: &HarmonicMap, curve: &JordanCurve) -> Result<Normalized, QcError> {
    let cert = certify_diffeomorphism(map, map.n_samples().max(1024))?;
    if !cert.certified {
        return Err(QcError::NotCertified { min_jacobian: cert.min_jacobian });
    }
    let arc = ImageArc::new(map)?;
    let total = arc.total();
    if (total - curve.length()).abs() > 1e-6 * curve.length() {
        return Err(QcError::NormalizationFailed(format!(
            "boundary image has length {total}, curve has {}",
            curve.length()
        )));
    }
    let theta0 = nearest_angle(map, curve.position(0.0));
    let theta1 = arc.advance(theta0, total / 3.0);
    let theta2 = arc.advance(theta0, 2.0 * total / 3.0);
    let roots = [0.0, TAU / 3.0, 2.0 * TAU / 3.0].map(|t| Complex64::from_polar(1.0, t));
    let targets = [theta0, theta1, theta2].map(|t| Complex64::from_polar(1.0, t));
    let t = Mobius::through(roots, targets);
    let n = map.n_samples();
    let samples: Vec<Complex64> = (0..n)
        .map(|j| {
            let u = t.apply(Complex64::from_polar(1.0, TAU * j as f64 / n as f64));
            map.eval(u / u.norm())
        })
        .collect();
    let normalized = HarmonicMap::from_samples(&samples);
    let mut err: f64 = 0.0;
    for (k, root) in roots.iter().enumerate() {
        let target = curve.position(k as f64 * curve.length() / 3.0);
        err = err.max((normalized.eval(*root) - target).norm());
    }
    if err > 1e-6 {
        return Err(QcError::NormalizationFailed(format!("trisection points missed by {err:e}")));
    }
    Ok(Normalized {
        map: normalized,
        automorphism: t,
        preimages: [theta0, theta1.rem_euclid(TAU), theta2.rem_euclid(TAU)],
        trisection_error: err,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveKind;
    use crate::harmonic::{poisson_extend, BoundaryCorrespondence, PhaseMap};
    use proptest::prelude::*;
    use std::f64::consts::PI;
    use std::sync::Arc;

    fn c(x: f64, y: f64) -> Complex64 {
        Complex64::new(x, y)
    }

    fn affine(k: f64) -> HarmonicMap {
        HarmonicMap::from_coefficients(256, [(1, c(1.0, 0.0)), (-1, c(k, 0.0))])
    }

    fn coarse() -> PolarGrid {
        PolarGrid::new(32, 256)
    }

    fn circle() -> Arc<JordanCurve> {
        let pts: Vec<Complex64> = (0..64).map(|j| Complex64::from_polar(1.0, TAU * j as f64 / 64.0)).collect();
        Arc::new(JordanCurve::build(&pts, CurveKind::TrigPoly).unwrap())
    }

    fn ellipse() -> Arc<JordanCurve> {
        let pts: Vec<Complex64> =
            (0..64).map(|j| Complex64::from_polar(1.0, TAU * j as f64 / 64.0)).map(|z| z + z.conj() / 3.0).collect();
        Arc::new(JordanCurve::build(&pts, CurveKind::TrigPoly).unwrap())
    }

    #[test]
    fn identity_profile() {
        let p = dilatation_profile(&affine(0.0), coarse()).unwrap();
        assert_eq!(p.dilatation, 1.0);
        assert_eq!(p.beltrami, 0.0);
        assert_eq!(p.min_boundary_jacobian, 1.0);
        assert!(p.certified);
        assert_eq!(p.refinement_delta, Some(0.0));
    }

    #[test]
    fn affine_profile() {
        let p = dilatation_profile(&affine(1.0 / 3.0), coarse()).unwrap();
        assert!((p.beltrami - 1.0 / 3.0).abs() < 1e-12);
        assert!((p.dilatation - 2.0).abs() < 1e-9);
        assert!((p.dilatation - (1.0 + p.beltrami) / (1.0 - p.beltrami)).abs() < 1e-9);
        assert!((p.boundary_dilatation - 2.0).abs() < 1e-9);
        assert!((p.min_boundary_jacobian - 8.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn reversed_orientation_fails() {
        match dilatation_profile(&affine(2.0), coarse()) {
            Err(QcError::OrientationFailure { jacobian, .. }) => assert!((jacobian + 3.0).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn grid_floor() {
        assert_eq!(dilatation_on_grid(&affine(0.0), PolarGrid::new(16, 256)), Err(QcError::GridTooCoarse(PolarGrid::new(16, 256))));
    }

    #[test]
    fn qc_inequality_examples() {
        let id = check_qc_inequality(&affine(0.0), 1.0, coarse()).unwrap();
        assert!(id.pass);
        assert_eq!(id.worst_ratio, 1.0);
        let eq = check_qc_inequality(&affine(1.0 / 3.0), 2.0, coarse()).unwrap();
        assert!(eq.pass);
        assert!((eq.worst_ratio - 2.0).abs() < 1e-12);
        let fail = check_qc_inequality(&affine(1.0 / 3.0), 1.5, coarse()).unwrap();
        assert!(!fail.pass);
        assert!((fail.worst_ratio - 2.0).abs() < 1e-12);
        assert!(check_qc_inequality(&affine(0.0), 0.5, coarse()).is_err());
    }

    #[test]
    fn diffeomorphism_examples() {
        let a = certify_diffeomorphism(&affine(1.0 / 3.0), 512).unwrap();
        assert!(a.certified);
        assert!((a.min_jacobian - 8.0 / 9.0).abs() < 1e-12);
        let b = certify_diffeomorphism(&affine(2.0), 512).unwrap();
        assert!(!b.certified);
        assert!((b.min_jacobian + 3.0).abs() < 1e-12);
        assert_eq!(b.winding, -1);
        let id = certify_diffeomorphism(&affine(0.0), 512).unwrap();
        assert!(id.certified && id.min_jacobian == 1.0);
        let fold = HarmonicMap::from_coefficients(256, [(2, c(1.0, 0.0))]);
        assert!(matches!(certify_diffeomorphism(&fold, 512), Err(QcError::NotHomeomorphism(_))));
    }

    #[test]
    fn mobius_through_three_points() {
        let from = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0)];
        let to = [c(0.0, -1.0), c(0.6, 0.8), c(-0.8, 0.6)];
        let t = Mobius::through(from, to);
        for (f, g) in from.iter().zip(&to) {
            assert!((t.apply(*f) - g).norm() < 1e-14);
        }
        let z = c(0.3, -0.2);
        assert!((t.inverse().apply(t.apply(z)) - z).norm() < 1e-14);
        assert!(t.apply(z).norm() < 1.0);
    }

    #[test]
    fn normalizing_identity_is_noop() {
        let w = affine(0.0);
        let out = moebius_normalize(&w, &circle()).unwrap();
        for (n, cn) in out.map.coefficients() {
            assert!((cn - w.coefficient(n)).norm() < 1e-10, "c_{n} = {cn}");
        }
    }

    #[test]
    fn normalizing_undoes_rotation() {
        let w = HarmonicMap::from_coefficients(256, [(1, Complex64::from_polar(1.0, PI / 7.0))]);
        let out = moebius_normalize(&w, &circle()).unwrap();
        for (n, cn) in out.map.coefficients() {
            let expect = if n == 1 { 1.0 } else { 0.0 };
            assert!((cn - expect).norm() < 1e-8, "c_{n} = {cn}");
        }
        assert!((out.preimages[0] - (2.0 * PI - PI / 7.0)).abs() < 1e-10);
    }

    #[test]
    fn normalizing_affine_keeps_dilatation() {
        let curve = ellipse();
        let corr = BoundaryCorrespondence::new(curve.clone(), PhaseMap::Native { offset: 0.0 }, 1024).unwrap();
        let w = poisson_extend(&corr, 1024).unwrap();
        let out = moebius_normalize(&w, &curve).unwrap();
        assert!(out.automorphism.center_image().norm() > 1e-3);
        assert!(out.trisection_error < 1e-6);
        let p = dilatation_on_grid(&out.map, coarse()).unwrap();
        assert!((p.dilatation - 2.0).abs() < 1e-9, "{}", p.dilatation);
        let arc = ImageArc::new(&out.map).unwrap();
        let l = curve.length();
        for k in 1..3 {
            assert!((arc.at(TAU * k as f64 / 3.0) - k as f64 * l / 3.0).abs() < 1e-6);
        }
    }

    #[test]
    fn normalization_requires_certificate() {
        assert!(matches!(moebius_normalize(&affine(2.0), &ellipse()), Err(QcError::NotCertified { .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn dilatation_is_automorphism_invariant(r in 0.0f64..0.5, t in 0.0f64..TAU, alpha in 0.0f64..TAU) {
            let w = affine(0.25);
            let m = Mobius::disk(alpha, Complex64::from_polar(r, t));
            let samples: Vec<Complex64> = (0..1024)
                .map(|j| {
                    let u = m.apply(Complex64::from_polar(1.0, TAU * j as f64 / 1024.0));
                    w.eval(u / u.norm())
                })
                .collect();
            let composed = HarmonicMap::from_samples(&samples);
            let base = dilatation_on_grid(&w, coarse()).unwrap().dilatation;
            let moved = dilatation_on_grid(&composed, coarse()).unwrap().dilatation;
            prop_assert!((base - moved).abs() < 1e-6, "{base} vs {moved}");
        }

        #[test]
        fn affine_closed_forms(k in 0.0f64..0.9) {
            let p = dilatation_on_grid(&affine(k), coarse()).unwrap();
            prop_assert!((p.dilatation - (1.0 + k) / (1.0 - k)).abs() < 1e-9);
            prop_assert!((p.min_boundary_jacobian - (1.0 - k * k)).abs() < 1e-12);
            prop_assert!(check_qc_inequality(&affine(k), p.dilatation, coarse()).unwrap().pass);
        }
    }
}
