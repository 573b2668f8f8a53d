//! Jordan curves with arc-length parametrization, curvature, and the distance
//! function of the enclosed domain.

mod distance;
mod interp;
pub mod io;
pub mod polygon;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quad::gauss_legendre;

pub use distance::{DistanceField, FieldSample, HessianFrame, DEFAULT_SCAN_SAMPLES};
pub(crate) use distance::{hessian_frame, Foot};
pub(crate) use interp::{dft, COEFF_TRIM};
use interp::{Interpolant, PeriodicSpline, TrigSeries};

/// Minimum number of input points for [`JordanCurve::build`].
pub const MIN_POINTS: usize = 8;
/// Default number of arc-length samples for curvature suprema.
pub const DEFAULT_KAPPA_SAMPLES: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("need at least {MIN_POINTS} points, got {0}")]
    TooFewPoints(usize),
    #[error("sample polygon is not simple: edges {0} and {1} intersect")]
    SelfIntersecting(usize, usize),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("point ({x}, {y}) is not inside the curve")]
    OutsideDomain { x: f64, y: f64 },
    #[error("ambiguous foot point at distance {distance}: arc lengths {s1} and {s2}")]
    AmbiguousFoot { distance: f64, s1: f64, s2: f64 },
    #[error("outside admissible collar: 1 - κ d = {margin} (κ = {kappa}, d = {distance})")]
    SingularCollar { kappa: f64, distance: f64, margin: f64 },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Interpolation scheme used to close the point list into a C² curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    #[default]
    TrigPoly,
    PeriodicSpline,
}

/// A point on the curve together with its unit-speed frame.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurvePoint {
    pub position: Complex64,
    pub arclength: f64,
    pub tangent: Complex64,
    pub inner_normal: Complex64,
    /// Signed curvature; positive where the curve bends toward the inner normal.
    pub curvature: f64,
}

/// Frame at a raw interpolation parameter, without the arc-length coordinate.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Frame {
    pub position: Complex64,
    pub tangent: Complex64,
    pub inner_normal: Complex64,
    pub curvature: f64,
}

/// Cumulative arc length at panel breakpoints of the raw parameter.
#[derive(Clone, Debug)]
struct ArcTable {
    breaks: Vec<f64>,
    cum: Vec<f64>,
}

/// Closed simple C² curve through user points.
#[derive(Clone, Debug)]
pub struct JordanCurve {
    samples: Vec<Complex64>,
    kind: CurveKind,
    interp: Interpolant,
    arc: ArcTable,
    counterclockwise: bool,
}

impl JordanCurve {
    /// Interpolates the points with the requested scheme and reparametrizes by
    /// arc length. Clockwise input keeps its direction; the inner normal and
    /// curvature sign follow the orientation.
    pub fn build(points: &[Complex64], kind: CurveKind) -> Result<Self, GeometryError> {
        let n = points.len();
        if n < MIN_POINTS {
            return Err(GeometryError::TooFewPoints(n));
        }
        if points.iter().any(|p| !p.re.is_finite() || !p.im.is_finite()) {
            return Err(GeometryError::DegenerateInput("non-finite coordinate".into()));
        }
        let (mut lo, mut hi) = (points[0], points[0]);
        for p in points {
            lo = Complex64::new(lo.re.min(p.re), lo.im.min(p.im));
            hi = Complex64::new(hi.re.max(p.re), hi.im.max(p.im));
        }
        let diam = (hi - lo).norm();
        for i in 0..n {
            if (points[(i + 1) % n] - points[i]).norm() <= 1e-9 * diam {
                return Err(GeometryError::DegenerateInput(format!(
                    "points {i} and {} coincide",
                    (i + 1) % n
                )));
            }
        }
        if let Some((i, j)) = polygon::first_self_intersection(points) {
            return Err(GeometryError::SelfIntersecting(i, j));
        }
        let area = polygon::signed_area(points);
        if area.abs() <= 1e-6 * diam * diam {
            return Err(GeometryError::DegenerateInput("points are nearly collinear".into()));
        }
        let interp = match kind {
            CurveKind::TrigPoly => Interpolant::Trig(TrigSeries::interpolate(points)),
            CurveKind::PeriodicSpline => Interpolant::Spline(PeriodicSpline::interpolate(points)),
        };
        let breaks = interp.quadrature_breaks();
        let mut cum = Vec::with_capacity(breaks.len());
        cum.push(0.0);
        for w in breaks.windows(2) {
            let piece = gauss_legendre(w[0], w[1], |t| interp.derivs(t)[1].norm());
            cum.push(cum.last().unwrap() + piece);
        }
        let curve = Self {
            samples: points.to_vec(),
            kind,
            interp,
            arc: ArcTable { breaks, cum },
            counterclockwise: area > 0.0,
        };
        if curve.length() <= 0.0 || !curve.length().is_finite() {
            return Err(GeometryError::DegenerateInput("zero length".into()));
        }
        Ok(curve)
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn length(&self) -> f64 {
        *self.arc.cum.last().unwrap()
    }

    pub fn is_counterclockwise(&self) -> bool {
        self.counterclockwise
    }

    fn orientation(&self) -> f64 {
        if self.counterclockwise {
            1.0
        } else {
            -1.0
        }
    }

    pub(crate) fn period(&self) -> f64 {
        self.interp.period()
    }

    pub(crate) fn derivs(&self, t: f64) -> [Complex64; 3] {
        self.interp.derivs(t)
    }

    fn panel_of_param(&self, t: f64) -> usize {
        let b = &self.arc.breaks;
        b.partition_point(|&x| x <= t).saturating_sub(1).min(b.len() - 2)
    }

    /// Arc length from the first sample to raw parameter `t` (reduced mod period).
    pub(crate) fn arclength_at_param(&self, t: f64) -> f64 {
        let t = t.rem_euclid(self.period());
        let p = self.panel_of_param(t);
        let t0 = self.arc.breaks[p];
        self.arc.cum[p] + gauss_legendre(t0, t, |u| self.derivs(u)[1].norm())
    }

    /// Raw parameter at arc length `s` (reduced mod length), by Newton's method
    /// on the cumulative arc-length table.
    pub(crate) fn param_at_arclength(&self, s: f64) -> f64 {
        let len = self.length();
        let s = s.rem_euclid(len);
        let cum = &self.arc.cum;
        let p = cum.partition_point(|&c| c <= s).saturating_sub(1).min(cum.len() - 2);
        let (t0, t1) = (self.arc.breaks[p], self.arc.breaks[p + 1]);
        let (c0, c1) = (cum[p], cum[p + 1]);
        let mut t = t0 + (s - c0) / (c1 - c0) * (t1 - t0);
        for _ in 0..50 {
            let f = c0 + gauss_legendre(t0, t, |u| self.derivs(u)[1].norm()) - s;
            let speed = self.derivs(t)[1].norm();
            let next = (t - f / speed).clamp(t0, t1);
            let done = (next - t).abs() <= 1e-15 * self.period().max(1.0);
            t = next;
            if done {
                break;
            }
        }
        t
    }

    pub(crate) fn frame_at_param(&self, t: f64) -> Frame {
        let [z, dz, ddz] = self.derivs(t);
        let speed = dz.norm();
        let tangent = dz / speed;
        let sign = self.orientation();
        let cross = dz.re * ddz.im - dz.im * ddz.re;
        Frame {
            position: z,
            tangent,
            inner_normal: Complex64::new(-tangent.im, tangent.re) * sign,
            curvature: sign * cross / (speed * speed * speed),
        }
    }

    pub(crate) fn point_at_param(&self, t: f64) -> CurvePoint {
        let f = self.frame_at_param(t);
        CurvePoint {
            position: f.position,
            arclength: self.arclength_at_param(t),
            tangent: f.tangent,
            inner_normal: f.inner_normal,
            curvature: f.curvature,
        }
    }

    /// Unit-speed parametrization `g(s)`.
    pub fn position(&self, s: f64) -> Complex64 {
        self.derivs(self.param_at_arclength(s))[0]
    }

    pub fn point_at(&self, s: f64) -> CurvePoint {
        let s = s.rem_euclid(self.length());
        let f = self.frame_at_param(self.param_at_arclength(s));
        CurvePoint {
            position: f.position,
            arclength: s,
            tangent: f.tangent,
            inner_normal: f.inner_normal,
            curvature: f.curvature,
        }
    }

    /// Signed curvature `κ(s)`; for a counterclockwise curve this is
    /// `cross(g'(s), g''(s))`.
    pub fn curvature_at(&self, s: f64) -> f64 {
        self.frame_at_param(self.param_at_arclength(s)).curvature
    }

    /// Max of `|κ|` over `n_samples` equispaced arc-length samples.
    pub fn kappa0(&self, n_samples: usize) -> f64 {
        let len = self.length();
        let n = n_samples as f64;
        (0..n_samples)
            .map(|k| self.curvature_at(len * k as f64 / n).abs())
            .fold(0.0, f64::max)
    }

    /// [`kappa0`](Self::kappa0) starting at 4096 samples and doubling until
    /// the change drops below `1e-4` (at most 2^20 samples).
    pub fn kappa0_refined(&self) -> f64 {
        let mut n = DEFAULT_KAPPA_SAMPLES;
        let mut k = self.kappa0(n);
        while n < (1 << 20) {
            n *= 2;
            let next = self.kappa0(n);
            let delta = next - k;
            k = next;
            if delta < 1e-4 {
                break;
            }
        }
        k
    }

    /// Nearly uniform polygon of `n` points along the curve, in parametrization order.
    pub fn arclength_polygon(&self, n: usize) -> Vec<Complex64> {
        let len = self.length();
        (0..n).map(|k| self.position(len * k as f64 / n as f64)).collect()
    }
}
