use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use super::{CurvePoint, Frame, GeometryError, JordanCurve};

/// Candidates in the coarse foot-point scan.
pub const DEFAULT_SCAN_SAMPLES: usize = 1024;
/// Two local minimizers closer than this in distance count as a tie.
const TIE_TOLERANCE: f64 = 1e-9;
/// Tied minimizers farther apart than this in arc length are distinct feet.
const FOOT_SEPARATION: f64 = 1e-3;

/// Distance, foot point, and inner normal of an interior point.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Foot {
    pub param: f64,
    pub distance: f64,
    pub frame: Frame,
}

struct Located {
    best: Foot,
    rival: Option<Foot>,
    inside: bool,
}

/// The single nonzero Hessian eigenvalue of `d` and the frame that
/// diagonalizes it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HessianFrame {
    pub kappa_foot: f64,
    pub distance: f64,
    /// `-κ / (1 - κ d)`, attached to the tangent direction at the foot.
    pub eigenvalue: f64,
    /// Angle of the rotation `O` with `O e₂ = ν` (in complex form `O w = -iν w`).
    pub rotation_angle: f64,
}

impl HessianFrame {
    /// `D²d = O diag(λ, 0) Oᵀ = λ T Tᵀ`, with `T = O e₁` the foot tangent.
    pub fn hessian(&self) -> [[f64; 2]; 2] {
        let (s, c) = self.rotation_angle.sin_cos();
        let l = self.eigenvalue;
        [[l * c * c, l * c * s], [l * c * s, l * s * s]]
    }
}

/// One row of a field dump.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct FieldSample {
    pub x: f64,
    pub y: f64,
    pub d: f64,
    pub nu_x: f64,
    pub nu_y: f64,
    pub kappa_foot: f64,
}

/// Distance-function queries for the interior of a [`JordanCurve`].
#[derive(Clone, Debug)]
pub struct DistanceField {
    curve: Arc<JordanCurve>,
    kappa0: f64,
    reach_mu: f64,
    scan_params: Vec<f64>,
    scan_points: Vec<Complex64>,
    scan_spacing: f64,
}

fn dot(a: Complex64, b: Complex64) -> f64 {
    a.re * b.re + a.im * b.im
}

impl DistanceField {
    pub fn new(curve: impl Into<Arc<JordanCurve>>) -> Self {
        Self::with_scan(curve, DEFAULT_SCAN_SAMPLES)
    }

    pub fn with_scan(curve: impl Into<Arc<JordanCurve>>, scan: usize) -> Self {
        let curve = curve.into();
        let len = curve.length();
        let scan_params: Vec<f64> = (0..scan)
            .map(|k| curve.param_at_arclength(len * k as f64 / scan as f64))
            .collect();
        let frames: Vec<Frame> = scan_params.iter().map(|&t| curve.frame_at_param(t)).collect();
        let scan_points: Vec<Complex64> = frames.iter().map(|f| f.position).collect();
        let scan_spacing = (0..scan)
            .map(|k| (scan_points[(k + 1) % scan] - scan_points[k]).norm())
            .fold(0.0, f64::max);
        let kappa0 = curve.kappa0_refined();
        let reach_mu = sampled_reach(&frames).min(1.0 / kappa0);
        Self { curve, kappa0, reach_mu, scan_params, scan_points, scan_spacing }
    }

    pub fn curve(&self) -> &JordanCurve {
        &self.curve
    }

    pub fn shared_curve(&self) -> Arc<JordanCurve> {
        Arc::clone(&self.curve)
    }

    /// Sampled supremum of `|κ|`.
    pub fn kappa0(&self) -> f64 {
        self.kappa0
    }

    /// Reach estimate; never exceeds `1/κ₀`.
    pub fn reach_mu(&self) -> f64 {
        self.reach_mu
    }

    /// Depth `1/(2κ₀)` of the collar used for barrier work.
    pub fn collar_bound(&self) -> f64 {
        0.5 / self.kappa0
    }

    fn refine(&self, z: Complex64, mut a: f64, mut b: f64, start: f64) -> f64 {
        let slope = |t: f64| {
            let [c, dc, ddc] = self.curve.derivs(t);
            let r = c - z;
            (dot(r, dc), dc.norm_sqr() + dot(r, ddc))
        };
        let (fa, _) = slope(a);
        let (fb, _) = slope(b);
        if fa > 0.0 || fb < 0.0 {
            // No sign bracket: golden-section on the squared distance first.
            let sq = |t: f64| (self.curve.derivs(t)[0] - z).norm_sqr();
            let g = 0.5 * (5f64.sqrt() - 1.0);
            let (mut x1, mut x2) = (b - g * (b - a), a + g * (b - a));
            let (mut f1, mut f2) = (sq(x1), sq(x2));
            for _ in 0..80 {
                if f1 <= f2 {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - g * (b - a);
                    f1 = sq(x1);
                } else {
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + g * (b - a);
                    f2 = sq(x2);
                }
                if b - a < 1e-12 {
                    break;
                }
            }
            let mut t = 0.5 * (a + b);
            for _ in 0..4 {
                let (f, fp) = slope(t);
                if fp <= 0.0 || f == 0.0 {
                    break;
                }
                t -= f / fp;
            }
            return t;
        }
        let mut t = start.clamp(a, b);
        for _ in 0..100 {
            let (f, fp) = slope(t);
            if f == 0.0 {
                break;
            }
            if f < 0.0 {
                a = t;
            } else {
                b = t;
            }
            let newton = t - f / fp;
            let next = if fp > 0.0 && newton > a && newton < b {
                newton
            } else {
                0.5 * (a + b)
            };
            let done = (next - t).abs() <= 1e-16 * (1.0 + t.abs()) || b - a <= 1e-16 * (1.0 + t.abs());
            t = next;
            if done {
                break;
            }
        }
        t
    }

    fn locate(&self, z: Complex64) -> Located {
        let n = self.scan_points.len();
        let d: Vec<f64> = self.scan_points.iter().map(|p| (p - z).norm_sqr()).collect();
        let dmin = d.iter().copied().fold(f64::INFINITY, f64::min);
        let cutoff = (dmin.sqrt() + self.scan_spacing).powi(2);
        let period = self.curve.period();
        let mut feet: Vec<Foot> = Vec::new();
        for i in 0..n {
            let (prev, next) = ((i + n - 1) % n, (i + 1) % n);
            if d[i] > cutoff || d[i] > d[prev] || d[i] > d[next] {
                continue;
            }
            let ti = self.scan_params[i];
            let mut a = self.scan_params[prev];
            let mut b = self.scan_params[next];
            if a > ti {
                a -= period;
            }
            if b < ti {
                b += period;
            }
            let t = self.refine(z, a, b, ti);
            let frame = self.curve.frame_at_param(t);
            feet.push(Foot { param: t.rem_euclid(period), distance: (frame.position - z).norm(), frame });
        }
        feet.sort_by(|x, y| x.distance.total_cmp(&y.distance));
        let best = feet[0];
        let len = self.curve.length();
        let rival = feet[1..]
            .iter()
            .take_while(|f| f.distance - best.distance <= TIE_TOLERANCE)
            .find(|f| {
                if (f.frame.position - best.frame.position).norm() <= FOOT_SEPARATION {
                    return false;
                }
                let ds = (self.curve.arclength_at_param(f.param)
                    - self.curve.arclength_at_param(best.param))
                .abs();
                ds.min(len - ds) > FOOT_SEPARATION
            })
            .copied();
        let inside = best.distance <= 1e-14 || dot(z - best.frame.position, best.frame.inner_normal) > 0.0;
        Located { best, rival, inside }
    }

    /// Foot point with a uniqueness requirement.
    pub(crate) fn foot(&self, z: Complex64) -> Result<Foot, GeometryError> {
        let loc = self.locate(z);
        if !loc.inside {
            return Err(GeometryError::OutsideDomain { x: z.re, y: z.im });
        }
        if let Some(r) = loc.rival {
            return Err(GeometryError::AmbiguousFoot {
                distance: loc.best.distance,
                s1: self.curve.arclength_at_param(loc.best.param),
                s2: self.curve.arclength_at_param(r.param),
            });
        }
        Ok(loc.best)
    }

    /// `d(z)` and the foot point. Fails outside the curve or when two
    /// separated boundary points tie for nearest.
    pub fn distance_query(&self, z: Complex64) -> Result<(f64, CurvePoint), GeometryError> {
        let f = self.foot(z)?;
        Ok((f.distance, self.curve.point_at_param(f.param)))
    }

    /// `d(z)` alone; ties between foot points are allowed.
    pub fn distance(&self, z: Complex64) -> Result<f64, GeometryError> {
        let loc = self.locate(z);
        if !loc.inside {
            return Err(GeometryError::OutsideDomain { x: z.re, y: z.im });
        }
        Ok(loc.best.distance)
    }

    /// Nearest curve point to any plane point.
    pub fn project(&self, p: Complex64) -> CurvePoint {
        self.curve.point_at_param(self.locate(p).best.param)
    }

    /// `∇d(z)`, the inner normal at the foot point.
    pub fn grad_distance(&self, z: Complex64) -> Result<Complex64, GeometryError> {
        Ok(self.foot(z)?.frame.inner_normal)
    }

    pub fn hessian_distance_frame(&self, z: Complex64) -> Result<HessianFrame, GeometryError> {
        let f = self.foot(z)?;
        hessian_frame(&f)
    }

    pub fn field_sample(&self, z: Complex64) -> Result<FieldSample, GeometryError> {
        let f = self.foot(z)?;
        Ok(FieldSample {
            x: z.re,
            y: z.im,
            d: f.distance,
            nu_x: f.frame.inner_normal.re,
            nu_y: f.frame.inner_normal.im,
            kappa_foot: f.frame.curvature,
        })
    }

    /// Points among `zs` with `d < mu` whose foot point is not unique.
    pub fn non_unique_feet(&self, zs: &[Complex64], mu: f64) -> Vec<Complex64> {
        zs.iter()
            .copied()
            .filter(|&z| {
                let loc = self.locate(z);
                loc.inside && loc.best.distance < mu && loc.rival.is_some()
            })
            .collect()
    }
}

pub(crate) fn hessian_frame(f: &Foot) -> Result<HessianFrame, GeometryError> {
    let kappa = f.frame.curvature;
    let margin = 1.0 - kappa * f.distance;
    if margin <= 0.0 {
        return Err(GeometryError::SingularCollar { kappa, distance: f.distance, margin });
    }
    let o = Complex64::new(0.0, -1.0) * f.frame.inner_normal;
    Ok(HessianFrame {
        kappa_foot: kappa,
        distance: f.distance,
        eigenvalue: -kappa / margin,
        rotation_angle: o.arg(),
    })
}

/// `min |p_i - p_j|² / (2 ν_i·(p_j - p_i))` over sample pairs: the depth at
/// which the inward normal from `p_i` first meets a point equidistant from
/// `p_i` and `p_j`.
fn sampled_reach(frames: &[Frame]) -> f64 {
    let mut best = f64::INFINITY;
    for (i, fi) in frames.iter().enumerate() {
        for (j, fj) in frames.iter().enumerate() {
            if i == j {
                continue;
            }
            let delta = fj.position - fi.position;
            let proj = dot(fi.inner_normal, delta);
            if proj > 0.0 {
                best = best.min(delta.norm_sqr() / (2.0 * proj));
            }
        }
    }
    best
}
