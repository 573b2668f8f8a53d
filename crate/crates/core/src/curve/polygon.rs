//! Closed-polygon predicates on sample points.

use num_complex::Complex64;

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

/// Shoelace signed area; positive for counterclockwise polygons.
pub fn signed_area(pts: &[Complex64]) -> f64 {
    let n = pts.len();
    0.5 * (0..n).map(|i| cross(pts[i], pts[(i + 1) % n])).sum::<f64>()
}

fn orient(a: Complex64, b: Complex64, c: Complex64) -> f64 {
    cross(b - a, c - a)
}

fn on_segment(a: Complex64, b: Complex64, p: Complex64) -> bool {
    p.re >= a.re.min(b.re) && p.re <= a.re.max(b.re) && p.im >= a.im.min(b.im) && p.im <= a.im.max(b.im)
}

/// Closed-segment intersection test (touching counts).
pub fn segments_intersect(p1: Complex64, p2: Complex64, q1: Complex64, q2: Complex64) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(q1, q2, p1))
        || (d2 == 0.0 && on_segment(q1, q2, p2))
        || (d3 == 0.0 && on_segment(p1, p2, q1))
        || (d4 == 0.0 && on_segment(p1, p2, q2))
}

/// First pair of non-adjacent edges `(i, j)` that intersect, if any. Edge `i`
/// joins point `i` to point `i + 1` (cyclically).
pub fn first_self_intersection(pts: &[Complex64]) -> Option<(usize, usize)> {
    let n = pts.len();
    for i in 0..n {
        let (a, b) = (pts[i], pts[(i + 1) % n]);
        let (lo, hi) = (
            a.re.min(b.re),
            a.re.max(b.re),
        );
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (c, d) = (pts[j], pts[(j + 1) % n]);
            if c.re.max(d.re) < lo || c.re.min(d.re) > hi {
                continue;
            }
            if segments_intersect(a, b, c, d) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Winding number of the closed polygon around `p`.
pub fn winding_number(pts: &[Complex64], p: Complex64) -> i64 {
    let n = pts.len();
    let total: f64 = (0..n)
        .map(|i| ((pts[(i + 1) % n] - p) / (pts[i] - p)).arg())
        .sum();
    (total / std::f64::consts::TAU).round() as i64
}
