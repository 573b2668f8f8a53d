//! Static SVG plots.

use std::f64::consts::TAU;
use std::fmt::Write;

use num_complex::Complex64;

use crate::barrier::BarrierAudit;
use crate::curve::JordanCurve;
use crate::harmonic::HarmonicMap;

const SIZE: f64 = 600.0;
const MARGIN: f64 = 30.0;

/// Maps a bounding box onto the square canvas with the y axis pointing up.
struct View {
    cx: f64,
    cy: f64,
    scale: f64,
}

impl View {
    fn fit(points: impl Iterator<Item = Complex64>) -> Self {
        let (mut lo, mut hi) = (Complex64::new(f64::INFINITY, f64::INFINITY), Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
        for p in points {
            lo = Complex64::new(lo.re.min(p.re), lo.im.min(p.im));
            hi = Complex64::new(hi.re.max(p.re), hi.im.max(p.im));
        }
        let span = (hi.re - lo.re).max(hi.im - lo.im).max(1e-12);
        Self { cx: 0.5 * (lo.re + hi.re), cy: 0.5 * (lo.im + hi.im), scale: (SIZE - 2.0 * MARGIN) / span }
    }

    fn xy(&self, p: Complex64) -> (f64, f64) {
        (SIZE / 2.0 + (p.re - self.cx) * self.scale, SIZE / 2.0 - (p.im - self.cy) * self.scale)
    }

    fn path(&self, pts: &[Complex64], closed: bool) -> String {
        let mut d = String::new();
        for (i, p) in pts.iter().enumerate() {
            let (x, y) = self.xy(*p);
            let _ = write!(d, "{}{x:.2},{y:.2} ", if i == 0 { "M" } else { "L" });
        }
        if closed {
            d.push('Z');
        }
        d
    }
}

fn header(out: &mut String, comment: &str) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(out, "<!-- {comment} -->");
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
}

/// Images of the circles `|z| = 0.1, ..., 1` and of 24 radii under `w`,
/// drawn over the target curve.
pub fn image_circles(map: &HarmonicMap, curve: &JordanCurve) -> String {
    let n = 720;
    let target = curve.arclength_polygon(n);
    let view = View::fit(target.iter().copied());
    let mut out = String::new();
    header(&mut out, "images of concentric circles and radii under w; target curve in black");
    for k in 1..=10 {
        let r = k as f64 / 10.0;
        let pts: Vec<Complex64> = (0..n).map(|j| map.eval(Complex64::from_polar(r, TAU * j as f64 / n as f64))).collect();
        let _ = writeln!(out, r##"<path d="{}" fill="none" stroke="#3b6fb6" stroke-width="1"/>"##, view.path(&pts, true));
    }
    for k in 0..24 {
        let t = TAU * k as f64 / 24.0;
        let pts: Vec<Complex64> = (0..=100).map(|j| map.eval(Complex64::from_polar(j as f64 / 100.0, t))).collect();
        let _ = writeln!(out, r##"<path d="{}" fill="none" stroke="#b0b0b0" stroke-width="0.7"/>"##, view.path(&pts, false));
    }
    let _ = writeln!(out, r#"<path d="{}" fill="none" stroke="black" stroke-width="1.5"/>"#, view.path(&target, true));
    out.push_str("</svg>\n");
    out
}

/// Blue (low) to red (high) through white.
fn color(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let (r, g, b) = if t < 0.5 {
        let s = t / 0.5;
        (s, s, 1.0)
    } else {
        let s = (1.0 - t) / 0.5;
        (1.0, s, s)
    };
    format!("#{:02x}{:02x}{:02x}", (r * 255.0).round() as u8, (g * 255.0).round() as u8, (b * 255.0).round() as u8)
}

/// `Δφ_w` over the collar preimage, one dot per audited grid point in the
/// source disk. Colors are linear in `log10(Δφ_w)` for positive data.
pub fn laplacian_heatmap(audit: &BarrierAudit) -> String {
    let values: Vec<f64> = audit.rows.iter().map(|r| r.laplacian_phi).collect();
    let positive = values.iter().all(|&v| v > 0.0);
    let key = |v: f64| if positive { v.log10() } else { v };
    let lo = values.iter().copied().map(key).fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().map(key).fold(f64::NEG_INFINITY, f64::max);
    let span = (hi - lo).max(1e-300);
    let scale = if positive { "log10" } else { "linear" };
    let view = View::fit([Complex64::new(-1.0, -1.0), Complex64::new(1.0, 1.0)].into_iter());
    let mut out = String::new();
    header(
        &mut out,
        &format!(
            "Laplacian of the barrier over the collar preimage; color scale {scale}: blue = {:e}, white = midpoint, red = {:e}",
            values.iter().copied().fold(f64::INFINITY, f64::min),
            values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
        ),
    );
    let (cx, cy) = view.xy(Complex64::new(0.0, 0.0));
    let _ = writeln!(out, r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="{:.2}" fill="none" stroke="black"/>"#, view.scale);
    let dot = (0.6 * view.scale * TAU / audit.grid.angular as f64).clamp(0.4, 3.0);
    for (r, v) in audit.rows.iter().zip(&values) {
        let (x, y) = view.xy(Complex64::new(r.x, r.y));
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{dot:.2}" fill="{}"/>"#, color((key(*v) - lo) / span));
    }
    for i in 0..50 {
        let _ = writeln!(
            out,
            r#"<rect x="{:.1}" y="8" width="{:.1}" height="10" fill="{}"/>"#,
            MARGIN + i as f64 * (SIZE - 2.0 * MARGIN) / 50.0,
            (SIZE - 2.0 * MARGIN) / 50.0 + 0.5,
            color(i as f64 / 49.0)
        );
    }
    out.push_str("</svg>\n");
    out
}
