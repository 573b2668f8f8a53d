//! Closed C² interpolants through an ordered point list.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::FftPlanner;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Relative magnitude below which Fourier coefficients are dropped.
pub(crate) const COEFF_TRIM: f64 = 1e-15;

/// Forward DFT normalized by `1/N`: `c_k = (1/N) Σ_j x_j e^{-2πi jk/N}`.
pub(crate) fn dft(samples: &[Complex64]) -> Vec<Complex64> {
    let n = samples.len();
    let mut buf = samples.to_vec();
    FftPlanner::<f64>::new().plan_fft_forward(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    buf.iter_mut().for_each(|c| *c *= scale);
    buf
}

/// `z(t) = Σ_{k≥0} pos[k] e^{ikt} + Σ_{m≥1} neg[m] e^{-imt}`, period 2π.
#[derive(Clone, Debug)]
pub(crate) struct TrigSeries {
    pos: Vec<Complex64>,
    neg: Vec<Complex64>,
}

impl TrigSeries {
    pub(crate) fn interpolate(points: &[Complex64]) -> Self {
        let n = points.len();
        let c = dft(points);
        let mut pos = vec![Complex64::new(0.0, 0.0); n / 2 + 1];
        let mut neg = vec![Complex64::new(0.0, 0.0); n / 2 + 1];
        for (k, &ck) in c.iter().enumerate() {
            if 2 * k < n {
                pos[k] = ck;
            } else if 2 * k == n {
                // Nyquist mode split evenly so the interpolant is the
                // minimal-oscillation cos(Nt/2) term.
                pos[k] += 0.5 * ck;
                neg[n - k] += 0.5 * ck;
            } else {
                neg[n - k] = ck;
            }
        }
        let mut series = Self { pos, neg };
        series.trim();
        series
    }

    fn trim(&mut self) {
        let max = self
            .pos
            .iter()
            .chain(self.neg.iter())
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        let floor = COEFF_TRIM * max;
        for v in [&mut self.pos, &mut self.neg] {
            while v.len() > 1 && v.last().is_some_and(|c| c.norm() <= floor) {
                v.pop();
            }
        }
    }

    pub(crate) fn max_frequency(&self) -> usize {
        self.pos.len().max(self.neg.len()).saturating_sub(1)
    }

    /// Position and its first two derivatives.
    pub(crate) fn derivs(&self, t: f64) -> [Complex64; 3] {
        let e = Complex64::from_polar(1.0, t);
        let (p0, p1, p2) = power_sums(&self.pos, e);
        let (n0, n1, n2) = power_sums(&self.neg, e.conj());
        [p0 + n0, I * (p1 - n1), -(p2 + n2)]
    }
}

/// Returns `(Σ a_k e^k, Σ k a_k e^k, Σ k² a_k e^k)`.
fn power_sums(a: &[Complex64], e: Complex64) -> (Complex64, Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    let (mut s0, mut s1, mut s2) = (zero, zero, zero);
    let mut p = Complex64::new(1.0, 0.0);
    for (k, &ak) in a.iter().enumerate() {
        let term = ak * p;
        let kf = k as f64;
        s0 += term;
        s1 += kf * term;
        s2 += kf * kf * term;
        p *= e;
    }
    (s0, s1, s2)
}

/// Periodic cubic spline with knots at cumulative chord length.
#[derive(Clone, Debug)]
pub(crate) struct PeriodicSpline {
    knots: Vec<f64>,
    values: Vec<Complex64>,
    second: Vec<Complex64>,
}

impl PeriodicSpline {
    pub(crate) fn interpolate(points: &[Complex64]) -> Self {
        let n = points.len();
        let mut knots = Vec::with_capacity(n + 1);
        knots.push(0.0);
        for i in 0..n {
            let d = (points[(i + 1) % n] - points[i]).norm();
            knots.push(knots[i] + d);
        }
        let h: Vec<f64> = knots.windows(2).map(|w| w[1] - w[0]).collect();
        let mut sub = vec![0.0; n];
        let mut diag = vec![0.0; n];
        let mut sup = vec![0.0; n];
        let mut rhs = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let hp = h[(i + n - 1) % n];
            let hi = h[i];
            sub[i] = hp;
            diag[i] = 2.0 * (hp + hi);
            sup[i] = hi;
            let next = points[(i + 1) % n];
            let prev = points[(i + n - 1) % n];
            rhs[i] = 6.0 * ((next - points[i]) / hi - (points[i] - prev) / hp);
        }
        let second = solve_cyclic_tridiagonal(&sub, &diag, &sup, &rhs);
        let mut values = points.to_vec();
        values.push(points[0]);
        let mut second_closed = second;
        second_closed.push(second_closed[0]);
        Self { knots, values, second: second_closed }
    }

    pub(crate) fn period(&self) -> f64 {
        *self.knots.last().expect("spline has knots")
    }

    pub(crate) fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub(crate) fn derivs(&self, t: f64) -> [Complex64; 3] {
        let period = self.period();
        let t = t.rem_euclid(period);
        let seg = self
            .knots
            .partition_point(|&k| k <= t)
            .saturating_sub(1)
            .min(self.knots.len() - 2);
        let (u0, u1) = (self.knots[seg], self.knots[seg + 1]);
        let h = u1 - u0;
        let (a, b) = (u1 - t, t - u0);
        let (m0, m1) = (self.second[seg], self.second[seg + 1]);
        let (p0, p1) = (self.values[seg], self.values[seg + 1]);
        let c0 = p0 / h - m0 * (h / 6.0);
        let c1 = p1 / h - m1 * (h / 6.0);
        let z = m0 * (a * a * a / (6.0 * h)) + m1 * (b * b * b / (6.0 * h)) + c0 * a + c1 * b;
        let dz = -m0 * (a * a / (2.0 * h)) + m1 * (b * b / (2.0 * h)) - c0 + c1;
        let ddz = m0 * (a / h) + m1 * (b / h);
        [z, dz, ddz]
    }
}

fn solve_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[Complex64]) -> Vec<Complex64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![Complex64::new(0.0, 0.0); n];
    c[0] = sup[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let m = diag[i] - sub[i] * c[i - 1];
        c[i] = sup[i] / m;
        d[i] = (rhs[i] - sub[i] * d[i - 1]) / m;
    }
    let mut x = d;
    for i in (0..n - 1).rev() {
        let next = x[i + 1];
        x[i] -= c[i] * next;
    }
    x
}

/// Solves a tridiagonal system with periodic corners (`sub[0]` couples row 0 to
/// the last unknown, `sup[n-1]` couples the last row to the first) using the
/// Sherman–Morrison correction.
fn solve_cyclic_tridiagonal(
    sub: &[f64],
    diag: &[f64],
    sup: &[f64],
    rhs: &[Complex64],
) -> Vec<Complex64> {
    let n = diag.len();
    let beta = sub[0];
    let alpha = sup[n - 1];
    let gamma = -diag[0];
    let mut bb = diag.to_vec();
    bb[0] = diag[0] - gamma;
    bb[n - 1] = diag[n - 1] - alpha * beta / gamma;
    let x = solve_tridiagonal(sub, &bb, sup, rhs);
    let mut u = vec![Complex64::new(0.0, 0.0); n];
    u[0] = Complex64::new(gamma, 0.0);
    u[n - 1] = Complex64::new(alpha, 0.0);
    let z = solve_tridiagonal(sub, &bb, sup, &u);
    let fact = (x[0] + x[n - 1] * (beta / gamma)) / (1.0 + z[0] + z[n - 1] * (beta / gamma));
    x.iter().zip(&z).map(|(&xi, &zi)| xi - fact * zi).collect()
}

#[derive(Clone, Debug)]
pub(crate) enum Interpolant {
    Trig(TrigSeries),
    Spline(PeriodicSpline),
}

impl Interpolant {
    pub(crate) fn period(&self) -> f64 {
        match self {
            Interpolant::Trig(_) => TAU,
            Interpolant::Spline(s) => s.period(),
        }
    }

    pub(crate) fn derivs(&self, t: f64) -> [Complex64; 3] {
        match self {
            Interpolant::Trig(s) => s.derivs(t),
            Interpolant::Spline(s) => s.derivs(t),
        }
    }

    /// Panel breakpoints for arc-length quadrature.
    pub(crate) fn quadrature_breaks(&self) -> Vec<f64> {
        match self {
            Interpolant::Trig(s) => {
                let panels = (8 * s.max_frequency()).max(64);
                (0..=panels).map(|p| TAU * p as f64 / panels as f64).collect()
            }
            Interpolant::Spline(s) => {
                let k = s.knots();
                let mut out = Vec::with_capacity(2 * k.len());
                for w in k.windows(2) {
                    out.push(w[0]);
                    out.push(0.5 * (w[0] + w[1]));
                }
                out.push(*k.last().unwrap());
                out
            }
        }
    }
}
