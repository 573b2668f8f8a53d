//! Harmonic extension `w = P[F]` of boundary data on the unit circle.
//!
//! A [`HarmonicMap`] stores the two-sided Fourier coefficients of its boundary
//! values, `w(z) = Σ_{n≥0} c_n zⁿ + Σ_{n<0} c_n z̄^{|n|}`, so derivatives and the
//! boundary radial derivative are term-wise operations. Direct Poisson
//! quadrature ([`poisson_quadrature`]) is kept as an independent route.

use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{dft, JordanCurve, COEFF_TRIM};

pub const DEFAULT_SAMPLES: usize = 1024;
pub const MIN_SAMPLES: usize = 64;
/// Relative size above which near-Nyquist coefficients signal under-resolution.
pub const ALIAS_THRESHOLD: f64 = 1e-8;
/// Relative size of the `Σ |n c_n|` tail allowed for boundary differentiation.
pub const BOUNDARY_TAIL_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HarmonicError {
    #[error("radius {0} is outside [0, 1)")]
    InvalidRadius(f64),
    #[error("sample count {0} must be a power of two ≥ {MIN_SAMPLES}")]
    InvalidSampleCount(usize),
    #[error("boundary data under-resolved: |c_{mode}| / max |c_n| = {ratio:e}")]
    AliasWarning { mode: i64, ratio: f64 },
    #[error("boundary derivative not admissible: relative tail of Σ|n c_n| is {tail:e}")]
    BoundaryDivergence { tail: f64 },
    #[error("boundary correspondence is not a homeomorphism: {0}")]
    NotHomeomorphism(String),
}

/// Poisson kernel `P(r, x) = (1 - r²) / (2π (1 - 2r cos x + r²))`.
pub fn poisson_kernel(r: f64, x: f64) -> Result<f64, HarmonicError> {
    if !(0.0..1.0).contains(&r) {
        return Err(HarmonicError::InvalidRadius(r));
    }
    Ok((1.0 - r * r) / (TAU * (1.0 - 2.0 * r * x.cos() + r * r)))
}

/// Trapezoid-rule Poisson integral of `boundary` at `z` with `nodes` nodes.
pub fn poisson_quadrature<F>(boundary: F, z: Complex64, nodes: usize) -> Result<Complex64, HarmonicError>
where
    F: Fn(f64) -> Complex64,
{
    let (r, phi) = z.to_polar();
    let h = TAU / nodes as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..nodes {
        let x = h * k as f64;
        acc += poisson_kernel(r, x - phi)? * boundary(x);
    }
    Ok(acc * h)
}

/// Degree-one, orientation-preserving phase `θ ↦ s(θ)` onto the target curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PhaseMap {
    /// `s = L (θ + offset) / 2π`.
    Uniform {
        #[serde(default)]
        offset: f64,
    },
    /// The curve's own interpolation parameter, rescaled to `[0, 2π)`.
    Native {
        #[serde(default)]
        offset: f64,
    },
    /// `s = L (θ + offset + amplitude·sin(frequency·θ)) / 2π`.
    PerturbedUniform {
        amplitude: f64,
        frequency: u32,
        #[serde(default)]
        offset: f64,
    },
    /// Monotone C¹ (Fritsch–Butland) interpolation of `(θ_i, s_i)` with
    /// `s(θ + 2π) = s(θ) + L`.
    Tabulated { theta: Vec<f64>, s: Vec<f64> },
}

impl PhaseMap {
    pub fn validate(&self, length: f64) -> Result<(), HarmonicError> {
        let bad = |m: String| Err(HarmonicError::NotHomeomorphism(m));
        match self {
            PhaseMap::Uniform { .. } | PhaseMap::Native { .. } => Ok(()),
            PhaseMap::PerturbedUniform { amplitude, frequency, .. } => {
                if *frequency == 0 {
                    return bad("perturbation frequency must be at least 1".into());
                }
                if (amplitude * *frequency as f64).abs() >= 1.0 {
                    return bad(format!("|amplitude·frequency| = {} ≥ 1", (amplitude * *frequency as f64).abs()));
                }
                Ok(())
            }
            PhaseMap::Tabulated { theta, s } => {
                if theta.len() != s.len() || theta.len() < 2 {
                    return bad("tabulated phase needs matching theta/s lists of length ≥ 2".into());
                }
                if theta[0] < 0.0 || *theta.last().unwrap() >= TAU {
                    return bad("theta knots must lie in [0, 2π)".into());
                }
                if theta.windows(2).any(|w| w[1] <= w[0]) {
                    return bad("theta knots are not strictly increasing".into());
                }
                if s.windows(2).any(|w| w[1] <= w[0]) {
                    return bad("s values are not strictly increasing".into());
                }
                if s.last().unwrap() - s[0] >= length {
                    return bad("s values wrap more than once around the curve".into());
                }
                Ok(())
            }
        }
    }

    /// Arc length `s(θ)` (not reduced modulo `L`).
    pub fn arclength(&self, curve: &JordanCurve, theta: f64) -> f64 {
        let len = curve.length();
        match self {
            PhaseMap::Uniform { offset } => len * (theta + offset) / TAU,
            PhaseMap::Native { offset } => {
                let t = curve.period() * (theta + offset) / TAU;
                let turns = (t / curve.period()).floor();
                curve.arclength_at_param(t) + turns * len
            }
            PhaseMap::PerturbedUniform { amplitude, frequency, offset } => {
                len * (theta + offset + amplitude * (*frequency as f64 * theta).sin()) / TAU
            }
            PhaseMap::Tabulated { theta: knots, s } => tabulated(knots, s, len, theta),
        }
    }

    /// `F(e^{iθ}) = g(s(θ))`.
    pub fn boundary_point(&self, curve: &JordanCurve, theta: f64) -> Complex64 {
        match self {
            PhaseMap::Native { offset } => curve.derivs(curve.period() * (theta + offset) / TAU)[0],
            _ => curve.position(self.arclength(curve, theta)),
        }
    }
}

fn tabulated(knots: &[f64], s: &[f64], len: f64, theta: f64) -> f64 {
    let n = knots.len();
    let turns = ((theta - knots[0]) / TAU).floor();
    let x = theta - turns * TAU;
    let node = |i: usize| -> (f64, f64) {
        let (q, r) = (i / n, i % n);
        (knots[r] + q as f64 * TAU, s[r] + q as f64 * len)
    };
    let secant = |i: usize| {
        let (x0, y0) = node(i);
        let (x1, y1) = node(i + 1);
        (x1 - x0, (y1 - y0) / (x1 - x0))
    };
    let slope = |i: usize| {
        let (h0, d0) = secant(i + n - 1);
        let (h1, d1) = secant(i);
        3.0 * (h0 + h1) / ((2.0 * h1 + h0) / d0 + (h1 + 2.0 * h0) / d1)
    };
    let i = (0..n).rev().find(|&i| node(i).0 <= x).unwrap_or(0);
    let (x0, y0) = node(i);
    let (x1, y1) = node(i + 1);
    let h = x1 - x0;
    let u = (x - x0) / h;
    let (m0, m1) = (slope(i), slope(i + 1));
    let h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
    let h10 = u * (1.0 - u) * (1.0 - u);
    let h01 = u * u * (3.0 - 2.0 * u);
    let h11 = u * u * (u - 1.0);
    h00 * y0 + h10 * h * m0 + h01 * y1 + h11 * h * m1 + turns * len
}

/// Boundary data `F = g ∘ s` sampled at `N` equispaced angles.
#[derive(Clone, Debug)]
pub struct BoundaryCorrespondence {
    curve: Arc<JordanCurve>,
    phase: PhaseMap,
    samples: Vec<Complex64>,
}

impl BoundaryCorrespondence {
    pub fn new(curve: impl Into<Arc<JordanCurve>>, phase: PhaseMap, n: usize) -> Result<Self, HarmonicError> {
        let curve = curve.into();
        phase.validate(curve.length())?;
        let samples = (0..n)
            .map(|j| phase.boundary_point(&curve, TAU * j as f64 / n as f64))
            .collect();
        Ok(Self { curve, phase, samples })
    }

    pub fn curve(&self) -> &JordanCurve {
        &self.curve
    }

    pub fn phase(&self) -> &PhaseMap {
        &self.phase
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    /// Exact boundary value off the sample grid.
    pub fn value_at(&self, theta: f64) -> Complex64 {
        self.phase.boundary_point(&self.curve, theta)
    }

    pub fn arclength_at(&self, theta: f64) -> f64 {
        self.phase.arclength(&self.curve, theta)
    }
}

/// `w_z`, `w_z̄` and the derived norms at one point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GradientSample {
    pub z: Complex64,
    pub wz: Complex64,
    pub wzbar: Complex64,
    /// `|∇w| = |w_z| + |w_z̄|`.
    pub grad_norm: f64,
    /// `l(∇w) = ||w_z| - |w_z̄||`.
    pub l_norm: f64,
    /// `J = |w_z|² - |w_z̄|²`.
    pub jacobian: f64,
}

impl GradientSample {
    fn new(z: Complex64, wz: Complex64, wzbar: Complex64) -> Self {
        let (a, b) = (wz.norm(), wzbar.norm());
        Self {
            z,
            wz,
            wzbar,
            grad_norm: a + b,
            l_norm: (a - b).abs(),
            jacobian: wz.norm_sqr() - wzbar.norm_sqr(),
        }
    }

    /// Beltrami magnitude `|w_z̄ / w_z|`.
    pub fn beltrami(&self) -> f64 {
        self.wzbar.norm() / self.wz.norm()
    }
}

/// Harmonic map of the disk as a two-sided power series.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicMap {
    n_samples: usize,
    /// `c_n`, `n = 0..=N/2`.
    analytic: Vec<Complex64>,
    /// `c_{-m}`, `m = 0..N/2`; index 0 is unused and zero.
    anti: Vec<Complex64>,
    analytic_len: usize,
    anti_len: usize,
    boundary_tail: f64,
    alias: Option<(i64, f64)>,
}

/// Horner evaluation of `(Σ a_k u^k, Σ k a_k u^{k-1})`.
fn horner(a: &[Complex64], u: Complex64) -> (Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    let (mut p, mut dp) = (zero, zero);
    for &c in a.iter().rev() {
        dp = dp * u + p;
        p = p * u + c;
    }
    (p, dp)
}

impl HarmonicMap {
    /// Harmonic extension of equispaced boundary samples by discrete Fourier
    /// analysis, without resolution checks.
    pub fn from_samples(samples: &[Complex64]) -> Self {
        let n = samples.len();
        let c = dft(samples);
        let coeffs = c.iter().enumerate().map(|(k, &ck)| {
            let mode = if 2 * k <= n { k as i64 } else { k as i64 - n as i64 };
            (mode, ck)
        });
        Self::from_coefficients(n, coeffs)
    }

    /// Builds a map from `(n, c_n)` pairs with `-N/2 < n ≤ N/2`.
    ///
    /// # Panics
    /// If a mode lies outside that band.
    pub fn from_coefficients(n_samples: usize, coeffs: impl IntoIterator<Item = (i64, Complex64)>) -> Self {
        let half = (n_samples / 2) as i64;
        let zero = Complex64::new(0.0, 0.0);
        let mut analytic = vec![zero; half as usize + 1];
        let mut anti = vec![zero; half as usize];
        for (mode, c) in coeffs {
            assert!(mode > -half && mode <= half, "mode {mode} outside band of N = {n_samples}");
            if mode >= 0 {
                analytic[mode as usize] += c;
            } else {
                anti[(-mode) as usize] += c;
            }
        }
        let max = analytic.iter().chain(anti.iter()).map(|c| c.norm()).fold(0.0, f64::max);
        let floor = COEFF_TRIM * max;
        let used = |v: &[Complex64]| v.iter().rposition(|c| c.norm() > floor).map_or(1, |i| i + 1);
        let analytic_len = used(&analytic);
        let anti_len = used(&anti);

        let weighted = |m: usize, c: &Complex64| m as f64 * c.norm();
        let total: f64 = analytic.iter().enumerate().chain(anti.iter().enumerate()).map(|(m, c)| weighted(m, c)).sum();
        let cut = (n_samples / 4).max(1);
        let tail: f64 = analytic
            .iter()
            .enumerate()
            .chain(anti.iter().enumerate())
            .filter(|(m, _)| *m >= cut)
            .map(|(m, c)| weighted(m, c))
            .sum();
        let boundary_tail = if total > 0.0 { tail / total } else { 0.0 };

        let near = (3 * n_samples / 8).max(1);
        let alias = analytic
            .iter()
            .enumerate()
            .map(|(m, c)| (m as i64, c))
            .chain(anti.iter().enumerate().map(|(m, c)| (-(m as i64), c)))
            .filter(|(m, _)| m.unsigned_abs() as usize >= near)
            .map(|(m, c)| (m, if max > 0.0 { c.norm() / max } else { 0.0 }))
            .max_by(|a, b| a.1.total_cmp(&b.1));

        Self { n_samples, analytic, anti, analytic_len, anti_len, boundary_tail, alias }
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    /// `(n, c_n)` for every mode of the band, `-N/2 < n ≤ N/2`.
    pub fn coefficients(&self) -> Vec<(i64, Complex64)> {
        let mut out: Vec<(i64, Complex64)> =
            self.anti.iter().enumerate().skip(1).rev().map(|(m, &c)| (-(m as i64), c)).collect();
        out.extend(self.analytic.iter().enumerate().map(|(m, &c)| (m as i64, c)));
        out
    }

    pub fn coefficient(&self, n: i64) -> Complex64 {
        let zero = Complex64::new(0.0, 0.0);
        if n >= 0 {
            self.analytic.get(n as usize).copied().unwrap_or(zero)
        } else {
            self.anti.get((-n) as usize).copied().unwrap_or(zero)
        }
    }

    /// `a₀ = w(0) = c₀`.
    pub fn base_value(&self) -> Complex64 {
        self.analytic[0]
    }

    /// Relative tail `Σ_{|n|≥N/4} |n c_n| / Σ |n c_n|`.
    pub fn boundary_tail(&self) -> f64 {
        self.boundary_tail
    }

    pub fn boundary_admissible(&self) -> bool {
        self.boundary_tail < BOUNDARY_TAIL_THRESHOLD
    }

    fn require_boundary(&self) -> Result<(), HarmonicError> {
        if self.boundary_admissible() {
            Ok(())
        } else {
            Err(HarmonicError::BoundaryDivergence { tail: self.boundary_tail })
        }
    }

    /// Largest near-Nyquist coefficient relative to the largest overall.
    pub fn alias_ratio(&self) -> Option<(i64, f64)> {
        self.alias
    }

    fn analytic_part(&self) -> &[Complex64] {
        &self.analytic[..self.analytic_len]
    }

    fn anti_part(&self) -> &[Complex64] {
        &self.anti[..self.anti_len]
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let (p, _) = horner(self.analytic_part(), z);
        let (q, _) = horner(self.anti_part(), z.conj());
        p + q
    }

    /// `(w, w_z, w_z̄)` without the boundary admissibility check.
    pub(crate) fn jet(&self, z: Complex64) -> (Complex64, Complex64, Complex64) {
        let (p, dp) = horner(self.analytic_part(), z);
        let (q, dq) = horner(self.anti_part(), z.conj());
        (p + q, dp, dq)
    }

    pub fn gradient(&self, z: Complex64) -> Result<GradientSample, HarmonicError> {
        if z.norm() >= 1.0 - 1e-12 {
            self.require_boundary()?;
        }
        let (_, wz, wzbar) = self.jet(z);
        Ok(GradientSample::new(z, wz, wzbar))
    }

    /// `∂w/∂r (e^{iθ}) = Σ |n| c_n e^{inθ}`.
    pub fn radial_derivative(&self, theta: f64) -> Result<Complex64, HarmonicError> {
        self.require_boundary()?;
        let z = Complex64::from_polar(1.0, theta);
        let (_, wz, wzbar) = self.jet(z);
        Ok(z * wz + z.conj() * wzbar)
    }

    /// `∂w/∂θ (e^{iθ}) = i Σ n c_n e^{inθ}`.
    pub fn boundary_tangent(&self, theta: f64) -> Result<Complex64, HarmonicError> {
        self.require_boundary()?;
        let z = Complex64::from_polar(1.0, theta);
        let (_, wz, wzbar) = self.jet(z);
        Ok(Complex64::new(0.0, 1.0) * (z * wz - z.conj() * wzbar))
    }

    /// `[[n, Re c_n, Im c_n], ...]`.
    pub fn to_dump(&self) -> Vec<(i64, f64, f64)> {
        self.coefficients().into_iter().map(|(n, c)| (n, c.re, c.im)).collect()
    }

    pub fn from_dump(n_samples: usize, rows: &[(i64, f64, f64)]) -> Self {
        Self::from_coefficients(n_samples, rows.iter().map(|&(n, re, im)| (n, Complex64::new(re, im))))
    }
}

/// `w = P[F]` for the correspondence sampled at `n` points.
pub fn poisson_extend(corr: &BoundaryCorrespondence, n: usize) -> Result<HarmonicMap, HarmonicError> {
    if n < MIN_SAMPLES || !n.is_power_of_two() {
        return Err(HarmonicError::InvalidSampleCount(n));
    }
    let samples: Vec<Complex64> = if corr.samples().len() == n {
        corr.samples().to_vec()
    } else {
        (0..n).map(|j| corr.value_at(TAU * j as f64 / n as f64)).collect()
    };
    let map = HarmonicMap::from_samples(&samples);
    if let Some((mode, ratio)) = map.alias_ratio() {
        if ratio > ALIAS_THRESHOLD {
            return Err(HarmonicError::AliasWarning { mode, ratio });
        }
    }
    Ok(map)
}

/// Exact `P[F]` oracle for a correspondence: trapezoid quadrature with `4N`
/// nodes of the true boundary function.
pub fn poisson_oracle(corr: &BoundaryCorrespondence, n: usize) -> impl Fn(Complex64) -> Result<Complex64, HarmonicError> + '_ {
    let nodes = 4 * n;
    let values: Vec<Complex64> = (0..nodes).map(|k| corr.value_at(TAU * k as f64 / nodes as f64)).collect();
    move |z| {
        let h = TAU / nodes as f64;
        poisson_quadrature(|x| values[((x / h).round() as usize) % nodes], z, nodes)
    }
}
