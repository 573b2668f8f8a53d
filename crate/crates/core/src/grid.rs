//! Polar sampling grids on the closed unit disk.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A radial × angular grid. Radii are clustered toward `|z| = 1` with a sine
/// (Chebyshev-type) spacing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarGrid {
    pub radial: usize,
    pub angular: usize,
}

impl PolarGrid {
    pub const fn new(radial: usize, angular: usize) -> Self {
        Self { radial, angular }
    }

    pub fn doubled(&self) -> Self {
        Self::new(self.radial * 2, self.angular * 2)
    }

    /// Radii `sin(π i / 2R)`, `i = 1..=R`; the last ring is the unit circle.
    pub fn closed_radii(&self) -> Vec<f64> {
        let r = self.radial as f64;
        (1..=self.radial)
            .map(|i| if i == self.radial { 1.0 } else { (FRAC_PI_2 * i as f64 / r).sin() })
            .collect()
    }

    /// Radii `sin(π i / 2(R+1))`, `i = 1..=R`, all strictly inside the disk.
    pub fn open_radii(&self) -> Vec<f64> {
        let r = self.radial as f64 + 1.0;
        (1..=self.radial)
            .map(|i| (FRAC_PI_2 * i as f64 / r).sin())
            .collect()
    }

    pub fn angles(&self) -> Vec<f64> {
        let a = self.angular as f64;
        (0..self.angular).map(|j| TAU * j as f64 / a).collect()
    }

    /// Center plus every ring of [`closed_radii`](Self::closed_radii).
    pub fn closed_points(&self) -> Vec<Complex64> {
        let mut pts = vec![Complex64::new(0.0, 0.0)];
        pts.extend(self.ring_points(&self.closed_radii()));
        pts
    }

    pub fn open_points(&self) -> Vec<Complex64> {
        self.ring_points(&self.open_radii())
    }

    pub fn boundary_points(&self) -> Vec<Complex64> {
        self.angles().into_iter().map(|t| Complex64::from_polar(1.0, t)).collect()
    }

    fn ring_points(&self, radii: &[f64]) -> Vec<Complex64> {
        let angles = self.angles();
        radii
            .iter()
            .flat_map(|&r| angles.iter().map(move |&t| Complex64::from_polar(r, t)))
            .collect()
    }
}

impl std::fmt::Display for PolarGrid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}", self.radial, self.angular)
    }
}

impl std::str::FromStr for PolarGrid {
    type Err = String;

    /// Parses `RxA` (also accepts `×` or `X` as the separator).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(['x', 'X', '×']).collect();
        if parts.len() != 2 {
            return Err(format!("expected RxA, got {s:?}"));
        }
        let parse = |p: &str| p.trim().parse::<usize>().map_err(|e| format!("{p:?}: {e}"));
        Ok(Self::new(parse(parts[0])?, parse(parts[1])?))
    }
}
