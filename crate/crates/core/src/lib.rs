//! Numerical laboratory for quasiconformal harmonic maps of the unit disk onto
//! Jordan domains with `C^{1,1}` boundary.
//!
//! The crate builds the objects that appear in the bi-Lipschitz argument for
//! such maps and checks every inequality of the chain on concrete examples:
//!
//! * [`curve`]: periodic interpolation of a Jordan curve, arc length, curvature,
//!   reach, and the distance function with its gradient and Hessian.
//! * [`harmonic`]: harmonic extension `w = P[F]` of boundary data, stored as a
//!   two-sided Fourier series with exact derivatives.
//! * [`qc`]: dilatation, Jacobian positivity on the circle, and Möbius
//!   normalization.
//! * [`barrier`]: `χ = -d(w)`, the gradient sandwich, the Laplacian of `χ`, and the
//!   exponential barrier `φ_w` with its subharmonicity audit.
//! * [`lipschitz`]: `ρ`, the Hopf constant, the boundary radial-derivative bound,
//!   the interior co-Lipschitz extension and empirical bi-Lipschitz sampling.
//! * [`scenario`]: configuration-driven runner and artifact writers.

pub mod barrier;
pub mod curve;
pub mod grid;
pub mod harmonic;
pub mod lipschitz;
pub mod qc;
pub(crate) mod quad;
pub mod scenario;

pub use num_complex::Complex64;

pub use barrier::{BarrierAudit, BarrierError, BarrierSpec};
pub use curve::{CurveKind, CurvePoint, DistanceField, GeometryError, JordanCurve};
pub use grid::PolarGrid;
pub use harmonic::{BoundaryCorrespondence, GradientSample, HarmonicError, HarmonicMap, PhaseMap};
pub use lipschitz::{CertifyError, HopfCertificate, LipschitzReport};
pub use qc::{DiffeoCertificate, Mobius, QcError, QcProfile};
pub use scenario::{RunReport, Scenario};
