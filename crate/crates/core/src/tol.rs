//! Numerical thresholds shared by every module.

/// Hyperbolic distance below which two points count as the same point.
pub const EPS_DEG: f64 = 1e-9;

/// Slack on `|tr| - 2` when classifying isometries.
pub const EPS_ELL: f64 = 1e-9;

/// Determinant drift tolerated before a matrix is renormalized.
pub const DET_DRIFT: f64 = 1e-12;

/// Smallest admissible imaginary part of a point.
pub const MIN_Y: f64 = 1e-15;

/// Tolerance for the relator and generator angles of a representation.
pub const REP: f64 = 1e-9;

/// Tolerance for volume identities.
pub const VOLUME: f64 = 1e-7;

/// Tolerance for interior angle laws of a chain.
pub const CHAIN_ANGLE: f64 = 1e-8;

/// Relative area below which a point counts as near the polytope boundary.
pub const BOUNDARY_FRACTION: f64 = 1e-3;
