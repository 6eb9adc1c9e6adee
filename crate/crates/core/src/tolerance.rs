//! Numerical tolerances shared across the geometric modules.
//!
//! The combinatorial modules (`census`, `epimorphism`, `handlebody`) never
//! touch floating point and do not use these.

/// Matrix equality: min over the sign of the entrywise max-norm difference.
pub const MATRIX_EQ: f64 = 1e-9;

/// Width of the band around `trace^2 = 4` where classification refuses to
/// decide between parabolic and elliptic/loxodromic.
pub const PARABOLIC_BAND: f64 = 1e-9;

/// Below this distance from 4 the trace square is taken to be exactly 4.
pub const PARABOLIC_EXACT: f64 = 1e-12;

/// Snap distance for recovering a rational rotation angle.
pub const ORDER_SNAP: f64 = 1e-7;

/// Default bound on the orders searched when snapping rotation angles. The
/// search goes up to `2 * DEFAULT_N_MAX`.
pub const DEFAULT_N_MAX: u32 = 64;

/// Tolerance for a point being fixed by a map (chordal metric).
pub const FIXED_POINT: f64 = 1e-9;

/// Closed-region membership slack used when checking images of boundary
/// samples, which land exactly on region boundaries.
pub const BOUNDARY_SLACK: f64 = 1e-9;

/// Default sample count per circle or arc for certificates.
pub const DEFAULT_SAMPLES: usize = 512;

/// Default strict margin for certificates.
pub const DEFAULT_MARGIN: f64 = 1e-6;
