//! Numerical tolerances shared across the crate.

/// Construction slack on Bloch vector norms, so analytically unit vectors
/// survive floating-point round trips.
pub const EPS_NORM: f64 = 1e-12;

/// Residual tolerance certifying an interior Fermat-Torricelli point.
pub const FT_TOL: f64 = 1e-10;

/// Loose residual tolerance; iterates worse than this are a convergence failure.
pub const FT_TOL_LOOSE: f64 = 1e-7;

/// Two points closer than this are treated as coincident.
pub const EPS_COINCIDE: f64 = 1e-12;

/// Angular tolerance for perpendicularity tests, via |dot| / (norm product).
pub const ANG_TOL: f64 = 1e-9;

/// Coplanarity residual tolerance.
pub const PLANE_TOL: f64 = 1e-9;

/// Iteration cap for the Weiszfeld loop.
pub const MAX_ITER: usize = 100_000;

/// Tolerance on joint-measurability margins.
pub const JM_TOL: f64 = 1e-9;

/// Looser margin tolerance for oracle-produced triples.
pub const JM_TOL_ORACLE: f64 = 1e-7;

/// Tolerance on the |k1|+|k2| coplanar case boundary.
pub const CASE_TOL: f64 = 1e-9;

/// Condition-number cap for the coplanar coefficient solve.
pub const COND_MAX: f64 = 1e8;
