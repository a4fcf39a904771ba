//! Numerical tolerances and thresholds, collected in one place.
//!
//! Each constant documents why its value is what it is; code elsewhere must
//! not restate these numbers inline.

/// Pure-state coefficients must satisfy `|sum |c_n|^2 - 1| <= UNIT_NORM_TOL`.
/// At double precision a freshly normalized vector lands within a few ulps,
/// so 1e-12 admits every honestly normalized input while rejecting typos.
pub const UNIT_NORM_TOL: f64 = 1e-12;

/// Hand-written superposition coefficients in state files may carry decimal
/// rounding (e.g. `0.7071067811865476`); accept them when the squared norm is
/// within 1e-6 of one, then renormalize exactly.
pub const SUPERPOSITION_NORM_TOL: f64 = 1e-6;

/// Mixture weights must sum to 1 within this bound, after which they are
/// renormalized exactly.
pub const WEIGHT_SUM_TOL: f64 = 1e-9;

/// Probability vectors sum to 1 within this bound at construction.
pub const DIST_SUM_TOL: f64 = 1e-9;

/// Bin probabilities come from quadrature: their raw sum may deviate from
/// one by the density normalization error ([`PARSEVAL_TOL`]) plus a dropped
/// sub-limit residual ([`BIN_RESIDUAL_LIMIT`]). Within this window they are
/// renormalized exactly; beyond it the binning is rejected.
pub const BIN_MASS_TOL: f64 = 3e-6;

/// The residual mass a partition may leave uncovered before a catch-all
/// outer bin is appended to keep the vector a true probability vector.
pub const BIN_RESIDUAL_LIMIT: f64 = 1e-6;

/// The squared transform field must integrate to 1 within this bound on an
/// adequate grid; a larger deviation signals unresolved oscillations.
pub const PARSEVAL_TOL: f64 = 2e-6;

/// Density samples may exceed the exact bound `(2 pi)^{-1}` only by
/// quadrature noise.
pub const DENSITY_BOUND_SLACK: f64 = 1e-9;

/// Default slack when deciding whether an inequality margin counts as a
/// violation: quadrature noise in the entropies stays far below this.
pub const MARGIN_TOL: f64 = 1e-5;

/// Tolerance for the tracing identities connecting density moments with
/// number-basis moments.
pub const TRACING_TOL: f64 = 1e-4;

/// For orders `alpha < 1` the grid must be large enough that the envelope
/// estimate of `integral of w^alpha` outside the grid stays below this.
pub const TAIL_MASS_LIMIT: f64 = 1e-10;

/// Envelope estimate of the second-moment mass outside the grid must stay
/// below this before density moments are trusted (budget: a hundredth of
/// `TRACING_TOL`).
pub const MOMENT_TAIL_LIMIT: f64 = 1e-6;

/// Probabilities below this are treated as exact zeros inside entropy sums,
/// so `0^alpha = 0` holds even for tiny negative rounding survivors.
pub const ZERO_PROB: f64 = 1e-300;

/// `|c_N|^2` above this flags truncation edge effects in moment evaluation.
pub const EDGE_MASS_LIMIT: f64 = 1e-8;

/// Largest truncation accepted by the entropy-sum minimizer (runtime budget).
pub const MINIMIZE_TRUNCATION_LIMIT: usize = 30;

/// Absolute step bound of the trapezoid quadrature behind the transform.
pub const QUAD_STEP_MAX: f64 = 0.02;

/// Hermite functions are below 1e-18 this far past their classical turning
/// point, so quadrature windows padded by this amount lose nothing at double
/// precision.
pub const SUPPORT_PAD: f64 = 9.0;
