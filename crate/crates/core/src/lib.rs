//! Numerical toolkit for entropic uncertainty between the photon-number
//! statistics of a bosonic mode and a joint phase-space measurement built
//! from an ancilla oscillator prepared in Fock state `n0`.
//!
//! A pure signal state `f = sum_n c_n phi_n` (Hermite-function basis, at most
//! `N+1` coefficients) is mapped to a complex field on the `(xi, k)` plane,
//!
//! ```text
//! f~(xi, k) = (2 pi)^{-1/2} e^{i k xi / 2} Int f(x) phi_{n0}(xi - x) e^{-i k x} dx,
//! ```
//!
//! whose squared modulus `w = |f~|^2` is a probability density normalized to
//! one. Alongside it the discrete distribution `s_n = |c_n|^2` captures the
//! number measurement. The crate computes both, together with the entropic
//! and norm functionals that tie them:
//!
//! * Renyi entropies `R_a` and Tsallis entropies `H_a` of `s`, of `w`, and of
//!   binned versions `r` of `w` ([`entropy`], [`probability`]);
//! * the norm inequalities `||w||_a <= eta^{2(1-b)/b} ||s||_b` (and with the
//!   roles of `w` and `s` exchanged) for conjugate orders `1/a + 1/b = 2`,
//!   where `eta = sup_n sup_{xi,k} |phi~_n| <= (2 pi)^{-1/2}` ([`relations`]);
//! * the uncertainty sums `R_a(w) + R_b(s) >= ln 2 pi` and
//!   `H_a(w) + H_b(s) >= ln_mu 2 pi` with `mu = max(a, b)`, plus binned
//!   variants with bound `ln(2 pi / (dxi dk))` ([`relations`]);
//! * first and second moments of both measurements and the tracing
//!   identities that connect them, e.g. `var_Q = var_q + n0 + 1/2`
//!   ([`moments`]).
//!
//! Everything is deterministic: fixed summation orders, seeded generators,
//! and reproducible quadratures. See the `nxent` command-line binary for a
//! file-driven interface.

#![forbid(unsafe_code)]

pub mod basis;
pub mod entropy;
pub mod export;
pub mod moments;
pub mod probability;
pub mod relations;
pub mod states;
pub mod tolerances;
pub mod transform;

use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} must be finite")]
    NonFinite(&'static str),
    #[error("{0} must not be empty")]
    Empty(&'static str),
    #[error("fock index {n} exceeds truncation {n_trunc}")]
    FockIndex { n: usize, n_trunc: usize },
    #[error("coefficient norm^2 = {norm_sq:.17e} is not 1 within {tol:e}")]
    NotNormalized { norm_sq: f64, tol: f64 },
    #[error(
        "coherent amplitude too large for the truncation: |a|^2 = {nbar:.6} > N/4 = {limit:.6}; \
         use a truncation of at least {suggested}"
    )]
    CoherentTruncation {
        nbar: f64,
        limit: f64,
        suggested: usize,
    },
    #[error("mixture weight {0} is not positive")]
    WeightSign(f64),
    #[error("mixture weights sum to {sum:.12}, expected 1 within {tol:e}")]
    WeightSum { sum: f64, tol: f64 },
    #[error("state spec: {0}")]
    StateSpec(String),
    #[error("grid: {0}")]
    Grid(&'static str),
    #[error(
        "grid extent {got:.3} too small for this state: need |xi| and |k| covered up to {required:.3}"
    )]
    GridExtent { required: f64, got: f64 },
    #[error(
        "grid cannot resolve the field: the squared field integrates to {norm:.8} \
         (expected 1 within {tol:e}); increase the point count"
    )]
    GridResolution { norm: f64, tol: f64 },
    #[error("density: {0}")]
    Density(String),
    #[error("distribution sums to {sum:.12}, expected 1 within {tol:e}")]
    DistSum { sum: f64, tol: f64 },
    #[error("distribution entry {0:e} is not a probability")]
    DistEntry(f64),
    #[error("entropy order must be positive and finite, got {0}")]
    OrderDomain(f64),
    #[error("alpha-logarithm argument must be positive, got {0}")]
    LogDomain(f64),
    #[error("conjugate order must exceed 1/2, got {0}")]
    ConjugateDomain(f64),
    #[error("eta must satisfy 0 < eta^2 < 1, got eta = {0}")]
    EtaDomain(f64),
    #[error("partition: {0}")]
    Partition(&'static str),
    #[error("bins cover mass {sum:.12}, expected 1 within {tol:e}")]
    BinMass { sum: f64, tol: f64 },
    #[error(
        "tail control failed at order {alpha}: the envelope estimate of the mass outside \
         the grid is {estimate:.3e} > {limit:.1e}; use a grid extent of at least {suggested:.2}"
    )]
    TailControl {
        alpha: f64,
        estimate: f64,
        limit: f64,
        suggested: f64,
    },
    #[error("truncation {n_trunc} exceeds the supported budget {limit}")]
    TruncationBudget { n_trunc: usize, limit: usize },
    #[error("serialization: {0}")]
    Serialize(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// `(2 pi)^{-1/2}`, the universal sup-norm bound of the transform kernel.
pub const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_677_939_946_059_934;

/// `ln(2 pi)`, the bound of the continuous Renyi uncertainty sum.
pub const LN_2PI: f64 = 1.837_877_066_409_345_483_560_659_472_811;

/// `(2 pi)^{-1}`, the universal pointwise bound of the joint density.
pub const INV_2PI: f64 = 0.159_154_943_091_895_335_768_883_763_372_514;

pub use moments::{check_tracing, density_moments, fock_moments, DensityMoments, MomentSet};
pub use probability::{
    bin_probs, number_dist, BinPartition, BinnedDist, DiscreteDist, PartitionSpec,
};
pub use relations::{
    binned_reports, check_binned_relations, check_renyi_relation, check_riesz,
    check_tsallis_relation, conjugate, minimize_entropy_sum, renyi_reports, tsallis_min_oracle,
    tsallis_reports, ConjugatePair, MinimizeOptions, NamedValue, RelationReport, Tolerances,
};
pub use states::{
    coherent_state, fock_state, mixed, random_state, FockVector, MixedState, State, StateSpec,
};
pub use transform::{
    density, eta_estimate, transform_basis, transform_state, EtaEstimate, PhaseDensity, PhaseGrid,
    TransformField,
};
