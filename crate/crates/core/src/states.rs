//! Pure and mixed bosonic states in a truncated number basis.
//!
//! A pure state is a complex coefficient vector `c_0..c_N` against the
//! orthonormal eigenfunctions `phi_n`; a mixed state is a convex combination
//! of pure ones. Construction always validates (and, where a tolerance
//! permits, exactly renormalizes) so that downstream code can rely on unit
//! norm without re-checking.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::tolerances::{SUPERPOSITION_NORM_TOL, UNIT_NORM_TOL, WEIGHT_SUM_TOL};
use crate::{Error, Result};

/// Coefficients of a pure state over `phi_0..phi_N`; unit norm within
/// [`UNIT_NORM_TOL`] is enforced at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    coeffs: Vec<Complex64>,
}

impl FockVector {
    /// Wrap an already-normalized coefficient vector.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Empty("coefficient vector"));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite("coefficient"));
        }
        let norm_sq: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > UNIT_NORM_TOL {
            return Err(Error::NotNormalized {
                norm_sq,
                tol: UNIT_NORM_TOL,
            });
        }
        Ok(FockVector { coeffs })
    }

    /// Wrap a vector that is close to normalized (within `tol` on the squared
    /// norm), then rescale it to unit norm exactly.
    pub fn renormalized(mut coeffs: Vec<Complex64>, tol: f64) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Empty("coefficient vector"));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite("coefficient"));
        }
        let norm_sq: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > tol {
            return Err(Error::NotNormalized { norm_sq, tol });
        }
        let inv = 1.0 / norm_sq.sqrt();
        for c in &mut coeffs {
            *c *= inv;
        }
        Ok(FockVector { coeffs })
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Highest retained number index `N`.
    pub fn n_trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// Convex combination of pure states; weights are positive and sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedState {
    components: Vec<(f64, FockVector)>,
}

impl MixedState {
    pub fn components(&self) -> &[(f64, FockVector)] {
        &self.components
    }

    /// Largest truncation index among the components.
    pub fn n_trunc(&self) -> usize {
        self.components
            .iter()
            .map(|(_, f)| f.n_trunc())
            .max()
            .expect("mixed state has at least one component")
    }
}

/// Either a pure coefficient vector or a mixture; most pipeline entry points
/// accept this.
#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Pure(FockVector),
    Mixed(MixedState),
}

impl State {
    /// View any state as a weighted list of pure components (a pure state is
    /// the single-component mixture with weight one).
    pub fn components(&self) -> Vec<(f64, &FockVector)> {
        match self {
            State::Pure(f) => vec![(1.0, f)],
            State::Mixed(m) => m.components.iter().map(|(l, f)| (*l, f)).collect(),
        }
    }

    pub fn n_trunc(&self) -> usize {
        match self {
            State::Pure(f) => f.n_trunc(),
            State::Mixed(m) => m.n_trunc(),
        }
    }
}

impl From<FockVector> for State {
    fn from(f: FockVector) -> Self {
        State::Pure(f)
    }
}

impl From<MixedState> for State {
    fn from(m: MixedState) -> Self {
        State::Mixed(m)
    }
}

/// Number eigenstate `|n>` in a basis truncated at `N`.
pub fn fock_state(n: usize, n_trunc: usize) -> Result<FockVector> {
    if n > n_trunc {
        return Err(Error::FockIndex { n, n_trunc });
    }
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n_trunc + 1];
    coeffs[n] = Complex64::new(1.0, 0.0);
    Ok(FockVector { coeffs })
}

/// Coherent state with amplitude `a`, truncated at `N` and renormalized.
///
/// Requires `|a|^2 <= N/4` so the discarded Poisson tail is negligible and
/// the renormalization is a no-op to working precision. Amplitudes with
/// `|a|^2` up to roughly 1e3 stay within double-precision range.
pub fn coherent_state(a: Complex64, n_trunc: usize) -> Result<FockVector> {
    if !a.re.is_finite() || !a.im.is_finite() {
        return Err(Error::NonFinite("coherent amplitude"));
    }
    let nbar = a.norm_sqr();
    let limit = n_trunc as f64 / 4.0;
    if nbar > limit {
        return Err(Error::CoherentTruncation {
            nbar,
            limit,
            suggested: (4.0 * nbar).ceil() as usize,
        });
    }
    let mut coeffs = Vec::with_capacity(n_trunc + 1);
    let mut c = Complex64::new((-0.5 * nbar).exp(), 0.0);
    coeffs.push(c);
    for n in 1..=n_trunc {
        c *= a / (n as f64).sqrt();
        coeffs.push(c);
    }
    let norm_sq: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
    let inv = 1.0 / norm_sq.sqrt();
    for c in &mut coeffs {
        *c *= inv;
    }
    Ok(FockVector { coeffs })
}

/// Draw a pure state uniformly from the unit sphere of `C^{N+1}`,
/// deterministically in `seed`.
pub fn random_state(seed: u64, n_trunc: usize) -> FockVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut coeffs = Vec::with_capacity(n_trunc + 1);
        for _ in 0..=n_trunc {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            coeffs.push(Complex64::new(re, im));
        }
        let norm_sq: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        // Gaussian draws land at the origin with probability zero; the loop
        // guards against the pathological all-tiny draw anyway.
        if norm_sq > 1e-12 {
            let inv = 1.0 / norm_sq.sqrt();
            for c in &mut coeffs {
                *c *= inv;
            }
            return FockVector { coeffs };
        }
    }
}

/// Assemble a mixed state from `(weight, component)` pairs. Weights must be
/// positive and sum to one within [`WEIGHT_SUM_TOL`]; the sum is then divided
/// out so stored weights add to one exactly up to rounding.
pub fn mixed(components: Vec<(f64, FockVector)>) -> Result<MixedState> {
    if components.is_empty() {
        return Err(Error::Empty("mixture component list"));
    }
    for (l, _) in &components {
        if !l.is_finite() {
            return Err(Error::NonFinite("mixture weight"));
        }
        if *l <= 0.0 {
            return Err(Error::WeightSign(*l));
        }
    }
    let sum: f64 = components.iter().map(|(l, _)| *l).sum();
    if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
        return Err(Error::WeightSum {
            sum,
            tol: WEIGHT_SUM_TOL,
        });
    }
    let components = components
        .into_iter()
        .map(|(l, f)| (l / sum, f))
        .collect();
    Ok(MixedState { components })
}

/// Serializable description of a state, used by the file-based interfaces.
///
/// Complex numbers are `[re, im]` pairs. `superposition` coefficients may be
/// off unit norm by at most 1e-6 and are renormalized on load; `mixture`
/// components must themselves be pure.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum StateSpec {
    Fock {
        n: usize,
        truncation: usize,
    },
    Coherent {
        amplitude: [f64; 2],
        truncation: usize,
    },
    Superposition {
        coefficients: Vec<[f64; 2]>,
    },
    Mixture {
        components: Vec<MixtureComponentSpec>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixtureComponentSpec {
    pub weight: f64,
    pub state: Box<StateSpec>,
}

impl StateSpec {
    /// Validate and materialize the described state.
    pub fn build(&self) -> Result<State> {
        match self {
            StateSpec::Fock { n, truncation } => Ok(fock_state(*n, *truncation)?.into()),
            StateSpec::Coherent {
                amplitude,
                truncation,
            } => {
                let a = Complex64::new(amplitude[0], amplitude[1]);
                Ok(coherent_state(a, *truncation)?.into())
            }
            StateSpec::Superposition { coefficients } => {
                let coeffs: Vec<Complex64> = coefficients
                    .iter()
                    .map(|p| Complex64::new(p[0], p[1]))
                    .collect();
                Ok(FockVector::renormalized(coeffs, SUPERPOSITION_NORM_TOL)?.into())
            }
            StateSpec::Mixture { components } => {
                let mut parts = Vec::with_capacity(components.len());
                for comp in components {
                    let state = comp.state.build()?;
                    match state {
                        State::Pure(f) => parts.push((comp.weight, f)),
                        State::Mixed(_) => {
                            return Err(Error::StateSpec(
                                "mixture components must be pure states".into(),
                            ))
                        }
                    }
                }
                Ok(mixed(parts)?.into())
            }
        }
    }

    /// Describe a pure state as an explicit superposition (used to write
    /// search results back out).
    pub fn from_fock_vector(f: &FockVector) -> Self {
        StateSpec::Superposition {
            coefficients: f.coeffs().iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}
