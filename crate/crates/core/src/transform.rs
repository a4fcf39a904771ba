//! The windowed Fourier-type transform at the heart of the joint-measurement
//! construction, and the phase-space probability density built from it.
//!
//! For an input wavefunction `f` and a window index `n0`, the transform is
//!
//! ```text
//! F(xi, k) = (2 pi)^{-1/2} e^{i k xi / 2} Integral f(x) phi_{n0}(xi - x) e^{-i k x} dx,
//! ```
//!
//! and the joint density of the two commuting quadrature outcomes is
//! `w(xi, k) = |F(xi, k)|^2`. Pointwise `w <= (2 pi)^{-1}` for any unit-norm
//! input because the squared kernel integrates to `(2 pi)^{-1}` in `x`.
//!
//! Single-point evaluation ([`transform_basis`]) does direct trapezoid
//! quadrature on the support intersection of the two factors. Whole-grid
//! evaluation ([`transform_state`]) evaluates the same trapezoid sums through
//! an FFT-based linear convolution per `k` row, which is algebraically
//! identical up to rounding and orders of magnitude faster.

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::basis::{hermite_column, hermite_raw};
use crate::states::{fock_state, FockVector, State};
use crate::tolerances::{
    DENSITY_BOUND_SLACK, MOMENT_TAIL_LIMIT, PARSEVAL_TOL, QUAD_STEP_MAX, SUPPORT_PAD,
    TAIL_MASS_LIMIT,
};
use crate::{Error, Result, INV_2PI, INV_SQRT_2PI};

/// Radius beyond which `phi_n` is negligible (turning point plus a pad where
/// the tail has decayed below ~1e-15).
fn support_radius(n: usize) -> f64 {
    classical_radius(n) + SUPPORT_PAD
}

/// Classical turning point `sqrt(2n + 1)` of `phi_n`.
fn classical_radius(n: usize) -> f64 {
    (2.0 * n as f64 + 1.0).sqrt()
}

/// Rectangular, uniformly spaced evaluation grid in the `(xi, k)` plane.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseGrid {
    xi_min: f64,
    xi_max: f64,
    k_min: f64,
    k_max: f64,
    n_xi: usize,
    n_k: usize,
}

impl PhaseGrid {
    pub fn new(
        xi_min: f64,
        xi_max: f64,
        k_min: f64,
        k_max: f64,
        n_xi: usize,
        n_k: usize,
    ) -> Result<Self> {
        let bounds = [xi_min, xi_max, k_min, k_max];
        if bounds.iter().any(|b| !b.is_finite()) {
            return Err(Error::NonFinite("grid bound"));
        }
        if xi_max <= xi_min || k_max <= k_min {
            return Err(Error::Grid("grid extents must be strictly positive"));
        }
        if n_xi < 2 || n_k < 2 {
            return Err(Error::Grid("grid needs at least 2 points per axis"));
        }
        Ok(PhaseGrid {
            xi_min,
            xi_max,
            k_min,
            k_max,
            n_xi,
            n_k,
        })
    }

    /// Symmetric square grid `[-extent, extent]^2` with `points` per axis.
    pub fn square(extent: f64, points: usize) -> Result<Self> {
        if !extent.is_finite() || extent <= 0.0 {
            return Err(Error::Grid("grid extent must be positive and finite"));
        }
        PhaseGrid::new(-extent, extent, -extent, extent, points, points)
    }

    /// Default grid for a state truncated at `N` with window index `n0`:
    /// extent `2 sqrt(2N + 2 n0 + 2) + 6` at 512 x 512 points, covering the
    /// classically allowed region plus a margin where the density has decayed
    /// below ~1e-14.
    pub fn auto(n_trunc: usize, n0: usize) -> Self {
        PhaseGrid::square(Self::required_extent(n_trunc, n0), 512)
            .expect("default grid parameters are valid")
    }

    /// Minimum extent required for accurate evaluation with truncation `N`
    /// and window index `n0`.
    pub fn required_extent(n_trunc: usize, n0: usize) -> f64 {
        2.0 * (2.0 * n_trunc as f64 + 2.0 * n0 as f64 + 2.0).sqrt() + 6.0
    }

    /// Does this grid contain the square `[-extent, extent]^2`?
    pub fn covers(&self, extent: f64) -> bool {
        let slack = 1e-9;
        self.xi_min <= -extent + slack
            && self.xi_max >= extent - slack
            && self.k_min <= -extent + slack
            && self.k_max >= extent - slack
    }

    /// Largest `L` such that `[-L, L]^2` fits inside the grid (negative if
    /// the grid excludes the origin); the tail-control estimates measure
    /// distance from this boundary.
    pub fn min_extent(&self) -> f64 {
        (-self.xi_min)
            .min(self.xi_max)
            .min(-self.k_min)
            .min(self.k_max)
    }

    pub fn n_xi(&self) -> usize {
        self.n_xi
    }

    pub fn n_k(&self) -> usize {
        self.n_k
    }

    pub fn dxi(&self) -> f64 {
        (self.xi_max - self.xi_min) / (self.n_xi - 1) as f64
    }

    pub fn dk(&self) -> f64 {
        (self.k_max - self.k_min) / (self.n_k - 1) as f64
    }

    pub fn xi(&self, i: usize) -> f64 {
        self.xi_min + self.dxi() * i as f64
    }

    pub fn k(&self, j: usize) -> f64 {
        self.k_min + self.dk() * j as f64
    }

    /// Trapezoid quadrature weight (spacing included) for the `xi` axis.
    pub fn xi_weight(&self, i: usize) -> f64 {
        if i == 0 || i == self.n_xi - 1 {
            0.5 * self.dxi()
        } else {
            self.dxi()
        }
    }

    /// Trapezoid quadrature weight (spacing included) for the `k` axis.
    pub fn k_weight(&self, j: usize) -> f64 {
        if j == 0 || j == self.n_k - 1 {
            0.5 * self.dk()
        } else {
            self.dk()
        }
    }

    pub(crate) fn cell_count(&self) -> usize {
        self.n_xi * self.n_k
    }
}

/// Single-point transform of the `n`-th basis function with window `n0`.
///
/// Trapezoid quadrature over the support intersection of `phi_n(x)` and
/// `phi_{n0}(xi - x)` with step `min(0.02, pi / (16 (|k| + 1)))`; absolute
/// error below 1e-9 for `n, n0 <= 60` and `|xi|, |k| <= 20`.
pub fn transform_basis(n: usize, n0: usize, xi: f64, k: f64) -> Result<Complex64> {
    if !xi.is_finite() {
        return Err(Error::NonFinite("xi"));
    }
    if !k.is_finite() {
        return Err(Error::NonFinite("k"));
    }
    Ok(kernel_quadrature(n, n0, xi, k))
}

fn kernel_quadrature(n: usize, n0: usize, xi: f64, k: f64) -> Complex64 {
    let lo = (-support_radius(n)).max(xi - support_radius(n0));
    let hi = support_radius(n).min(xi + support_radius(n0));
    if hi <= lo {
        return Complex64::new(0.0, 0.0);
    }
    let h_req = QUAD_STEP_MAX.min(std::f64::consts::PI / (16.0 * (k.abs() + 1.0)));
    let m = ((hi - lo) / h_req).ceil() as usize;
    let h = (hi - lo) / m as f64;
    let mut acc_re = 0.0;
    let mut acc_im = 0.0;
    for j in 0..=m {
        let x = lo + h * j as f64;
        let trap = if j == 0 || j == m { 0.5 } else { 1.0 };
        let v = trap * hermite_raw(n, x) * hermite_raw(n0, xi - x);
        let (s, c) = (-k * x).sin_cos();
        acc_re += v * c;
        acc_im += v * s;
    }
    let amp = INV_SQRT_2PI * h;
    let (sp, cp) = (0.5 * k * xi).sin_cos();
    Complex64::new(
        amp * (acc_re * cp - acc_im * sp),
        amp * (acc_re * sp + acc_im * cp),
    )
}

/// Sampled transform `F(xi_i, k_j)` of a pure state, stored `xi`-major.
#[derive(Debug, Clone)]
pub struct TransformField {
    grid: PhaseGrid,
    n0: usize,
    amps: Vec<Complex64>,
}

impl TransformField {
    pub fn grid(&self) -> &PhaseGrid {
        &self.grid
    }

    pub fn n0(&self) -> usize {
        self.n0
    }

    pub fn amp(&self, i: usize, j: usize) -> Complex64 {
        self.amps[i * self.grid.n_k + j]
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    /// Trapezoid inner product `<self, other>` over the shared grid.
    pub fn grid_inner(&self, other: &TransformField) -> Result<Complex64> {
        if self.grid != other.grid {
            return Err(Error::Grid("inner product requires identical grids"));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.grid.n_xi {
            let wi = self.grid.xi_weight(i);
            let row = i * self.grid.n_k;
            let mut row_acc = Complex64::new(0.0, 0.0);
            for j in 0..self.grid.n_k {
                row_acc += self.grid.k_weight(j) * self.amps[row + j].conj() * other.amps[row + j];
            }
            acc += wi * row_acc;
        }
        Ok(acc)
    }

    /// Trapezoid integral of `|F|^2` over the grid.
    pub fn norm_sq(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.grid.n_xi {
            let wi = self.grid.xi_weight(i);
            let row = i * self.grid.n_k;
            let mut row_acc = 0.0;
            for j in 0..self.grid.n_k {
                row_acc += self.grid.k_weight(j) * self.amps[row + j].norm_sqr();
            }
            acc += wi * row_acc;
        }
        acc
    }
}

/// Transform a pure state over a whole grid.
///
/// The grid must cover `[-R, R]^2` with `R = required_extent(N, n0)`; the
/// quadrature step in `x` is chosen internally. The result is checked against
/// the norm identity `Integral |F|^2 = 1` within [`PARSEVAL_TOL`], which
/// catches both under-resolved and under-extended grids.
pub fn transform_state(f: &FockVector, n0: usize, grid: &PhaseGrid) -> Result<TransformField> {
    let required = PhaseGrid::required_extent(f.n_trunc(), n0);
    if !grid.covers(required) {
        return Err(Error::GridExtent {
            required,
            got: grid.min_extent(),
        });
    }
    let amps = evaluate_field(f.coeffs(), n0, grid);
    let field = TransformField {
        grid: grid.clone(),
        n0,
        amps,
    };
    let norm = field.norm_sq();
    if (norm - 1.0).abs() > PARSEVAL_TOL {
        return Err(Error::GridResolution {
            norm,
            tol: PARSEVAL_TOL,
        });
    }
    Ok(field)
}

/// Evaluate the field on every grid node.
///
/// Per `k` row, the trapezoid sum over the `x` lattice is a discrete linear
/// convolution of `f(x) e^{-ikx}` with the sampled window `phi_{n0}`; it is
/// evaluated by FFT. The `x` lattice is an exact sub-lattice of the `xi`
/// lattice (spacing `dxi / m_sub`), so each output index is a strided read of
/// the convolution. Rows are independent and computed in parallel; each
/// output value has a fixed summation order, so results are reproducible.
fn evaluate_field(coeffs: &[Complex64], n0: usize, grid: &PhaseGrid) -> Vec<Complex64> {
    let n_trunc = coeffs.len() - 1;
    let k_abs_max = grid.k_min.abs().max(grid.k_max.abs());
    let h_req = QUAD_STEP_MAX.min(std::f64::consts::PI / (16.0 * (k_abs_max + 1.0)));
    let m_sub = (grid.dxi() / h_req).ceil().max(1.0) as usize;
    let h = grid.dxi() / m_sub as f64;

    // x lattice x_t = xi_min + t h covering the support of f.
    let a_f = support_radius(n_trunc);
    let t_lo = ((-a_f - grid.xi_min) / h).floor() as i64;
    let t_hi = ((a_f - grid.xi_min) / h).ceil() as i64;
    let t_count = (t_hi - t_lo + 1) as usize;
    let x_at = |t: i64| grid.xi_min + t as f64 * h;

    // Sample f once over the lattice.
    let mut col = vec![0.0; n_trunc + 1];
    let fvals: Vec<Complex64> = (0..t_count)
        .map(|tau| {
            hermite_column(n_trunc, x_at(t_lo + tau as i64), &mut col);
            coeffs
                .iter()
                .zip(&col)
                .map(|(c, &phi)| c * phi)
                .sum::<Complex64>()
        })
        .collect();

    // Sampled window, centered: kernel[d + d_max] = phi_{n0}(d h).
    let d_max = (support_radius(n0) / h).ceil() as usize;
    let klen = 2 * d_max + 1;
    let conv_len = t_count + klen - 1;
    let fft_len = conv_len.next_power_of_two();

    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(fft_len);
    let inverse = planner.plan_fft_inverse(fft_len);

    let mut kernel_fft = vec![Complex64::new(0.0, 0.0); fft_len];
    for (d, slot) in kernel_fft.iter_mut().take(klen).enumerate() {
        let offset = (d as i64 - d_max as i64) as f64 * h;
        *slot = Complex64::new(hermite_raw(n0, offset), 0.0);
    }
    forward.process(&mut kernel_fft);

    let scale = h * INV_SQRT_2PI / fft_len as f64;
    let zero = Complex64::new(0.0, 0.0);

    let rows: Vec<Vec<Complex64>> = (0..grid.n_k)
        .into_par_iter()
        .map(|j| {
            let kj = grid.k(j);
            let mut buf = vec![zero; fft_len];
            for (tau, slot) in buf.iter_mut().take(t_count).enumerate() {
                let x = x_at(t_lo + tau as i64);
                let (s, c) = (-kj * x).sin_cos();
                *slot = fvals[tau] * Complex64::new(c, s);
            }
            forward.process(&mut buf);
            for (b, kv) in buf.iter_mut().zip(&kernel_fft) {
                *b *= *kv;
            }
            inverse.process(&mut buf);
            (0..grid.n_xi)
                .map(|i| {
                    let p = i as i64 * m_sub as i64 - t_lo + d_max as i64;
                    if p < 0 || p >= conv_len as i64 {
                        // Window and state support do not overlap here; the
                        // true value is below the quadrature noise floor.
                        zero
                    } else {
                        let (sp, cp) = (0.5 * kj * grid.xi(i)).sin_cos();
                        buf[p as usize] * scale * Complex64::new(cp, sp)
                    }
                })
                .collect()
        })
        .collect();

    let mut amps = vec![zero; grid.cell_count()];
    for (j, row) in rows.iter().enumerate() {
        for (i, &v) in row.iter().enumerate() {
            amps[i * grid.n_k + j] = v;
        }
    }
    amps
}

/// Joint outcome density `w(xi, k)` sampled on a grid.
#[derive(Debug, Clone)]
pub struct PhaseDensity {
    grid: PhaseGrid,
    n0: usize,
    w: Vec<f64>,
    support_radius: f64,
}

impl PhaseDensity {
    pub fn grid(&self) -> &PhaseGrid {
        &self.grid
    }

    pub fn n0(&self) -> usize {
        self.n0
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.w[i * self.grid.n_k + j]
    }

    pub fn values(&self) -> &[f64] {
        &self.w
    }

    /// Radius of the classically allowed region (state plus window turning
    /// points); the density decays like a Gaussian beyond it.
    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    pub fn max_value(&self) -> f64 {
        self.w.iter().cloned().fold(0.0, f64::max)
    }

    /// Trapezoid integral of `map(w)` over the grid, fixed summation order.
    pub fn integrate_with(&self, map: impl Fn(f64) -> f64) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.grid.n_xi {
            let wi = self.grid.xi_weight(i);
            let row = i * self.grid.n_k;
            let mut row_acc = 0.0;
            for j in 0..self.grid.n_k {
                row_acc += self.grid.k_weight(j) * map(self.w[row + j]);
            }
            acc += wi * row_acc;
        }
        acc
    }

    /// Trapezoid integral of `map(xi, k, w)` over the grid.
    pub fn integrate_map(&self, map: impl Fn(f64, f64, f64) -> f64) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.grid.n_xi {
            let wi = self.grid.xi_weight(i);
            let xi = self.grid.xi(i);
            let row = i * self.grid.n_k;
            let mut row_acc = 0.0;
            for j in 0..self.grid.n_k {
                row_acc += self.grid.k_weight(j) * map(xi, self.grid.k(j), self.w[row + j]);
            }
            acc += wi * row_acc;
        }
        acc
    }

    pub fn integral(&self) -> f64 {
        self.integrate_with(|w| w)
    }

    /// Upper estimate of the `alpha`-power mass outside the grid, from the
    /// radial Gaussian envelope `w <= (2 pi)^{-1} e^{-(r - rho)^2 / 2}` that
    /// holds beyond the classical radius `rho`. Infinite when the grid stops
    /// inside the classical region.
    pub fn alpha_tail_estimate(&self, alpha: f64) -> f64 {
        alpha_tail_estimate(self.grid.min_extent(), self.support_radius, alpha)
    }

    /// Upper estimate of `Integral r^2 w` outside the grid (same envelope);
    /// bounds the error of grid-based second moments.
    pub fn second_moment_tail(&self) -> f64 {
        let rho = self.support_radius;
        let d = self.grid.min_extent() - rho;
        if d <= 0.5 {
            return f64::INFINITY;
        }
        (-0.5 * d * d).exp() * ((d * d + 2.0) + 3.0 * rho * (d + 1.0 / d) + 3.0 * rho * rho + rho.powi(3) / d)
    }
}

fn alpha_tail_estimate(min_extent: f64, rho: f64, alpha: f64) -> f64 {
    let d = min_extent - rho;
    if d <= 0.5 {
        return f64::INFINITY;
    }
    std::f64::consts::TAU.powf(1.0 - alpha) * (-0.5 * alpha * d * d).exp() * (1.0 + rho / d)
        / alpha
}

/// Smallest square-grid extent whose `alpha`-power tail estimate falls below
/// a tenth of [`TAIL_MASS_LIMIT`], for a state with classical radius `rho`.
pub fn suggested_extent(alpha: f64, rho: f64) -> f64 {
    let target = TAIL_MASS_LIMIT / 10.0;
    let mut d: f64 = 5.0;
    for _ in 0..8 {
        let log_pref = (1.0 - alpha) * crate::LN_2PI + (1.0 + rho / d).ln() - alpha.ln();
        d = (2.0 * (log_pref - target.ln()) / alpha).max(1.0).sqrt();
    }
    rho + d
}

/// Check used by entropy/moment integrals for `alpha < 1`: error when the
/// envelope tail estimate exceeds [`TAIL_MASS_LIMIT`].
pub(crate) fn require_alpha_tail(w: &PhaseDensity, alpha: f64) -> Result<()> {
    if alpha >= 1.0 {
        return Ok(());
    }
    let estimate = w.alpha_tail_estimate(alpha);
    if estimate > TAIL_MASS_LIMIT {
        return Err(Error::TailControl {
            alpha,
            estimate,
            limit: TAIL_MASS_LIMIT,
            suggested: suggested_extent(alpha, w.support_radius()),
        });
    }
    Ok(())
}

/// Check used by density second moments.
pub(crate) fn require_moment_tail(w: &PhaseDensity) -> Result<()> {
    let estimate = w.second_moment_tail();
    if estimate > MOMENT_TAIL_LIMIT {
        return Err(Error::TailControl {
            alpha: 2.0,
            estimate,
            limit: MOMENT_TAIL_LIMIT,
            suggested: w.support_radius() + 8.0,
        });
    }
    Ok(())
}

/// Joint density of a pure or mixed state: `|F|^2` per pure component,
/// weighted by the mixture weights. Entries are validated against the
/// universal pointwise bound `(2 pi)^{-1}` and the total integral against 1.
pub fn density(state: &State, n0: usize, grid: &PhaseGrid) -> Result<PhaseDensity> {
    let mut w = vec![0.0; grid.cell_count()];
    for (weight, f) in state.components() {
        let field = transform_state(f, n0, grid)?;
        for (slot, a) in w.iter_mut().zip(field.amps()) {
            *slot += weight * a.norm_sqr();
        }
    }
    let bound = INV_2PI + DENSITY_BOUND_SLACK;
    if let Some(&bad) = w.iter().find(|&&v| v > bound) {
        return Err(Error::Density(format!(
            "density value {bad:.6e} exceeds the pointwise bound 1/(2 pi) + {DENSITY_BOUND_SLACK:e}"
        )));
    }
    let density = PhaseDensity {
        grid: grid.clone(),
        n0,
        w,
        support_radius: classical_radius(state.n_trunc()) + classical_radius(n0),
    };
    let total = density.integral();
    if (total - 1.0).abs() > PARSEVAL_TOL {
        return Err(Error::Density(format!(
            "density integrates to {total:.8} (tolerance {PARSEVAL_TOL:e})"
        )));
    }
    Ok(density)
}

/// Result of the sup search over `|transform_basis|`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EtaEstimate {
    /// Largest modulus found.
    pub eta: f64,
    /// Basis index attaining it.
    pub n: usize,
    /// Location of the maximum.
    pub xi: f64,
    pub k: f64,
}

/// Estimate `eta = sup |phi-tilde_n(xi, k)|` over `n <= nmax` and the grid,
/// refined around the best grid node by coordinate-wise golden-section search.
///
/// The universal bound is `(2 pi)^{-1/2}`; for `n0 = 0` it is attained at
/// `n = 0`, `(xi, k) = (0, 0)`. The estimate reports the computed value
/// without asserting equality for other window indices.
pub fn eta_estimate(n0: usize, nmax: usize, grid: &PhaseGrid) -> Result<EtaEstimate> {
    let required = PhaseGrid::required_extent(nmax, n0);
    if !grid.covers(required) {
        return Err(Error::GridExtent {
            required,
            got: grid.min_extent(),
        });
    }
    // Grid sweep: best node per basis index.
    let mut candidates: Vec<(f64, usize, usize, usize)> = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let f = fock_state(n, n)?;
        let field = transform_state(&f, n0, grid)?;
        let mut best = (0.0f64, 0usize, 0usize);
        for i in 0..grid.n_xi() {
            for j in 0..grid.n_k() {
                let v = field.amp(i, j).norm();
                if v > best.0 {
                    best = (v, i, j);
                }
            }
        }
        candidates.push((best.0, n, best.1, best.2));
    }
    candidates.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("moduli are finite"));

    // Refine the leading candidates; a runner-up within one grid-cell worth
    // of interpolation error could still win after refinement.
    let mut best = EtaEstimate {
        eta: 0.0,
        n: 0,
        xi: 0.0,
        k: 0.0,
    };
    for &(_, n, i, j) in candidates.iter().take(3) {
        let refined = refine_maximum(n, n0, grid.xi(i), grid.k(j), grid.dxi(), grid.dk());
        if refined.0 > best.eta {
            best = EtaEstimate {
                eta: refined.0,
                n,
                xi: refined.1,
                k: refined.2,
            };
        }
    }
    Ok(best)
}

/// Coordinate-wise golden-section ascent of `|transform_basis(n, n0, ., .)|`
/// starting from a grid node, bracketing one grid cell around the current
/// point per pass.
fn refine_maximum(n: usize, n0: usize, xi0: f64, k0: f64, dxi: f64, dk: f64) -> (f64, f64, f64) {
    let eval = |xi: f64, k: f64| kernel_quadrature(n, n0, xi, k).norm();
    let mut xi = xi0;
    let mut k = k0;
    let mut value = eval(xi, k);
    for _ in 0..6 {
        let (v1, xi_new) = golden_max(|t| eval(t, k), xi - dxi, xi + dxi);
        xi = xi_new;
        let (v2, k_new) = golden_max(|t| eval(xi, t), k - dk, k + dk);
        k = k_new;
        if v2 - value < 1e-12 {
            value = v2.max(value).max(v1);
            break;
        }
        value = v2;
    }
    (value, xi, k)
}

/// Golden-section maximization on `[lo, hi]` to interval width 1e-7.
fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut a = hi - INV_PHI * (hi - lo);
    let mut b = lo + INV_PHI * (hi - lo);
    let mut fa = f(a);
    let mut fb = f(b);
    while hi - lo > 1e-7 {
        if fa >= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - INV_PHI * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + INV_PHI * (hi - lo);
            fb = f(b);
        }
    }
    let mid = 0.5 * (lo + hi);
    (f(mid), mid)
}
