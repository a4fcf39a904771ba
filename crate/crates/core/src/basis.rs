//! Orthonormal Hermite functions `phi_n` on the real line.
//!
//! `phi_n(x) = (sqrt(pi) 2^n n!)^{-1/2} e^{-x^2/2} h_n(x)` with `h_n` the
//! physicists' Hermite polynomial. Values are produced by the normalized
//! three-term recurrence
//!
//! ```text
//! phi_n(x) = x sqrt(2/n) phi_{n-1}(x) - sqrt((n-1)/n) phi_{n-2}(x),
//! ```
//!
//! which keeps the Gaussian factor folded in from the start; neither `h_n`
//! nor `n!` is ever formed on its own. For arguments far outside the
//! classical region the seed `phi_0` would underflow, so a scaled variant
//! carries the Gaussian in a separate log factor and reassembles at the end.

use crate::{Error, Result};

/// `pi^{-1/4} = phi_0(0)`, also the supremum of `|phi_n|` over all `n, x`.
pub const PHI_SUP: f64 = 0.751_125_544_464_942_482_474_389_998_219;

/// Fast path is valid while `e^{-x^2/2}` stays a comfortably normal double.
const FAST_PATH_X2: f64 = 1300.0;

/// Rescaling bounds for the slow path: factor `2^{-512}` (exact) applied
/// whenever the running value exceeds `2^{512}`.
const RESCALE_THRESHOLD: f64 = 1.340_780_792_994_259_7e154;
const RESCALE_FACTOR: f64 = 7.458_340_731_200_207e-155;
const RESCALE_LN: f64 = 512.0 * std::f64::consts::LN_2;

/// Evaluate `phi_n(x)`.
///
/// Accuracy is guaranteed for `n <= 1000`, `|x| <= 50`; beyond that values
/// are best-effort (they may underflow to zero) but are never NaN.
pub fn hermite_fn(n: usize, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFinite("x"));
    }
    Ok(hermite_raw(n, x))
}

pub(crate) fn hermite_raw(n: usize, x: f64) -> f64 {
    if x * x <= FAST_PATH_X2 {
        hermite_plain(n, x)
    } else {
        let (u, ln_scale) = hermite_scaled(n, x);
        assemble(u, ln_scale)
    }
}

/// Direct recurrence on `phi` itself; all intermediates are bounded by
/// [`PHI_SUP`] so neither overflow nor harmful underflow can occur here.
fn hermite_plain(n: usize, x: f64) -> f64 {
    let mut prev = PHI_SUP * (-0.5 * x * x).exp();
    if n == 0 {
        return prev;
    }
    let mut curr = std::f64::consts::SQRT_2 * x * prev;
    for m in 2..=n {
        let m = m as f64;
        let next = x * (2.0 / m).sqrt() * curr - ((m - 1.0) / m).sqrt() * prev;
        prev = curr;
        curr = next;
    }
    curr
}

/// Recurrence on `u_n = phi_n * e^{-ln_scale}`, with `ln_scale` starting at
/// `-x^2/2` and growing by `512 ln 2` on every rescale.
fn hermite_scaled(n: usize, x: f64) -> (f64, f64) {
    let mut ln_scale = -0.5 * x * x;
    let mut prev = PHI_SUP;
    if n == 0 {
        return (prev, ln_scale);
    }
    let mut curr = std::f64::consts::SQRT_2 * x * prev;
    for m in 2..=n {
        let mf = m as f64;
        let next = x * (2.0 / mf).sqrt() * curr - ((mf - 1.0) / mf).sqrt() * prev;
        prev = curr;
        curr = next;
        if curr.abs() > RESCALE_THRESHOLD || prev.abs() > RESCALE_THRESHOLD {
            curr *= RESCALE_FACTOR;
            prev *= RESCALE_FACTOR;
            ln_scale += RESCALE_LN;
        }
    }
    (curr, ln_scale)
}

fn assemble(u: f64, ln_scale: f64) -> f64 {
    if u == 0.0 {
        return 0.0;
    }
    if ln_scale > -700.0 {
        // e^{ln_scale} is a normal double; the product is exact to rounding.
        u * ln_scale.exp()
    } else {
        let r = ln_scale + u.abs().ln();
        if r < -745.0 {
            0.0
        } else {
            u.signum() * r.exp()
        }
    }
}

/// Fill `out[m] = phi_m(x)` for `m = 0..=nmax` in one recurrence pass.
pub(crate) fn hermite_column(nmax: usize, x: f64, out: &mut [f64]) {
    debug_assert!(out.len() > nmax);
    if x * x <= FAST_PATH_X2 {
        out[0] = PHI_SUP * (-0.5 * x * x).exp();
        if nmax == 0 {
            return;
        }
        out[1] = std::f64::consts::SQRT_2 * x * out[0];
        for m in 2..=nmax {
            let mf = m as f64;
            out[m] = x * (2.0 / mf).sqrt() * out[m - 1] - ((mf - 1.0) / mf).sqrt() * out[m - 2];
        }
    } else {
        let mut ln_scale = -0.5 * x * x;
        let mut prev = PHI_SUP;
        out[0] = assemble(prev, ln_scale);
        if nmax == 0 {
            return;
        }
        let mut curr = std::f64::consts::SQRT_2 * x * prev;
        out[1] = assemble(curr, ln_scale);
        for m in 2..=nmax {
            let mf = m as f64;
            let next = x * (2.0 / mf).sqrt() * curr - ((mf - 1.0) / mf).sqrt() * prev;
            prev = curr;
            curr = next;
            if curr.abs() > RESCALE_THRESHOLD || prev.abs() > RESCALE_THRESHOLD {
                curr *= RESCALE_FACTOR;
                prev *= RESCALE_FACTOR;
                ln_scale += RESCALE_LN;
            }
            out[m] = assemble(curr, ln_scale);
        }
    }
}

/// Tabulated `phi_n(x_j)` values for all `n <= nmax` over a fixed abscissa
/// list, stored row-major by `n`.
#[derive(Debug, Clone)]
pub struct BasisTable {
    nmax: usize,
    xs: Vec<f64>,
    values: Vec<f64>,
}

/// Evaluate the basis on a grid; one recurrence pass per abscissa.
pub fn basis_table(nmax: usize, xs: &[f64]) -> Result<BasisTable> {
    if xs.is_empty() {
        return Err(Error::Empty("abscissa list"));
    }
    if xs.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("abscissa"));
    }
    let cols = xs.len();
    let mut values = vec![0.0; (nmax + 1) * cols];
    let mut col = vec![0.0; nmax + 1];
    for (j, &x) in xs.iter().enumerate() {
        hermite_column(nmax, x, &mut col);
        for (n, &v) in col.iter().enumerate() {
            values[n * cols + j] = v;
        }
    }
    Ok(BasisTable {
        nmax,
        xs: xs.to_vec(),
        values,
    })
}

impl BasisTable {
    pub fn nmax(&self) -> usize {
        self.nmax
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    /// `phi_n` over every abscissa.
    pub fn row(&self, n: usize) -> &[f64] {
        let cols = self.xs.len();
        &self.values[n * cols..(n + 1) * cols]
    }

    pub fn value(&self, n: usize, j: usize) -> f64 {
        self.values[n * self.xs.len() + j]
    }
}
