//! Shared oracles for the integration suites. Everything here is computed by
//! a method independent of the library code under test: exact big-rational
//! polynomial arithmetic for the basis functions, Gauss-Legendre panels for
//! integrals, and closed forms for Gaussian and Poisson statistics.

#![allow(dead_code)]

use num::{BigInt, BigRational, Signed, ToPrimitive, Zero};
use num_complex::Complex64;

/// Exact-coefficient evaluation of the n-th basis function at `x`.
///
/// The physicists' polynomial H_n is built by the integer recurrence
/// `H_{n+1} = 2 x H_n - 2 n H_{n-1}` and evaluated at the exact rational
/// value of `x`, so no cancellation is lost; only the final assembly
/// `sign * exp(ln |H| - x^2/2 - ln(2^n n! sqrt(pi))/2)` rounds.
pub fn hermite_value_oracle(n: usize, x: f64) -> f64 {
    let coeffs = hermite_coeffs(n);
    let xq = BigRational::from_float(x).expect("finite x");
    let mut value = BigRational::zero();
    for c in coeffs.iter().rev() {
        value = value * &xq + BigRational::from_integer(c.clone());
    }
    if value.is_zero() {
        return 0.0;
    }
    let (sign, ln_h) = ln_abs_rational(&value);
    let ln_norm: f64 = 0.5
        * (n as f64 * std::f64::consts::LN_2
            + (1..=n).map(|k| (k as f64).ln()).sum::<f64>())
        + 0.25 * std::f64::consts::PI.ln();
    sign * (ln_h - 0.5 * x * x - ln_norm).exp()
}

/// Coefficients of H_n, index = power of x.
fn hermite_coeffs(n: usize) -> Vec<BigInt> {
    let mut prev = vec![BigInt::from(1)];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![BigInt::from(0), BigInt::from(2)];
    for m in 1..n {
        let mut next = vec![BigInt::from(0); m + 2];
        for (k, c) in cur.iter().enumerate() {
            next[k + 1] += c * 2;
        }
        for (k, c) in prev.iter().enumerate() {
            next[k] -= c * (2 * m as i64);
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// `(sign, ln |r|)` of a nonzero rational, via 64-bit mantissa extraction so
/// that arbitrarily large magnitudes never overflow.
fn ln_abs_rational(r: &BigRational) -> (f64, f64) {
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    (sign, ln_abs_bigint(&r.numer().abs()) - ln_abs_bigint(&r.denom().abs()))
}

fn ln_abs_bigint(b: &BigInt) -> f64 {
    let bits = b.bits();
    if bits <= 900 {
        b.to_f64().expect("within f64 range").abs().ln()
    } else {
        let shift = bits - 64;
        let mantissa = (b >> shift).to_f64().expect("64-bit mantissa");
        mantissa.abs().ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Gauss-Legendre rule on [-1, 1]: Newton iteration on the Legendre
/// recurrence from Chebyshev initial guesses.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(m >= 2);
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_pair(m, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_pair(m, x);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// `(P_m(x), P_m'(x))` by the three-term recurrence.
fn legendre_pair(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=m {
        let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = pk;
    }
    let dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Panelled Gauss-Legendre integral of a real integrand over [a, b].
pub fn gl_integrate(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    panels: usize,
    rule: &(Vec<f64>, Vec<f64>),
) -> f64 {
    let (nodes, weights) = rule;
    let h = (b - a) / panels as f64;
    let mut acc = 0.0;
    for p in 0..panels {
        let lo = a + h * p as f64;
        let mid = lo + 0.5 * h;
        let half = 0.5 * h;
        for (t, w) in nodes.iter().zip(weights) {
            acc += w * half * f(mid + half * t);
        }
    }
    acc
}

/// Panelled Gauss-Legendre integral of a complex integrand over [a, b].
pub fn gl_integrate_complex(
    f: impl Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    panels: usize,
    rule: &(Vec<f64>, Vec<f64>),
) -> Complex64 {
    let (nodes, weights) = rule;
    let h = (b - a) / panels as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let lo = a + h * p as f64;
        let mid = lo + 0.5 * h;
        let half = 0.5 * h;
        for (t, w) in nodes.iter().zip(weights) {
            acc += w * half * f(mid + half * t);
        }
    }
    acc
}

/// `Integral of w_vacuum^alpha` over the whole plane for the ground-state
/// density `w = (2 pi)^{-1} exp(-(xi^2 + k^2)/2)`: equals `(2 pi)^{1-alpha} / alpha`.
pub fn vacuum_power_integral(alpha: f64) -> f64 {
    std::f64::consts::TAU.powf(1.0 - alpha) / alpha
}

/// Poisson point mass `e^{-nbar} nbar^n / n!` in log space.
pub fn poisson_pmf(nbar: f64, n: usize) -> f64 {
    if nbar == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let ln_fact: f64 = (1..=n).map(|k| (k as f64).ln()).sum();
    (-nbar + n as f64 * nbar.ln() - ln_fact).exp()
}

/// One-dimensional standard Gaussian mass `(2 pi)^{-1/2} Integral_a^b e^{-t^2/2}`,
/// by Gauss-Legendre panels (no error-function dependency).
pub fn gaussian_mass(a: f64, b: f64, rule: &(Vec<f64>, Vec<f64>)) -> f64 {
    let panels = ((b - a).abs().ceil() as usize).max(1);
    gl_integrate(|t| (-0.5 * t * t).exp(), a, b, panels, rule)
        / std::f64::consts::TAU.sqrt()
}
