//! Operator expectation values in the number basis, moments of the joint
//! density, and the tracing identities connecting the two.
//!
//! The measured outcome variables reproduce the quadrature and ladder
//! statistics of the input state up to additive offsets fixed by the
//! detector index `n0`: means are preserved, quadrature variances gain
//! `n0 + 1/2`, and the complex-outcome variance equals the left variance
//! plus `n0` (equivalently the right variance plus `n0 + 1`).

use std::f64::consts::SQRT_2;

use num_complex::Complex64;
use serde::Serialize;

use crate::probability::number_dist;
use crate::relations::{NamedValue, RelationReport, Tolerances};
use crate::states::State;
use crate::tolerances::{EDGE_MASS_LIMIT, TRACING_TOL};
use crate::transform::{density, require_moment_tail, PhaseDensity, PhaseGrid};
use crate::Result;

/// Quadrature, ladder, and number moments of a state.
///
/// The ladder matrix elements are hardcoded from the recurrence
/// `a |n> = sqrt(n) |n-1>`, so the only numerical error here is the
/// truncation itself, surfaced through [`MomentSet::edge_mass`].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MomentSet {
    pub mean_q: f64,
    pub mean_p: f64,
    pub var_q: f64,
    pub var_p: f64,
    pub mean_a: Complex64,
    /// Left variance `<a a†> - |<a>|^2`; exceeds the right one by 1.
    pub var_l_a: f64,
    /// Right variance `<a† a> - |<a>|^2`.
    pub var_r_a: f64,
    pub mean_n: f64,
    pub var_n: f64,
    /// Probability weight on the top retained number level.
    pub edge_mass: f64,
    /// Set when [`MomentSet::edge_mass`] exceeds the edge-mass limit, i.e.
    /// when truncation effects may distort the moments.
    pub truncation_warning: bool,
}

/// Moments from the coefficients, exactly (up to the truncation).
///
/// Mixtures weight the raw operator averages of their components before the
/// variances are assembled, so the result describes the mixed state itself
/// and not an average of per-component variances.
pub fn fock_moments(state: &State) -> MomentSet {
    let mut a1 = Complex64::new(0.0, 0.0);
    let mut a2 = Complex64::new(0.0, 0.0);
    let mut nbar = 0.0;
    let mut n2 = 0.0;
    let mut edge = 0.0;
    for (weight, f) in state.components() {
        let c = f.coeffs();
        let top = c.len() - 1;
        edge += weight * c[top].norm_sqr();
        let mut c_a1 = Complex64::new(0.0, 0.0);
        let mut c_a2 = Complex64::new(0.0, 0.0);
        let mut c_n = 0.0;
        let mut c_n2 = 0.0;
        for (n, amp) in c.iter().enumerate() {
            let p = amp.norm_sqr();
            c_n += n as f64 * p;
            c_n2 += (n * n) as f64 * p;
            if n + 1 <= top {
                c_a1 += ((n + 1) as f64).sqrt() * amp.conj() * c[n + 1];
            }
            if n + 2 <= top {
                c_a2 += (((n + 1) * (n + 2)) as f64).sqrt() * amp.conj() * c[n + 2];
            }
        }
        a1 += weight * c_a1;
        a2 += weight * c_a2;
        nbar += weight * c_n;
        n2 += weight * c_n2;
    }
    let mean_q = SQRT_2 * a1.re;
    let mean_p = SQRT_2 * a1.im;
    // <q^2> = Re<a^2> + <n> + 1/2 and <p^2> = -Re<a^2> + <n> + 1/2.
    let q2 = a2.re + nbar + 0.5;
    let p2 = -a2.re + nbar + 0.5;
    MomentSet {
        mean_q,
        mean_p,
        var_q: q2 - mean_q * mean_q,
        var_p: p2 - mean_p * mean_p,
        mean_a: a1,
        var_l_a: nbar + 1.0 - a1.norm_sqr(),
        var_r_a: nbar - a1.norm_sqr(),
        mean_n: nbar,
        var_n: n2 - nbar * nbar,
        edge_mass: edge,
        truncation_warning: edge > EDGE_MASS_LIMIT,
    }
}

/// Moments of the joint density's outcome variables.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DensityMoments {
    pub mean_q: f64,
    pub mean_p: f64,
    pub var_q: f64,
    pub var_p: f64,
    /// Mean of the complex outcome `(xi + i k) / sqrt(2)`.
    pub mean_a: Complex64,
    /// Variance of the complex outcome; equals `(var_q + var_p) / 2`.
    pub var_a: f64,
}

/// First and second moments of `xi` and `k` under the density, by trapezoid
/// integration, normalized by the grid total.
///
/// Fails when the envelope estimate of the second-moment mass outside the
/// grid exceeds the moment-tail limit, since the variances would then be
/// silently biased.
pub fn density_moments(w: &PhaseDensity) -> Result<DensityMoments> {
    require_moment_tail(w)?;
    let total = w.integral();
    let mean_q = w.integrate_map(|xi, _, v| xi * v) / total;
    let mean_p = w.integrate_map(|_, k, v| k * v) / total;
    let q2 = w.integrate_map(|xi, _, v| xi * xi * v) / total;
    let p2 = w.integrate_map(|_, k, v| k * k * v) / total;
    let var_q = q2 - mean_q * mean_q;
    let var_p = p2 - mean_p * mean_p;
    Ok(DensityMoments {
        mean_q,
        mean_p,
        var_q,
        var_p,
        mean_a: Complex64::new(mean_q, mean_p) / SQRT_2,
        var_a: 0.5 * (var_q + var_p),
    })
}

/// Check every tracing identity between operator moments and density
/// moments for one state and detector index.
///
/// The report's `lhs_terms` hold the absolute residual of each identity;
/// `lhs` is the worst residual, checked against a zero bound, so the margin
/// is minus the worst residual and the check passes when every identity
/// holds within the tracing tolerance. Failing identities are listed in the
/// note with both sides.
pub fn check_tracing(state: &State, n0: usize, grid: &PhaseGrid) -> Result<RelationReport> {
    let fm = fock_moments(state);
    let w = density(state, n0, grid)?;
    let dm = density_moments(&w)?;
    let offset = n0 as f64 + 0.5;

    let scalar_checks = [
        ("mean_q", dm.mean_q, fm.mean_q),
        ("mean_p", dm.mean_p, fm.mean_p),
        ("var_q_offset", dm.var_q, fm.var_q + offset),
        ("var_p_offset", dm.var_p, fm.var_p + offset),
        ("var_a_left", dm.var_a, fm.var_l_a + n0 as f64),
        ("var_a_right", dm.var_a, fm.var_r_a + n0 as f64 + 1.0),
    ];

    let mut terms = Vec::new();
    let mut notes = Vec::new();
    let mut worst = 0.0f64;
    for &(name, density_side, operator_side) in &scalar_checks {
        let residual = (density_side - operator_side).abs();
        terms.push(NamedValue {
            name: name.to_owned(),
            value: residual,
        });
        if residual > TRACING_TOL {
            notes.push(format!(
                "{name}: density {density_side:.8} vs operator {operator_side:.8}"
            ));
        }
        worst = worst.max(residual);
    }

    let a_residual = (dm.mean_a - fm.mean_a).norm();
    terms.push(NamedValue {
        name: "mean_a".to_owned(),
        value: a_residual,
    });
    if a_residual > TRACING_TOL {
        notes.push(format!(
            "mean_a: density {:.8}{:+.8}i vs operator {:.8}{:+.8}i",
            dm.mean_a.re, dm.mean_a.im, fm.mean_a.re, fm.mean_a.im
        ));
    }
    worst = worst.max(a_residual);

    // The number distribution of the extended system is the one computed
    // from the coefficients; re-accumulate it index-by-index and compare.
    let s = number_dist(state);
    let components = state.components();
    let mut s_residual = 0.0f64;
    for (n, &p) in s.probs().iter().enumerate() {
        let direct: f64 = components
            .iter()
            .map(|(l, f)| l * f.coeffs().get(n).map_or(0.0, |c| c.norm_sqr()))
            .sum();
        s_residual = s_residual.max((direct - p).abs());
    }
    terms.push(NamedValue {
        name: "number_dist".to_owned(),
        value: s_residual,
    });
    worst = worst.max(s_residual);

    let mut report = RelationReport::base("tracing");
    report.n0 = Some(n0);
    report.tolerances = Tolerances {
        margin: TRACING_TOL,
    };
    report.lhs_terms = terms;
    report.note = if notes.is_empty() {
        None
    } else {
        Some(notes.join("; "))
    };
    Ok(report.finish_le(worst, 0.0))
}
