//! Renyi and Tsallis entropies, the alpha-logarithm, and the norm-like
//! power functionals, for discrete distributions and for the sampled joint
//! density.
//!
//! Both families reduce to Shannon entropy at order 1; the order-1 case is
//! dispatched exactly (the caller passes `1.0`, not a nearby float), and the
//! two-sided limit is exercised by tests. Probabilities below
//! [`ZERO_PROB`](crate::tolerances::ZERO_PROB) are treated as exact zeros so
//! that `0^alpha = 0` for every positive order.

use crate::probability::DiscreteDist;
use crate::tolerances::ZERO_PROB;
use crate::transform::{require_alpha_tail, PhaseDensity};
use crate::{Error, Result};

/// Entropy order `alpha > 0`; order 1 designates the Shannon limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyOrder(f64);

impl EntropyOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::OrderDomain(alpha));
        }
        Ok(EntropyOrder(alpha))
    }

    pub fn value(&self) -> f64 {
        self.0
    }

    /// True exactly at order 1.
    pub fn is_shannon(&self) -> bool {
        self.0 == 1.0
    }
}

/// Deformed logarithm `ln_alpha x = (x^{1-alpha} - 1) / (1 - alpha)`,
/// reducing to `ln x` at order 1.
pub fn alpha_log(x: f64, order: EntropyOrder) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::LogDomain(x));
    }
    if order.is_shannon() {
        return Ok(x.ln());
    }
    let one_minus = 1.0 - order.value();
    Ok((x.powf(one_minus) - 1.0) / one_minus)
}

/// `sum p^alpha` with zeros skipped; fixed summation order.
pub(crate) fn power_sum(probs: &[f64], alpha: f64) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > ZERO_PROB)
        .map(|&p| p.powf(alpha))
        .sum()
}

/// `-sum p ln p` with zeros contributing nothing.
pub(crate) fn shannon_sum(probs: &[f64]) -> f64 {
    -probs
        .iter()
        .filter(|&&p| p > ZERO_PROB)
        .map(|&p| p * p.ln())
        .sum::<f64>()
}

/// Renyi entropy of a bare probability slice; assumes the slice is already
/// normalized. Shared by the validated wrapper and the search loop in the
/// entropy-sum minimizer, which renormalizes candidates itself.
pub(crate) fn renyi_probs(probs: &[f64], order: EntropyOrder) -> f64 {
    if order.is_shannon() {
        shannon_sum(probs)
    } else {
        power_sum(probs, order.value()).ln() / (1.0 - order.value())
    }
}

/// Renyi entropy `(1 - alpha)^{-1} ln sum s_n^alpha` of a discrete
/// distribution; Shannon at order 1.
pub fn renyi_discrete(s: &DiscreteDist, order: EntropyOrder) -> f64 {
    renyi_probs(s.probs(), order)
}

/// Tsallis entropy `(1 - alpha)^{-1} (sum s_n^alpha - 1)`; Shannon at
/// order 1.
pub fn tsallis_discrete(s: &DiscreteDist, order: EntropyOrder) -> f64 {
    if order.is_shannon() {
        shannon_sum(s.probs())
    } else {
        (power_sum(s.probs(), order.value()) - 1.0) / (1.0 - order.value())
    }
}

/// Discrete power norm `(sum s_n^alpha)^{1/alpha}`.
pub fn norm_functional_discrete(s: &DiscreteDist, order: EntropyOrder) -> f64 {
    power_sum(s.probs(), order.value()).powf(1.0 / order.value())
}

/// Power integral `Integral w^alpha` over the grid. For `alpha < 1` the
/// far tail contributes, so the grid must pass the envelope tail-control
/// criterion; orders >= 1 are dominated by the bounded region.
pub fn power_integral(w: &PhaseDensity, order: EntropyOrder) -> Result<f64> {
    require_alpha_tail(w, order.value())?;
    let alpha = order.value();
    Ok(w.integrate_with(|v| if v > ZERO_PROB { v.powf(alpha) } else { 0.0 }))
}

/// Continuous norm functional `(Integral w^alpha)^{1/alpha}` of the joint
/// density, by trapezoid quadrature on the density's own grid.
pub fn norm_functional_continuous(w: &PhaseDensity, order: EntropyOrder) -> Result<f64> {
    Ok(power_integral(w, order)?.powf(1.0 / order.value()))
}

/// Differential Renyi entropy of the joint density; at order 1 this is the
/// differential Shannon entropy `-Integral w ln w`. For densities produced
/// by this crate the pointwise bound `w <= (2 pi)^{-1}` forces the result to
/// be at least `ln 2 pi` for every order.
pub fn renyi_continuous(w: &PhaseDensity, order: EntropyOrder) -> Result<f64> {
    if order.is_shannon() {
        return Ok(w.integrate_with(|v| if v > ZERO_PROB { -v * v.ln() } else { 0.0 }));
    }
    Ok(power_integral(w, order)?.ln() / (1.0 - order.value()))
}

/// Differential Tsallis entropy of the joint density; Shannon at order 1.
pub fn tsallis_continuous(w: &PhaseDensity, order: EntropyOrder) -> Result<f64> {
    if order.is_shannon() {
        return renyi_continuous(w, order);
    }
    Ok((power_integral(w, order)? - 1.0) / (1.0 - order.value()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::LN_2PI;

    fn dist(probs: &[f64]) -> DiscreteDist {
        DiscreteDist::new(probs.to_vec()).unwrap()
    }

    fn order(alpha: f64) -> EntropyOrder {
        EntropyOrder::new(alpha).unwrap()
    }

    #[test]
    fn order_domain() {
        assert!(EntropyOrder::new(0.0).is_err());
        assert!(EntropyOrder::new(-2.0).is_err());
        assert!(EntropyOrder::new(f64::NAN).is_err());
        assert!(order(1.0).is_shannon());
        assert!(!order(1.0 + 1e-12).is_shannon());
    }

    #[test]
    fn alpha_log_cases() {
        assert!((alpha_log(1.0, order(1.0)).unwrap()).abs() < 1e-15);
        assert!((alpha_log(std::f64::consts::TAU, order(1.0)).unwrap() - LN_2PI).abs() < 1e-14);
        let expect = 1.0 - 1.0 / std::f64::consts::TAU;
        assert!((alpha_log(std::f64::consts::TAU, order(2.0)).unwrap() - expect).abs() < 1e-14);
        for a in [0.6, 1.0, 2.5, 7.0] {
            assert!(alpha_log(1.0, order(a)).unwrap().abs() < 1e-15);
        }
        assert!(alpha_log(0.0, order(2.0)).is_err());
        assert!(alpha_log(-1.0, order(2.0)).is_err());
    }

    #[test]
    fn deterministic_distribution_has_zero_entropy() {
        let s = dist(&[0.0, 1.0, 0.0]);
        for a in [0.5, 1.0, 2.0, 6.0] {
            assert!(renyi_discrete(&s, order(a)).abs() < 1e-14);
            assert!(tsallis_discrete(&s, order(a)).abs() < 1e-14);
        }
    }

    #[test]
    fn uniform_renyi_is_log_cardinality() {
        let s = dist(&[0.25; 4]);
        for a in [0.5, 1.0, 2.0, 9.0] {
            assert!((renyi_discrete(&s, order(a)) - 4.0f64.ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn two_point_closed_forms() {
        let s = dist(&[0.5, 0.5]);
        assert!((renyi_discrete(&s, order(2.0)) - std::f64::consts::LN_2).abs() < 1e-14);
        assert!((tsallis_discrete(&s, order(2.0)) - 0.5).abs() < 1e-14);
    }

    #[test]
    fn shannon_continuity_discrete() {
        let s = dist(&[0.4, 0.3, 0.2, 0.06, 0.04]);
        let h1 = renyi_discrete(&s, order(1.0));
        for a in [1.0 - 1e-5, 1.0 + 1e-5] {
            assert!((renyi_discrete(&s, order(a)) - h1).abs() < 1e-4);
            assert!((tsallis_discrete(&s, order(a)) - h1).abs() < 1e-4);
        }
    }

    #[test]
    fn renyi_monotone_in_order() {
        let s = dist(&[0.5, 0.2, 0.15, 0.1, 0.05]);
        let orders = [0.3, 0.7, 1.0, 1.4, 2.0, 5.0, 20.0];
        let values: Vec<f64> = orders
            .iter()
            .map(|&a| renyi_discrete(&s, order(a)))
            .collect();
        for pair in values.windows(2) {
            assert!(pair[0] >= pair[1] - 1e-12, "Renyi not non-increasing");
        }
    }

    proptest::proptest! {
        #[test]
        fn discrete_entropies_nonnegative(
            raw in proptest::collection::vec(1e-6f64..1.0, 2..12),
            a in 0.2f64..8.0,
        ) {
            let total: f64 = raw.iter().sum();
            let s = dist(&raw.iter().map(|p| p / total).collect::<Vec<_>>());
            let ord = order(a);
            proptest::prop_assert!(renyi_discrete(&s, ord) >= -1e-12);
            proptest::prop_assert!(tsallis_discrete(&s, ord) >= -1e-12);
        }

        #[test]
        fn renyi_tsallis_agree_near_shannon(
            raw in proptest::collection::vec(1e-4f64..1.0, 2..10),
        ) {
            let total: f64 = raw.iter().sum();
            let s = dist(&raw.iter().map(|p| p / total).collect::<Vec<_>>());
            let h = renyi_discrete(&s, order(1.0));
            for a in [1.0 - 1e-6, 1.0 + 1e-6] {
                proptest::prop_assert!((renyi_discrete(&s, order(a)) - h).abs() < 1e-5);
                proptest::prop_assert!((tsallis_discrete(&s, order(a)) - h).abs() < 1e-5);
            }
        }
    }
}
