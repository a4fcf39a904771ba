//! Discrete probability distributions: number-operator statistics and
//! coarse-grained (binned) phase-space probabilities.
//!
//! Bin masses are exact integrals of the bilinear interpolant of the sampled
//! density. Per axis, every grid node carries a piecewise-linear hat
//! function; a bin's mass is the weighted sum of node values against the hat
//! overlaps with the bin. This makes bin refinement exactly additive and
//! keeps full-grid partitions consistent with the trapezoid normalization.

use serde::{Deserialize, Serialize};

use crate::states::State;
use crate::tolerances::{BIN_MASS_TOL, BIN_RESIDUAL_LIMIT, DIST_SUM_TOL};
use crate::transform::PhaseDensity;
use crate::{Error, Result};

/// Non-negative reals summing to one within [`DIST_SUM_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDist {
    probs: Vec<f64>,
}

impl DiscreteDist {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        Self::validated(probs, DIST_SUM_TOL).map(|(dist, _)| dist)
    }

    /// Accept a vector whose sum deviates from one by at most `tol`, then
    /// divide the sum out so the stored entries add to one up to rounding.
    pub fn renormalized(probs: Vec<f64>, tol: f64) -> Result<Self> {
        let (mut dist, sum) = Self::validated(probs, tol)?;
        for p in &mut dist.probs {
            *p /= sum;
        }
        Ok(dist)
    }

    fn validated(probs: Vec<f64>, tol: f64) -> Result<(Self, f64)> {
        if probs.is_empty() {
            return Err(Error::Empty("probability vector"));
        }
        for &p in &probs {
            if !p.is_finite() || !(0.0..=1.0 + 1e-12).contains(&p) {
                return Err(Error::DistEntry(p));
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > tol {
            return Err(Error::DistSum { sum, tol });
        }
        Ok((DiscreteDist { probs }, sum))
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// Number-operator distribution `s_n = |c_n|^2`, mixture-weighted for mixed
/// states (components shorter than the longest are zero-padded).
pub fn number_dist(state: &State) -> DiscreteDist {
    let len = state.n_trunc() + 1;
    let mut probs = vec![0.0; len];
    for (weight, f) in state.components() {
        for (n, c) in f.coeffs().iter().enumerate() {
            probs[n] += weight * c.norm_sqr();
        }
    }
    DiscreteDist::new(probs).expect("squared moduli of a unit vector form a distribution")
}

/// Rectangular partition of the `(xi, k)` plane by strictly increasing edge
/// lists (at least two edges per axis).
#[derive(Debug, Clone, PartialEq)]
pub struct BinPartition {
    xi_edges: Vec<f64>,
    k_edges: Vec<f64>,
}

impl BinPartition {
    pub fn new(xi_edges: Vec<f64>, k_edges: Vec<f64>) -> Result<Self> {
        for edges in [&xi_edges, &k_edges] {
            if edges.len() < 2 {
                return Err(Error::Partition("each axis needs at least 2 edges"));
            }
            if edges.iter().any(|e| !e.is_finite()) {
                return Err(Error::Partition("edges must be finite"));
            }
            if edges.windows(2).any(|p| p[1] <= p[0]) {
                return Err(Error::Partition("edges must be strictly increasing"));
            }
        }
        Ok(BinPartition { xi_edges, k_edges })
    }

    /// Uniform bins of size `dxi` by `dk` tiling `[-extent, extent]^2`; when
    /// the extent is not a whole number of bins, a final narrower bin closes
    /// the interval.
    pub fn uniform(dxi: f64, dk: f64, extent: f64) -> Result<Self> {
        if !(dxi.is_finite() && dk.is_finite() && extent.is_finite())
            || dxi <= 0.0
            || dk <= 0.0
            || extent <= 0.0
        {
            return Err(Error::Partition(
                "uniform partition needs positive sizes and extent",
            ));
        }
        let axis = |d: f64| {
            let mut edges = Vec::new();
            let mut e = -extent;
            while e < extent - 1e-9 * extent.max(1.0) {
                edges.push(e);
                e += d;
            }
            edges.push(extent);
            edges
        };
        BinPartition::new(axis(dxi), axis(dk))
    }

    pub fn xi_edges(&self) -> &[f64] {
        &self.xi_edges
    }

    pub fn k_edges(&self) -> &[f64] {
        &self.k_edges
    }

    pub fn n_xi_bins(&self) -> usize {
        self.xi_edges.len() - 1
    }

    pub fn n_k_bins(&self) -> usize {
        self.k_edges.len() - 1
    }

    /// Largest bin width along `xi`.
    pub fn max_dxi(&self) -> f64 {
        self.xi_edges
            .windows(2)
            .map(|p| p[1] - p[0])
            .fold(0.0, f64::max)
    }

    /// Largest bin width along `k`.
    pub fn max_dk(&self) -> f64 {
        self.k_edges
            .windows(2)
            .map(|p| p[1] - p[0])
            .fold(0.0, f64::max)
    }

    /// Area of bin `(l, m)`.
    pub fn bin_area(&self, l: usize, m: usize) -> f64 {
        (self.xi_edges[l + 1] - self.xi_edges[l]) * (self.k_edges[m + 1] - self.k_edges[m])
    }
}

/// Serializable partition description: explicit edge lists or a uniform
/// tiling.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PartitionSpec {
    Explicit(ExplicitPartitionSpec),
    Uniform(UniformPartitionWrapper),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitPartitionSpec {
    pub xi_edges: Vec<f64>,
    pub k_edges: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UniformPartitionWrapper {
    pub uniform: UniformPartitionSpec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UniformPartitionSpec {
    pub dxi: f64,
    pub dk: f64,
    pub extent: f64,
}

impl PartitionSpec {
    pub fn build(&self) -> Result<BinPartition> {
        match self {
            PartitionSpec::Explicit(e) => {
                BinPartition::new(e.xi_edges.clone(), e.k_edges.clone())
            }
            PartitionSpec::Uniform(u) => {
                BinPartition::uniform(u.uniform.dxi, u.uniform.dk, u.uniform.extent)
            }
        }
    }
}

/// Binned distribution plus the geometry the entropy bounds depend on.
#[derive(Debug, Clone)]
pub struct BinnedDist {
    dist: DiscreteDist,
    delta_xi: f64,
    delta_k: f64,
    n_xi_bins: usize,
    n_k_bins: usize,
    residual: f64,
    catch_all: bool,
}

impl BinnedDist {
    /// Flattened probabilities, `xi`-major; when a catch-all bin was added it
    /// is the final entry.
    pub fn dist(&self) -> &DiscreteDist {
        &self.dist
    }

    pub fn prob(&self, l: usize, m: usize) -> f64 {
        self.dist.probs()[l * self.n_k_bins + m]
    }

    /// Largest `xi` bin width.
    pub fn delta_xi(&self) -> f64 {
        self.delta_xi
    }

    /// Largest `k` bin width.
    pub fn delta_k(&self) -> f64 {
        self.delta_k
    }

    pub fn n_xi_bins(&self) -> usize {
        self.n_xi_bins
    }

    pub fn n_k_bins(&self) -> usize {
        self.n_k_bins
    }

    /// Grid mass not covered by the partition.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// True when the residual exceeded
    /// [`BIN_RESIDUAL_LIMIT`] and was appended as an explicit outer bin.
    pub fn catch_all(&self) -> bool {
        self.catch_all
    }
}

/// Per-node hat-function overlaps with each bin of one axis: entry `i` lists
/// `(bin, mass)` pairs with `mass = Integral_bin hat_i`.
fn hat_overlaps(
    node_min: f64,
    spacing: f64,
    count: usize,
    edges: &[f64],
) -> Vec<Vec<(usize, f64)>> {
    // Integral over [a, b] of the linear ramp running from `v_p` at `p` to
    // `v_q` at `q`, restricted to [p, q].
    let ramp = |p: f64, q: f64, v_p: f64, v_q: f64, a: f64, b: f64| -> f64 {
        let lo = a.max(p);
        let hi = b.min(q);
        if hi <= lo {
            return 0.0;
        }
        let slope = (v_q - v_p) / (q - p);
        let v_lo = v_p + slope * (lo - p);
        let v_hi = v_p + slope * (hi - p);
        (hi - lo) * 0.5 * (v_lo + v_hi)
    };
    let node = |i: usize| node_min + spacing * i as f64;
    let mut masses = vec![Vec::new(); count];
    for l in 0..edges.len() - 1 {
        let (a, b) = (edges[l], edges[l + 1]);
        let i_lo = (((a - node_min) / spacing - 1.0).floor().max(0.0)) as usize;
        let i_hi = ((((b - node_min) / spacing + 1.0).ceil()) as usize).min(count - 1);
        for i in i_lo..=i_hi {
            let mut mass = 0.0;
            if i > 0 {
                mass += ramp(node(i - 1), node(i), 0.0, 1.0, a, b);
            }
            if i + 1 < count {
                mass += ramp(node(i), node(i + 1), 1.0, 0.0, a, b);
            }
            if mass > 0.0 {
                masses[i].push((l, mass));
            }
        }
    }
    masses
}

fn check_partition_inside(w: &PhaseDensity, part: &BinPartition) -> Result<()> {
    let g = w.grid();
    let slack = 1e-9;
    let xi_ok = part.xi_edges[0] >= g.xi(0) - slack
        && *part.xi_edges.last().expect("validated edges") <= g.xi(g.n_xi() - 1) + slack;
    let k_ok = part.k_edges[0] >= g.k(0) - slack
        && *part.k_edges.last().expect("validated edges") <= g.k(g.n_k() - 1) + slack;
    if xi_ok && k_ok {
        Ok(())
    } else {
        Err(Error::Partition("partition extends beyond the density grid"))
    }
}

/// Integrals of `map(w)` over every bin (flattened `xi`-major), as exact
/// integrals of the bilinear interpolant of the mapped node values.
pub fn bin_integrals(
    w: &PhaseDensity,
    part: &BinPartition,
    map: impl Fn(f64) -> f64,
) -> Result<Vec<f64>> {
    check_partition_inside(w, part)?;
    let g = w.grid();
    let xi_masses = hat_overlaps(g.xi(0), g.dxi(), g.n_xi(), &part.xi_edges);
    let k_masses = hat_overlaps(g.k(0), g.dk(), g.n_k(), &part.k_edges);
    let mb = part.n_k_bins();
    let mut out = vec![0.0; part.n_xi_bins() * mb];
    for i in 0..g.n_xi() {
        if xi_masses[i].is_empty() {
            continue;
        }
        for j in 0..g.n_k() {
            let v = map(w.value(i, j));
            if v == 0.0 {
                continue;
            }
            for &(l, mx) in &xi_masses[i] {
                for &(m, mk) in &k_masses[j] {
                    out[l * mb + m] += v * mx * mk;
                }
            }
        }
    }
    Ok(out)
}

/// Coarse-grain the density over a partition.
///
/// The partition must lie inside the density grid. Grid mass not covered by
/// the partition is the residual; when it exceeds [`BIN_RESIDUAL_LIMIT`] it
/// is appended as an explicit catch-all bin so the result remains a true
/// probability vector. The final vector is renormalized within
/// [`BIN_MASS_TOL`].
pub fn bin_probs(w: &PhaseDensity, part: &BinPartition) -> Result<BinnedDist> {
    let mut probs = bin_integrals(w, part, |v| v)?;
    for p in &mut probs {
        // Rounding can push an all-but-empty bin a few ulp below zero.
        if *p < 0.0 {
            debug_assert!(*p > -1e-15);
            *p = 0.0;
        }
    }
    let inside: f64 = probs.iter().sum();
    let residual = (w.integral() - inside).max(0.0);
    let catch_all = residual > BIN_RESIDUAL_LIMIT;
    if catch_all {
        probs.push(residual);
    }
    let dist = DiscreteDist::renormalized(probs, BIN_MASS_TOL)?;
    Ok(BinnedDist {
        dist,
        delta_xi: part.max_dxi(),
        delta_k: part.max_dk(),
        n_xi_bins: part.n_xi_bins(),
        n_k_bins: part.n_k_bins(),
        residual,
        catch_all,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{fock_state, mixed, random_state};
    use crate::transform::{density, PhaseGrid};

    #[test]
    fn dist_validation() {
        assert!(DiscreteDist::new(vec![0.5, 0.5]).is_ok());
        assert!(DiscreteDist::new(vec![]).is_err());
        assert!(DiscreteDist::new(vec![0.6, 0.6]).is_err());
        assert!(DiscreteDist::new(vec![-0.1, 1.1]).is_err());
        assert!(DiscreteDist::new(vec![f64::NAN, 1.0]).is_err());
        let d = DiscreteDist::renormalized(vec![0.5000004, 0.5], 1e-6).unwrap();
        assert!((d.probs().iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn number_dist_examples() {
        let f = fock_state(2, 5).unwrap();
        let s = number_dist(&f.into());
        assert_eq!(s.probs(), &[0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);

        let m = mixed(vec![
            (0.5, fock_state(0, 1).unwrap()),
            (0.5, fock_state(1, 1).unwrap()),
        ])
        .unwrap();
        let s = number_dist(&m.into());
        assert_eq!(s.probs(), &[0.5, 0.5]);
    }

    #[test]
    fn partition_validation() {
        assert!(BinPartition::new(vec![0.0], vec![0.0, 1.0]).is_err());
        assert!(BinPartition::new(vec![0.0, 0.0], vec![0.0, 1.0]).is_err());
        assert!(BinPartition::new(vec![1.0, 0.0], vec![0.0, 1.0]).is_err());
        let p = BinPartition::new(vec![-1.0, 0.0, 1.0], vec![-2.0, 2.0]).unwrap();
        assert_eq!(p.n_xi_bins(), 2);
        assert_eq!(p.n_k_bins(), 1);
        assert!((p.max_dxi() - 1.0).abs() < 1e-15);
        assert!((p.max_dk() - 4.0).abs() < 1e-15);
    }

    #[test]
    fn uniform_partition_geometry() {
        let p = BinPartition::uniform(0.5, 0.5, 2.0).unwrap();
        assert_eq!(p.xi_edges().len(), 9);
        assert!((p.xi_edges()[0] + 2.0).abs() < 1e-12);
        assert!((p.xi_edges()[8] - 2.0).abs() < 1e-12);

        // Non-divisible extent closes with a narrower final bin.
        let p = BinPartition::uniform(0.6, 0.6, 1.0).unwrap();
        assert!((p.max_dxi() - 0.6).abs() < 1e-12);
        assert!((*p.xi_edges().last().unwrap() - 1.0).abs() < 1e-12);
        assert!(BinPartition::uniform(0.0, 0.5, 1.0).is_err());
    }

    #[test]
    fn partition_spec_forms() {
        let spec: PartitionSpec =
            serde_json::from_str(r#"{"xi_edges":[-1.0,0.0,1.0],"k_edges":[-1.0,1.0]}"#).unwrap();
        assert_eq!(spec.build().unwrap().n_xi_bins(), 2);
        let spec: PartitionSpec =
            serde_json::from_str(r#"{"uniform":{"dxi":0.5,"dk":0.5,"extent":2.0}}"#).unwrap();
        assert_eq!(spec.build().unwrap().n_xi_bins(), 8);
        assert!(serde_json::from_str::<PartitionSpec>(r#"{"bogus":1}"#).is_err());
    }

    fn vacuum_density() -> PhaseDensity {
        let f = fock_state(0, 0).unwrap();
        density(&f.into(), 0, &PhaseGrid::auto(0, 0)).unwrap()
    }

    #[test]
    fn single_bin_captures_everything() {
        let w = vacuum_density();
        let l = w.grid().min_extent();
        let part = BinPartition::new(vec![-l, l], vec![-l, l]).unwrap();
        let b = bin_probs(&w, &part).unwrap();
        assert!(!b.catch_all());
        assert!(b.residual() < 1e-9);
        assert!((b.dist().probs()[0] - 1.0).abs() < 2e-6);
    }

    #[test]
    fn vacuum_quadrants_are_equal() {
        let w = vacuum_density();
        let l = w.grid().min_extent();
        let part = BinPartition::new(vec![-l, 0.0, l], vec![-l, 0.0, l]).unwrap();
        let b = bin_probs(&w, &part).unwrap();
        for l_idx in 0..2 {
            for m_idx in 0..2 {
                assert!(
                    (b.prob(l_idx, m_idx) - 0.25).abs() < 1e-6,
                    "quadrant ({l_idx}, {m_idx}) = {}",
                    b.prob(l_idx, m_idx)
                );
            }
        }
    }

    #[test]
    fn refinement_is_additive() {
        let f = random_state(5, 5);
        let grid = PhaseGrid::square(PhaseGrid::required_extent(5, 0), 128).unwrap();
        let w = density(&f.into(), 0, &grid).unwrap();
        let l = grid.min_extent();
        let coarse = BinPartition::uniform(l, l, l).unwrap();
        let fine = BinPartition::uniform(0.5 * l, 0.5 * l, l).unwrap();
        let cb = bin_probs(&w, &coarse).unwrap();
        let fb = bin_probs(&w, &fine).unwrap();
        for lc in 0..2 {
            for mc in 0..2 {
                let children: f64 = (0..2)
                    .flat_map(|a| (0..2).map(move |b| (2 * lc + a, 2 * mc + b)))
                    .map(|(lf, mf)| fb.prob(lf, mf))
                    .sum();
                assert!(
                    (cb.prob(lc, mc) - children).abs() < 1e-9,
                    "refinement mismatch at ({lc}, {mc})"
                );
            }
        }
    }

    #[test]
    fn small_window_gets_catch_all() {
        let w = vacuum_density();
        let part = BinPartition::new(vec![-2.0, 2.0], vec![-2.0, 2.0]).unwrap();
        let b = bin_probs(&w, &part).unwrap();
        assert!(b.catch_all());
        assert_eq!(b.dist().len(), 2);
        assert!(b.residual() > 0.05 && b.residual() < 0.15);
        assert!((b.dist().probs().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn partition_outside_grid_rejected() {
        let w = vacuum_density();
        let part = BinPartition::new(vec![-100.0, 100.0], vec![-1.0, 1.0]).unwrap();
        assert!(matches!(bin_probs(&w, &part), Err(Error::Partition(_))));
    }
}
