//! Acceptance gate: one test per numbered criterion, each printing a single
//! `ACCEPTANCE cN: PASS|FAIL` line (run with `--nocapture` to see them all)
//! before asserting. Criterion 11 (CLI smoke + wall-clock budget) lives with
//! the binary crate.

use std::time::{Duration, Instant};

use once_cell::sync::Lazy;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nxent_core::entropy::{
    alpha_log, renyi_continuous, renyi_discrete, tsallis_continuous, tsallis_discrete,
    EntropyOrder,
};
use nxent_core::probability::{bin_probs, number_dist, BinPartition, DiscreteDist};
use nxent_core::relations::{
    binned_reports, check_riesz, conjugate, renyi_reports, tsallis_min_oracle, tsallis_reports,
};
use nxent_core::states::{fock_state, mixed, random_state, State};
use nxent_core::transform::{
    density, eta_estimate, transform_basis, transform_state, PhaseDensity, PhaseGrid,
};
use nxent_core::{check_tracing, INV_2PI, INV_SQRT_2PI, LN_2PI};

const SWEEP_ALPHAS: [f64; 6] = [0.6, 0.8, 1.0, 1.5, 2.0, 4.0];

fn verdict(criterion: usize, failures: &[String]) {
    let ok = failures.is_empty();
    println!("ACCEPTANCE c{criterion}: {}", if ok { "PASS" } else { "FAIL" });
    assert!(
        ok,
        "criterion {criterion}: {} failure(s):\n{}",
        failures.len(),
        failures.join("\n")
    );
}

/// Sweep corpus shared by criteria 4-7: 50 random pure states and 10 random
/// mixtures, all truncated at N = 15, with their number distributions and
/// joint densities for detector indices 0 and 1.
struct Corpus {
    labels: Vec<String>,
    dists: Vec<DiscreteDist>,
    densities: Vec<[PhaseDensity; 2]>,
}

static CORPUS: Lazy<Corpus> = Lazy::new(|| {
    let mut states: Vec<(String, State)> = Vec::with_capacity(60);
    for seed in 0..50u64 {
        states.push((format!("pure-{seed}"), random_state(seed, 15).into()));
    }
    for i in 0..10u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(9000 + i);
        let mut weights = [0.0f64; 3];
        for w in &mut weights {
            *w = rng.random_range(0.1..1.0);
        }
        let total: f64 = weights.iter().sum();
        let parts = vec![
            (weights[0] / total, random_state(100 + 3 * i, 15)),
            (weights[1] / total, random_state(101 + 3 * i, 15)),
            (weights[2] / total, random_state(102 + 3 * i, 15)),
        ];
        states.push((format!("mix-{i}"), mixed(parts).expect("weights normalized").into()));
    }
    let mut labels = Vec::new();
    let mut dists = Vec::new();
    let mut densities = Vec::new();
    for (label, state) in states {
        let w0 = density(&state, 0, &PhaseGrid::auto(15, 0)).expect("corpus density n0=0");
        let w1 = density(&state, 1, &PhaseGrid::auto(15, 1)).expect("corpus density n0=1");
        dists.push(number_dist(&state));
        densities.push([w0, w1]);
        labels.push(label);
    }
    Corpus {
        labels,
        dists,
        densities,
    }
});

/// Ground-state density on a wide grid: orders below one need the extra
/// extent to certify the tail, and several anchors compare against Gaussian
/// closed forms.
static VACUUM: Lazy<(PhaseDensity, DiscreteDist)> = Lazy::new(|| {
    let state: State = fock_state(0, 0).expect("ground state").into();
    let grid = PhaseGrid::square(14.0, 512).expect("vacuum grid");
    (
        density(&state, 0, &grid).expect("vacuum density"),
        number_dist(&state),
    )
});

#[test]
fn c01_eta_supremum_for_the_ground_window() {
    let start = Instant::now();
    let grid = PhaseGrid::auto(30, 0);
    let est = eta_estimate(0, 30, &grid).expect("eta estimate");
    let elapsed = start.elapsed();

    let mut failures = Vec::new();
    if (est.eta - INV_SQRT_2PI).abs() > 1e-6 {
        failures.push(format!(
            "eta = {:.12}, expected (2 pi)^(-1/2) = {:.12} within 1e-6",
            est.eta, INV_SQRT_2PI
        ));
    }
    if est.n != 0 {
        failures.push(format!("maximizer basis index {} != 0", est.n));
    }
    if est.xi.abs() > 1e-3 || est.k.abs() > 1e-3 {
        failures.push(format!(
            "maximizer at ({:.6}, {:.6}), expected the origin",
            est.xi, est.k
        ));
    }
    if elapsed > Duration::from_secs(60) {
        failures.push(format!("took {elapsed:?}, budget 60 s"));
    }
    verdict(1, &failures);
}

#[test]
fn c02_ground_window_kernel_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(20_000);
    let mut failures = Vec::new();
    for trial in 0..1000 {
        let xi: f64 = rng.random_range(-10.0..10.0);
        let k: f64 = rng.random_range(-10.0..10.0);
        let got = transform_basis(0, 0, xi, k).expect("kernel value").norm();
        let want = INV_SQRT_2PI * (-(xi * xi + k * k) / 4.0).exp();
        if (got - want).abs() > 1e-9 {
            failures.push(format!(
                "trial {trial} at ({xi:.4}, {k:.4}): |kernel| = {got:.12e}, closed form {want:.12e}"
            ));
        }
    }
    verdict(2, &failures);
}

#[test]
fn c03_orthonormality_and_parseval() {
    let mut failures = Vec::new();
    for n0 in 0..3usize {
        let grid = PhaseGrid::auto(12, n0);
        let fields: Vec<_> = (0..=12)
            .map(|n| {
                transform_state(&fock_state(n, 12).expect("basis vector"), n0, &grid)
                    .expect("basis transform")
            })
            .collect();
        for m in 0..fields.len() {
            for n in m..fields.len() {
                let inner = fields[m].grid_inner(&fields[n]).expect("same grid");
                let delta = if m == n { 1.0 } else { 0.0 };
                let err = (inner - delta).norm();
                if err > 1e-6 {
                    failures.push(format!(
                        "n0 = {n0}: <~phi_{m}, ~phi_{n}> = {inner}, off by {err:.3e}"
                    ));
                }
            }
        }
    }

    let truncations = [30usize, 8, 17, 25, 12, 21, 28, 5, 15, 30];
    for i in 0..20usize {
        let n_trunc = truncations[i % truncations.len()];
        let n0 = i % 3;
        let f = random_state(400 + i as u64, n_trunc);
        let grid = PhaseGrid::auto(n_trunc, n0);
        let field = transform_state(&f, n0, &grid).expect("random-state transform");
        let norm = field.norm_sq();
        if (norm - 1.0).abs() > 2e-6 {
            failures.push(format!(
                "state {i} (N = {n_trunc}, n0 = {n0}): field mass {norm:.9}, off by {:.3e}",
                (norm - 1.0).abs()
            ));
        }
    }
    verdict(3, &failures);
}

#[test]
fn c04_renyi_uncertainty_sum_sweep() {
    let mut failures = Vec::new();
    let corpus = &*CORPUS;
    for (idx, dens) in corpus.densities.iter().enumerate() {
        let s = &corpus.dists[idx];
        for (n0, w) in dens.iter().enumerate() {
            for &alpha in &SWEEP_ALPHAS {
                let reports = renyi_reports(w, s, alpha).expect("renyi reports");
                let expected = if alpha == 1.0 { 1 } else { 2 };
                if reports.len() != expected {
                    failures.push(format!(
                        "{} n0={n0} alpha={alpha}: {} assignment(s), expected {expected}",
                        corpus.labels[idx],
                        reports.len()
                    ));
                }
                for r in &reports {
                    if (r.bound - LN_2PI).abs() > 1e-12 {
                        failures.push(format!(
                            "{} n0={n0} alpha={alpha}: bound {} != ln 2 pi",
                            corpus.labels[idx], r.bound
                        ));
                    }
                    if r.margin < -1e-5 {
                        failures.push(format!(
                            "{} n0={n0} orders ({:?},{:?}): margin {:.3e}",
                            corpus.labels[idx], r.alpha, r.beta, r.margin
                        ));
                    }
                }
            }
        }
    }

    let (vacuum, vacuum_s) = &*VACUUM;
    let reports = renyi_reports(vacuum, vacuum_s, 2.0).expect("vacuum renyi");
    let direct = reports
        .iter()
        .find(|r| r.alpha == Some(2.0))
        .expect("order-2 assignment on the density");
    let ln2 = std::f64::consts::LN_2;
    if (direct.margin - ln2).abs() > 1e-3 {
        failures.push(format!(
            "vacuum alpha=2 margin {:.9}, expected ln 2 = {ln2:.9} within 1e-3",
            direct.margin
        ));
    }
    verdict(4, &failures);
}

#[test]
fn c05_tsallis_uncertainty_sum_sweep() {
    let mut failures = Vec::new();
    let corpus = &*CORPUS;
    for (idx, dens) in corpus.densities.iter().enumerate() {
        let s = &corpus.dists[idx];
        for (n0, w) in dens.iter().enumerate() {
            for &alpha in &SWEEP_ALPHAS {
                let reports = tsallis_reports(w, s, alpha).expect("tsallis reports");
                for r in &reports {
                    if r.margin < -1e-5 {
                        failures.push(format!(
                            "{} n0={n0} orders ({:?},{:?}): margin {:.3e}",
                            corpus.labels[idx], r.alpha, r.beta, r.margin
                        ));
                    }
                }
            }
        }
    }

    let (vacuum, vacuum_s) = &*VACUUM;
    let reports = tsallis_reports(vacuum, vacuum_s, 2.0).expect("vacuum tsallis");
    let direct = reports
        .iter()
        .find(|r| r.alpha == Some(2.0))
        .expect("order-2 assignment on the density");
    let want_lhs = 1.0 - 0.5 * INV_2PI; // 1 - (4 pi)^{-1}
    let want_bound = 1.0 - INV_2PI; // ln_2(2 pi) = 1 - (2 pi)^{-1}
    if (direct.lhs - want_lhs).abs() > 1e-3 {
        failures.push(format!(
            "vacuum alpha=2 lhs {:.9}, expected {want_lhs:.9}",
            direct.lhs
        ));
    }
    if (direct.bound - want_bound).abs() > 1e-9 {
        failures.push(format!(
            "vacuum alpha=2 bound {:.12}, expected {want_bound:.12}",
            direct.bound
        ));
    }
    if (direct.margin - 0.0796).abs() > 1e-3 {
        failures.push(format!(
            "vacuum alpha=2 margin {:.6}, expected 0.0796 within 1e-3",
            direct.margin
        ));
    }
    verdict(5, &failures);
}

#[test]
fn c06_riesz_norm_inequalities_sweep() {
    let mut failures = Vec::new();
    let corpus = &*CORPUS;
    for (idx, dens) in corpus.densities.iter().enumerate() {
        let s = &corpus.dists[idx];
        for (n0, w) in dens.iter().enumerate() {
            for &alpha in &SWEEP_ALPHAS {
                if alpha == 1.0 {
                    continue; // the norm inequalities need a genuine pair
                }
                let pair = conjugate(alpha).expect("conjugate pair");
                let reports = check_riesz(w, s, &pair, INV_SQRT_2PI).expect("riesz reports");
                for r in &reports {
                    if r.margin < -1e-5 {
                        failures.push(format!(
                            "{} n0={n0} alpha={alpha} {}: margin {:.3e}",
                            corpus.labels[idx], r.relation, r.margin
                        ));
                    }
                }
            }
        }
    }
    verdict(6, &failures);
}

#[test]
fn c07_binned_relations_sweep() {
    let mut failures = Vec::new();
    let corpus = &*CORPUS;
    for &delta in &[0.25f64, 0.5, 1.0] {
        let part = BinPartition::uniform(delta, delta, 16.0).expect("uniform partition");
        for (idx, dens) in corpus.densities.iter().enumerate() {
            let s = &corpus.dists[idx];
            for (n0, w) in dens.iter().enumerate() {
                let binned = bin_probs(w, &part).expect("binning");
                for &alpha in &SWEEP_ALPHAS {
                    let reports = binned_reports(&binned, s, alpha).expect("binned reports");
                    for r in &reports {
                        if r.trivial {
                            failures.push(format!(
                                "{} n0={n0} delta={delta}: flagged trivial below 2 pi",
                                corpus.labels[idx]
                            ));
                        }
                        if !r.pass {
                            failures.push(format!(
                                "{} n0={n0} delta={delta} alpha={alpha} {}: margin {:.3e}",
                                corpus.labels[idx], r.relation, r.margin
                            ));
                        }
                    }
                }
            }
        }
    }

    // Bins of area 9 > 2 pi make the bounds non-positive; the reports must
    // say so rather than celebrate a vacuous pass.
    let wide = BinPartition::uniform(3.0, 3.0, 15.0).expect("wide partition");
    let binned = bin_probs(&corpus.densities[0][0], &wide).expect("wide binning");
    let reports = binned_reports(&binned, &corpus.dists[0], 2.0).expect("wide reports");
    for r in &reports {
        if !r.trivial {
            failures.push(format!("{}: area 9 bins not flagged trivial", r.relation));
        }
        if r.bound > 0.0 {
            failures.push(format!(
                "{}: bound {:.6} should be non-positive at area 9",
                r.relation, r.bound
            ));
        }
        if !r.pass {
            failures.push(format!("{}: trivial bound still failed", r.relation));
        }
    }
    verdict(7, &failures);
}

#[test]
fn c08_tracing_identities_sweep() {
    let mut failures = Vec::new();
    for i in 0..20u64 {
        let state: State = random_state(500 + i, 10).into();
        for n0 in 0..3usize {
            let grid = PhaseGrid::auto(10, n0);
            let report = check_tracing(&state, n0, &grid).expect("tracing report");
            if !report.pass {
                failures.push(format!(
                    "state {i} n0={n0}: worst residual {:.3e} ({})",
                    report.lhs,
                    report.note.as_deref().unwrap_or("no note")
                ));
            }
        }
    }
    verdict(8, &failures);
}

#[test]
fn c09_tsallis_bound_oracle() {
    let mut failures = Vec::new();
    for &alpha in &[1.1f64, 1.5, 2.0, 3.0] {
        let (_, value) = tsallis_min_oracle(alpha, INV_SQRT_2PI).expect("oracle run");
        let order = EntropyOrder::new(alpha).expect("valid order");
        let want = alpha_log(std::f64::consts::TAU, order).expect("ln_alpha 2 pi");
        if (value - want).abs() > 1e-8 {
            failures.push(format!(
                "alpha={alpha}: minimum {value:.12}, expected ln_alpha 2 pi = {want:.12}"
            ));
        }
    }
    verdict(9, &failures);
}

#[test]
fn c10_shannon_continuity() {
    let mut failures = Vec::new();
    let hi = EntropyOrder::new(1.0 + 1e-5).expect("order above one");
    let lo = EntropyOrder::new(1.0 - 1e-5).expect("order below one");
    let one = EntropyOrder::new(1.0).expect("shannon order");

    let mut rng = ChaCha8Rng::seed_from_u64(31_337);
    for trial in 0..30 {
        let dim = rng.random_range(2..40);
        let raw: Vec<f64> = (0..dim).map(|_| rng.random_range(1e-6..1.0)).collect();
        let dist = DiscreteDist::renormalized(raw, f64::INFINITY).expect("normalizable");
        let r1 = renyi_discrete(&dist, one);
        let h1 = tsallis_discrete(&dist, one);
        for &order in &[hi, lo] {
            let dr = (renyi_discrete(&dist, order) - r1).abs();
            let dh = (tsallis_discrete(&dist, order) - h1).abs();
            if dr > 1e-4 {
                failures.push(format!("trial {trial}: Renyi jump {dr:.3e} at the order-1 point"));
            }
            if dh > 1e-4 {
                failures.push(format!(
                    "trial {trial}: Tsallis jump {dh:.3e} at the order-1 point"
                ));
            }
        }
    }

    let (vacuum, _) = &*VACUUM;
    let r1 = renyi_continuous(vacuum, one).expect("vacuum Shannon");
    if (r1 - (LN_2PI + 1.0)).abs() > 1e-4 {
        failures.push(format!(
            "vacuum differential Shannon entropy {r1:.9}, expected ln 2 pi + 1 = {:.9}",
            LN_2PI + 1.0
        ));
    }
    for &order in &[hi, lo] {
        let dr = (renyi_continuous(vacuum, order).expect("vacuum Renyi") - r1).abs();
        let h1 = tsallis_continuous(vacuum, one).expect("vacuum Tsallis at 1");
        let dh = (tsallis_continuous(vacuum, order).expect("vacuum Tsallis") - h1).abs();
        if dr > 1e-4 {
            failures.push(format!(
                "vacuum Renyi jump {dr:.3e} at order {}",
                order.value()
            ));
        }
        if dh > 1e-4 {
            failures.push(format!(
                "vacuum Tsallis jump {dh:.3e} at order {}",
                order.value()
            ));
        }
    }
    verdict(10, &failures);
}
