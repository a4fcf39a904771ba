//! `nxent`: file-driven checks of the entropic uncertainty relations between
//! photon-number statistics and the joint phase-space measurement.
//!
//! Every subcommand reads one JSON configuration file (see the README for the
//! schema) and writes its reports into an output directory. Exit codes:
//! 0 when every requested check passes, 1 when at least one relation fails,
//! 2 on configuration or I/O problems (with a message on standard error).
//! Report files are written via a temporary file and an atomic rename, and
//! all floats carry 17 significant digits, so identical configurations
//! produce byte-identical outputs.

use std::env;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use nxent_core::entropy::{
    alpha_log, renyi_continuous, renyi_discrete, tsallis_continuous, tsallis_discrete,
    EntropyOrder,
};
use nxent_core::export::{atomic_write, bins_csv, density_csv, dist_csv, format_g17, to_json_g17};
use nxent_core::probability::{bin_probs, number_dist, PartitionSpec};
use nxent_core::relations::{
    binned_reports, check_riesz, conjugate, minimize_entropy_sum, renyi_reports, tsallis_reports,
    MinimizeOptions, RelationReport, Tolerances,
};
use nxent_core::states::{State, StateSpec};
use nxent_core::tolerances::MARGIN_TOL;
use nxent_core::transform::{density, eta_estimate, PhaseGrid};
use nxent_core::{INV_SQRT_2PI, LN_2PI};

#[derive(Parser)]
#[command(
    name = "nxent",
    version,
    about = "Entropic uncertainty checks for joint number / phase-space measurements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Renyi, Tsallis and norm inequalities for one state
    Check(CommonArgs),
    /// Tabulate both entropy sums over the configured orders
    ScanAlpha(CommonArgs),
    /// Coarse-grain the density and check the binned relations
    Bins(CommonArgs),
    /// Estimate the kernel supremum eta and its maximizer
    Eta(CommonArgs),
    /// Search for a pure state minimizing the Renyi sum
    Minimize(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Path to the JSON run configuration
    #[arg(long)]
    config: PathBuf,
    /// Output directory (overrides `out_dir` from the configuration)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed override for seeded subcommands
    #[arg(long)]
    seed: Option<u64>,
}

impl Command {
    fn args(&self) -> &CommonArgs {
        match self {
            Command::Check(a)
            | Command::ScanAlpha(a)
            | Command::Bins(a)
            | Command::Eta(a)
            | Command::Minimize(a) => a,
        }
    }
}

/// One run configuration; unknown keys are rejected so typos surface early.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RunConfig {
    /// Inline state description (exactly one of `state` / `state_path`).
    #[serde(default)]
    state: Option<StateSpec>,
    /// Path to a JSON file holding a state description.
    #[serde(default)]
    state_path: Option<PathBuf>,
    /// Detector excitation index.
    #[serde(default)]
    n0: usize,
    /// `"auto"` or `{ "extent": <f64>, "points": <usize> }`.
    #[serde(default)]
    grid: GridSpec,
    /// Entropy orders; every value must exceed 1/2.
    #[serde(default)]
    alphas: Vec<f64>,
    /// Bin partition, required by `bins`.
    #[serde(default)]
    partition: Option<PartitionSpec>,
    /// Default output directory (the `--out` flag wins).
    #[serde(default)]
    out_dir: Option<PathBuf>,
    /// Margin slack override for pass/fail decisions.
    #[serde(default)]
    margin_tolerance: Option<f64>,
    /// Seed for seeded subcommands (the `--seed` flag wins).
    #[serde(default)]
    seed: Option<u64>,
    /// Largest basis index scanned by `eta` (default 30).
    #[serde(default)]
    eta_nmax: Option<usize>,
    /// Search parameters for `minimize`.
    #[serde(default)]
    minimize: Option<MinimizeConfig>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GridSpec {
    Named(String),
    Explicit(ExplicitGrid),
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec::Named("auto".to_owned())
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExplicitGrid {
    extent: f64,
    points: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MinimizeConfig {
    alpha: f64,
    truncation: usize,
    #[serde(default)]
    starts: Option<usize>,
    #[serde(default)]
    sweeps: Option<usize>,
    #[serde(default)]
    grid_points: Option<usize>,
    #[serde(default)]
    step: Option<f64>,
}

#[derive(Serialize)]
struct ReportFile<'a> {
    command: &'a str,
    n0: usize,
    all_pass: bool,
    reports: &'a [RelationReport],
}

#[derive(Serialize)]
struct EtaFile {
    n0: usize,
    nmax: usize,
    eta: f64,
    n: usize,
    xi: f64,
    k: f64,
    universal_bound: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<bool, String> {
    configure_threads()?;
    let args = cli.command.args();
    let config = load_config(&args.config)?;
    let out_dir = args
        .out
        .clone()
        .or_else(|| config.out_dir.clone())
        .unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&out_dir)
        .map_err(|e| format!("creating output directory {}: {e}", out_dir.display()))?;
    let seed = args.seed.or(config.seed).unwrap_or(0);
    match &cli.command {
        Command::Check(_) => cmd_check(&config, &out_dir),
        Command::ScanAlpha(_) => cmd_scan_alpha(&config, &out_dir),
        Command::Bins(_) => cmd_bins(&config, &out_dir),
        Command::Eta(_) => cmd_eta(&config, &out_dir),
        Command::Minimize(_) => cmd_minimize(&config, &out_dir, seed),
    }
}

/// Honor `NXENT_THREADS`; 0 or unset leaves the parallelism automatic.
fn configure_threads() -> Result<(), String> {
    let Ok(raw) = env::var("NXENT_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("NXENT_THREADS must be a non-negative integer, got {raw:?}"))?;
    if threads == 0 {
        return Ok(());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| format!("configuring the thread pool: {e}"))
}

fn load_config(path: &Path) -> Result<RunConfig, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?;
    let config: RunConfig =
        serde_json::from_str(&text).map_err(|e| format!("parsing {}: {e}", path.display()))?;
    if let Some(tol) = config.margin_tolerance {
        if !tol.is_finite() || tol < 0.0 {
            return Err(format!("margin_tolerance must be non-negative, got {tol}"));
        }
    }
    Ok(config)
}

fn load_state(config: &RunConfig) -> Result<State, String> {
    let built = match (&config.state, &config.state_path) {
        (Some(spec), None) => spec.build(),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| format!("reading state file {}: {e}", path.display()))?;
            let spec: StateSpec = serde_json::from_str(&text)
                .map_err(|e| format!("parsing state file {}: {e}", path.display()))?;
            spec.build()
        }
        (Some(_), Some(_)) => {
            return Err("config must set exactly one of `state` and `state_path`".to_owned())
        }
        (None, None) => return Err("config needs a `state` or a `state_path`".to_owned()),
    };
    built.map_err(|e| format!("building the state: {e}"))
}

fn truncation_of(state: &State) -> usize {
    state
        .components()
        .iter()
        .map(|(_, f)| f.n_trunc())
        .max()
        .unwrap_or(0)
}

fn resolve_grid(config: &RunConfig, n_trunc: usize) -> Result<PhaseGrid, String> {
    match &config.grid {
        GridSpec::Named(name) if name == "auto" => Ok(PhaseGrid::auto(n_trunc, config.n0)),
        GridSpec::Named(other) => Err(format!(
            "unknown grid {other:?}; use \"auto\" or {{\"extent\": .., \"points\": ..}}"
        )),
        GridSpec::Explicit(g) => {
            PhaseGrid::square(g.extent, g.points).map_err(|e| format!("grid: {e}"))
        }
    }
}

fn sorted_alphas(config: &RunConfig) -> Result<Vec<f64>, String> {
    if config.alphas.is_empty() {
        return Err("config needs a non-empty `alphas` list".to_owned());
    }
    if config.alphas.iter().any(|a| !a.is_finite()) {
        return Err("every entry of `alphas` must be finite".to_owned());
    }
    let mut alphas = config.alphas.clone();
    alphas.sort_by(|a, b| a.partial_cmp(b).expect("finite orders"));
    alphas.dedup();
    Ok(alphas)
}

/// Re-judge `pass` when the configuration overrides the margin slack.
fn apply_margin_override(config: &RunConfig, reports: &mut [RelationReport]) {
    if let Some(tol) = config.margin_tolerance {
        for r in reports {
            r.tolerances = Tolerances { margin: tol };
            r.pass = r.margin >= -tol;
        }
    }
}

fn margin_slack(config: &RunConfig) -> f64 {
    config.margin_tolerance.unwrap_or(MARGIN_TOL)
}

fn report_line(r: &RelationReport) -> String {
    let opt = |v: Option<f64>| v.map_or_else(|| "-".to_owned(), |x| format!("{x:.4}"));
    format!(
        "{:<16} alpha={:<7} beta={:<7} margin={:+.6e}{} {}",
        r.relation,
        opt(r.alpha),
        opt(r.beta),
        r.margin,
        if r.trivial { " (trivial bound)" } else { "" },
        if r.pass { "PASS" } else { "FAIL" }
    )
}

fn write_report(out: &Path, command: &str, n0: usize, reports: &[RelationReport]) -> Result<bool, String> {
    let all_pass = reports.iter().all(|r| r.pass);
    let file = ReportFile {
        command,
        n0,
        all_pass,
        reports,
    };
    let json = to_json_g17(&file).map_err(|e| format!("serializing the report: {e}"))?;
    atomic_write(&out.join("report.json"), json.as_bytes())
        .map_err(|e| format!("writing report.json: {e}"))?;
    Ok(all_pass)
}

fn cmd_check(config: &RunConfig, out: &Path) -> Result<bool, String> {
    let alphas = sorted_alphas(config)?;
    let state = load_state(config)?;
    let grid = resolve_grid(config, truncation_of(&state))?;
    let w = density(&state, config.n0, &grid).map_err(|e| format!("density: {e}"))?;
    let s = number_dist(&state);

    let mut reports = Vec::new();
    for &alpha in &alphas {
        reports.extend(
            renyi_reports(&w, &s, alpha).map_err(|e| format!("Renyi sum at {alpha}: {e}"))?,
        );
        reports.extend(
            tsallis_reports(&w, &s, alpha).map_err(|e| format!("Tsallis sum at {alpha}: {e}"))?,
        );
        if alpha != 1.0 {
            let pair = conjugate(alpha).map_err(|e| format!("order {alpha}: {e}"))?;
            reports.extend(
                check_riesz(&w, &s, &pair, INV_SQRT_2PI)
                    .map_err(|e| format!("norm inequality at {alpha}: {e}"))?,
            );
        }
    }
    apply_margin_override(config, &mut reports);
    for r in &reports {
        println!("{}", report_line(r));
    }

    let all_pass = write_report(out, "check", config.n0, &reports)?;
    atomic_write(&out.join("density.csv"), density_csv(&w).as_bytes())
        .map_err(|e| format!("writing density.csv: {e}"))?;
    atomic_write(&out.join("number_dist.csv"), dist_csv(&s).as_bytes())
        .map_err(|e| format!("writing number_dist.csv: {e}"))?;
    Ok(all_pass)
}

fn cmd_scan_alpha(config: &RunConfig, out: &Path) -> Result<bool, String> {
    let mut alphas = sorted_alphas(config)?;
    if alphas.len() < 2 {
        return Err("scan-alpha needs at least two distinct orders in `alphas`".to_owned());
    }
    if !alphas.contains(&1.0) {
        alphas.push(1.0);
        alphas.sort_by(|a, b| a.partial_cmp(b).expect("finite orders"));
    }

    let state = load_state(config)?;
    let grid = resolve_grid(config, truncation_of(&state))?;
    let w = density(&state, config.n0, &grid).map_err(|e| format!("density: {e}"))?;
    let s = number_dist(&state);

    // One row per order, with the caller's order on the density and its
    // conjugate on the number distribution.
    let mut csv = String::from(
        "alpha,beta,renyi_lhs,renyi_bound,tsallis_lhs,tsallis_bound,margin_r,margin_t\n",
    );
    let slack = margin_slack(config);
    let mut all_pass = true;
    for &alpha in &alphas {
        let pair = conjugate(alpha).map_err(|e| format!("order {alpha}: {e}"))?;
        let beta = if alpha == 1.0 {
            1.0
        } else {
            alpha / (2.0 * alpha - 1.0)
        };
        let order_w = EntropyOrder::new(alpha).map_err(|e| format!("order {alpha}: {e}"))?;
        let order_s = EntropyOrder::new(beta).map_err(|e| format!("order {beta}: {e}"))?;
        let order_mu = EntropyOrder::new(pair.mu()).map_err(|e| format!("order: {e}"))?;

        let renyi_lhs = renyi_continuous(&w, order_w)
            .map_err(|e| format!("Renyi entropy at {alpha}: {e}"))?
            + renyi_discrete(&s, order_s);
        let tsallis_lhs = tsallis_continuous(&w, order_w)
            .map_err(|e| format!("Tsallis entropy at {alpha}: {e}"))?
            + tsallis_discrete(&s, order_s);
        let renyi_bound = LN_2PI;
        let tsallis_bound = alpha_log(std::f64::consts::TAU, order_mu)
            .map_err(|e| format!("deformed log: {e}"))?;
        let margin_r = renyi_lhs - renyi_bound;
        let margin_t = tsallis_lhs - tsallis_bound;
        all_pass &= margin_r >= -slack && margin_t >= -slack;

        for (i, v) in [
            alpha,
            beta,
            renyi_lhs,
            renyi_bound,
            tsallis_lhs,
            tsallis_bound,
            margin_r,
            margin_t,
        ]
        .iter()
        .enumerate()
        {
            if i > 0 {
                csv.push(',');
            }
            csv.push_str(&format_g17(*v));
        }
        csv.push('\n');
    }

    atomic_write(&out.join("alpha_scan.csv"), csv.as_bytes())
        .map_err(|e| format!("writing alpha_scan.csv: {e}"))?;
    println!(
        "scanned {} orders; margins {}",
        alphas.len(),
        if all_pass { "all non-negative" } else { "VIOLATED" }
    );
    Ok(all_pass)
}

fn cmd_bins(config: &RunConfig, out: &Path) -> Result<bool, String> {
    let alphas = sorted_alphas(config)?;
    let spec = config
        .partition
        .as_ref()
        .ok_or_else(|| "bins needs a `partition` in the config".to_owned())?;
    let part = spec.build().map_err(|e| format!("partition: {e}"))?;

    let state = load_state(config)?;
    let grid = resolve_grid(config, truncation_of(&state))?;
    let w = density(&state, config.n0, &grid).map_err(|e| format!("density: {e}"))?;
    let s = number_dist(&state);
    let binned = bin_probs(&w, &part).map_err(|e| format!("binning: {e}"))?;

    let mut reports = Vec::new();
    for &alpha in &alphas {
        let mut batch = binned_reports(&binned, &s, alpha)
            .map_err(|e| format!("binned relations at {alpha}: {e}"))?;
        for r in &mut batch {
            r.n0 = Some(config.n0);
        }
        reports.extend(batch);
    }
    apply_margin_override(config, &mut reports);
    for r in &reports {
        println!("{}", report_line(r));
    }

    let all_pass = write_report(out, "bins", config.n0, &reports)?;
    atomic_write(&out.join("bins.csv"), bins_csv(&binned, &part).as_bytes())
        .map_err(|e| format!("writing bins.csv: {e}"))?;
    Ok(all_pass)
}

fn cmd_eta(config: &RunConfig, out: &Path) -> Result<bool, String> {
    let nmax = config.eta_nmax.unwrap_or(30);
    let grid = resolve_grid(config, nmax)?;
    let est = eta_estimate(config.n0, nmax, &grid).map_err(|e| format!("eta search: {e}"))?;

    println!("eta = {}", format_g17(est.eta));
    println!(
        "maximizer: n = {}, xi = {}, k = {}",
        est.n,
        format_g17(est.xi),
        format_g17(est.k)
    );
    println!(
        "universal bound (2 pi)^(-1/2) = {}",
        format_g17(INV_SQRT_2PI)
    );

    let file = EtaFile {
        n0: config.n0,
        nmax,
        eta: est.eta,
        n: est.n,
        xi: est.xi,
        k: est.k,
        universal_bound: INV_SQRT_2PI,
    };
    let json = to_json_g17(&file).map_err(|e| format!("serializing eta.json: {e}"))?;
    atomic_write(&out.join("eta.json"), json.as_bytes())
        .map_err(|e| format!("writing eta.json: {e}"))?;
    Ok(true)
}

fn cmd_minimize(config: &RunConfig, out: &Path, seed: u64) -> Result<bool, String> {
    let mc = config
        .minimize
        .as_ref()
        .ok_or_else(|| "minimize needs a `minimize` block in the config".to_owned())?;
    let defaults = MinimizeOptions::default();
    let opts = MinimizeOptions {
        starts: mc.starts.unwrap_or(defaults.starts),
        sweeps: mc.sweeps.unwrap_or(defaults.sweeps),
        grid_points: mc.grid_points.unwrap_or(defaults.grid_points),
        initial_step: mc.step.unwrap_or(defaults.initial_step),
    };
    let (winner, report) = minimize_entropy_sum(mc.alpha, config.n0, mc.truncation, seed, &opts)
        .map_err(|e| format!("minimizer: {e}"))?;

    let mut reports = vec![report];
    apply_margin_override(config, &mut reports);
    println!("{}", report_line(&reports[0]));
    println!(
        "achieved sum {} against bound {}",
        format_g17(reports[0].lhs),
        format_g17(reports[0].bound)
    );

    let spec = StateSpec::from_fock_vector(&winner);
    let json = to_json_g17(&spec).map_err(|e| format!("serializing best_state.json: {e}"))?;
    atomic_write(&out.join("best_state.json"), json.as_bytes())
        .map_err(|e| format!("writing best_state.json: {e}"))?;
    write_report(out, "minimize", config.n0, &reports)
}
