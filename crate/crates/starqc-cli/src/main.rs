//! `starqc` — experiment harness for the star-quasiconvex toolkit.
//!
//! Five subcommands drive the library against the bundled objective
//! registry:
//!
//! * `check` — run the certification suite (segment inequalities, sublevel
//!   geometry, ray restrictions, growth, coercivity, and the two
//!   counterexample searches) and compare each verdict with the verdict the
//!   function's construction predicts; exit 1 on any mismatch.
//! * `solve` — run a first-order method (gradient, heavy ball, Nesterov, or
//!   the projected proximal iteration) and emit the iterate trace as CSV.
//! * `rates` — derive the method's guaranteed contraction factor from the
//!   registered (or sampled) constants, run the method, and verify the
//!   factor against the trace iteration by iteration; exit 1 if any
//!   iteration contracts slower than guaranteed.
//! * `plot` — render planar sublevel boundaries, and optionally a solver
//!   trajectory, as a standalone SVG.
//! * `bench` — time repeated solver runs (statistics on stderr; stdout
//!   stays deterministic).
//!
//! Experiments can live in a JSON file whose fields mirror the flags;
//! explicit flags always win. Sampling seeds resolve as flag, then file,
//! then the `STARQC_SEED` environment variable, then 42. Artifacts go to
//! `--out` when given, otherwise to stdout; diagnostics and progress always
//! go to stderr so stdout stays byte-reproducible.
//!
//! Exit status: 0 when every expectation holds, 1 when a certification or
//! rate expectation is violated, 2 on usage or configuration errors.

use std::fmt;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use starqc::analysis::{
    check_along_rays, check_nondecreasing_rays, check_quadratic_growth, check_star_quasiconvex,
    check_stronger_property, check_sublevel_star_shaped, check_supercoercive, estimate_modulus,
    find_quasar_violation, find_quasiconvexity_violation,
};
use starqc::error::Error;
use starqc::funcs::registry;
use starqc::report::{atomic_write, to_json_bytes, CheckReport, RateReport};
use starqc::sample::direction_fan;
use starqc::sets::RadialTable;
use starqc::solvers::{self, Method, RateConstants, RateQuantity, StopReason};
use starqc::{IterateTrace64, Objective64, SamplePlan64, SolverConfig64, StarShapedSet64};

/// Seed of last resort, used when neither flags, experiment file, nor
/// `STARQC_SEED` provide one.
const DEFAULT_SEED: u64 = 42;
/// Points per certification sample plan.
const DEFAULT_N_POINTS: usize = 4000;
/// Interior segment parameters examined per sampled point.
const LAMBDA_GRID: usize = 8;
/// Rays examined by the segment checks restricted to rays.
const RAY_DIRS: usize = 256;
/// Directions in the monotonicity fan.
const MONO_DIRS: usize = 128;
/// Steps per ray in the monotonicity check.
const MONO_STEPS: usize = 64;
/// Directions in the coercivity fan.
const COERCIVE_DIRS: usize = 64;
/// Directions and segment samples used when certifying a set's center.
const CENTER_DIRS: usize = 256;
const CENTER_SEGMENT_SAMPLES: usize = 33;
/// Objective evaluations granted to each inner proximal solve.
const PROX_BUDGET: usize = 60_000;
/// Independent sample streams tried per counterexample search. A single
/// stream can miss thin violation regions; a hit from any stream settles
/// the question, so later streams only run while nothing has been found.
const SEARCH_ATTEMPTS: u64 = 3;
/// Seed offset between consecutive search attempts.
const ATTEMPT_SEED_STRIDE: u64 = 7919;
/// Floor for the half-width of the aiming-violation search box. Aiming
/// failures concentrate in thin shells at large radius (where an objective's
/// relative slope `t·h'(t)/h(t)` bottoms out), so the search must reach
/// well past the evaluation box of small-box objectives.
const QUASAR_MIN_HALF_WIDTH: f64 = 8.0;
/// Growth modulus substituted when the sampled modulus is zero: the growth
/// check requires a strictly positive constant, and at this floor it
/// certifies plain nonnegativity of the optimality gap.
const MIN_GROWTH_MODULUS: f64 = 1e-12;
/// Angular resolution of plotted sublevel boundaries.
const PLOT_ANGLES: usize = 720;
/// Retry ladder for the outer bracket when building sublevel sets by radial
/// bisection: each failure to enclose the boundary doubles the bracket.
const SUBLEVEL_T_MAX_LADDER: usize = 5;
const SUBLEVEL_T_MAX_START: f64 = 10.0;
/// Boundary tolerance for sublevel radii.
const SUBLEVEL_TOL: f64 = 1e-10;

/// The full certification suite, in execution order.
const FULL_SUITE: &[&str] = &[
    "star_quasiconvex",
    "sublevel_star_shaped",
    "along_rays",
    "nondecreasing_rays",
    "stronger_property",
    "quadratic_growth",
    "supercoercive",
    "quasiconvexity_violation",
    "quasar_violation",
];

// ---------------------------------------------------------------------------
// Command line grammar
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "starqc",
    version,
    about = "Certification checks, first-order solvers, rate verification, and plots \
             for star-quasiconvex objectives",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Certify properties of an objective and compare against its known class
    Check(CheckArgs),
    /// Run a first-order method and emit the iterate trace as CSV
    Solve(SolveArgs),
    /// Verify a method's guaranteed linear rate against an actual trace
    Rates(SolveArgs),
    /// Render planar sublevel boundaries (optionally with a trajectory) as SVG
    Plot(PlotArgs),
    /// Time repeated solver runs; statistics go to stderr
    Bench(BenchArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Objective id (e.g. clover, quadratic:2:1) or an experiment JSON path
    #[arg(value_name = "FUNCTION_OR_EXPERIMENT")]
    target: Option<String>,
    /// Objective id from the registry
    #[arg(long = "fn", value_name = "ID")]
    function: Option<String>,
    /// "full" or a comma-separated list of check ids
    #[arg(long)]
    suite: Option<String>,
    /// Sample points per certification plan
    #[arg(long = "n-points")]
    n_points: Option<usize>,
    /// Also certify this set's center: all, ball:<r>, sublevel:<fn-id>:<delta>, or a radial-table JSON path
    #[arg(long)]
    set: Option<String>,
    /// Sampling seed (fallback: experiment file, then $STARQC_SEED, then 42)
    #[arg(long)]
    seed: Option<u64>,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct SolveArgs {
    /// Experiment JSON file; explicit flags override its fields
    #[arg(value_name = "EXPERIMENT_JSON")]
    experiment: Option<PathBuf>,
    /// Objective id from the registry
    #[arg(long = "fn", value_name = "ID")]
    function: Option<String>,
    /// gradient, heavy_ball, nesterov, or ppa
    #[arg(long)]
    method: Option<String>,
    /// Inertial / extrapolation weight: a number, or "auto"
    #[arg(long)]
    alpha: Option<String>,
    /// Step size (smooth methods) or proximal weight (ppa)
    #[arg(long)]
    beta: Option<f64>,
    /// Window parameter (> 1) of the extrapolated method
    #[arg(long)]
    eta: Option<f64>,
    /// Balance parameter inside the extrapolated method's window
    #[arg(long)]
    epsilon: Option<f64>,
    /// Lower bound on the proximal weights entering the guaranteed rate
    #[arg(long = "beta-prime")]
    beta_prime: Option<f64>,
    /// Start point, comma-separated (default: minimizer + 1 in each coordinate)
    #[arg(long)]
    x0: Option<String>,
    /// Iteration cap
    #[arg(long = "max-iter")]
    max_iter: Option<usize>,
    /// Stopping tolerance on the gradient norm / proximal step length
    #[arg(long)]
    tol: Option<f64>,
    /// Constraint set for ppa: all, ball:<r>, sublevel:<fn-id>:<delta>, or a radial-table JSON path
    #[arg(long)]
    set: Option<String>,
    /// Sampling seed (fallback: experiment file, then $STARQC_SEED, then 42)
    #[arg(long)]
    seed: Option<u64>,
    /// Write the artifact here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    #[command(flatten)]
    solve: SolveArgs,
    /// Sublevel heights to draw, comma-separated (default 2)
    #[arg(long)]
    delta: Option<String>,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    solve: SolveArgs,
    /// Number of timed runs (default 5)
    #[arg(long)]
    repeat: Option<usize>,
}

// ---------------------------------------------------------------------------
// Experiment files
// ---------------------------------------------------------------------------

/// One experiment described as JSON. Every field is optional; command-line
/// flags override whatever the file carries. Unknown fields are rejected so
/// typos surface as configuration errors instead of silent defaults.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExperimentSpec {
    function_id: Option<String>,
    set_id: Option<String>,
    method: Option<String>,
    /// A number, or the string "auto".
    alpha: Option<serde_json::Value>,
    beta: Option<f64>,
    eta: Option<f64>,
    epsilon: Option<f64>,
    beta_prime: Option<f64>,
    x0: Option<Vec<f64>>,
    max_iter: Option<usize>,
    tol: Option<f64>,
    checks: Option<Vec<String>>,
    n_points: Option<usize>,
    deltas: Option<Vec<f64>>,
    repeat: Option<usize>,
    seed: Option<u64>,
    csv_path: Option<PathBuf>,
    json_path: Option<PathBuf>,
    svg_path: Option<PathBuf>,
}

// ---------------------------------------------------------------------------
// Errors and exit codes
// ---------------------------------------------------------------------------

/// A usage or configuration failure; printed to stderr with exit status 2.
#[derive(Debug)]
struct CliError(String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Check(a) => cmd_check(a),
        Cmd::Solve(a) => cmd_solve(a),
        Cmd::Rates(a) => cmd_rates(a),
        Cmd::Plot(a) => cmd_plot(a),
        Cmd::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

// ---------------------------------------------------------------------------
// Shared resolution helpers
// ---------------------------------------------------------------------------

fn load_spec(path: Option<&Path>) -> Result<ExperimentSpec, CliError> {
    match path {
        None => Ok(ExperimentSpec::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| usage(format!("cannot read experiment file {}: {e}", p.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| usage(format!("invalid experiment file {}: {e}", p.display())))
        }
    }
}

fn resolve_seed(flag: Option<u64>, file: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = flag.or(file) {
        return Ok(s);
    }
    match std::env::var("STARQC_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| {
            usage(format!("STARQC_SEED must be a 64-bit unsigned integer, got {v:?}"))
        }),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

/// Half-width of the objective's evaluation box (largest coordinate bound,
/// floored at 1 so degenerate boxes still yield usable plans).
fn box_half(f: &Objective64) -> f64 {
    let (lo, hi) = &f.eval_box;
    lo.iter().chain(hi.iter()).fold(1.0_f64, |m, &b| m.max(b.abs()))
}

/// The reference point every segment is anchored at: the registered
/// minimizer, or the origin when none is registered.
fn center_of(f: &Objective64) -> Vec<f64> {
    f.minimizer.clone().unwrap_or_else(|| vec![0.0; f.dim])
}

fn parse_number_list(s: &str, what: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>()
                .map_err(|_| usage(format!("{what} entry {t:?} is not a number")))
        })
        .collect()
}

fn parse_method(s: &str) -> Result<Method, CliError> {
    match s {
        "gradient" => Ok(Method::Gradient),
        "heavy_ball" | "heavy-ball" | "heavyball" => Ok(Method::HeavyBall),
        "nesterov" => Ok(Method::Nesterov),
        "ppa" => Ok(Method::Ppa),
        other => Err(usage(format!(
            "unknown method {other:?}; expected gradient, heavy_ball, nesterov, or ppa"
        ))),
    }
}

/// Resolve the inertial weight from the flag (a number or "auto") or the
/// experiment file (a JSON number or the string "auto"). `None` means
/// "let the method pick its own in-window value".
fn resolve_alpha(
    flag: Option<&str>,
    file: Option<&serde_json::Value>,
) -> Result<Option<f64>, CliError> {
    if let Some(s) = flag {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(None);
        }
        return s
            .parse::<f64>()
            .map(Some)
            .map_err(|_| usage(format!("--alpha must be a number or \"auto\", got {s:?}")));
    }
    match file {
        None | Some(serde_json::Value::Null) => Ok(None),
        Some(serde_json::Value::String(s)) if s.eq_ignore_ascii_case("auto") => Ok(None),
        Some(serde_json::Value::Number(n)) => Ok(n.as_f64()),
        Some(other) => Err(usage(format!(
            "alpha in the experiment file must be a number or \"auto\", got {other}"
        ))),
    }
}

/// Build a constraint set from its textual description.
fn parse_set(s: &str, f: &Objective64) -> Result<StarShapedSet64, CliError> {
    if s == "all" {
        return Ok(StarShapedSet64::whole_space(f.dim, center_of(f)));
    }
    if let Some(r) = s.strip_prefix("ball:") {
        let radius: f64 = r
            .parse()
            .map_err(|_| usage(format!("ball radius {r:?} is not a number")))?;
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(usage(format!("ball radius must be positive and finite, got {radius}")));
        }
        return Ok(StarShapedSet64::ball(center_of(f), radius));
    }
    if let Some(rest) = s.strip_prefix("sublevel:") {
        let (fn_id, delta_str) = rest
            .rsplit_once(':')
            .ok_or_else(|| usage("sublevel set syntax is sublevel:<fn-id>:<delta>"))?;
        let delta: f64 = delta_str
            .parse()
            .map_err(|_| usage(format!("sublevel height {delta_str:?} is not a number")))?;
        let g = registry::<f64>(fn_id)?;
        return build_sublevel(&g, delta);
    }
    // Anything else is read as a radial-table JSON file.
    let text = std::fs::read_to_string(s).map_err(|e| {
        usage(format!(
            "--set {s:?} is not all, ball:<r>, or sublevel:<fn-id>:<delta>, \
             and does not read as a radial-table file: {e}"
        ))
    })?;
    let table: RadialTable =
        serde_json::from_str(&text).map_err(|e| usage(format!("radial-table file {s}: {e}")))?;
    Ok(StarShapedSet64::from_radial_table(table)?)
}

/// Build a sublevel set by radial bisection, doubling the outer bracket
/// until it clears the boundary in every probed direction.
fn build_sublevel(g: &Objective64, delta: f64) -> Result<StarShapedSet64, CliError> {
    let mut t_max = SUBLEVEL_T_MAX_START;
    for _ in 0..SUBLEVEL_T_MAX_LADDER {
        match StarShapedSet64::sublevel_radial(g, delta, t_max, SUBLEVEL_TOL) {
            Ok(set) => return Ok(set),
            Err(Error::TMaxTooSmall { .. }) => t_max *= 2.0,
            Err(e) => return Err(e.into()),
        }
    }
    Err(usage(format!(
        "the sublevel set of {} at height {delta} still extends beyond radius {t_max}; \
         pick a height inside the objective's range",
        g.id
    )))
}

/// Largest absolute second difference of the objective along rays from its
/// reference point, over a deterministic direction fan and a fine radial
/// grid covering the evaluation box. Descent trajectories of the bundled
/// objectives follow this radial geometry, so it is the smoothness constant
/// the step-size windows actually need; angular derivatives can be far
/// larger near pseudonorm cusps, which is why the sampled value is reported
/// rather than substituted silently.
fn radial_curvature_estimate(f: &Objective64) -> Result<f64, CliError> {
    const DIRS: usize = 64;
    const GRID: usize = 256;
    const FAN_SEED: u64 = 11;
    let center = center_of(f);
    let r_max = box_half(f);
    let dt = r_max / GRID as f64;
    let mut best = 0.0_f64;
    let mut point = vec![0.0; f.dim];
    let mut vals = vec![0.0_f64; GRID + 1];
    for u in direction_fan::<f64>(f.dim, DIRS, FAN_SEED) {
        for (i, v) in vals.iter_mut().enumerate() {
            let t = dt * i as f64;
            for ((p, &c), &ui) in point.iter_mut().zip(center.iter()).zip(u.iter()) {
                *p = c + ui * t;
            }
            *v = f.value_at(&point);
        }
        for i in 1..GRID {
            let second = (vals[i + 1] - 2.0 * vals[i] + vals[i - 1]) / (dt * dt);
            if second.is_finite() {
                best = best.max(second.abs());
            }
        }
    }
    if !(best > 0.0 && best.is_finite()) {
        return Err(usage(format!(
            "could not sample a positive curvature bound for {}",
            f.id
        )));
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// Solver setup shared by solve / rates / bench / plot trajectories
// ---------------------------------------------------------------------------

struct SolveSetup {
    fid: String,
    f: Objective64,
    cfg: SolverConfig64,
    x0: Vec<f64>,
    set: Option<StarShapedSet64>,
    notes: Vec<String>,
}

/// Merge flags and experiment file into a runnable solver setup, filling in
/// any constants the chosen method's window needs but the objective does not
/// carry. `need_modulus` forces a modulus (rate verification needs one for
/// every method).
fn resolve_solve(
    a: &SolveArgs,
    spec: &ExperimentSpec,
    need_modulus: bool,
) -> Result<SolveSetup, CliError> {
    let fid = a
        .function
        .clone()
        .or_else(|| spec.function_id.clone())
        .ok_or_else(|| {
            usage("an objective is required: pass --fn <id> or function_id in the experiment file")
        })?;
    let mut f = registry::<f64>(&fid)?;
    let seed = resolve_seed(a.seed, spec.seed)?;
    let method = parse_method(
        a.method
            .clone()
            .or_else(|| spec.method.clone())
            .ok_or_else(|| usage("a method is required: gradient, heavy_ball, nesterov, or ppa"))?
            .as_str(),
    )?;
    let alpha = resolve_alpha(a.alpha.as_deref(), spec.alpha.as_ref())?;

    // Fill in constants the window validation needs but the objective lacks.
    let mut notes = Vec::new();
    let needs_l = matches!(method, Method::Gradient | Method::HeavyBall | Method::Nesterov);
    if needs_l && f.lipschitz_claim.is_none() {
        let l = radial_curvature_estimate(&f)?;
        notes.push(format!(
            "no smoothness constant registered for {fid}; using the sampled radial \
             curvature bound L = {l:.6e}"
        ));
        f.lipschitz_claim = Some(l);
    }
    let needs_gamma = need_modulus || matches!(method, Method::Nesterov);
    if needs_gamma && f.modulus_claim.is_none() {
        let plan = SamplePlan64::centered(seed, DEFAULT_N_POINTS, f.dim, box_half(&f), LAMBDA_GRID);
        let g = estimate_modulus(&f, &plan)?;
        let usable = g.is_finite() && g > 0.0;
        if !usable {
            return Err(usage(format!(
                "the sampled modulus of {fid} is zero, so no linear-rate certificate \
                 applies to it"
            )));
        }
        notes.push(format!(
            "no modulus registered for {fid}; using the sampled estimate gamma = {g:.6e}"
        ));
        f.modulus_claim = Some(g);
    }

    // Default steps sit inside the window derived from the (possibly
    // sampled) constants, so a bare `--method` invocation runs.
    let max_iter = a.max_iter.or(spec.max_iter).unwrap_or(100);
    let beta_flag = a.beta.or(spec.beta);
    let default_beta = || -> f64 {
        let l = f.lipschitz_claim.unwrap_or(1.0);
        match method {
            Method::Gradient => 0.9 / l,
            Method::HeavyBall => {
                let al = alpha.unwrap_or(0.0);
                0.9 * (1.0 - 2.0 * al * al).max(1e-6) / l
            }
            Method::Nesterov => {
                let g = f.modulus_claim.unwrap_or(1.0);
                0.5 * g / (1.5 * l * l)
            }
            Method::Ppa => 1.0,
        }
    };
    let beta = beta_flag.unwrap_or_else(default_beta);
    let mut cfg = match method {
        Method::Gradient => SolverConfig64::gradient(beta, max_iter),
        Method::HeavyBall => SolverConfig64::heavy_ball(alpha.unwrap_or(0.0), beta, max_iter),
        Method::Nesterov => {
            SolverConfig64::nesterov(beta, a.eta.or(spec.eta).unwrap_or(1.5), max_iter)
        }
        Method::Ppa => SolverConfig64::ppa(beta, max_iter),
    };
    if !matches!(method, Method::HeavyBall) {
        cfg.alpha = alpha;
    }
    if let Some(e) = a.epsilon.or(spec.epsilon) {
        cfg.epsilon = Some(e);
    }
    if let Some(bp) = a.beta_prime.or(spec.beta_prime) {
        cfg.beta_prime = bp;
    }
    if let Some(t) = a.tol.or(spec.tol) {
        cfg.stop_tol = t;
    }

    let x0 = match a.x0.as_deref() {
        Some(s) => parse_number_list(s, "--x0")?,
        None => spec
            .x0
            .clone()
            .unwrap_or_else(|| center_of(&f).iter().map(|c| c + 1.0).collect()),
    };
    if x0.len() != f.dim {
        return Err(usage(format!(
            "start point has {} coordinates but {fid} has dimension {}",
            x0.len(),
            f.dim
        )));
    }

    let set_str = a.set.clone().or_else(|| spec.set_id.clone());
    let set = match (method, set_str) {
        (Method::Ppa, Some(s)) => Some(parse_set(&s, &f)?),
        (Method::Ppa, None) => Some(StarShapedSet64::whole_space(f.dim, center_of(&f))),
        (_, Some(_)) => {
            return Err(usage("--set only applies to the proximal method (ppa)"));
        }
        (_, None) => None,
    };

    Ok(SolveSetup { fid, f, cfg, x0, set, notes })
}

fn stop_name(r: StopReason) -> &'static str {
    match r {
        StopReason::MaxIter => "max_iter",
        StopReason::GradientTol => "gradient_tol",
        StopReason::FixedPoint => "fixed_point",
    }
}

fn emit_notes(notes: &[String]) {
    for n in notes {
        eprintln!("note: {n}");
    }
}

/// Write an artifact to `--out` (announcing the path on stdout) or dump it
/// to stdout directly.
fn emit_artifact(out: Option<&Path>, bytes: &[u8], what: &str) -> Result<(), CliError> {
    match out {
        Some(p) => {
            atomic_write(p, bytes)?;
            println!("wrote {what} to {}", p.display());
        }
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct CheckRow {
    expected_pass: bool,
    matched: bool,
    #[serde(flatten)]
    report: CheckReport,
}

#[derive(Serialize)]
struct CheckDoc {
    function_id: String,
    gamma_hat: f64,
    seed: u64,
    n_points: usize,
    all_matched: bool,
    checks: Vec<CheckRow>,
}

/// Expected verdict of each check for the bundled objectives, read off
/// their constructions: the quadratics are smooth and convex; the clover is
/// star quasiconvex with positive modulus but neither quasiconvex (its
/// sublevel lobes pinch toward the axes) nor aiming-compliant at any weight
/// up to 1 (the flat-slope shells of its radial profile defeat every
/// weight); its one-dimensional axis profile is quasiconvex but keeps the
/// aiming failures; the randomized radial products have lobed, non-convex
/// sublevel sets yet bound the aiming ratio below by their power exponent,
/// so small weights admit no violation; the absolute value is a
/// modulus-zero member; the two-basin function violates everything tied to
/// the segment inequality while keeping growth and coercivity.
fn expected_pass(function_id: &str, check: &str) -> bool {
    let kind = function_id.split(':').next().unwrap_or("");
    match check {
        "quasiconvexity_violation" => !matches!(kind, "clover" | "example312" | "twobasin"),
        "quasar_violation" => !matches!(kind, "clover" | "cloveraxis" | "twobasin"),
        "quadratic_growth" | "supercoercive" => true,
        _ => kind != "twobasin",
    }
}

/// Sublevel heights for the star-shapedness check: percentiles of the
/// sampled values strictly above the minimum, so the heights cut through
/// the populated range whatever the objective's scale.
fn percentile_deltas(f: &Objective64, plan: &SamplePlan64) -> Vec<f64> {
    let base = f
        .min_value
        .or_else(|| f.minimizer.as_ref().map(|x| f.value_at(x)))
        .unwrap_or(0.0);
    let mut vals: Vec<f64> = plan
        .points()
        .iter()
        .map(|p| f.value_at(p))
        .filter(|v| v.is_finite() && *v > base + 1e-9 * (1.0 + base.abs()))
        .collect();
    if vals.is_empty() {
        return vec![1.0];
    }
    vals.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let mut out: Vec<f64> = Vec::new();
    for q in [0.05, 0.25, 0.50, 0.75] {
        let i = ((vals.len() - 1) as f64 * q).round() as usize;
        let v = vals[i];
        if out.last().is_none_or(|&l| v > l * (1.0 + 1e-12)) {
            out.push(v);
        }
    }
    out
}

/// Run one counterexample search over several independent sample streams,
/// keeping the strongest outcome and stopping early once a violation is in
/// hand.
fn searched<F>(seed: u64, run_attempt: F) -> Result<CheckReport, CliError>
where
    F: Fn(u64) -> Result<CheckReport, CliError>,
{
    let mut best: Option<CheckReport> = None;
    for attempt in 0..SEARCH_ATTEMPTS {
        let rep = run_attempt(seed.wrapping_add(ATTEMPT_SEED_STRIDE * attempt))?;
        let stronger = best
            .as_ref()
            .is_none_or(|b| rep.worst_residual > b.worst_residual);
        if stronger {
            best = Some(rep);
        }
        if best.as_ref().is_some_and(|b| !b.passed) {
            break;
        }
    }
    Ok(best.expect("at least one attempt runs"))
}

fn quasiconvexity_search(
    f: &Objective64,
    seed: u64,
    hw: f64,
    n_points: usize,
) -> Result<CheckReport, CliError> {
    searched(seed, |s| {
        let plan = SamplePlan64::centered(s, n_points, f.dim, hw, LAMBDA_GRID);
        Ok(find_quasiconvexity_violation(f, &plan)?)
    })
}

/// Aiming-inequality search over the weight grid 0.1, 0.2, …, 1.0. Each
/// weight gets its own multi-stream search on a box wide enough to reach
/// the large-radius shells where violations concentrate. The aggregate
/// keeps the library convention: `passed = false` only when every weight
/// admits a violation, the residual is the weakest of the per-weight best
/// violations, and a witness is attached only in that all-weights case.
fn quasar_search(
    f: &Objective64,
    seed: u64,
    hw: f64,
    n_points: usize,
) -> Result<CheckReport, CliError> {
    let hw = hw.max(QUASAR_MIN_HALF_WIDTH);
    let mut all_found = true;
    let mut n_samples = 0usize;
    let mut notes = String::new();
    let mut weakest: Option<CheckReport> = None;
    for i in 1..=10u32 {
        let beta = f64::from(i) / 10.0;
        let rep = searched(seed, |s| {
            let plan = SamplePlan64::centered(s, n_points, f.dim, hw, LAMBDA_GRID);
            Ok(find_quasar_violation(f, &[beta], &plan)?)
        })?;
        n_samples += rep.n_samples;
        if rep.passed {
            all_found = false;
        }
        if !notes.is_empty() {
            notes.push_str("; ");
        }
        notes.push_str(&format!("beta={beta}: v={:.6e}", rep.worst_residual));
        let weaker = weakest
            .as_ref()
            .is_none_or(|w| rep.worst_residual < w.worst_residual);
        if weaker {
            weakest = Some(rep);
        }
    }
    let w = weakest.expect("the weight grid is non-empty");
    let mut out = CheckReport::new("quasar_violation", !all_found, w.worst_residual, n_samples, seed);
    if all_found {
        out.witness = w.witness;
    }
    out.notes = Some(notes);
    Ok(out)
}

fn run_one_check(
    f: &Objective64,
    id: &str,
    gamma_hat: f64,
    plan: &SamplePlan64,
    seed: u64,
    hw: f64,
    n_points: usize,
) -> Result<CheckReport, CliError> {
    let rep = match id {
        "star_quasiconvex" => check_star_quasiconvex(f, gamma_hat, plan)?,
        "sublevel_star_shaped" => {
            check_sublevel_star_shaped(f, &percentile_deltas(f, plan), plan)?
        }
        "along_rays" => check_along_rays(f, gamma_hat, RAY_DIRS, plan)?,
        "nondecreasing_rays" => check_nondecreasing_rays(f, MONO_DIRS, MONO_STEPS)?,
        "stronger_property" => check_stronger_property(f, gamma_hat, plan)?,
        "quadratic_growth" => {
            check_quadratic_growth(f, gamma_hat.max(MIN_GROWTH_MODULUS), plan)?
        }
        "supercoercive" => {
            check_supercoercive(f, &[hw, 2.0 * hw, 4.0 * hw, 8.0 * hw], COERCIVE_DIRS)?
        }
        "quasiconvexity_violation" => quasiconvexity_search(f, seed, hw, n_points)?,
        "quasar_violation" => quasar_search(f, seed, hw, n_points)?,
        other => return Err(usage(format!("unknown check id {other:?}"))),
    };
    Ok(rep)
}

fn verdict_word(check_id: &str, passed: bool) -> &'static str {
    let is_search = check_id.ends_with("_violation");
    match (is_search, passed) {
        (true, true) => "no violation found",
        (true, false) => "violation found",
        (false, true) => "pass",
        (false, false) => "fail",
    }
}

fn resolve_suite(flag: Option<&str>, spec: &ExperimentSpec) -> Result<Vec<String>, CliError> {
    let raw: Vec<String> = match flag {
        Some("full") => FULL_SUITE.iter().map(|s| s.to_string()).collect(),
        Some(list) => list
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect(),
        None => match &spec.checks {
            Some(cs) => cs.clone(),
            None => FULL_SUITE.iter().map(|s| s.to_string()).collect(),
        },
    };
    if raw.is_empty() {
        return Err(usage("the check suite is empty"));
    }
    for c in &raw {
        if !FULL_SUITE.contains(&c.as_str()) {
            return Err(usage(format!(
                "unknown check id {c:?}; known checks: {}",
                FULL_SUITE.join(", ")
            )));
        }
    }
    Ok(raw)
}

fn cmd_check(a: CheckArgs) -> Result<ExitCode, CliError> {
    // The positional argument is an experiment file when it names one on
    // disk (or when --fn already pins the objective); otherwise it is the
    // objective id itself.
    let mut exp_path: Option<PathBuf> = None;
    let mut fid_pos: Option<String> = None;
    if let Some(t) = &a.target {
        if a.function.is_some() || Path::new(t).is_file() {
            exp_path = Some(PathBuf::from(t));
        } else {
            fid_pos = Some(t.clone());
        }
    }
    let spec = load_spec(exp_path.as_deref())?;
    let fid = a
        .function
        .clone()
        .or(fid_pos)
        .or_else(|| spec.function_id.clone())
        .ok_or_else(|| usage("an objective is required: `starqc check <id>` or --fn <id>"))?;
    let f = registry::<f64>(&fid)?;
    let seed = resolve_seed(a.seed, spec.seed)?;
    let n_points = a.n_points.or(spec.n_points).unwrap_or(DEFAULT_N_POINTS);
    let suite = resolve_suite(a.suite.as_deref(), &spec)?;
    let hw = box_half(&f);
    let plan = SamplePlan64::centered(seed, n_points, f.dim, hw, LAMBDA_GRID);
    let gamma_hat = estimate_modulus(&f, &plan)?;
    eprintln!(
        "{fid}: sampled modulus gamma_hat = {gamma_hat:.6e} over [{:+.1}, {:+.1}]^{} \
         ({n_points} points, seed {seed})",
        -hw, hw, f.dim
    );

    let mut rows: Vec<CheckRow> = Vec::new();
    let mut all_matched = true;
    for id in &suite {
        let report = run_one_check(&f, id, gamma_hat, &plan, seed, hw, n_points)?;
        let expected = expected_pass(&fid, id);
        let matched = report.passed == expected;
        all_matched &= matched;
        eprintln!(
            "[{}] {}: {} (expected {}); worst residual {:+.6e}, {} samples",
            if matched { "ok" } else { "MISMATCH" },
            report.check_id,
            verdict_word(&report.check_id, report.passed),
            verdict_word(&report.check_id, expected),
            report.worst_residual,
            report.n_samples,
        );
        rows.push(CheckRow { expected_pass: expected, matched, report });
    }

    // Optionally certify a set's designated center on top of the suite.
    if let Some(s) = a.set.clone().or_else(|| spec.set_id.clone()) {
        let set = parse_set(&s, &f)?;
        let report = set.certify_star_center(CENTER_DIRS, CENTER_SEGMENT_SAMPLES)?;
        let matched = report.passed;
        all_matched &= matched;
        eprintln!(
            "[{}] {}: {} for {s}; worst residual {:+.6e}, {} samples",
            if matched { "ok" } else { "MISMATCH" },
            report.check_id,
            verdict_word(&report.check_id, report.passed),
            report.worst_residual,
            report.n_samples,
        );
        rows.push(CheckRow { expected_pass: true, matched, report });
    }

    let doc = CheckDoc { function_id: fid, gamma_hat, seed, n_points, all_matched, checks: rows };
    let bytes = to_json_bytes(&doc)?;
    let out = a.out.clone().or_else(|| spec.json_path.clone());
    emit_artifact(out.as_deref(), &bytes, "check report")?;
    Ok(if all_matched { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

fn cmd_solve(a: SolveArgs) -> Result<ExitCode, CliError> {
    let spec = load_spec(a.experiment.as_deref())?;
    let setup = resolve_solve(&a, &spec, false)?;
    emit_notes(&setup.notes);
    let trace = solvers::run(&setup.f, setup.set.as_ref(), &setup.cfg, &setup.x0, PROX_BUDGET)?;
    eprintln!(
        "{} on {}: {} rows, stop reason {}, final value {:.6e}",
        setup.cfg.method.name(),
        setup.fid,
        trace.len(),
        stop_name(trace.stop_reason),
        trace.values.last().copied().unwrap_or(f64::NAN),
    );
    let bytes = trace.to_csv_bytes()?;
    let out = a.out.clone().or_else(|| spec.csv_path.clone());
    emit_artifact(out.as_deref(), &bytes, "trace")?;
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// rates
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct RatesDoc {
    function_id: String,
    method: &'static str,
    constants: RateConstants<f64>,
    report: RateReport,
}

fn cmd_rates(a: SolveArgs) -> Result<ExitCode, CliError> {
    let spec = load_spec(a.experiment.as_deref())?;
    let setup = resolve_solve(&a, &spec, true)?;
    emit_notes(&setup.notes);
    // Window validation happens here, before anything runs, so an
    // out-of-window configuration is a usage error rather than a violation.
    let constants = solvers::theoretical_rates(&setup.f, &setup.cfg)?;
    let trace = solvers::run(&setup.f, setup.set.as_ref(), &setup.cfg, &setup.x0, PROX_BUDGET)?;
    let quantity = match constants.quantity {
        "energy" => RateQuantity::Energy,
        _ => RateQuantity::DistSq,
    };
    let report = solvers::verify_linear_rate(&trace, quantity, constants.rate)?;
    eprintln!(
        "{} on {}: guaranteed factor {:.12} on {}; {} rows, {} per-iteration violations \
         (envelope {:?}, chained {:?}), fitted factor {:.12}",
        setup.cfg.method.name(),
        setup.fid,
        constants.rate,
        constants.quantity,
        trace.len(),
        report.per_iter_violations,
        report.envelope_violations,
        report.chained_violations,
        report.empirical_rate,
    );
    let ok = report.per_iter_violations == 0;
    let doc = RatesDoc {
        function_id: setup.fid,
        method: setup.cfg.method.name(),
        constants,
        report,
    };
    let bytes = to_json_bytes(&doc)?;
    let out = a.out.clone().or_else(|| spec.json_path.clone());
    emit_artifact(out.as_deref(), &bytes, "rate report")?;
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

// ---------------------------------------------------------------------------
// plot
// ---------------------------------------------------------------------------

fn cmd_plot(a: PlotArgs) -> Result<ExitCode, CliError> {
    let spec = load_spec(a.solve.experiment.as_deref())?;
    let fid = a
        .solve
        .function
        .clone()
        .or_else(|| spec.function_id.clone())
        .ok_or_else(|| usage("an objective is required: pass --fn <id>"))?;
    let f = registry::<f64>(&fid)?;
    if f.dim != 2 {
        return Err(usage(format!(
            "plot renders planar geometry only; {fid} has dimension {}",
            f.dim
        )));
    }
    let deltas: Vec<f64> = match &a.delta {
        Some(s) => parse_number_list(s, "--delta")?,
        None => spec.deltas.clone().unwrap_or_else(|| vec![2.0]),
    };
    if deltas.is_empty() {
        return Err(usage("--delta needs at least one height"));
    }

    let mut boundaries: Vec<(f64, Vec<(f64, f64)>)> = Vec::new();
    for &delta in &deltas {
        let set = build_sublevel(&f, delta)?;
        let cx = set.center[0];
        let cy = set.center[1];
        let mut pts = Vec::with_capacity(PLOT_ANGLES);
        for i in 0..PLOT_ANGLES {
            let th = 2.0 * std::f64::consts::PI * (i as f64) / (PLOT_ANGLES as f64);
            let (s, c) = th.sin_cos();
            let r = set
                .radial_at(&[c, s])
                .ok_or_else(|| usage("sublevel sets always carry a radial oracle"))?;
            pts.push((cx + r * c, cy + r * s));
        }
        boundaries.push((delta, pts));
    }

    let trajectory: Option<Vec<(f64, f64)>> =
        if a.solve.method.is_some() || spec.method.is_some() {
            let setup = resolve_solve(&a.solve, &spec, false)?;
            emit_notes(&setup.notes);
            let trace =
                solvers::run(&setup.f, setup.set.as_ref(), &setup.cfg, &setup.x0, PROX_BUDGET)?;
            eprintln!(
                "trajectory: {} on {}, {} rows, stop reason {}",
                setup.cfg.method.name(),
                setup.fid,
                trace.len(),
                stop_name(trace.stop_reason),
            );
            Some(trace.iterates.iter().map(|p| (p[0], p[1])).collect())
        } else {
            None
        };

    let svg = render_svg(&fid, &boundaries, trajectory.as_deref());
    let out = a.solve.out.clone().or_else(|| spec.svg_path.clone());
    emit_artifact(out.as_deref(), svg.as_bytes(), "plot")?;
    Ok(ExitCode::SUCCESS)
}

fn path_data(pts: &[(f64, f64)], close: bool) -> String {
    let mut d = String::with_capacity(pts.len() * 20 + 2);
    for (i, (x, y)) in pts.iter().enumerate() {
        let op = if i == 0 { 'M' } else { 'L' };
        d.push_str(&format!("{op}{x:.6},{y:.6} "));
    }
    if close {
        d.push('Z');
    } else {
        d.pop();
    }
    d
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Fixed-frame standalone SVG: viewBox [−4, 4]², mathematical orientation
/// (y grows upward inside the flipped group; text stays outside it so
/// labels read normally).
fn render_svg(
    title: &str,
    boundaries: &[(f64, Vec<(f64, f64)>)],
    trajectory: Option<&[(f64, f64)]>,
) -> String {
    const PALETTE: [&str; 6] =
        ["#1f6fb4", "#c23b22", "#2e8b57", "#8a2be2", "#e8860c", "#00777b"];
    let mut s = String::new();
    s.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" \
         viewBox=\"-4 -4 8 8\">\n",
    );
    s.push_str("  <rect x=\"-4\" y=\"-4\" width=\"8\" height=\"8\" fill=\"#ffffff\"/>\n");
    s.push_str("  <g transform=\"scale(1,-1)\">\n");
    s.push_str(
        "    <path d=\"M -4,0 H 4 M 0,-4 V 4\" stroke=\"#cccccc\" stroke-width=\"0.01\" \
         fill=\"none\"/>\n",
    );
    for (i, (_, pts)) in boundaries.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        s.push_str(&format!(
            "    <path id=\"sublevel-{i}\" d=\"{}\" fill=\"none\" stroke=\"{color}\" \
             stroke-width=\"0.02\"/>\n",
            path_data(pts, true)
        ));
    }
    if let Some(tr) = trajectory {
        s.push_str(&format!(
            "    <path id=\"trajectory\" d=\"{}\" fill=\"none\" stroke=\"#333333\" \
             stroke-width=\"0.015\"/>\n",
            path_data(tr, false)
        ));
        if let (Some(a), Some(b)) = (tr.first(), tr.last()) {
            s.push_str(&format!(
                "    <circle cx=\"{:.6}\" cy=\"{:.6}\" r=\"0.06\" fill=\"#333333\"/>\n",
                a.0, a.1
            ));
            s.push_str(&format!(
                "    <circle cx=\"{:.6}\" cy=\"{:.6}\" r=\"0.04\" fill=\"none\" \
                 stroke=\"#333333\" stroke-width=\"0.015\"/>\n",
                b.0, b.1
            ));
        }
    }
    s.push_str("  </g>\n");
    let mut y = -3.6_f64;
    for (i, (delta, _)) in boundaries.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        s.push_str(&format!(
            "  <text x=\"-3.8\" y=\"{y:.6}\" font-size=\"0.25\" font-family=\"monospace\" \
             fill=\"{color}\">delta = {delta}</text>\n"
        ));
        y += 0.32;
    }
    s.push_str(&format!(
        "  <text x=\"-3.8\" y=\"3.8\" font-size=\"0.25\" font-family=\"monospace\" \
         fill=\"#444444\">{}</text>\n",
        xml_escape(title)
    ));
    s.push_str("</svg>\n");
    s
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

fn cmd_bench(a: BenchArgs) -> Result<ExitCode, CliError> {
    let spec = load_spec(a.solve.experiment.as_deref())?;
    let repeat = a.repeat.or(spec.repeat).unwrap_or(5).max(1);
    let setup = resolve_solve(&a.solve, &spec, false)?;
    emit_notes(&setup.notes);
    let mut times_ms: Vec<f64> = Vec::with_capacity(repeat);
    let mut first: Option<IterateTrace64> = None;
    for i in 0..repeat {
        let t0 = Instant::now();
        let trace =
            solvers::run(&setup.f, setup.set.as_ref(), &setup.cfg, &setup.x0, PROX_BUDGET)?;
        let dt = t0.elapsed().as_secs_f64() * 1e3;
        eprintln!("run {}/{repeat}: {dt:.3} ms ({} rows)", i + 1, trace.len());
        times_ms.push(dt);
        if first.is_none() {
            first = Some(trace);
        }
    }
    times_ms.sort_by(|x, y| x.partial_cmp(y).expect("finite timings"));
    eprintln!(
        "timings: min {:.3} ms, median {:.3} ms, max {:.3} ms over {repeat} runs",
        times_ms[0],
        times_ms[times_ms.len() / 2],
        times_ms[times_ms.len() - 1],
    );
    let trace = first.expect("repeat >= 1");
    // Timing lives on stderr; the stdout summary carries only
    // run-to-run-stable facts.
    println!(
        "bench {} {}: {} rows, stop reason {}, final value {:.6e}",
        setup.fid,
        setup.cfg.method.name(),
        trace.len(),
        stop_name(trace.stop_reason),
        trace.values.last().copied().unwrap_or(f64::NAN),
    );
    if let Some(p) = a.solve.out.clone().or_else(|| spec.csv_path.clone()) {
        atomic_write(&p, &trace.to_csv_bytes()?)?;
        eprintln!("wrote trace to {}", p.display());
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expected_verdicts_follow_the_constructions() {
        assert!(expected_pass("quadratic:2:1", "star_quasiconvex"));
        assert!(expected_pass("quadratic:2:1", "quasar_violation"));
        assert!(!expected_pass("clover", "quasiconvexity_violation"));
        assert!(!expected_pass("clover", "quasar_violation"));
        assert!(expected_pass("clover", "star_quasiconvex"));
        assert!(expected_pass("cloveraxis", "quasiconvexity_violation"));
        assert!(!expected_pass("cloveraxis", "quasar_violation"));
        assert!(!expected_pass("example312:0.3:2:7", "quasiconvexity_violation"));
        assert!(expected_pass("example312:0.3:2:7", "quasar_violation"));
        assert!(!expected_pass("twobasin", "star_quasiconvex"));
        assert!(expected_pass("twobasin", "quadratic_growth"));
        assert!(expected_pass("twobasin", "supercoercive"));
        assert!(expected_pass("abs", "quasar_violation"));
    }

    #[test]
    fn number_lists_parse_and_reject_garbage() {
        assert_eq!(parse_number_list("2,1", "--x0").unwrap(), vec![2.0, 1.0]);
        assert_eq!(parse_number_list(" 1.5 , -2 ", "--x0").unwrap(), vec![1.5, -2.0]);
        assert!(parse_number_list("1,zebra", "--x0").is_err());
    }

    #[test]
    fn alpha_accepts_numbers_and_auto() {
        assert_eq!(resolve_alpha(Some("0.25"), None).unwrap(), Some(0.25));
        assert_eq!(resolve_alpha(Some("auto"), None).unwrap(), None);
        assert!(resolve_alpha(Some("much"), None).is_err());
        let v = serde_json::json!(0.5);
        assert_eq!(resolve_alpha(None, Some(&v)).unwrap(), Some(0.5));
        let v = serde_json::json!("auto");
        assert_eq!(resolve_alpha(None, Some(&v)).unwrap(), None);
        let v = serde_json::json!([1.0]);
        assert!(resolve_alpha(None, Some(&v)).is_err());
    }

    #[test]
    fn suite_resolution_validates_ids() {
        let spec = ExperimentSpec::default();
        assert_eq!(resolve_suite(None, &spec).unwrap().len(), FULL_SUITE.len());
        assert_eq!(resolve_suite(Some("full"), &spec).unwrap().len(), FULL_SUITE.len());
        let picked = resolve_suite(Some("star_quasiconvex, quadratic_growth"), &spec).unwrap();
        assert_eq!(picked, vec!["star_quasiconvex", "quadratic_growth"]);
        assert!(resolve_suite(Some("definitely_not_a_check"), &spec).is_err());
    }

    #[test]
    fn percentile_deltas_are_positive_and_increasing() {
        let f = registry::<f64>("quadratic:2:2").unwrap();
        let plan = SamplePlan64::centered(7, 2000, 2, box_half(&f), 4);
        let ds = percentile_deltas(&f, &plan);
        assert!(!ds.is_empty());
        assert!(ds.iter().all(|&d| d > 0.0));
        assert!(ds.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn radial_curvature_bounds_the_clover_profile() {
        // The profile's largest curvature is 2 + 6e^2(e-1) ~ 78.2, reached
        // just inside radius 3; the fan contains the exact axes, so the
        // sampled bound must land close below it and stay above the pure
        // quadratic part.
        let f = registry::<f64>("clover").unwrap();
        let l = radial_curvature_estimate(&f).unwrap();
        assert!(l > 50.0 && l < 80.0, "sampled curvature {l}");
        // The resulting default step admits the documented 0.01 choice.
        assert!(1.0 / l > 0.01);
    }

    #[test]
    fn svg_paths_are_finite_and_closed() {
        let pts = vec![(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0)];
        let d = path_data(&pts, true);
        assert!(d.starts_with("M1.000000,0.000000 L0.000000,1.000000"));
        assert!(d.ends_with('Z'));
        let open = path_data(&pts, false);
        assert!(open.ends_with("-1.000000,0.000000"));
        let svg = render_svg("demo", &[(2.0, pts)], None);
        assert!(svg.contains("viewBox=\"-4 -4 8 8\""));
        assert!(svg.contains("scale(1,-1)"));
        assert!(svg.contains("delta = 2"));
    }
}
