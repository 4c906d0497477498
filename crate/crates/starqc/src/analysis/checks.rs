//! The property checks: each samples one defining inequality and reports
//! the worst residual (nonnegative residuals mean the property holds).

use super::estimate::{eval_box_reach, internal_modulus};
use super::{slack, Stream, D2_FLOOR, RAY_FRACS, RAY_PAIRS};
use crate::error::{Error, Result};
use crate::funcs::ObjectiveFunction;
use crate::linalg;
use crate::report::{CheckReport, Witness};
use crate::sample::{direction_fan, SamplePlan};
use crate::{as_f64, fl, Scalar};

/// Internal seed for the nondecreasing-ray fan.
const RAY_FAN_SEED: u64 = 13;
/// Internal seed for the supercoercivity fan and its modulus estimate.
const COERCIVE_SEED: u64 = 17;
/// Sample count for internally estimated moduli.
const INTERNAL_ESTIMATE_POINTS: usize = 2000;
/// Estimates at or below this threshold are flagged as "modulus ≈ 0".
const NEGLIGIBLE_MODULUS: f64 = 0.05;

/// Running minimum residual with its witness and pass flag.
struct Tracker {
    worst: f64,
    witness: Option<Witness>,
    passed: bool,
    n: usize,
}

impl Tracker {
    fn new() -> Self {
        Self { worst: f64::INFINITY, witness: None, passed: true, n: 0 }
    }

    fn record(&mut self, residual: f64, slack: f64, witness: impl FnOnce(f64) -> Witness) {
        self.n += 1;
        if residual < -slack {
            self.passed = false;
        }
        if residual < self.worst {
            self.worst = residual;
            self.witness = Some(witness(residual));
        }
    }

    fn report(self, check_id: &str, seed: u64) -> CheckReport {
        let worst = if self.n == 0 { 0.0 } else { self.worst };
        let mut rep = CheckReport::new(check_id, self.passed, worst, self.n, seed);
        if !self.passed {
            rep.witness = self.witness;
        }
        rep
    }
}

fn require_nonneg_gamma<T: Scalar>(gamma: T) -> Result<()> {
    if gamma < T::zero() || !gamma.is_finite() {
        return Err(Error::ConfigError {
            reason: format!("modulus must be finite and nonnegative (got {})", as_f64(gamma)),
        });
    }
    Ok(())
}

fn point_f64<T: Scalar>(p: &[T]) -> Vec<f64> {
    p.iter().map(|&c| as_f64(c)).collect()
}

/// Certify `h(λx̄ + (1−λ)y) ≤ h(y) − λ(1−λ)(γ/2)‖y − x̄‖²` over the
/// sampled stream, including the endpoint anchors λ ∈ {0, 1}.
///
/// # Errors
/// Negative `gamma`, a missing minimizer, or evaluation failures.
pub fn check_star_quasiconvex<T: Scalar>(
    f: &ObjectiveFunction<T>,
    gamma: T,
    plan: &SamplePlan<T>,
) -> Result<CheckReport> {
    require_nonneg_gamma(gamma)?;
    let stream = Stream::build(f, plan)?;
    let half_gamma = gamma * fl::<T>(0.5);
    let mut tracker = Tracker::new();
    let mut mid = vec![T::zero(); f.dim];
    let lambdas = stream.lambdas_with_anchors();
    for s in &stream.samples {
        for &lambda in &lambdas {
            let t = T::one() - lambda;
            linalg::lerp(&stream.xbar, &s.y, t, &mut mid);
            let hmid = f.value_at(&mid);
            let residual = s.hy - lambda * t * half_gamma * s.d2 - hmid;
            tracker.record(as_f64(residual), as_f64(slack(s.hy)), |r| Witness {
                point: point_f64(&s.y),
                point2: None,
                lambda: Some(as_f64(lambda)),
                t: None,
                delta: None,
                beta: None,
                residual: r,
            });
        }
    }
    Ok(tracker.report("star_quasiconvex", stream.seed))
}

/// Certify that each sublevel set `{h ≤ δ}` is star-shaped about the
/// minimizer: for sampled `y` with `h(y) ≤ δ`, every segment point toward
/// `x̄` stays in the sublevel set.
///
/// Samples with `h(y) > δ` for every `δ` contribute nothing; the check is
/// vacuously true when no sample lands in any sublevel set.
///
/// # Errors
/// Missing minimizer or evaluation failures.
pub fn check_sublevel_star_shaped<T: Scalar>(
    f: &ObjectiveFunction<T>,
    deltas: &[T],
    plan: &SamplePlan<T>,
) -> Result<CheckReport> {
    let stream = Stream::build(f, plan)?;
    let mut tracker = Tracker::new();
    let mut mid = vec![T::zero(); f.dim];
    let lambdas = stream.lambdas_with_anchors();
    for &delta in deltas {
        for s in &stream.samples {
            if s.hy > delta {
                continue;
            }
            for &lambda in &lambdas {
                linalg::lerp(&stream.xbar, &s.y, T::one() - lambda, &mut mid);
                let residual = delta - f.value_at(&mid);
                tracker.record(as_f64(residual), as_f64(slack(delta)), |r| Witness {
                    point: point_f64(&s.y),
                    point2: None,
                    lambda: Some(as_f64(lambda)),
                    t: None,
                    delta: Some(as_f64(delta)),
                    beta: None,
                    residual: r,
                });
            }
        }
    }
    let mut rep = tracker.report("sublevel_star_shaped", stream.seed);
    if rep.n_samples == 0 {
        rep.notes = Some("no sample landed in any requested sublevel set; vacuous pass".into());
    }
    Ok(rep)
}

/// Certify the along-ray formulation: on each sampled ray through `y`,
/// the 1-D restriction satisfies the strong quasiconvexity-toward-zero
/// inequality on a fixed grid of segment endpoints.
///
/// # Errors
/// Negative `gamma`, missing minimizer, or evaluation failures.
pub fn check_along_rays<T: Scalar>(
    f: &ObjectiveFunction<T>,
    gamma: T,
    n_dirs: usize,
    plan: &SamplePlan<T>,
) -> Result<CheckReport> {
    require_nonneg_gamma(gamma)?;
    let stream = Stream::build(f, plan)?;
    let half_gamma = gamma * fl::<T>(0.5);
    let d2_floor = fl::<T>(D2_FLOOR);
    let mut tracker = Tracker::new();
    let mut mid = vec![T::zero(); f.dim];
    let lambdas = stream.lambdas_with_anchors();
    let mut rays = 0usize;
    for s in &stream.samples {
        if s.d2 <= d2_floor {
            continue;
        }
        if rays >= n_dirs {
            break;
        }
        rays += 1;
        let mut vals = [T::zero(); RAY_FRACS.len()];
        vals[0] = stream.hx;
        vals[RAY_FRACS.len() - 1] = s.hy;
        for (k, &fr) in RAY_FRACS.iter().enumerate().take(RAY_FRACS.len() - 1).skip(1) {
            linalg::lerp(&stream.xbar, &s.y, fl(fr), &mut mid);
            vals[k] = f.value_at(&mid);
        }
        for &(i, j) in &RAY_PAIRS {
            let (fi, fj) = (fl::<T>(RAY_FRACS[i]), fl::<T>(RAY_FRACS[j]));
            let span_sq = (fj - fi) * (fj - fi) * s.d2;
            let cap = if vals[i] > vals[j] { vals[i] } else { vals[j] };
            for &lambda in &lambdas {
                let frac = lambda * fj + (T::one() - lambda) * fi;
                linalg::lerp(&stream.xbar, &s.y, frac, &mut mid);
                let hmid = f.value_at(&mid);
                let residual = cap - lambda * (T::one() - lambda) * half_gamma * span_sq - hmid;
                tracker.record(as_f64(residual), as_f64(slack(cap)), |r| Witness {
                    point: point_f64(&s.y),
                    point2: None,
                    lambda: Some(as_f64(lambda)),
                    t: Some(as_f64(frac)),
                    delta: None,
                    beta: None,
                    residual: r,
                });
            }
        }
    }
    Ok(tracker.report("along_rays", stream.seed))
}

/// Certify that `t ↦ h(x̄ + t·u)` is nondecreasing on each fan direction,
/// sampled at `n_t` points out to the evaluation box boundary.
///
/// # Errors
/// Missing minimizer, `n_t < 2`, or evaluation failures.
pub fn check_nondecreasing_rays<T: Scalar>(
    f: &ObjectiveFunction<T>,
    n_dirs: usize,
    n_t: usize,
) -> Result<CheckReport> {
    if n_t < 2 {
        return Err(Error::ConfigError { reason: format!("ray grids need n_t >= 2 (got {n_t})") });
    }
    let xbar = f.minimizer.clone().ok_or(Error::MinimizerRequired)?;
    let mut tracker = Tracker::new();
    let mut point = vec![T::zero(); f.dim];
    for u in direction_fan::<T>(f.dim, n_dirs, RAY_FAN_SEED) {
        let reach = eval_box_reach(f, &xbar, &u);
        let mut prev = match f.min_value {
            Some(v) => v,
            None => f.eval(&xbar)?,
        };
        for k in 1..n_t {
            let t = reach * fl::<T>(k as f64 / (n_t - 1) as f64);
            linalg::ray_point(&xbar, &u, t, &mut point);
            let v = f.eval(&point)?;
            let residual = v - prev;
            let scale = if prev.abs() > v.abs() { prev.abs() } else { v.abs() };
            tracker.record(as_f64(residual), as_f64(slack(scale)), |r| Witness {
                point: point_f64(&point),
                point2: None,
                lambda: None,
                t: Some(as_f64(t)),
                delta: None,
                beta: None,
                residual: r,
            });
            prev = v;
        }
    }
    Ok(tracker.report("nondecreasing_rays", RAY_FAN_SEED))
}

/// Certify the pointwise contraction property
/// `h(x̄ + t(y − x̄)) ≤ h(y) − (γ/4)(1 − t²)‖y − x̄‖²` for `t ∈ (0, 1]`.
///
/// # Errors
/// Negative `gamma`, missing minimizer, or evaluation failures.
pub fn check_stronger_property<T: Scalar>(
    f: &ObjectiveFunction<T>,
    gamma: T,
    plan: &SamplePlan<T>,
) -> Result<CheckReport> {
    require_nonneg_gamma(gamma)?;
    let stream = Stream::build(f, plan)?;
    let quarter_gamma = gamma * fl::<T>(0.25);
    let mut tracker = Tracker::new();
    let mut mid = vec![T::zero(); f.dim];
    let mut ts: Vec<T> = stream.lambdas.iter().map(|&l| T::one() - l).collect();
    ts.push(T::one());
    for s in &stream.samples {
        for &t in &ts {
            linalg::lerp(&stream.xbar, &s.y, t, &mut mid);
            let hmid = f.value_at(&mid);
            let residual = s.hy - quarter_gamma * (T::one() - t * t) * s.d2 - hmid;
            tracker.record(as_f64(residual), as_f64(slack(s.hy)), |r| Witness {
                point: point_f64(&s.y),
                point2: None,
                lambda: None,
                t: Some(as_f64(t)),
                delta: None,
                beta: None,
                residual: r,
            });
        }
    }
    Ok(tracker.report("stronger_property", stream.seed))
}

/// Certify quadratic growth `h(y) ≥ h(x̄) + (γ/4)‖y − x̄‖²`.
///
/// # Errors
/// `gamma ≤ 0` (growth needs a positive modulus), missing minimizer, or
/// evaluation failures.
pub fn check_quadratic_growth<T: Scalar>(
    f: &ObjectiveFunction<T>,
    gamma: T,
    plan: &SamplePlan<T>,
) -> Result<CheckReport> {
    if !(gamma > T::zero()) || !gamma.is_finite() {
        return Err(Error::ConfigError {
            reason: format!("quadratic growth needs a positive modulus (got {})", as_f64(gamma)),
        });
    }
    let stream = Stream::build(f, plan)?;
    let quarter_gamma = gamma * fl::<T>(0.25);
    let mut tracker = Tracker::new();
    for s in &stream.samples {
        let residual = s.hy - stream.hx - quarter_gamma * s.d2;
        let scale = s.hy.abs() + stream.hx.abs();
        tracker.record(as_f64(residual), as_f64(slack(scale)), |r| {
            Witness::at_point(point_f64(&s.y), r)
        });
    }
    Ok(tracker.report("quadratic_growth", stream.seed))
}

/// Certify supercoercivity: `(h(x̄ + R·u) − h(x̄))/R²` at the largest
/// requested radius must stay above `γ̂/4 − slack`, where `γ̂` is an
/// internally estimated modulus over the box of half-width `max(radii)`.
///
/// When the estimate is negligible (`γ̂ ≤ 0.05`) the check passes
/// vacuously and the report notes `modulus ≈ 0`.
///
/// # Errors
/// Empty or non-increasing radii, missing minimizer, or evaluation
/// failures.
pub fn check_supercoercive<T: Scalar>(
    f: &ObjectiveFunction<T>,
    radii: &[T],
    n_dirs: usize,
) -> Result<CheckReport> {
    if radii.is_empty() {
        return Err(Error::ConfigError { reason: "supercoercivity needs at least one radius".into() });
    }
    for w in radii.windows(2) {
        if !(w[0] < w[1]) {
            return Err(Error::ConfigError { reason: "radii must be strictly increasing".into() });
        }
    }
    if !(radii[0] > T::zero()) {
        return Err(Error::ConfigError { reason: "radii must be positive".into() });
    }
    let xbar = f.minimizer.clone().ok_or(Error::MinimizerRequired)?;
    let hx = match f.min_value {
        Some(v) => v,
        None => f.eval(&xbar)?,
    };
    let r_max = *radii.last().expect("non-empty");
    let gamma_hat = internal_modulus(f, r_max, COERCIVE_SEED, INTERNAL_ESTIMATE_POINTS)?;
    let quarter = gamma_hat * fl::<T>(0.25);
    let mut tracker = Tracker::new();
    let mut point = vec![T::zero(); f.dim];
    let mut min_ratio_at_max = f64::INFINITY;
    let mut n_evals = 0usize;
    for u in direction_fan::<T>(f.dim, n_dirs, COERCIVE_SEED) {
        for &radius in radii {
            linalg::ray_point(&xbar, &u, radius, &mut point);
            let v = f.eval(&point)?;
            n_evals += 1;
            let ratio = (v - hx) / (radius * radius);
            if radius == r_max {
                let residual = ratio - quarter;
                min_ratio_at_max = min_ratio_at_max.min(as_f64(ratio));
                tracker.record(as_f64(residual), as_f64(slack(T::one())), |r| Witness {
                    point: point_f64(&point),
                    point2: None,
                    lambda: None,
                    t: Some(as_f64(radius)),
                    delta: None,
                    beta: None,
                    residual: r,
                });
            }
        }
    }
    let mut rep = tracker.report("supercoercive", COERCIVE_SEED);
    rep.n_samples = n_evals;
    let mut notes = format!(
        "gamma_hat = {}; min growth ratio at R = {} is {}",
        as_f64(gamma_hat),
        as_f64(r_max),
        min_ratio_at_max
    );
    if as_f64(gamma_hat) <= NEGLIGIBLE_MODULUS {
        notes.push_str("; modulus ≈ 0, growth bound vacuous");
    }
    rep.notes = Some(notes);
    Ok(rep)
}

/// Certify the first-order condition `⟨∇h(y), y − x̄⟩ ≥ (γ/2)‖y − x̄‖²`
/// at stream points that pass the smoothness filter.
///
/// # Errors
/// - [`Error::InsufficientSmoothSamples`] when every sample is filtered.
/// - Negative `gamma`, missing minimizer, or evaluation failures.
pub fn check_first_order<T: Scalar>(
    f: &ObjectiveFunction<T>,
    gamma: T,
    plan: &SamplePlan<T>,
) -> Result<CheckReport> {
    require_nonneg_gamma(gamma)?;
    let stream = Stream::build(f, plan)?;
    let half_gamma = gamma * fl::<T>(0.5);
    let d2_floor = fl::<T>(D2_FLOOR);
    let mut tracker = Tracker::new();
    let mut filtered = 0usize;
    let mut diff = vec![T::zero(); f.dim];
    for s in &stream.samples {
        if s.d2 <= d2_floor {
            filtered += 1;
            continue;
        }
        let Some(g) = f.smooth_grad(&s.y) else {
            filtered += 1;
            continue;
        };
        for (di, (&yi, &xi)) in diff.iter_mut().zip(s.y.iter().zip(&stream.xbar)) {
            *di = yi - xi;
        }
        let lhs = linalg::dot(&g, &diff);
        let rhs = half_gamma * s.d2;
        let residual = lhs - rhs;
        tracker.record(as_f64(residual), as_f64(slack(lhs.abs() + rhs)), |r| {
            Witness::at_point(point_f64(&s.y), r)
        });
    }
    if tracker.n == 0 {
        return Err(Error::InsufficientSmoothSamples { filtered });
    }
    let mut rep = tracker.report("first_order", stream.seed);
    if filtered > 0 {
        rep.notes = Some(format!("{filtered} samples filtered (kinked or at the minimizer)"));
    }
    Ok(rep)
}

/// Certify gradient domination `‖∇h(y)‖² ≥ μ (h(y) − h*)` with
/// `μ = γ²/(2L)` taken from the function's registered modulus and
/// gradient-Lipschitz claims.
///
/// # Errors
/// - [`Error::MissingClaim`] when either claim is absent.
/// - [`Error::InsufficientSmoothSamples`] when every sample is filtered.
/// - Missing minimizer or evaluation failures.
pub fn check_pl<T: Scalar>(f: &ObjectiveFunction<T>, plan: &SamplePlan<T>) -> Result<CheckReport> {
    let gamma = f.modulus_claim.ok_or_else(|| Error::MissingClaim { missing: "modulus_claim".into() })?;
    let lip = f.lipschitz_claim.ok_or_else(|| Error::MissingClaim { missing: "lipschitz_claim".into() })?;
    if !(gamma > T::zero() && lip > T::zero()) {
        return Err(Error::ConfigError { reason: "gradient domination needs positive claims".into() });
    }
    let stream = Stream::build(f, plan)?;
    let mu = gamma * gamma / (fl::<T>(2.0) * lip);
    let mut tracker = Tracker::new();
    let mut filtered = 0usize;
    for s in &stream.samples {
        let Some(g) = f.smooth_grad(&s.y) else {
            filtered += 1;
            continue;
        };
        let gnorm_sq = linalg::dot(&g, &g);
        let gap = s.hy - stream.hx;
        let residual = gnorm_sq - mu * gap;
        tracker.record(as_f64(residual), as_f64(slack(gnorm_sq + mu * gap.abs())), |r| {
            Witness::at_point(point_f64(&s.y), r)
        });
    }
    if tracker.n == 0 {
        return Err(Error::InsufficientSmoothSamples { filtered });
    }
    let mut rep = tracker.report("pl", stream.seed);
    rep.notes = Some(format!("mu = {}; {filtered} samples filtered", as_f64(mu)));
    Ok(rep)
}

/// Certify that the epigraph is star-shaped about `(x̄, h(x̄))`: for
/// sampled `y`, heights `s ∈ {h(y), h(y)+1, 2|h(y)|+1}`, and segment
/// parameters λ, the function at the blended point stays below the
/// blended height.
///
/// # Errors
/// Missing minimizer or evaluation failures.
pub fn check_epigraph_star_shaped<T: Scalar>(
    f: &ObjectiveFunction<T>,
    plan: &SamplePlan<T>,
) -> Result<CheckReport> {
    let stream = Stream::build(f, plan)?;
    let mut tracker = Tracker::new();
    let mut mid = vec![T::zero(); f.dim];
    let lambdas = stream.lambdas_with_anchors();
    for s in &stream.samples {
        let heights = [s.hy, s.hy + T::one(), fl::<T>(2.0) * s.hy.abs() + T::one()];
        for &height in &heights {
            for &lambda in &lambdas {
                linalg::lerp(&stream.xbar, &s.y, T::one() - lambda, &mut mid);
                let hmid = f.value_at(&mid);
                let blended = lambda * stream.hx + (T::one() - lambda) * height;
                let residual = blended - hmid;
                let scale = height.abs() + stream.hx.abs();
                tracker.record(as_f64(residual), as_f64(slack(scale)), |r| Witness {
                    point: point_f64(&s.y),
                    point2: None,
                    lambda: Some(as_f64(lambda)),
                    t: None,
                    delta: Some(as_f64(height)),
                    beta: None,
                    residual: r,
                });
            }
        }
    }
    Ok(tracker.report("epigraph_star_shaped", stream.seed))
}
