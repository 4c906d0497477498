//! Proximity operator on star-shaped sets:
//! `prox(z) ∈ argmin_{y ∈ K} h(y) + ‖y − z‖²/(2β)`.
//!
//! Three strategies, picked automatically:
//!
//! - **Closed form** for registered quadratics `h = (γ/2)‖x − x̄‖²` over
//!   the whole space or a ball centered at the minimizer: the minimizer of
//!   the regularized objective is `x̄ + (z − x̄)/(1 + βγ)`, radially
//!   clipped to the ball.
//! - **Radial scan** for planar sets with a radial description: a fixed
//!   720-angle fan, a coarse bracket plus golden-section search to `1e-10`
//!   along each ray, a golden-section polish over the angle around the best
//!   ray, then a restarted Nelder–Mead polish with an infinite membership
//!   penalty.
//! - **Multistart** otherwise: `max(20, budget/500)` Nelder–Mead descents
//!   from rejection-sampled members (plus the center and `z` itself when
//!   it is a member), same penalty.
//!
//! Every strategy counts objective evaluations against `budget`; when the
//! budget runs out the best point so far is returned with
//! `converged = false`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analysis::estimate_modulus;
use crate::error::{Error, Result};
use crate::funcs::ObjectiveFunction;
use crate::linalg;
use crate::report::{CheckReport, Witness};
use crate::sample::SamplePlan;
use crate::sets::StarShapedSet;
use crate::{as_f64, fl, Scalar};

/// Number of rays in the radial scan.
const SCAN_ANGLES: usize = 720;
/// Golden-section interval tolerance along each ray.
const GOLDEN_TOL: f64 = 1e-10;
/// Nelder–Mead polish iterations per restart round after the scan.
const SCAN_POLISH_STEPS: usize = 30;
/// Polish restart rounds, each reseeded at the incumbent with a smaller
/// simplex.
const SCAN_POLISH_ROUNDS: usize = 4;
/// Minimum admissible evaluation budget.
const MIN_BUDGET: usize = 100;
/// Objective gap under which two minima count as a near tie.
const TIE_TOL: f64 = 1e-8;
/// Default budget used by the built-in prox-based checks.
pub const DEFAULT_CHECK_BUDGET: usize = 60_000;
/// Starts drawn by the fixed-point sweep.
const FIXED_POINT_STARTS: usize = 1000;

/// Strategy that produced a [`ProxResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProxMethod {
    /// Closed-form quadratic shrinkage (with radial clipping on balls).
    ClosedForm,
    /// 720-ray golden-section scan plus Nelder–Mead polish.
    RadialScan,
    /// Penalized Nelder–Mead from many sampled starts.
    Multistart,
}

/// Outcome of one proximity evaluation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProxResult<T> {
    /// The minimizing point found.
    pub point: Vec<T>,
    /// Regularized objective `h(point) + ‖point − z‖²/(2β)` at that point.
    pub objective: T,
    /// Strategy used.
    pub method: ProxMethod,
    /// Objective evaluations consumed.
    pub n_evals: usize,
    /// False when the budget ran out before the search settled; the point
    /// is then best-effort.
    pub converged: bool,
    /// Distinct locations whose objective ties the optimum within `1e-8`
    /// (the operator is genuinely multi-valued near such inputs).
    pub near_ties: usize,
}

struct Budget {
    left: i64,
    used: usize,
}

impl Budget {
    fn new(total: usize) -> Self {
        Self { left: total as i64, used: 0 }
    }
    fn spend(&mut self) -> bool {
        self.used += 1;
        self.left -= 1;
        self.left >= 0
    }
    fn exhausted(&self) -> bool {
        self.left <= 0
    }
}

/// Evaluate the proximity operator of `f` on `K` at `z` with weight
/// `beta`, spending at most `budget` objective evaluations.
///
/// # Errors
/// - [`Error::ConfigError`] for `beta ≤ 0`, `budget < 100`, or a
///   multistart set lacking both a `bounding_radius` and a usable default.
/// - [`Error::DimensionMismatch`] when shapes disagree.
pub fn prox<T: Scalar>(
    f: &ObjectiveFunction<T>,
    k: &StarShapedSet<T>,
    beta: T,
    z: &[T],
    budget: usize,
) -> Result<ProxResult<T>> {
    if !(beta > T::zero()) || !beta.is_finite() {
        return Err(Error::ConfigError { reason: format!("prox weight must be positive (got {})", as_f64(beta)) });
    }
    if budget < MIN_BUDGET {
        return Err(Error::ConfigError { reason: format!("prox budget must be at least {MIN_BUDGET} (got {budget})") });
    }
    if f.dim != k.dim {
        return Err(Error::DimensionMismatch { expected: f.dim, got: k.dim });
    }
    if z.len() != f.dim {
        return Err(Error::DimensionMismatch { expected: f.dim, got: z.len() });
    }

    if let Some(result) = closed_form(f, k, beta, z) {
        return result;
    }
    if f.dim == 2 && k.has_radial_oracle() {
        return radial_scan(f, k, beta, z, budget);
    }
    multistart(f, k, beta, z, budget)
}

/// Closed-form dispatch: registered quadratic over the whole space or a
/// ball centered at its minimizer.
fn closed_form<T: Scalar>(
    f: &ObjectiveFunction<T>,
    k: &StarShapedSet<T>,
    beta: T,
    z: &[T],
) -> Option<Result<ProxResult<T>>> {
    if !f.id.starts_with("quadratic:") {
        return None;
    }
    let gamma = fl::<T>(f.metadata.get("gamma")?.as_f64()?);
    let xbar = f.minimizer.as_ref()?;
    let ball = match (k.is_whole_space(), k.ball_radius()) {
        (true, _) => None,
        (false, Some(radius)) => {
            if k.center != *xbar {
                return None;
            }
            Some(radius)
        }
        (false, None) => return None,
    };
    let shrink = T::one() / (T::one() + beta * gamma);
    let mut point: Vec<T> = xbar.iter().zip(z).map(|(&c, &zi)| c + (zi - c) * shrink).collect();
    if let Some(radius) = ball {
        let d = linalg::dist(&point, xbar);
        if d > radius {
            let scale = radius / d;
            for (pi, &c) in point.iter_mut().zip(xbar) {
                *pi = c + (*pi - c) * scale;
            }
        }
    }
    let objective = f.value_at(&point) + linalg::dist_sq(&point, z) / (fl::<T>(2.0) * beta);
    Some(Ok(ProxResult {
        point,
        objective,
        method: ProxMethod::ClosedForm,
        n_evals: 1,
        converged: true,
        near_ties: 0,
    }))
}

fn golden_min<T: Scalar>(
    phi: &mut impl FnMut(T) -> T,
    mut a: T,
    mut b: T,
    tol: T,
    budget: &mut Budget,
) -> (T, T) {
    let invphi = fl::<T>(0.618_033_988_749_894_9);
    let mut c = b - (b - a) * invphi;
    let mut d = a + (b - a) * invphi;
    budget.spend();
    budget.spend();
    let mut fc = phi(c);
    let mut fd = phi(d);
    while b - a > tol && !budget.exhausted() {
        budget.spend();
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * invphi;
            fc = phi(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * invphi;
            fd = phi(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Deterministic Nelder–Mead descent with standard coefficients. Returns
/// (best point, best value, settled-by-diameter flag).
fn nelder_mead<T: Scalar>(
    obj: &mut impl FnMut(&[T]) -> T,
    mut simplex: Vec<Vec<T>>,
    max_steps: usize,
    diam_tol: T,
    budget: &mut Budget,
) -> (Vec<T>, T, bool) {
    let n = simplex[0].len();
    let mut values: Vec<T> = Vec::with_capacity(simplex.len());
    for p in &simplex {
        budget.spend();
        values.push(obj(p));
    }
    let mut settled = false;
    for _ in 0..max_steps {
        if budget.exhausted() {
            break;
        }
        // Order the simplex by value (stable selection keeps determinism).
        let mut order: Vec<usize> = (0..simplex.len()).collect();
        order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap_or(std::cmp::Ordering::Equal));
        let reordered_pts: Vec<Vec<T>> = order.iter().map(|&i| simplex[i].clone()).collect();
        let reordered_vals: Vec<T> = order.iter().map(|&i| values[i]).collect();
        simplex = reordered_pts;
        values = reordered_vals;

        let mut diam = T::zero();
        for p in simplex.iter().skip(1) {
            let d = linalg::dist(p, &simplex[0]);
            if d > diam {
                diam = d;
            }
        }
        if diam < diam_tol {
            settled = true;
            break;
        }

        // Centroid of all but the worst vertex.
        let worst = simplex.len() - 1;
        let mut centroid = vec![T::zero(); n];
        for p in simplex.iter().take(worst) {
            for (ci, &pi) in centroid.iter_mut().zip(p) {
                *ci += pi;
            }
        }
        let inv = T::one() / fl::<T>(worst as f64);
        for ci in &mut centroid {
            *ci *= inv;
        }

        let blend = |t: T, buf: &mut Vec<T>| {
            buf.clear();
            for (&ci, &wi) in centroid.iter().zip(&simplex[worst]) {
                buf.push(ci + t * (ci - wi));
            }
        };
        let mut cand = Vec::with_capacity(n);
        blend(T::one(), &mut cand);
        budget.spend();
        let f_reflect = obj(&cand);
        if f_reflect < values[0] {
            // Try expanding.
            let mut cand2 = Vec::with_capacity(n);
            blend(fl(2.0), &mut cand2);
            budget.spend();
            let f_expand = obj(&cand2);
            if f_expand < f_reflect {
                simplex[worst] = cand2;
                values[worst] = f_expand;
            } else {
                simplex[worst] = cand;
                values[worst] = f_reflect;
            }
        } else if f_reflect < values[worst - 1] {
            simplex[worst] = cand;
            values[worst] = f_reflect;
        } else {
            // Contract toward the centroid (outside or inside).
            let mut cand2 = Vec::with_capacity(n);
            if f_reflect < values[worst] {
                blend(fl(0.5), &mut cand2);
            } else {
                blend(fl(-0.5), &mut cand2);
            }
            budget.spend();
            let f_contract = obj(&cand2);
            if f_contract < values[worst].min(f_reflect) {
                simplex[worst] = cand2;
                values[worst] = f_contract;
            } else {
                // Shrink everything toward the best vertex.
                for i in 1..simplex.len() {
                    let (head, tail) = simplex.split_at_mut(i);
                    let best = &head[0];
                    for (pi, &bi) in tail[0].iter_mut().zip(best) {
                        *pi = bi + (*pi - bi) * fl::<T>(0.5);
                    }
                    budget.spend();
                    values[i] = obj(&simplex[i]);
                }
            }
        }
    }
    let mut best = 0usize;
    for i in 1..values.len() {
        if values[i] < values[best] {
            best = i;
        }
    }
    (simplex[best].clone(), values[best], settled)
}

fn radial_scan<T: Scalar>(
    f: &ObjectiveFunction<T>,
    k: &StarShapedSet<T>,
    beta: T,
    z: &[T],
    budget_total: usize,
) -> Result<ProxResult<T>> {
    let half_inv_beta = T::one() / (fl::<T>(2.0) * beta);
    let mut budget = Budget::new(budget_total);
    let obj = |y: &[T], budget: &mut Budget| -> T {
        budget.spend();
        f.value_at(y) + linalg::dist_sq(y, z) * half_inv_beta
    };

    let center = k.center.clone();
    let mut best_point = center.clone();
    let mut best_obj = obj(&center, &mut budget);
    if k.contains_unchecked(z) {
        let v = obj(z, &mut budget);
        if v < best_obj {
            best_obj = v;
            best_point = z.to_vec();
        }
    }

    let cached = k.scan_radii(SCAN_ANGLES).map(<[T]>::to_vec);
    let mut angle_best: Vec<(T, [T; 2])> = Vec::with_capacity(SCAN_ANGLES);
    let mut truncated = false;
    let mut mean_radius = T::zero();
    for i in 0..SCAN_ANGLES {
        let theta = 2.0 * std::f64::consts::PI * (i as f64) / (SCAN_ANGLES as f64);
        let u = [fl::<T>(theta.cos()), fl::<T>(theta.sin())];
        let r = match &cached {
            Some(radii) => radii[i],
            None => k.radial_at(&u).expect("radial oracle present by dispatch"),
        };
        mean_radius += r;
        if !(r > T::zero()) {
            angle_best.push((T::infinity(), [center[0], center[1]]));
            continue;
        }
        if budget.exhausted() {
            truncated = true;
            break;
        }
        // Coarse pass locates the bracket for the golden section.
        let mut coarse_best = T::infinity();
        let mut coarse_j = 1usize;
        let mut point = [T::zero(); 2];
        for j in 1..=8usize {
            let t = r * fl::<T>(j as f64 / 8.0);
            point[0] = center[0] + t * u[0];
            point[1] = center[1] + t * u[1];
            let v = obj(&point, &mut budget);
            if v < coarse_best {
                coarse_best = v;
                coarse_j = j;
            }
        }
        let lo = r * fl::<T>((coarse_j as f64 - 1.0) / 8.0);
        let hi = if coarse_j == 8 { r } else { r * fl::<T>((coarse_j as f64 + 1.0) / 8.0) };
        let mut phi = |t: T| -> T {
            let p = [center[0] + t * u[0], center[1] + t * u[1]];
            f.value_at(&p) + linalg::dist_sq(&p, z) * half_inv_beta
        };
        let tol = fl::<T>(GOLDEN_TOL) * (T::one() + r);
        let (t_star, v_star) = golden_min(&mut phi, lo, hi, tol, &mut budget);
        let p_star = [center[0] + t_star * u[0], center[1] + t_star * u[1]];
        angle_best.push((v_star, p_star));
        if v_star < best_obj {
            best_obj = v_star;
            best_point = p_star.to_vec();
        }
        if budget.exhausted() {
            truncated = true;
            break;
        }
    }
    mean_radius /= fl::<T>(SCAN_ANGLES as f64);

    // Angular polish: golden-section over the angle between the fan
    // neighbours of the best ray, minimising the per-ray optimum. The
    // penalized simplex below stalls against the membership wall when the
    // optimum sits on the boundary; searching the angle directly resolves
    // exactly that tangential error.
    if !truncated {
        let mut i_best = 0usize;
        let mut v_best_angle = T::infinity();
        for (i, (v, _)) in angle_best.iter().enumerate() {
            if *v < v_best_angle {
                v_best_angle = *v;
                i_best = i;
            }
        }
        if v_best_angle.is_finite() {
            let two_pi = 2.0 * std::f64::consts::PI;
            let eval_ray = |theta: f64, budget: &mut Budget| -> (T, [T; 2]) {
                let u = [fl::<T>(theta.cos()), fl::<T>(theta.sin())];
                let r = match k.radial_at(&u) {
                    Some(r) if r > T::zero() => r,
                    _ => return (T::infinity(), [center[0], center[1]]),
                };
                let mut coarse_best = T::infinity();
                let mut coarse_j = 1usize;
                let mut point = [T::zero(); 2];
                for j in 1..=8usize {
                    let t = r * fl::<T>(j as f64 / 8.0);
                    point[0] = center[0] + t * u[0];
                    point[1] = center[1] + t * u[1];
                    let v = obj(&point, budget);
                    if v < coarse_best {
                        coarse_best = v;
                        coarse_j = j;
                    }
                }
                let lo = r * fl::<T>((coarse_j as f64 - 1.0) / 8.0);
                let hi = if coarse_j == 8 { r } else { r * fl::<T>((coarse_j as f64 + 1.0) / 8.0) };
                let mut phi = |t: T| -> T {
                    let p = [center[0] + t * u[0], center[1] + t * u[1]];
                    f.value_at(&p) + linalg::dist_sq(&p, z) * half_inv_beta
                };
                let tol = fl::<T>(GOLDEN_TOL) * (T::one() + r);
                let (t_star, v_star) = golden_min(&mut phi, lo, hi, tol, budget);
                (v_star, [center[0] + t_star * u[0], center[1] + t_star * u[1]])
            };
            const INVPHI: f64 = 0.618_033_988_749_894_9;
            let mut a = two_pi * (i_best as f64 - 1.0) / SCAN_ANGLES as f64;
            let mut b = two_pi * (i_best as f64 + 1.0) / SCAN_ANGLES as f64;
            let mut c = b - (b - a) * INVPHI;
            let mut d = a + (b - a) * INVPHI;
            let (mut vc, pc) = eval_ray(c, &mut budget);
            if vc < best_obj {
                best_obj = vc;
                best_point = pc.to_vec();
            }
            let (mut vd, pd) = eval_ray(d, &mut budget);
            if vd < best_obj {
                best_obj = vd;
                best_point = pd.to_vec();
            }
            while (b - a) > 1e-12 && !budget.exhausted() {
                if vc < vd {
                    b = d;
                    d = c;
                    vd = vc;
                    c = b - (b - a) * INVPHI;
                    let (v, p) = eval_ray(c, &mut budget);
                    vc = v;
                    if v < best_obj {
                        best_obj = v;
                        best_point = p.to_vec();
                    }
                } else {
                    a = c;
                    c = d;
                    vc = vd;
                    d = a + (b - a) * INVPHI;
                    let (v, p) = eval_ray(d, &mut budget);
                    vd = v;
                    if v < best_obj {
                        best_obj = v;
                        best_point = p.to_vec();
                    }
                }
            }
        }
        truncated = truncated || budget.exhausted();
    }

    // Nelder–Mead polish with a membership penalty.
    if !truncated {
        let step = {
            let s = mean_radius * fl::<T>(2.0 * std::f64::consts::PI / SCAN_ANGLES as f64);
            if s > fl(1e-6) {
                s
            } else {
                fl(1e-6)
            }
        };
        let mut penalized = |y: &[T]| -> T {
            if k.contains_unchecked(y) {
                f.value_at(y) + linalg::dist_sq(y, z) * half_inv_beta
            } else {
                T::infinity()
            }
        };
        // Restarted rounds: a fresh simplex at the incumbent escapes the
        // directional collapse a single Nelder–Mead run suffers from, and
        // shrinking the seed step lets later rounds resolve the optimum
        // well below the angular quantization of the fan.
        let mut round_step = step;
        for _ in 0..SCAN_POLISH_ROUNDS {
            if budget.exhausted() {
                break;
            }
            let simplex = vec![
                best_point.clone(),
                vec![best_point[0] + round_step, best_point[1]],
                vec![best_point[0], best_point[1] + round_step],
            ];
            let (p, v, _) = nelder_mead(&mut penalized, simplex, SCAN_POLISH_STEPS, fl(1e-12), &mut budget);
            if v < best_obj {
                best_obj = v;
                best_point = p;
            }
            round_step *= fl(1e-2);
            let floor = fl::<T>(1e-9) * (T::one() + linalg::norm(&best_point));
            if round_step < floor {
                round_step = floor;
            }
        }
        truncated = truncated || budget.exhausted();
    }

    // Count distinct tie clusters among per-angle minima.
    let tie_tol = fl::<T>(TIE_TOL) * (T::one() + best_obj.abs());
    let mut tie_flags = vec![false; angle_best.len()];
    for (i, (v, _)) in angle_best.iter().enumerate() {
        tie_flags[i] = v.is_finite() && *v <= best_obj + tie_tol;
    }
    let mut clusters = 0usize;
    for i in 0..tie_flags.len() {
        let prev = if i == 0 { *tie_flags.last().unwrap_or(&false) } else { tie_flags[i - 1] };
        if tie_flags[i] && !prev {
            clusters += 1;
        }
    }
    let near_ties = clusters.saturating_sub(1);

    Ok(ProxResult {
        point: best_point,
        objective: best_obj,
        method: ProxMethod::RadialScan,
        n_evals: budget.used,
        converged: !truncated,
        near_ties,
    })
}

fn multistart<T: Scalar>(
    f: &ObjectiveFunction<T>,
    k: &StarShapedSet<T>,
    beta: T,
    z: &[T],
    budget_total: usize,
) -> Result<ProxResult<T>> {
    let half_inv_beta = T::one() / (fl::<T>(2.0) * beta);
    let mut budget = Budget::new(budget_total);
    let n_starts = 20usize.max(budget_total / 500);
    let rb = match k.bounding_radius {
        Some(r) => r,
        None if k.is_whole_space() => {
            let d = linalg::dist(z, &k.center);
            d * fl::<T>(2.0) + T::one()
        }
        None => {
            return Err(Error::ConfigError {
                reason: "multistart needs a bounding_radius on sets without a radial description".into(),
            })
        }
    };

    let mut starts: Vec<Vec<T>> = vec![k.center.clone()];
    if k.contains_unchecked(z) {
        starts.push(z.to_vec());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5354_4152);
    let mut attempts = 0usize;
    while starts.len() < n_starts && attempts < 200 * n_starts {
        attempts += 1;
        let cand: Vec<T> = k
            .center
            .iter()
            .map(|&c| c + rb * fl::<T>(2.0 * rng.gen::<f64>() - 1.0))
            .collect();
        if k.contains_unchecked(&cand) {
            starts.push(cand);
        }
    }

    let mut penalized = |y: &[T]| -> T {
        if k.contains_unchecked(y) {
            f.value_at(y) + linalg::dist_sq(y, z) * half_inv_beta
        } else {
            T::infinity()
        }
    };

    let step = rb * fl::<T>(0.1) + fl::<T>(1e-6);
    let mut best_point = k.center.clone();
    let mut best_obj = T::infinity();
    let mut best_settled = false;
    let mut finals: Vec<(Vec<T>, T)> = Vec::with_capacity(starts.len());
    for start in &starts {
        if budget.exhausted() {
            break;
        }
        let mut simplex = vec![start.clone()];
        for axis in 0..f.dim {
            let mut p = start.clone();
            p[axis] += step;
            simplex.push(p);
        }
        let (p, v, settled) = nelder_mead(&mut penalized, simplex, 200, fl(1e-10), &mut budget);
        if v < best_obj {
            best_obj = v;
            best_point = p.clone();
            best_settled = settled;
        }
        finals.push((p, v));
    }

    let tie_tol = fl::<T>(TIE_TOL) * (T::one() + best_obj.abs());
    let near_ties = finals
        .iter()
        .filter(|(p, v)| *v <= best_obj + tie_tol && linalg::dist(p, &best_point) > fl(1e-6))
        .count();

    Ok(ProxResult {
        point: best_point,
        objective: best_obj,
        method: ProxMethod::Multistart,
        n_evals: budget.used,
        converged: best_settled && !budget.exhausted(),
        near_ties,
    })
}

/// Certify the fixed-point characterization of the proximity operator:
///
/// 1. the minimizer is (numerically) a fixed point: `‖prox(x̄) − x̄‖ ≤ tol`;
/// 2. sampled members `x` with `‖x − x̄‖ > 10·tol` all move:
///    `‖prox(x) − x‖ > tol`;
/// 3. the located fixed point satisfies quadratic growth with the
///    internally estimated modulus: `h(y) ≥ h(p) + (γ̂/4)‖y − p‖²`.
///
/// Non-converged prox evaluations make the report inconclusive
/// (`passed = false` with an explanatory note) rather than silently
/// trusted.
///
/// # Errors
/// Missing minimizer, a center outside `K`, or configuration errors from
/// the underlying prox calls.
pub fn check_fixed_point<T: Scalar>(
    f: &ObjectiveFunction<T>,
    k: &StarShapedSet<T>,
    beta: T,
    tol: T,
) -> Result<CheckReport> {
    const SEED: u64 = 23;
    let xbar = f.minimizer.clone().ok_or(Error::MinimizerRequired)?;
    if !k.contains(&xbar)? {
        return Err(Error::ConfigError { reason: "the minimizer must belong to the set".into() });
    }
    let mut worst = f64::INFINITY;
    let mut witness: Option<Witness> = None;
    let mut passed = true;
    let mut n_samples = 0usize;
    let mut nonconverged = 0usize;

    // Condition 1: the center stays put.
    let at_center = prox(f, k, beta, &xbar, DEFAULT_CHECK_BUDGET)?;
    if !at_center.converged {
        nonconverged += 1;
    }
    let moved_center = as_f64(linalg::dist(&at_center.point, &xbar));
    let r1 = as_f64(tol) - moved_center;
    n_samples += 1;
    if r1 < 0.0 {
        passed = false;
    }
    if r1 < worst {
        worst = r1;
        witness = Some(Witness::at_point(xbar.iter().map(|&c| as_f64(c)).collect(), r1));
    }
    let fixed_point = at_center.point.clone();

    // Sample members for conditions 2 and 3.
    let rb = k.bounding_radius.unwrap_or_else(|| fl(4.0));
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut members: Vec<Vec<T>> = Vec::with_capacity(FIXED_POINT_STARTS);
    let mut attempts = 0usize;
    while members.len() < FIXED_POINT_STARTS && attempts < 100 * FIXED_POINT_STARTS {
        attempts += 1;
        let cand: Vec<T> = k.center.iter().map(|&c| c + rb * fl::<T>(2.0 * rng.gen::<f64>() - 1.0)).collect();
        if k.contains_unchecked(&cand) {
            members.push(cand);
        }
    }

    // Condition 2: members away from the minimizer are not fixed.
    let far_tol = tol * fl::<T>(10.0);
    for x in &members {
        if linalg::dist(x, &xbar) <= far_tol {
            continue;
        }
        let pr = prox(f, k, beta, x, DEFAULT_CHECK_BUDGET)?;
        if !pr.converged {
            nonconverged += 1;
            continue;
        }
        let moved = as_f64(linalg::dist(&pr.point, x));
        let r2 = moved - as_f64(tol);
        n_samples += 1;
        if r2 < 0.0 {
            passed = false;
        }
        if r2 < worst {
            worst = r2;
            witness = Some(Witness::at_point(x.iter().map(|&c| as_f64(c)).collect(), r2));
        }
    }

    // Condition 3: growth about the located fixed point.
    let gamma_hat = crate::analysis::estimate_modulus(
        f,
        &SamplePlan::new(
            SEED,
            1000,
            xbar.iter().map(|&c| c - rb).collect(),
            xbar.iter().map(|&c| c + rb).collect(),
            8,
        ),
    )?;
    let quarter = gamma_hat * fl::<T>(0.25);
    let hp = f.eval(&fixed_point)?;
    for y in &members {
        let hy = f.value_at(y);
        let d2 = linalg::dist_sq(y, &fixed_point);
        let residual = hy - hp - quarter * d2;
        let scale = hy.abs() + hp.abs();
        let sl = fl::<T>(1e-9) * (T::one() + scale);
        let rv = as_f64(residual);
        n_samples += 1;
        if rv < -as_f64(sl) {
            passed = false;
        }
        if rv < worst {
            worst = rv;
            witness = Some(Witness::at_point(y.iter().map(|&c| as_f64(c)).collect(), rv));
        }
    }

    let mut rep = CheckReport::new("fixed_point", passed, worst, n_samples, SEED);
    let mut notes = format!(
        "center moved {moved_center:.3e}; gamma_hat = {}; {} members sampled",
        as_f64(gamma_hat),
        members.len()
    );
    if nonconverged > 0 {
        notes.push_str(&format!("; inconclusive: {nonconverged} prox calls hit the budget"));
        rep.passed = false;
    }
    if !rep.passed {
        rep.witness = witness;
    }
    rep.notes = Some(notes);
    Ok(rep)
}

/// Certify the characterizing inequality of the proximity operator on a
/// star-shaped set: with `x* = prox(z)`,
/// `(1/β)⟨x* − z, x̄ − x*⟩ ≥ (γ̂/2)‖x* − x̄‖² − slack`
/// for sampled members `z`, with `γ̂` estimated over the same plan.
///
/// Non-converged prox evaluations are excluded and counted in the notes.
///
/// # Errors
/// Missing minimizer or propagated prox/estimation failures.
pub fn check_prox_inequality<T: Scalar>(
    f: &ObjectiveFunction<T>,
    k: &StarShapedSet<T>,
    beta: T,
    plan: &SamplePlan<T>,
) -> Result<CheckReport> {
    plan.expect_dim(f.dim)?;
    let xbar = f.minimizer.clone().ok_or(Error::MinimizerRequired)?;
    let gamma_hat = estimate_modulus(f, plan)?;
    let half_gamma = gamma_hat * fl::<T>(0.5);
    let inv_beta = T::one() / beta;
    let mut worst = f64::INFINITY;
    let mut witness = None;
    let mut passed = true;
    let mut used = 0usize;
    let mut excluded = 0usize;
    for z in plan.points() {
        if !k.contains_unchecked(&z) {
            continue;
        }
        let pr = prox(f, k, beta, &z, DEFAULT_CHECK_BUDGET)?;
        if !pr.converged {
            excluded += 1;
            continue;
        }
        let xs = &pr.point;
        let mut inner = T::zero();
        let mut dist_sq = T::zero();
        for i in 0..f.dim {
            let step = xs[i] - z[i];
            let to_min = xbar[i] - xs[i];
            inner += step * to_min;
            let dd = xs[i] - xbar[i];
            dist_sq += dd * dd;
        }
        let lhs = inv_beta * inner;
        let rhs = half_gamma * dist_sq;
        let residual = lhs - rhs;
        let sl = fl::<T>(1e-9) * (T::one() + lhs.abs() + rhs.abs());
        used += 1;
        let rv = as_f64(residual);
        if rv < -as_f64(sl) {
            passed = false;
        }
        if rv < worst {
            worst = rv;
            witness = Some(Witness::at_point(z.iter().map(|&c| as_f64(c)).collect(), rv));
        }
    }
    let mut rep = CheckReport::new("prox_inequality", passed, if used == 0 { 0.0 } else { worst }, used, plan.seed);
    if !passed {
        rep.witness = witness;
    }
    let mut notes = format!("gamma_hat = {}; {used} members used", as_f64(gamma_hat));
    if excluded > 0 {
        notes.push_str(&format!("; {excluded} non-converged prox calls excluded"));
    }
    if used == 0 {
        notes.push_str("; no plan point landed in the set: vacuous pass");
    }
    rep.notes = Some(notes);
    Ok(rep)
}
