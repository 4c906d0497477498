//! Counterexample searches: sample candidate violations, then sharpen the
//! best candidate by deterministic coordinate descent.
//!
//! Orientation is inverted relative to the property checks: `passed =
//! false` means a violation **was found**, and `worst_residual` is then the
//! (positive) violation magnitude.

use super::slack;
use crate::error::{Error, Result};
use crate::funcs::ObjectiveFunction;
use crate::linalg;
use crate::report::{CheckReport, Witness};
use crate::sample::SamplePlan;
use crate::{as_f64, fl, Scalar};

/// Coordinate-descent refinement steps applied to the best candidate.
const REFINE_STEPS: usize = 50;

/// Maximize `obj` over `vars` within `[lo, hi]` by coordinate descent:
/// each sweep probes ± a per-coordinate step, keeps improvements, and
/// shrinks the step on failure. `obj` may return `None` for invalid
/// points (treated as −∞). Returns the best value reached.
pub(crate) fn refine_max<T: Scalar>(
    obj: &mut dyn FnMut(&[T]) -> Option<T>,
    vars: &mut [T],
    lo: &[T],
    hi: &[T],
    steps: usize,
) -> Option<T> {
    let mut best = obj(vars)?;
    let mut h: Vec<T> = lo
        .iter()
        .zip(hi)
        .map(|(&l, &u)| (u - l) * fl::<T>(0.1) + fl::<T>(1e-9))
        .collect();
    for _ in 0..steps {
        for i in 0..vars.len() {
            let orig = vars[i];
            let mut arg = orig;
            let mut improved = false;
            for cand in [orig + h[i], orig - h[i]] {
                let c = if cand < lo[i] {
                    lo[i]
                } else if cand > hi[i] {
                    hi[i]
                } else {
                    cand
                };
                vars[i] = c;
                if let Some(v) = obj(vars) {
                    if v > best {
                        best = v;
                        arg = c;
                        improved = true;
                    }
                }
            }
            vars[i] = arg;
            if !improved {
                h[i] *= fl::<T>(0.6);
            }
        }
    }
    Some(best)
}

/// Search for a violation of plain quasiconvexity:
/// `h(λy + (1−λ)x) > max{h(x), h(y)}` over sampled pairs and interior λ,
/// refining the best candidate.
///
/// `passed = false` means a violation was found; `worst_residual` is the
/// largest violation (negative when no candidate exceeded the slack).
///
/// # Errors
/// Fewer than two plan points, dimension mismatch, or evaluation failures.
pub fn find_quasiconvexity_violation<T: Scalar>(
    f: &ObjectiveFunction<T>,
    plan: &SamplePlan<T>,
) -> Result<CheckReport> {
    plan.expect_dim(f.dim)?;
    let points = plan.points();
    if points.len() < 2 {
        return Err(Error::ConfigError { reason: "violation search needs at least two sample points".into() });
    }
    let values: Vec<T> = points.iter().map(|p| f.value_at(p)).collect();
    let lambdas = plan.lambdas();
    let half = points.len() / 2;
    let dim = f.dim;
    let mut mid = vec![T::zero(); dim];
    let mut n_samples = 0usize;

    // Candidate pairs: a generic cross-block pairing, plus every pair among
    // the lowest-value samples. A violating segment needs both endpoints
    // inside a sublevel set it then exits, so low values are where the
    // action is (think disconnected sublevel components).
    let mut pairs: Vec<(usize, usize)> = (0..half).map(|i| (i, i + half)).collect();
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap_or(std::cmp::Ordering::Equal));
    let low = &order[..order.len().min(64)];
    for (a_pos, &a) in low.iter().enumerate() {
        for &b in &low[a_pos + 1..] {
            if a != b {
                pairs.push((a.min(b), a.max(b)));
            }
        }
    }

    // Keep the best few distinct pairs: coordinate descent can stall on the
    // flat `mid ≈ endpoint` plateau at 0, so refining several independent
    // starts is markedly more reliable than refining one.
    const TOP_K: usize = 3;
    let mut top: Vec<(T, usize, usize, T)> = Vec::new();
    for &(i, j) in &pairs {
        let (x, y) = (&points[i], &points[j]);
        let cap = if values[i] > values[j] { values[i] } else { values[j] };
        let mut best_here = T::neg_infinity();
        let mut best_lam = fl::<T>(0.5);
        for &lambda in &lambdas {
            for (m, (&xi, &yi)) in mid.iter_mut().zip(x.iter().zip(y)) {
                *m = xi + lambda * (yi - xi);
            }
            let v = f.value_at(&mid) - cap;
            n_samples += 1;
            if v > best_here {
                best_here = v;
                best_lam = lambda;
            }
        }
        if let Some(t) = top.iter_mut().find(|t| t.1 == i && t.2 == j) {
            if best_here > t.0 {
                *t = (best_here, i, j, best_lam);
            }
        } else if top.len() < TOP_K {
            top.push((best_here, i, j, best_lam));
        } else if best_here > top[TOP_K - 1].0 {
            top[TOP_K - 1] = (best_here, i, j, best_lam);
        }
        top.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(std::cmp::Ordering::Equal));
    }
    let sampled_best = top[0].0;

    // Refine each retained candidate jointly over (x, y, λ); keep the best.
    let mut lo: Vec<T> = plan.lo.clone();
    lo.extend_from_slice(&plan.lo);
    lo.push(fl(1e-6));
    let mut hi: Vec<T> = plan.hi.clone();
    hi.extend_from_slice(&plan.hi);
    hi.push(fl(1.0 - 1e-6));
    let mut mid_buf = vec![T::zero(); dim];
    let mut obj = |vars: &[T]| -> Option<T> {
        let (x, rest) = vars.split_at(dim);
        let (y, lam) = rest.split_at(dim);
        let lambda = lam[0];
        for (m, (&xi, &yi)) in mid_buf.iter_mut().zip(x.iter().zip(y)) {
            *m = xi + lambda * (yi - xi);
        }
        let fx = f.value_at(x);
        let fy = f.value_at(y);
        let cap = if fx > fy { fx } else { fy };
        Some(f.value_at(&mid_buf) - cap)
    };
    let mut refined = sampled_best;
    let mut vars: Vec<T> = Vec::with_capacity(2 * dim + 1);
    vars.extend_from_slice(&points[top[0].1]);
    vars.extend_from_slice(&points[top[0].2]);
    vars.push(top[0].3);
    for &(seed_val, i, j, lam0) in &top {
        let mut cand: Vec<T> = Vec::with_capacity(2 * dim + 1);
        cand.extend_from_slice(&points[i]);
        cand.extend_from_slice(&points[j]);
        cand.push(lam0);
        let r = refine_max(&mut obj, &mut cand, &lo, &hi, REFINE_STEPS).unwrap_or(seed_val);
        if r > refined {
            refined = r;
            vars = cand;
        }
    }

    let (x, rest) = vars.split_at(dim);
    let (y, lam) = rest.split_at(dim);
    let scale = f.value_at(x).abs().max(f.value_at(y).abs());
    let found = refined > slack(scale);
    let mut rep = CheckReport::new(
        "quasiconvexity_violation",
        !found,
        as_f64(refined),
        n_samples,
        plan.seed,
    );
    if found {
        rep.witness = Some(Witness {
            point: x.iter().map(|&c| as_f64(c)).collect(),
            point2: Some(y.iter().map(|&c| as_f64(c)).collect()),
            lambda: Some(as_f64(lam[0])),
            t: None,
            delta: None,
            beta: None,
            residual: as_f64(refined),
        });
    }
    rep.notes = Some(format!("sampled best {} refined to {}", as_f64(sampled_best), as_f64(refined)));
    Ok(rep)
}

/// Search for violations of the aiming inequality
/// `h(x̄) ≥ h(y) + (1/β)⟨∇h(y), x̄ − y⟩` at each weight `β` in
/// `beta_grid`, refining the best candidate per weight.
///
/// `passed = false` only when **every** β admits a violation (the function
/// then satisfies the inequality for no sampled weight); `worst_residual`
/// is the smallest per-β best violation, so it is positive exactly when
/// the check fails.
///
/// # Errors
/// - [`Error::ConfigError`] for an empty or nonpositive β grid.
/// - [`Error::InsufficientSmoothSamples`] when every sample is filtered.
/// - Missing minimizer or evaluation failures.
pub fn find_quasar_violation<T: Scalar>(
    f: &ObjectiveFunction<T>,
    beta_grid: &[T],
    plan: &SamplePlan<T>,
) -> Result<CheckReport> {
    if beta_grid.is_empty() {
        return Err(Error::ConfigError { reason: "quasar search needs a non-empty beta grid".into() });
    }
    if beta_grid.iter().any(|&b| !(b > T::zero()) || !b.is_finite()) {
        return Err(Error::ConfigError { reason: "quasar weights must be positive and finite".into() });
    }
    plan.expect_dim(f.dim)?;
    let xbar = f.minimizer.clone().ok_or(Error::MinimizerRequired)?;
    let hx = match f.min_value {
        Some(v) => v,
        None => f.eval(&xbar)?,
    };
    let points = plan.points();
    // Precompute value, gradient, and ⟨∇h(y), x̄ − y⟩ at smooth samples.
    let mut smooth: Vec<(usize, T, T)> = Vec::new(); // (index, h(y), inner)
    let mut filtered = 0usize;
    let mut diff = vec![T::zero(); f.dim];
    for (i, y) in points.iter().enumerate() {
        match f.smooth_grad(y) {
            Some(g) => {
                for (d, (&xi, &yi)) in diff.iter_mut().zip(xbar.iter().zip(y)) {
                    *d = xi - yi;
                }
                smooth.push((i, f.value_at(y), linalg::dot(&g, &diff)));
            }
            None => filtered += 1,
        }
    }
    if smooth.is_empty() {
        return Err(Error::InsufficientSmoothSamples { filtered });
    }

    let mut all_found = true;
    let mut worst: Option<(T, T, Vec<T>)> = None; // (violation, beta, y)
    let mut notes = String::new();
    let n_samples = smooth.len() * beta_grid.len();
    for &beta in beta_grid {
        // Best sampled candidate for this weight.
        let mut best = T::neg_infinity();
        let mut best_i = smooth[0].0;
        for &(i, hy, inner) in &smooth {
            let v = hy + inner / beta - hx;
            if v > best {
                best = v;
                best_i = i;
            }
        }
        // Refine over y.
        let mut vars = points[best_i].clone();
        let xbar_ref = &xbar;
        let mut diff_buf = vec![T::zero(); f.dim];
        let mut obj = |y: &[T]| -> Option<T> {
            let g = f.smooth_grad(y)?;
            for (d, (&xi, &yi)) in diff_buf.iter_mut().zip(xbar_ref.iter().zip(y)) {
                *d = xi - yi;
            }
            Some(f.value_at(y) + linalg::dot(&g, &diff_buf) / beta - hx)
        };
        let refined = refine_max(&mut obj, &mut vars, &plan.lo, &plan.hi, REFINE_STEPS).unwrap_or(best);
        let scale = f.value_at(&vars).abs() + hx.abs();
        let found = refined > slack(scale);
        if !found {
            all_found = false;
        }
        if !notes.is_empty() {
            notes.push_str("; ");
        }
        notes.push_str(&format!("beta={}: v={}", as_f64(beta), as_f64(refined)));
        match &worst {
            Some((w, _, _)) if refined >= *w => {}
            _ => worst = Some((refined, beta, vars.clone())),
        }
    }
    let (wv, wbeta, wy) = worst.expect("beta grid is non-empty");
    let mut rep = CheckReport::new("quasar_violation", !all_found, as_f64(wv), n_samples, plan.seed);
    if all_found {
        rep.witness = Some(Witness {
            point: wy.iter().map(|&c| as_f64(c)).collect(),
            point2: None,
            lambda: None,
            t: None,
            delta: None,
            beta: Some(as_f64(wbeta)),
            residual: as_f64(wv),
        });
    }
    if filtered > 0 {
        notes.push_str(&format!("; {filtered} samples filtered"));
    }
    rep.notes = Some(notes);
    Ok(rep)
}
