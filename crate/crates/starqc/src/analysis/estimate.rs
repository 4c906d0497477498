//! Data-driven estimation of the star-quasiconvexity modulus and of the
//! gradient Lipschitz constant.

use super::{box_reach, Stream, D2_FLOOR, RAY_FRACS, RAY_PAIRS};
use crate::error::{Error, Result};
use crate::funcs::ObjectiveFunction;
use crate::linalg;
use crate::sample::SamplePlan;
use crate::{fl, Scalar};

/// Largest modulus `γ̂ ≥ 0` consistent with every sampled instance of the
/// γ-parameterized inequalities (segment definition, along-ray segments,
/// the stronger pointwise property, the first-order condition at smooth
/// points, and quadratic growth).
///
/// Each sampled instance yields the supremum γ it tolerates; the estimate
/// is the minimum of those suprema, clipped at zero. Because the checks in
/// this module consume the same streams, the returned value is exactly the
/// threshold at which the sampled inequalities flip from holding to
/// failing. More samples can only lower the estimate (it is antitone in
/// the sample set), so it upper-bounds the true modulus.
///
/// For `h = (γ₀/2)‖x‖²` every family's ratio is ≥ `2γ₀` with the
/// first-order, growth, and pointwise families attaining `2γ₀` exactly, so
/// the estimate is `2γ₀`.
///
/// # Errors
/// - [`Error::MinimizerRequired`] when `f` has no registered minimizer.
/// - Propagates evaluation failures.
pub fn estimate_modulus<T: Scalar>(f: &ObjectiveFunction<T>, plan: &SamplePlan<T>) -> Result<T> {
    let stream = Stream::build(f, plan)?;
    Ok(estimate_from_stream(f, &stream))
}

pub(crate) fn estimate_from_stream<T: Scalar>(f: &ObjectiveFunction<T>, stream: &Stream<T>) -> T {
    let d2_floor = fl::<T>(D2_FLOOR);
    let two = fl::<T>(2.0);
    let four = fl::<T>(4.0);
    let mut best = T::infinity();
    let mut mid = vec![T::zero(); f.dim];
    let mut diff = vec![T::zero(); f.dim];
    for s in &stream.samples {
        if s.d2 <= d2_floor {
            continue;
        }
        // Segment-definition ratios and stronger-property ratios share the
        // midpoint x̄ + t(y − x̄) with t = 1 − λ.
        for &lambda in &stream.lambdas {
            let t = T::one() - lambda;
            linalg::lerp(&stream.xbar, &s.y, t, &mut mid);
            let hmid = f.value_at(&mid);
            let num = s.hy - hmid;
            // λ is drawn from the interior grid, so λ, t ∈ (0, 1) strictly.
            let seg = two * num / (lambda * t * s.d2);
            // t = 1 − λ ∈ (0,1) on the interior grid, so 1 − t² > 0.
            let strong = four * num / ((T::one() - t * t) * s.d2);
            if seg < best {
                best = seg;
            }
            if strong < best {
                best = strong;
            }
        }
        // Along-ray segment ratios on a fixed fraction grid.
        let mut vals = [T::zero(); RAY_FRACS.len()];
        vals[0] = stream.hx;
        vals[RAY_FRACS.len() - 1] = s.hy;
        for (k, &fr) in RAY_FRACS.iter().enumerate().take(RAY_FRACS.len() - 1).skip(1) {
            linalg::lerp(&stream.xbar, &s.y, fl(fr), &mut mid);
            vals[k] = f.value_at(&mid);
        }
        let ray_len_sq = s.d2;
        for &(i, j) in &RAY_PAIRS {
            let (fi, fj) = (fl::<T>(RAY_FRACS[i]), fl::<T>(RAY_FRACS[j]));
            let span_sq = (fj - fi) * (fj - fi) * ray_len_sq;
            let cap = if vals[i] > vals[j] { vals[i] } else { vals[j] };
            for &lambda in &stream.lambdas {
                let frac = lambda * fj + (T::one() - lambda) * fi;
                linalg::lerp(&stream.xbar, &s.y, frac, &mut mid);
                let hmid = f.value_at(&mid);
                let ratio = two * (cap - hmid) / (lambda * (T::one() - lambda) * span_sq);
                if ratio < best {
                    best = ratio;
                }
            }
        }
        // First-order limit ratio at smooth points.
        if let Some(g) = f.smooth_grad(&s.y) {
            for (di, (&yi, &xi)) in diff.iter_mut().zip(s.y.iter().zip(&stream.xbar)) {
                *di = yi - xi;
            }
            let inner = linalg::dot(&g, &diff);
            let ratio = two * inner / s.d2;
            if ratio < best {
                best = ratio;
            }
        }
        // Quadratic-growth ratio.
        let ratio = four * (s.hy - stream.hx) / s.d2;
        if ratio < best {
            best = ratio;
        }
    }
    if !best.is_finite() || best < T::zero() {
        T::zero()
    } else {
        best
    }
}

/// Largest sampled ratio `‖∇h(x) − ∇h(y)‖ / ‖x − y‖` over pairs of smooth
/// stream points (consecutive pairs plus short coordinate offsets, which
/// capture local curvature).
///
/// # Errors
/// - [`Error::MinimizerRequired`] is *not* required here, but evaluation
///   failures propagate.
/// - [`Error::InsufficientSmoothSamples`] when fewer than one valid pair
///   survives the smoothness filter.
pub fn estimate_lipschitz_grad<T: Scalar>(f: &ObjectiveFunction<T>, plan: &SamplePlan<T>) -> Result<T> {
    plan.expect_dim(f.dim)?;
    let points = plan.points();
    let mut grads: Vec<Option<Vec<T>>> = Vec::with_capacity(points.len());
    let mut filtered = 0usize;
    for p in &points {
        let g = f.smooth_grad(p);
        if g.is_none() {
            filtered += 1;
        }
        grads.push(g);
    }
    let mut best = T::zero();
    let mut pairs = 0usize;
    for i in 0..points.len().saturating_sub(1) {
        let (Some(gi), Some(gj)) = (&grads[i], &grads[i + 1]) else { continue };
        let d = linalg::dist(&points[i], &points[i + 1]);
        if d <= fl(1e-12) {
            continue;
        }
        let ratio = linalg::dist(gi, gj) / d;
        if ratio.is_finite() {
            pairs += 1;
            if ratio > best {
                best = ratio;
            }
        }
    }
    // Short coordinate offsets probe local curvature directly.
    let h = fl::<T>(1e-3);
    for (i, p) in points.iter().enumerate() {
        let Some(gi) = &grads[i] else { continue };
        let axis = i % f.dim;
        let mut q = p.clone();
        q[axis] += h;
        let Some(gq) = f.smooth_grad(&q) else { continue };
        let ratio = linalg::dist(gi, &gq) / h;
        if ratio.is_finite() {
            pairs += 1;
            if ratio > best {
                best = ratio;
            }
        }
    }
    if pairs == 0 {
        return Err(Error::InsufficientSmoothSamples { filtered });
    }
    Ok(best)
}

/// Modulus estimate over a box of half-width `half_width` centered at the
/// minimizer, with fixed internal seed — used by routines that need a
/// modulus but take no plan.
pub(crate) fn internal_modulus<T: Scalar>(
    f: &ObjectiveFunction<T>,
    half_width: T,
    seed: u64,
    n_points: usize,
) -> Result<T> {
    let xbar = f.minimizer.clone().ok_or(Error::MinimizerRequired)?;
    let lo: Vec<T> = xbar.iter().map(|&c| c - half_width).collect();
    let hi: Vec<T> = xbar.iter().map(|&c| c + half_width).collect();
    let plan = SamplePlan::new(seed, n_points, lo, hi, 8);
    estimate_modulus(f, &plan)
}

/// Reach of the evaluation box of `f` from its minimizer along `u`,
/// clipped to be positive.
pub(crate) fn eval_box_reach<T: Scalar>(f: &ObjectiveFunction<T>, xbar: &[T], u: &[T]) -> T {
    let (lo, hi) = &f.eval_box;
    let r = box_reach(xbar, u, lo, hi);
    if r.is_finite() && r > T::zero() {
        r
    } else {
        fl(1.0)
    }
}
