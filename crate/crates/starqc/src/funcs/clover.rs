//! The four-leaf clover: star quasiconvex with a positive modulus, yet not
//! quasiconvex and (along the x-axis) not even quasar-convex.
//!
//! Construction. With the profile `h(t) = t² + g₁(t)` (see [`super::g1`]),
//! set the constants
//!
//! ```text
//! α = h(1),   β = h(1/√2),   p = ln 2 / ln(2α/β),
//! ```
//!
//! all computed numerically at build time, and define on ℝ²
//!
//! ```text
//! φ(x) = (‖x‖₂ / ‖x‖_p) · h(‖x‖₂)  for x ≠ 0,    φ(0) = 0,
//! ```
//!
//! where `‖x‖_p = (|x₁|ᵖ + |x₂|ᵖ)^(1/p)` with `0 < p < 1` (a pseudonorm:
//! homogeneous but without the triangle inequality). Along a fixed ray the
//! angular factor `c_u = ‖u‖/‖u‖_p` is a constant in `[m, 1]` with
//! `m = 2^(1/2 − 1/p)` attained on the diagonals, so every ray restriction
//! is `c_u·h(t)` — star quasiconvexity reduces to a 1-D property of `h` —
//! while the sublevel sets pinch toward the axes into four lobes, defeating
//! quasiconvexity between neighboring lobes.

use std::sync::Arc;

use super::g1::{h_profile, h_profile_deriv};
use super::ObjectiveFunction;
use crate::{fl, Scalar};

/// Clover constants computed from the profile at construction time.
#[derive(Debug, Clone, Copy)]
pub(crate) struct CloverConstants {
    pub alpha: f64,
    pub beta: f64,
    pub p: f64,
    pub m: f64,
}

pub(crate) fn clover_constants() -> CloverConstants {
    let alpha = h_profile(1.0);
    let beta = h_profile(1.0 / 2.0_f64.sqrt());
    let p = 2.0_f64.ln() / (2.0 * alpha / beta).ln();
    let m = 2.0_f64.powf(0.5 - 1.0 / p);
    CloverConstants { alpha, beta, p, m }
}

/// `‖x‖_p` for two coordinates, `0 < p < 1`.
fn pnorm2(x1: f64, x2: f64, p: f64) -> f64 {
    (x1.abs().powf(p) + x2.abs().powf(p)).powf(1.0 / p)
}

fn clover_value(x1: f64, x2: f64, p: f64) -> f64 {
    let r = (x1 * x1 + x2 * x2).sqrt();
    if r == 0.0 {
        return 0.0;
    }
    r / pnorm2(x1, x2, p) * h_profile(r)
}

/// Gradient of φ away from the coordinate axes:
/// `∇φ = (h(r) + r·h′(r))·x/(r·q) − (r·h(r)/q²)·∇q` with `q = ‖x‖_p` and
/// `∂q/∂xᵢ = q^(1−p)·|xᵢ|^(p−1)·sgn(xᵢ)`.
///
/// On the axes `‖·‖_p` has a cusp and the two-sided partial across the axis
/// does not exist; there the oracle takes `∂q/∂xᵢ = 0` at the vanishing
/// coordinate, which collapses to the radial directional derivative
/// `h′(r)·x/r`. That value is exact along the axis and, because the
/// discarded angular component is orthogonal to `x − x̄` (with `x̄ = 0`),
/// every inner product `⟨∇φ(x), x − x̄⟩` used by the first-order checks is
/// unaffected. At the origin φ is differentiable with gradient 0.
fn clover_grad(x1: f64, x2: f64, p: f64) -> [f64; 2] {
    let r = (x1 * x1 + x2 * x2).sqrt();
    if r == 0.0 {
        return [0.0, 0.0];
    }
    let q = pnorm2(x1, x2, p);
    let hr = h_profile(r);
    let hpr = h_profile_deriv(r);
    let dq = |xi: f64| -> f64 {
        if xi == 0.0 {
            0.0
        } else {
            q.powf(1.0 - p) * xi.abs().powf(p - 1.0) * xi.signum()
        }
    };
    let radial = (hr + r * hpr) / (r * q);
    let angular = r * hr / (q * q);
    [radial * x1 - angular * dq(x1), radial * x2 - angular * dq(x2)]
}

/// Build the clover on ℝ².
///
/// Minimizer `(0,0)` with value 0; metadata records the construction
/// constants `alpha`, `beta`, `p`, `m`, `two_m`; the claimed modulus is the
/// lower bound `2m` (a claim for the analysis module to test, not an input
/// any check trusts).
pub fn make_clover<T: Scalar>() -> ObjectiveFunction<T> {
    let c = clover_constants();
    let p = c.p;
    let value = Arc::new(move |x: &[T]| {
        fl::<T>(clover_value(x[0].to_f64().unwrap(), x[1].to_f64().unwrap(), p))
    });
    let grad = Arc::new(move |x: &[T]| {
        let g = clover_grad(x[0].to_f64().unwrap(), x[1].to_f64().unwrap(), p);
        vec![fl::<T>(g[0]), fl::<T>(g[1])]
    });
    let mut f = ObjectiveFunction::new(
        "clover".into(),
        2,
        value,
        Some(grad),
        Some(vec![T::zero(), T::zero()]),
        Some(T::zero()),
        Some(fl(2.0 * c.m)),
        None,
        (vec![fl(-3.0); 2], vec![fl(3.0); 2]),
    );
    f.metadata.insert("alpha".into(), serde_json::json!(c.alpha));
    f.metadata.insert("beta".into(), serde_json::json!(c.beta));
    f.metadata.insert("p".into(), serde_json::json!(c.p));
    f.metadata.insert("m".into(), serde_json::json!(c.m));
    f.metadata.insert("two_m".into(), serde_json::json!(2.0 * c.m));
    f
}

/// The clover's restriction to the x-axis as a 1-D objective:
/// `t ↦ t² + g₁(|t|)`, smooth on all of ℝ (the profile is C¹ and even at
/// the origin), minimizer 0.
///
/// Along the axis the angular factor is 1, so this *is* the profile `h` —
/// the restriction on which quasar-convexity fails at every tested β.
pub fn make_clover_axis<T: Scalar>() -> ObjectiveFunction<T> {
    let c = clover_constants();
    let value = Arc::new(move |x: &[T]| fl::<T>(h_profile(x[0].to_f64().unwrap().abs())));
    let grad = Arc::new(move |x: &[T]| {
        let t = x[0].to_f64().unwrap();
        vec![fl::<T>(h_profile_deriv(t.abs()) * t.signum())]
    });
    let mut f = ObjectiveFunction::new(
        "cloveraxis".into(),
        1,
        value,
        Some(grad),
        Some(vec![T::zero()]),
        Some(T::zero()),
        None,
        None,
        (vec![fl(-9.0)], vec![fl(9.0)]),
    );
    f.metadata.insert("p".into(), serde_json::json!(c.p));
    f.metadata.insert("m".into(), serde_json::json!(c.m));
    f
}
