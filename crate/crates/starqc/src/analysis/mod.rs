//! Numerical certification of star quasiconvexity and its relatives.
//!
//! Every routine here samples a function over a deterministic
//! [`SamplePlan`](crate::sample::SamplePlan) stream and evaluates the exact
//! residual of one defining inequality. A residual is oriented so that
//! *nonnegative means the property holds* at that sample; a check passes
//! when no residual drops below `−slack`, where
//! `slack = 1e-9 · (1 + |scale|)` and `scale` is the natural magnitude of
//! the quantities compared. Reports carry the worst residual and the inputs
//! achieving it.
//!
//! The properties certified, for a function `h` with minimizer `x̄` and a
//! candidate modulus `γ ≥ 0`:
//!
//! - **Star quasiconvexity with modulus γ** (the central definition):
//!   `h(λx̄ + (1−λ)y) ≤ h(y) − λ(1−λ)(γ/2)‖y − x̄‖²` for all `y` and
//!   `λ ∈ [0,1]`.
//! - **Sublevel sets star-shaped about x̄** (a consequence with `γ = 0`).
//! - **Along-ray formulation**: each restriction `t ↦ h(x̄ + t·u)` is
//!   strongly quasiconvex toward `0` with the same modulus.
//! - **Nondecreasing rays**: those restrictions are nondecreasing.
//! - **Stronger pointwise property**:
//!   `h(x̄ + t(y − x̄)) ≤ h(y) − (γ/4)(1 − t²)‖y − x̄‖²` for `t ∈ (0,1]`.
//! - **Quadratic growth**: `h(y) ≥ h(x̄) + (γ/4)‖y − x̄‖²`.
//! - **Supercoercivity**: `h(x̄ + R·u)/R²` stays above `γ̂/4` at large `R`.
//! - **First-order condition** (smooth points):
//!   `⟨∇h(y), y − x̄⟩ ≥ (γ/2)‖y − x̄‖²`.
//! - **Gradient-dominance** (smooth, Lipschitz gradient): `‖∇h(y)‖² ≥
//!   μ (h(y) − h*)` with `μ = γ²/(2L)`.
//! - **Epigraph star-shapedness** about `(x̄, h(x̄))`.
//!
//! Two *searches* invert the orientation: [`find_quasiconvexity_violation`]
//! and [`find_quasar_violation`] hunt for counterexamples, refine the best
//! candidate by coordinate descent, and report `passed = false` when a
//! genuine violation is found.
//!
//! [`estimate_modulus`] pools the sampled ratios of every γ-parameterized
//! inequality above and returns the largest modulus consistent with all of
//! them (clipped at zero). Because the same streams feed the checks, the
//! estimate is the exact threshold at which the sampled checks flip.

mod checks;
mod estimate;
mod search;

pub use checks::{
    check_along_rays, check_epigraph_star_shaped, check_first_order, check_nondecreasing_rays, check_pl,
    check_quadratic_growth, check_star_quasiconvex, check_stronger_property, check_sublevel_star_shaped,
    check_supercoercive,
};
pub use estimate::{estimate_lipschitz_grad, estimate_modulus};
pub use search::{find_quasar_violation, find_quasiconvexity_violation};

use crate::error::{Error, Result};
use crate::funcs::ObjectiveFunction;
use crate::linalg;
use crate::sample::SamplePlan;
use crate::{fl, Scalar};

/// Fractions of the ray length at which along-ray restrictions are probed.
pub(crate) const RAY_FRACS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

/// Index pairs into [`RAY_FRACS`] used as segment endpoints on each ray.
pub(crate) const RAY_PAIRS: [(usize, usize); 4] = [(0, 4), (0, 2), (2, 4), (1, 3)];

/// Squared-distance floor below which a sample coincides with the minimizer
/// for ratio purposes.
pub(crate) const D2_FLOOR: f64 = 1e-12;

/// Additive tolerance scaled to the magnitude of the quantities compared.
pub(crate) fn slack<T: Scalar>(scale: T) -> T {
    fl::<T>(1e-9) * (T::one() + scale.abs())
}

/// One sampled point with its cached value and squared distance to the
/// minimizer.
pub(crate) struct StreamSample<T> {
    pub y: Vec<T>,
    pub hy: T,
    pub d2: T,
}

/// Shared per-check context: minimizer, its value, and the evaluated
/// sample stream.
pub(crate) struct Stream<T: Scalar> {
    pub xbar: Vec<T>,
    pub hx: T,
    pub samples: Vec<StreamSample<T>>,
    pub lambdas: Vec<T>,
    pub seed: u64,
}

impl<T: Scalar> Stream<T> {
    pub fn build(f: &ObjectiveFunction<T>, plan: &SamplePlan<T>) -> Result<Self> {
        plan.expect_dim(f.dim)?;
        let xbar = f.minimizer.clone().ok_or(Error::MinimizerRequired)?;
        let hx = match f.min_value {
            Some(v) => v,
            None => f.eval(&xbar)?,
        };
        let points = plan.points();
        let mut samples = Vec::with_capacity(points.len());
        for y in points {
            let hy = f.eval(&y)?;
            if !hy.is_finite() {
                return Err(Error::NonfiniteStencil { point: y.iter().map(|&c| crate::as_f64(c)).collect() });
            }
            let d2 = linalg::dist_sq(&y, &xbar);
            samples.push(StreamSample { y, hy, d2 });
        }
        Ok(Self { xbar, hx, samples, lambdas: plan.lambdas(), seed: plan.seed })
    }

    /// Interior λ values plus the endpoint anchors 0 and 1.
    pub fn lambdas_with_anchors(&self) -> Vec<T> {
        let mut all = Vec::with_capacity(self.lambdas.len() + 2);
        all.push(T::zero());
        all.extend_from_slice(&self.lambdas);
        all.push(T::one());
        all
    }
}

/// Ray reach from `origin` along unit `u` before leaving the box
/// `[lo, hi]` (coordinatewise). Infinite when the ray never exits.
pub(crate) fn box_reach<T: Scalar>(origin: &[T], u: &[T], lo: &[T], hi: &[T]) -> T {
    let mut reach = T::infinity();
    for i in 0..origin.len() {
        let t = if u[i] > T::zero() {
            (hi[i] - origin[i]) / u[i]
        } else if u[i] < T::zero() {
            (lo[i] - origin[i]) / u[i]
        } else {
            continue;
        };
        if t < reach {
            reach = t;
        }
    }
    if reach < T::zero() {
        T::zero()
    } else {
        reach
    }
}
