//! Deliberate non-members and degenerate members used to exercise failure
//! paths: a two-basin function that is *not* star quasiconvex at its
//! declared minimizer, and `|x|`, whose only valid modulus is 0.

use std::sync::Arc;

use super::ObjectiveFunction;
use crate::{fl, Scalar};

/// Two-basin non-member on ℝ²:
/// `g(x) = min(‖x‖², ‖x−(3,0)‖² + 0.5)` with declared minimizer `(0,0)`.
///
/// The declared minimizer is the true global one (the second basin bottoms
/// at 0.5), but segments from points of the second basin toward the origin
/// climb over the ridge between the basins, so star quasiconvexity,
/// nondecreasing-rays, and sublevel star-shapedness all fail with witnesses
/// near the second basin. No gradient oracle: the basin-switch locus is a
/// kink, left to the finite-difference filter.
pub fn make_two_basin<T: Scalar>() -> ObjectiveFunction<T> {
    let value = Arc::new(move |x: &[T]| {
        let a = x[0] * x[0] + x[1] * x[1];
        let d0 = x[0] - fl::<T>(3.0);
        let b = d0 * d0 + x[1] * x[1] + fl::<T>(0.5);
        a.min(b)
    });
    ObjectiveFunction::new(
        "twobasin".into(),
        2,
        value,
        None,
        Some(vec![T::zero(), T::zero()]),
        Some(T::zero()),
        None,
        None,
        (vec![fl(-5.0); 2], vec![fl(5.0); 2]),
    )
}

/// `h(x) = |x|` in one dimension: star quasiconvex (its rays are linear,
/// hence nondecreasing) but with maximal modulus 0 — the defining
/// inequality with any γ > 0 fails for small `y`. Exercises the
/// "modulus ≈ 0" flagging of the supercoercivity check.
pub fn make_abs<T: Scalar>() -> ObjectiveFunction<T> {
    let value = Arc::new(move |x: &[T]| x[0].abs());
    ObjectiveFunction::new(
        "abs".into(),
        1,
        value,
        None,
        Some(vec![T::zero()]),
        Some(T::zero()),
        None,
        None,
        (vec![fl(-50.0)], vec![fl(50.0)]),
    )
}
