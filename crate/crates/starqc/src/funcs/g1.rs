//! The piecewise exponential-growth profile `g₁` underlying the clover.
//!
//! ```text
//! g₁(x) = 3e·x² − 2e·x³                         on [0, 1)
//! g₁(x) = eⁿ·(1 + (e−1)(3s² − 2s³)), s = x−n    on [n, n+1), n ≥ 1
//! ```
//!
//! `g₁` is continuous at every integer (both one-sided limits equal `eⁿ`),
//! continuously differentiable (`g₁′(n) = 0` for every integer `n`, and the
//! cubic smoothstep has zero slope at both ends), nondecreasing, and grows
//! like `e^x`. Consequently `h(t) = t² + g₁(t)` is a smooth increasing
//! profile with `h(0) = 0`, the radial building block of the clover.

use std::sync::Arc;

use super::ScalarFunction;
use crate::{fl, Scalar};

/// `g₁(x)` for `x ≥ 0` (callers guarantee nonnegativity).
pub(crate) fn g1_raw(x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    let e = std::f64::consts::E;
    if x < 1.0 {
        return 3.0 * e * x * x - 2.0 * e * x * x * x;
    }
    let n = x.floor();
    let s = x - n;
    let smooth = 3.0 * s * s - 2.0 * s * s * s;
    e.powi(n as i32) * (1.0 + (e - 1.0) * smooth)
}

/// `g₁′(x)` for `x ≥ 0`.
pub(crate) fn g1_deriv(x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    let e = std::f64::consts::E;
    if x < 1.0 {
        return 6.0 * e * x - 6.0 * e * x * x;
    }
    let n = x.floor();
    let s = x - n;
    e.powi(n as i32) * (e - 1.0) * (6.0 * s - 6.0 * s * s)
}

/// Radial profile `h(t) = t² + g₁(t)`, `t ≥ 0`.
pub(crate) fn h_profile(t: f64) -> f64 {
    t * t + g1_raw(t)
}

/// `h′(t) = 2t + g₁′(t)`, `t ≥ 0`.
pub(crate) fn h_profile_deriv(t: f64) -> f64 {
    2.0 * t + g1_deriv(t)
}

/// Build `g₁` as a [`ScalarFunction`] on `[0, +∞)`.
///
/// Evaluating at a negative argument through [`ScalarFunction::eval`]
/// returns a domain error.
pub fn make_g1<T: Scalar>() -> ScalarFunction<T> {
    ScalarFunction::new(
        "g1",
        T::zero(),
        T::infinity(),
        Arc::new(|t: T| fl::<T>(g1_raw(t.to_f64().unwrap()))),
    )
}
