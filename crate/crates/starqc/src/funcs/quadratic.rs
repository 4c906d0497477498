//! Scaled quadratics `h(x) = (γ/2)‖x‖²` — the canonical strongly convex
//! (hence strongly star quasiconvex) members, with every constant exact:
//! minimizer at the origin, gradient `γx`, gradient Lipschitz constant `γ`.

use std::sync::Arc;

use super::ObjectiveFunction;
use crate::{fl, Scalar};

/// Build `h(x) = (γ/2)‖x‖²` in the given dimension.
///
/// # Panics
/// Panics when `gamma ≤ 0` or `dim == 0`.
pub fn make_quadratic<T: Scalar>(gamma: T, dim: usize) -> ObjectiveFunction<T> {
    assert!(gamma > T::zero(), "quadratic needs gamma > 0");
    assert!(dim >= 1, "quadratic needs dim >= 1");
    let g = gamma;
    let value = Arc::new(move |x: &[T]| {
        let mut s = T::zero();
        for &v in x {
            s += v * v;
        }
        fl::<T>(0.5) * g * s
    });
    let grad = Arc::new(move |x: &[T]| x.iter().map(|&v| g * v).collect::<Vec<T>>());
    let mut f = ObjectiveFunction::new(
        format!("quadratic:{}:{}", crate::as_f64(gamma), dim),
        dim,
        value,
        Some(grad),
        Some(vec![T::zero(); dim]),
        Some(T::zero()),
        Some(gamma),
        Some(gamma),
        (vec![fl(-10.0); dim], vec![fl(10.0); dim]),
    );
    f.metadata.insert("gamma".into(), serde_json::json!(crate::as_f64(gamma)));
    f
}
