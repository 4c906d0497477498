//! Small dense-vector helpers used throughout the crate.
//!
//! All routines operate on slices; callers guarantee equal lengths (the
//! public API layers validate dimensions before reaching these).

use crate::Scalar;

/// Euclidean inner product.
pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        acc += *x * *y;
    }
    acc
}

/// Euclidean norm.
pub fn norm<T: Scalar>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

/// Euclidean distance.
pub fn dist<T: Scalar>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        let d = *x - *y;
        acc += d * d;
    }
    acc.sqrt()
}

/// Squared Euclidean distance.
pub fn dist_sq<T: Scalar>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        let d = *x - *y;
        acc += d * d;
    }
    acc
}

/// Fill `out` with the combination `base + t·(target − base)`.
pub fn lerp<T: Scalar>(base: &[T], target: &[T], t: T, out: &mut Vec<T>) {
    debug_assert_eq!(base.len(), target.len());
    out.clear();
    for (b, y) in base.iter().zip(target) {
        out.push(*b + t * (*y - *b));
    }
}

/// Fill `out` with `center + t·u` (reusing the buffer in hot loops).
pub fn ray_point<T: Scalar>(center: &[T], u: &[T], t: T, out: &mut Vec<T>) {
    debug_assert_eq!(center.len(), u.len());
    out.clear();
    for (c, d) in center.iter().zip(u) {
        out.push(*c + t * *d);
    }
}
