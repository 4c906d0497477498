//! Test-function zoo: oracle types, constructors, gradients, and a string
//! registry.
//!
//! The zoo hosts the canonical strongly star quasiconvex members used across
//! the toolkit: scaled quadratics, the four-leaf clover (star quasiconvex
//! but not quasiconvex), randomized radial-product functions, and a
//! two-basin *non*-member used to exercise failure paths.

mod clover;
mod g1;
mod misc;
mod quadratic;
mod radial;

pub use clover::{make_clover, make_clover_axis};
pub use g1::make_g1;
pub use misc::{make_abs, make_two_basin};
pub use quadratic::make_quadratic;
pub use radial::{make_example312, make_radial_product};

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg;
use crate::{as_f64, fl, Scalar};

/// Value oracle: point to extended real.
pub type ValueFn<T> = dyn Fn(&[T]) -> T + Send + Sync;
/// Gradient oracle: point to vector.
pub type GradFn<T> = dyn Fn(&[T]) -> Vec<T> + Send + Sync;
/// One-dimensional value oracle.
pub type ScalarFn<T> = dyn Fn(T) -> T + Send + Sync;

/// A deterministic objective with optional exact structure attached.
///
/// Oracles are pure: repeated evaluation at the same point is bit-identical,
/// and the struct may be shared across threads.
#[derive(Clone)]
pub struct ObjectiveFunction<T: Scalar> {
    /// Registry id (or a descriptive id for ad-hoc constructions).
    pub id: String,
    /// Ambient dimension.
    pub dim: usize,
    value: Arc<ValueFn<T>>,
    grad: Option<Arc<GradFn<T>>>,
    /// Global minimizer x̄, when known.
    pub minimizer: Option<Vec<T>>,
    /// h(x̄), when known.
    pub min_value: Option<T>,
    /// Claimed star-quasiconvexity modulus γ (a claim to verify, never
    /// assumed by the checks).
    pub modulus_claim: Option<T>,
    /// Claimed gradient Lipschitz constant L on `eval_box`.
    pub lipschitz_claim: Option<T>,
    /// Box on which the claims are asserted: per-coordinate (lo, hi).
    pub eval_box: (Vec<T>, Vec<T>),
    /// Construction constants (JSON-serializable).
    pub metadata: BTreeMap<String, serde_json::Value>,
}

impl<T: Scalar> std::fmt::Debug for ObjectiveFunction<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ObjectiveFunction")
            .field("id", &self.id)
            .field("dim", &self.dim)
            .field("minimizer", &self.minimizer)
            .field("has_grad", &self.grad.is_some())
            .finish()
    }
}

impl<T: Scalar> ObjectiveFunction<T> {
    /// Build from parts. Internal: constructors in this module call this.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn new(
        id: String,
        dim: usize,
        value: Arc<ValueFn<T>>,
        grad: Option<Arc<GradFn<T>>>,
        minimizer: Option<Vec<T>>,
        min_value: Option<T>,
        modulus_claim: Option<T>,
        lipschitz_claim: Option<T>,
        eval_box: (Vec<T>, Vec<T>),
    ) -> Self {
        Self {
            id,
            dim,
            value,
            grad,
            minimizer,
            min_value,
            modulus_claim,
            lipschitz_claim,
            eval_box,
            metadata: BTreeMap::new(),
        }
    }

    /// Evaluate `h(x)`. `+∞` is a legal value (point outside the effective
    /// domain).
    ///
    /// # Errors
    /// [`Error::DimensionMismatch`] when `x.len() != self.dim`.
    pub fn eval(&self, x: &[T]) -> Result<T> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        Ok((self.value)(x))
    }

    /// Evaluate without the dimension check (hot paths; callers validated).
    #[inline]
    pub fn value_at(&self, x: &[T]) -> T {
        debug_assert_eq!(x.len(), self.dim);
        (self.value)(x)
    }

    /// Whether an analytic gradient oracle is attached.
    pub fn has_grad_oracle(&self) -> bool {
        self.grad.is_some()
    }

    /// Gradient: the analytic oracle when present, otherwise central finite
    /// differences with the given step per coordinate.
    ///
    /// # Errors
    /// [`Error::NonfiniteStencil`] when a stencil evaluation is nonfinite;
    /// [`Error::DimensionMismatch`] on bad input length.
    pub fn grad(&self, x: &[T], fd_step: T) -> Result<Vec<T>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        if let Some(g) = &self.grad {
            return Ok(g(x));
        }
        self.fd_grad(x, fd_step)
    }

    /// Gradient with the default step `1e-6·(1+‖x‖)`.
    pub fn grad_default(&self, x: &[T]) -> Result<Vec<T>> {
        self.grad(x, default_fd_step(x))
    }

    /// Central finite differences, ignoring any analytic oracle.
    pub fn fd_grad(&self, x: &[T], fd_step: T) -> Result<Vec<T>> {
        let mut g = Vec::with_capacity(self.dim);
        let mut xp = x.to_vec();
        for i in 0..self.dim {
            let xi = x[i];
            xp[i] = xi + fd_step;
            let fp = (self.value)(&xp);
            xp[i] = xi - fd_step;
            let fm = (self.value)(&xp);
            xp[i] = xi;
            if !fp.is_finite() || !fm.is_finite() {
                return Err(Error::NonfiniteStencil {
                    point: x.iter().map(|&v| as_f64(v)).collect(),
                });
            }
            g.push((fp - fm) / (fl::<T>(2.0) * fd_step));
        }
        Ok(g)
    }

    /// Gradient for property checks: the analytic oracle when present,
    /// otherwise a finite-difference gradient that passes two consistency
    /// filters. `None` marks the point as (numerically) nonsmooth and the
    /// caller skips it.
    ///
    /// The first filter compares central differences at steps `s` and `s/8`
    /// (`s = 1e-6·(1+‖x‖)`) and rejects relative disagreement above 1e-2.
    /// Central stencils cancel across a cusp that is symmetric about the
    /// probe point (`|x|` at 0 reports a flat slope at every step size), so
    /// a second filter additionally requires the forward and backward
    /// one-sided slopes to agree to the same relative tolerance.
    pub fn smooth_grad(&self, x: &[T]) -> Option<Vec<T>> {
        if let Some(g) = &self.grad {
            return Some(g(x));
        }
        let s = default_fd_step(x);
        let g1 = self.fd_grad(x, s).ok()?;
        let g2 = self.fd_grad(x, s / fl::<T>(8.0)).ok()?;
        let diff = linalg::dist(&g1, &g2);
        let scale = linalg::norm(&g1).max(linalg::norm(&g2));
        if diff > fl::<T>(1e-2) * scale + fl::<T>(1e-9) {
            return None;
        }
        let f0 = (self.value)(x);
        if !f0.is_finite() {
            return None;
        }
        let mut xp = x.to_vec();
        let mut diff_sq = T::zero();
        let mut fwd_sq = T::zero();
        let mut bwd_sq = T::zero();
        for i in 0..self.dim {
            let xi = x[i];
            xp[i] = xi + s;
            let fp = (self.value)(&xp);
            xp[i] = xi - s;
            let fm = (self.value)(&xp);
            xp[i] = xi;
            if !fp.is_finite() || !fm.is_finite() {
                return None;
            }
            let gf = (fp - f0) / s;
            let gb = (f0 - fm) / s;
            diff_sq += (gf - gb) * (gf - gb);
            fwd_sq += gf * gf;
            bwd_sq += gb * gb;
        }
        let one_sided = diff_sq.sqrt();
        let os_scale = fwd_sq.max(bwd_sq).sqrt();
        if one_sided <= fl::<T>(1e-2) * os_scale + fl::<T>(1e-9) {
            Some(g2)
        } else {
            None
        }
    }

    /// Copy of this function with replaced claimed constants (oracles are
    /// shared). Used to test checks against inflated/deflated claims.
    pub fn with_claims(&self, modulus: Option<T>, lipschitz: Option<T>) -> Self {
        let mut f = self.clone();
        f.modulus_claim = modulus;
        f.lipschitz_claim = lipschitz;
        f
    }
}

/// Default central-difference step `1e-6·(1+‖x‖)`.
pub fn default_fd_step<T: Scalar>(x: &[T]) -> T {
    fl::<T>(1e-6) * (T::one() + linalg::norm(x))
}

/// Evaluate `h(x)` (free-function form of [`ObjectiveFunction::eval`]).
pub fn eval<T: Scalar>(f: &ObjectiveFunction<T>, x: &[T]) -> Result<T> {
    f.eval(x)
}

/// Gradient (free-function form of [`ObjectiveFunction::grad`]).
pub fn grad<T: Scalar>(f: &ObjectiveFunction<T>, x: &[T], fd_step: T) -> Result<Vec<T>> {
    f.grad(x, fd_step)
}

/// A deterministic one-dimensional function with an explicit domain.
#[derive(Clone)]
pub struct ScalarFunction<T: Scalar> {
    /// Descriptive id.
    pub id: String,
    value: Arc<ScalarFn<T>>,
    /// Domain lower end (may be `-∞`).
    pub domain_lo: T,
    /// Domain upper end (may be `+∞`).
    pub domain_hi: T,
}

impl<T: Scalar> std::fmt::Debug for ScalarFunction<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ScalarFunction")
            .field("id", &self.id)
            .field("domain", &(self.domain_lo, self.domain_hi))
            .finish()
    }
}

impl<T: Scalar> ScalarFunction<T> {
    /// Build from a closure and domain.
    pub fn new(id: impl Into<String>, domain_lo: T, domain_hi: T, value: Arc<ScalarFn<T>>) -> Self {
        assert!(domain_lo <= domain_hi, "domain ends out of order");
        Self { id: id.into(), value, domain_lo, domain_hi }
    }

    /// Evaluate with a domain check.
    ///
    /// # Errors
    /// [`Error::DomainError`] outside `[domain_lo, domain_hi]`. Finite
    /// endpoints carry ulp-scale slack: a caller that recomputes a ray
    /// length with different rounding (e.g. `hypot` versus a summed norm)
    /// must still be able to evaluate at the endpoint it computed.
    pub fn eval(&self, t: T) -> Result<T> {
        let eps = fl::<T>(64.0) * T::epsilon();
        let lo_slack = eps * (T::one() + self.domain_lo.abs());
        let hi_slack = eps * (T::one() + self.domain_hi.abs());
        if t < self.domain_lo - lo_slack || t > self.domain_hi + hi_slack {
            return Err(Error::DomainError {
                arg: as_f64(t),
                lo: as_f64(self.domain_lo),
                hi: as_f64(self.domain_hi),
            });
        }
        Ok((self.value)(t))
    }

    /// Evaluate without the domain check (hot paths; callers validated).
    #[inline]
    pub fn value_at(&self, t: T) -> T {
        (self.value)(t)
    }
}

/// Restriction of `f` to the ray from `xbar` through `y`:
/// `h_y(t) = h(x̄ + t·(y−x̄)/‖y−x̄‖)` on the domain `[0, ‖y−x̄‖]`, so that
/// `h_y(0) = h(x̄)` and `h_y(‖y−x̄‖) = h(y)` exactly.
///
/// # Errors
/// [`Error::DegenerateRay`] when `y == xbar`;
/// [`Error::DimensionMismatch`] on bad lengths.
pub fn restrict_to_ray<T: Scalar>(
    f: &ObjectiveFunction<T>,
    xbar: &[T],
    y: &[T],
) -> Result<ScalarFunction<T>> {
    if xbar.len() != f.dim {
        return Err(Error::DimensionMismatch { expected: f.dim, got: xbar.len() });
    }
    if y.len() != f.dim {
        return Err(Error::DimensionMismatch { expected: f.dim, got: y.len() });
    }
    let len = linalg::dist(xbar, y);
    if len == T::zero() {
        return Err(Error::DegenerateRay);
    }
    let base = xbar.to_vec();
    let dir: Vec<T> = xbar.iter().zip(y).map(|(a, b)| (*b - *a) / len).collect();
    let fc = f.clone();
    let value = Arc::new(move |t: T| {
        // Evaluate the endpoints exactly at the stored points so endpoint
        // consistency is bit-exact, not just within rounding of base+t*dir.
        let x: Vec<T> = base.iter().zip(&dir).map(|(b, d)| *b + t * *d).collect();
        fc.value_at(&x)
    });
    Ok(ScalarFunction::new(
        format!("{}|ray", f.id),
        T::zero(),
        len,
        value,
    ))
}

/// Resolve a registry id into a function.
///
/// Known ids:
/// * `quadratic:<gamma>:<dim>` — `h(x) = (γ/2)‖x‖²`;
/// * `clover` — the four-leaf clover;
/// * `cloveraxis` — the clover's restriction to the x-axis (1-D);
/// * `example312:<alpha>:<k>:<seed>` — randomized radial product;
/// * `twobasin` — two-basin non-member (declared minimizer at the origin);
/// * `abs` — `|x|` in 1-D (star quasiconvex only with modulus 0).
///
/// # Errors
/// [`Error::UnknownId`] when the id does not parse.
pub fn registry<T: Scalar>(id: &str) -> Result<ObjectiveFunction<T>> {
    let parts: Vec<&str> = id.split(':').collect();
    let unknown = || Error::UnknownId { id: id.to_string() };
    match parts[0] {
        "quadratic" if parts.len() == 3 => {
            let gamma: f64 = parts[1].parse().map_err(|_| unknown())?;
            let dim: usize = parts[2].parse().map_err(|_| unknown())?;
            if gamma <= 0.0 || dim == 0 {
                return Err(unknown());
            }
            Ok(make_quadratic(fl::<T>(gamma), dim))
        }
        "clover" if parts.len() == 1 => Ok(make_clover()),
        "cloveraxis" if parts.len() == 1 => Ok(make_clover_axis()),
        "example312" if parts.len() == 4 => {
            let alpha: f64 = parts[1].parse().map_err(|_| unknown())?;
            let k: u32 = parts[2].parse().map_err(|_| unknown())?;
            let seed: u64 = parts[3].parse().map_err(|_| unknown())?;
            if !(0.0 < alpha && alpha < 1.0) || k == 0 {
                return Err(unknown());
            }
            Ok(make_example312(fl::<T>(alpha), k, seed))
        }
        "twobasin" if parts.len() == 1 => Ok(make_two_basin()),
        "abs" if parts.len() == 1 => Ok(make_abs()),
        _ => Err(unknown()),
    }
}
