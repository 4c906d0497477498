//! Star-shaped sets with respect to a designated center.
//!
//! A set `K ⊆ ℝⁿ` is star-shaped about `c ∈ K` when for every `x ∈ K` the
//! whole segment `[c, x]` stays inside `K`. Such sets are exactly the ones
//! describable by a *radial function* `r(u) ∈ [0, ∞]` over unit directions:
//! `c + t·u ∈ K` iff `t ≤ r(u)`. This module provides several concrete
//! representations (whole space, balls, radial closures, interpolated radial
//! tables, bare membership oracles), segment-containment sampling, a star-
//! center certification routine, and construction of sublevel sets
//! `{x : f(x) ≤ δ}` of functions whose restriction to each ray from the
//! minimizer is nondecreasing.

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcs::ObjectiveFunction;
use crate::linalg;
use crate::report::{CheckReport, Witness};
use crate::sample::direction_fan;
use crate::{as_f64, fl, Scalar};

/// Default membership tolerance: points within this distance of the radial
/// boundary count as members.
pub const DEFAULT_BOUNDARY_TOL: f64 = 1e-9;

/// Number of directions probed when validating `t_max` at sublevel-set
/// construction.
const SUBLEVEL_VALIDATION_DIRS: usize = 256;

/// Internal seed for the certification fan.
const CERTIFY_SEED: u64 = 19;

type MemberFn<T> = dyn Fn(&[T]) -> bool + Send + Sync;
type RadialClosure<T> = dyn Fn(&[T]) -> T + Send + Sync;

/// Piecewise-linear radial description of a planar set: radii tabulated at
/// sorted angles in `[0, 2π)`, interpolated linearly (with wrap-around).
///
/// Serialization round-trips bit-exactly: floats are printed
/// shortest-round-trip, so saving and reloading a table reproduces the same
/// membership function.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RadialTable {
    /// Star center.
    pub center: Vec<f64>,
    /// Sorted angles in `[0, 2π)`.
    pub angles: Vec<f64>,
    /// Radius at each angle (same length as `angles`).
    pub radii: Vec<f64>,
}

impl RadialTable {
    /// Interpolated radius at `theta` (any real angle).
    ///
    /// # Panics
    /// Panics if the table is empty.
    pub fn radius_at(&self, theta: f64) -> f64 {
        assert!(!self.angles.is_empty(), "radial table must not be empty");
        let n = self.angles.len();
        if n == 1 {
            return self.radii[0];
        }
        let two_pi = 2.0 * std::f64::consts::PI;
        let mut t = theta % two_pi;
        if t < 0.0 {
            t += two_pi;
        }
        // Find the segment [angles[i], angles[i+1]) containing t, with the
        // final wrap-around segment [angles[n-1], angles[0] + 2π).
        let i = match self.angles.binary_search_by(|a| a.partial_cmp(&t).expect("angles must be finite")) {
            Ok(i) => return self.radii[i],
            // t below the first tabulated angle falls in the wrap segment.
            Err(0) => n - 1,
            Err(i) => i - 1,
        };
        let (a0, r0) = (self.angles[i], self.radii[i]);
        let (mut a1, r1) = if i + 1 < n {
            (self.angles[i + 1], self.radii[i + 1])
        } else {
            (self.angles[0] + two_pi, self.radii[0])
        };
        let mut tt = t;
        if tt < a0 {
            // t fell in the wrap segment below angles[0].
            tt += two_pi;
        }
        if a1 <= a0 {
            a1 = a0 + two_pi;
        }
        let w = ((tt - a0) / (a1 - a0)).clamp(0.0, 1.0);
        r0 + w * (r1 - r0)
    }

    fn validate(&self) -> Result<()> {
        if self.center.len() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: self.center.len() });
        }
        if self.angles.is_empty() || self.angles.len() != self.radii.len() {
            return Err(Error::ConfigError {
                reason: format!(
                    "radial table needs matching non-empty angles/radii (got {} angles, {} radii)",
                    self.angles.len(),
                    self.radii.len()
                ),
            });
        }
        for w in self.angles.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::ConfigError { reason: "radial table angles must be strictly increasing".into() });
            }
        }
        let two_pi = 2.0 * std::f64::consts::PI;
        if self.angles[0] < 0.0 || *self.angles.last().expect("non-empty") >= two_pi {
            return Err(Error::ConfigError { reason: "radial table angles must lie in [0, 2*pi)".into() });
        }
        for (&a, &r) in self.angles.iter().zip(&self.radii) {
            if !a.is_finite() || !r.is_finite() || r < 0.0 {
                return Err(Error::ConfigError { reason: format!("radial table entry (angle {a}, radius {r}) invalid") });
            }
        }
        Ok(())
    }
}

enum SetKind<T: Scalar> {
    WholeSpace,
    Ball { radius: T },
    RadialFn { r: Arc<RadialClosure<T>> },
    Table { table: RadialTable },
    Oracle { member: Arc<MemberFn<T>> },
}

impl<T: Scalar> Clone for SetKind<T> {
    fn clone(&self) -> Self {
        match self {
            Self::WholeSpace => Self::WholeSpace,
            Self::Ball { radius } => Self::Ball { radius: *radius },
            Self::RadialFn { r } => Self::RadialFn { r: Arc::clone(r) },
            Self::Table { table } => Self::Table { table: table.clone() },
            Self::Oracle { member } => Self::Oracle { member: Arc::clone(member) },
        }
    }
}

/// A star-shaped set with a designated center.
pub struct StarShapedSet<T: Scalar> {
    /// Identifier (used in report artifacts).
    pub id: String,
    /// Ambient dimension.
    pub dim: usize,
    /// The designated star center.
    pub center: Vec<T>,
    /// Search radius for membership-oracle sets (required by routines that
    /// must locate the boundary without a radial description).
    pub bounding_radius: Option<T>,
    /// Boundary tie-break tolerance: points within `tol` of the radial
    /// boundary are declared members.
    pub tol: T,
    kind: SetKind<T>,
    scan_cache: Arc<OnceLock<(usize, Vec<T>)>>,
}

impl<T: Scalar> Clone for StarShapedSet<T> {
    fn clone(&self) -> Self {
        Self {
            id: self.id.clone(),
            dim: self.dim,
            center: self.center.clone(),
            bounding_radius: self.bounding_radius,
            tol: self.tol,
            kind: self.kind.clone(),
            scan_cache: Arc::clone(&self.scan_cache),
        }
    }
}

impl<T: Scalar> std::fmt::Debug for StarShapedSet<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("StarShapedSet")
            .field("id", &self.id)
            .field("dim", &self.dim)
            .field("center", &self.center)
            .field("kind", &match &self.kind {
                SetKind::WholeSpace => "whole_space",
                SetKind::Ball { .. } => "ball",
                SetKind::RadialFn { .. } => "radial_fn",
                SetKind::Table { .. } => "radial_table",
                SetKind::Oracle { .. } => "oracle",
            })
            .finish()
    }
}

/// Result of sampling a segment for containment.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentReport {
    /// Whether every sampled point was a member.
    pub contained: bool,
    /// Smallest sampled fraction `j/m` whose point was outside, when any.
    pub witness_t: Option<f64>,
    /// Number of points sampled (`m + 1`).
    pub n_samples: usize,
}

impl<T: Scalar> StarShapedSet<T> {
    fn new(id: String, dim: usize, center: Vec<T>, kind: SetKind<T>, bounding_radius: Option<T>) -> Self {
        assert_eq!(center.len(), dim, "center length must equal dim");
        Self {
            id,
            dim,
            center,
            bounding_radius,
            tol: fl(DEFAULT_BOUNDARY_TOL),
            kind,
            scan_cache: Arc::new(OnceLock::new()),
        }
    }

    /// All of `ℝⁿ`, star-shaped about any point; `center` is the designated
    /// one (used as the prox search anchor).
    pub fn whole_space(dim: usize, center: Vec<T>) -> Self {
        Self::new("all".into(), dim, center, SetKind::WholeSpace, None)
    }

    /// Closed ball of given center and radius.
    ///
    /// # Panics
    /// Panics if `radius` is not positive and finite.
    pub fn ball(center: Vec<T>, radius: T) -> Self {
        assert!(radius > T::zero() && radius.is_finite(), "ball radius must be positive and finite");
        let dim = center.len();
        let id = format!("ball:{}", as_f64(radius));
        let r = Some(radius);
        Self::new(id, dim, center, SetKind::Ball { radius }, r)
    }

    /// Set defined by a radial oracle: `center + t·u ∈ K` iff `t ≤ r(u)`
    /// for unit directions `u`.
    ///
    /// # Errors
    /// Rejects oracles returning a negative or non-finite radius on a
    /// 64-direction probe fan.
    pub fn make_radial_set(
        r: impl Fn(&[T]) -> T + Send + Sync + 'static,
        center: Vec<T>,
        dim: usize,
    ) -> Result<Self> {
        if center.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: center.len() });
        }
        let mut max_r = T::zero();
        for u in direction_fan::<T>(dim, 64, CERTIFY_SEED) {
            let val = r(&u);
            if !(val.is_finite() && val >= T::zero()) {
                return Err(Error::ConfigError {
                    reason: format!("radial oracle returned {} (need finite, nonnegative)", as_f64(val)),
                });
            }
            if val > max_r {
                max_r = val;
            }
        }
        let bound = max_r * fl::<T>(2.0) + T::one();
        Ok(Self::new("radial".into(), dim, center, SetKind::RadialFn { r: Arc::new(r) }, Some(bound)))
    }

    /// Planar set from an interpolated radial table.
    ///
    /// # Errors
    /// Rejects tables that are empty, unsorted, out of `[0, 2π)`, or carry
    /// negative/non-finite entries, and centers that are not 2-D.
    pub fn from_radial_table(table: RadialTable) -> Result<Self> {
        table.validate()?;
        let center = table.center.iter().map(|&c| fl::<T>(c)).collect::<Vec<_>>();
        let bound = table.radii.iter().cloned().fold(0.0_f64, f64::max) + 1.0;
        Ok(Self::new(
            "radial_table".into(),
            2,
            center,
            SetKind::Table { table },
            Some(fl(bound)),
        ))
    }

    /// Set defined only by a membership oracle. `center` must be a member;
    /// `bounding_radius` bounds the set's extent around it (needed by
    /// boundary searches and prox multistart).
    ///
    /// # Errors
    /// Fails if the oracle rejects the center.
    pub fn from_member_oracle(
        member: impl Fn(&[T]) -> bool + Send + Sync + 'static,
        center: Vec<T>,
        dim: usize,
        bounding_radius: Option<T>,
    ) -> Result<Self> {
        if center.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: center.len() });
        }
        if !member(&center) {
            return Err(Error::ConfigError { reason: "membership oracle rejects the designated center".into() });
        }
        Ok(Self::new("oracle".into(), dim, center, SetKind::Oracle { member: Arc::new(member) }, bounding_radius))
    }

    /// Sublevel set `{x : f(x) ≤ delta}` of a function whose value is
    /// nondecreasing along every ray from its minimizer, represented
    /// radially: the radius along `u` is found by bisection on
    /// `[0, t_max]` for the last `t` with `f(x̄ + t·u) ≤ delta`, to
    /// absolute tolerance `tol`.
    ///
    /// # Errors
    /// - [`Error::MinimizerRequired`] when `f` has no registered minimizer.
    /// - [`Error::ConfigError`] when `delta < f(x̄)` (empty set) or `tol`
    ///   is not positive.
    /// - [`Error::TMaxTooSmall`] when some probe direction still satisfies
    ///   `f(x̄ + t_max·u) ≤ delta`, so the bisection bracket is invalid.
    pub fn sublevel_radial(f: &ObjectiveFunction<T>, delta: T, t_max: T, tol: T) -> Result<Self> {
        let xbar = f.minimizer.clone().ok_or(Error::MinimizerRequired)?;
        if !(tol > T::zero()) {
            return Err(Error::ConfigError { reason: "sublevel bisection tolerance must be positive".into() });
        }
        if !(t_max > T::zero()) {
            return Err(Error::ConfigError { reason: "t_max must be positive".into() });
        }
        let fc = f.eval(&xbar)?;
        if fc > delta {
            return Err(Error::ConfigError {
                reason: format!(
                    "delta = {} is below the value {} at the minimizer; the sublevel set is empty",
                    as_f64(delta),
                    as_f64(fc)
                ),
            });
        }
        // Validate the bracket on a deterministic fan of directions.
        let mut point = vec![T::zero(); f.dim];
        for u in direction_fan::<T>(f.dim, SUBLEVEL_VALIDATION_DIRS, CERTIFY_SEED) {
            linalg::ray_point(&xbar, &u, t_max, &mut point);
            let v = f.eval(&point)?;
            if v <= delta {
                return Err(Error::TMaxTooSmall {
                    t_max: as_f64(t_max),
                    delta: as_f64(delta),
                    direction: u.iter().map(|&c| as_f64(c)).collect(),
                    value: as_f64(v),
                });
            }
        }
        let f_inner = f.clone();
        let center_inner = xbar.clone();
        let radial = move |u: &[T]| -> T {
            let mut lo = T::zero();
            let mut hi = t_max;
            let mut p = vec![T::zero(); u.len()];
            // f(x̄ + lo·u) ≤ delta by construction; f at hi exceeds delta on
            // the validated fan, and for unvalidated directions a leading
            // check keeps the bracket sound.
            linalg::ray_point(&center_inner, u, hi, &mut p);
            if f_inner.value_at(&p) <= delta {
                return hi;
            }
            while hi - lo > tol {
                let mid = (lo + hi) * fl::<T>(0.5);
                linalg::ray_point(&center_inner, u, mid, &mut p);
                if f_inner.value_at(&p) <= delta {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lo
        };
        let id = format!("sublevel:{}:{}", f.id, as_f64(delta));
        let mut set = Self::new(id, f.dim, xbar, SetKind::RadialFn { r: Arc::new(radial) }, Some(t_max));
        set.tol = if tol > fl(DEFAULT_BOUNDARY_TOL) { tol } else { fl(DEFAULT_BOUNDARY_TOL) };
        Ok(set)
    }

    /// Radius of the set along unit direction `u`, when the representation
    /// provides one (`None` for whole-space and bare-oracle sets).
    pub fn radial_at(&self, u: &[T]) -> Option<T> {
        match &self.kind {
            SetKind::WholeSpace | SetKind::Oracle { .. } => None,
            SetKind::Ball { radius } => Some(*radius),
            SetKind::RadialFn { r } => Some(r(u)),
            SetKind::Table { table } => {
                let theta = as_f64(u[1]).atan2(as_f64(u[0]));
                Some(fl(table.radius_at(theta)))
            }
        }
    }

    /// Whether the set is all of `ℝⁿ`.
    pub fn is_whole_space(&self) -> bool {
        matches!(self.kind, SetKind::WholeSpace)
    }

    /// Ball radius, when the set is a ball.
    pub fn ball_radius(&self) -> Option<T> {
        match &self.kind {
            SetKind::Ball { radius } => Some(*radius),
            _ => None,
        }
    }

    /// Whether `radial_at` returns a radius (planar scan methods need this).
    pub fn has_radial_oracle(&self) -> bool {
        !matches!(self.kind, SetKind::WholeSpace | SetKind::Oracle { .. })
    }

    /// Membership test. Points within `tol` of a radial boundary count as
    /// members.
    ///
    /// # Errors
    /// [`Error::DimensionMismatch`] when `x` has the wrong length.
    pub fn contains(&self, x: &[T]) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        Ok(self.contains_unchecked(x))
    }

    pub(crate) fn contains_unchecked(&self, x: &[T]) -> bool {
        match &self.kind {
            SetKind::WholeSpace => true,
            SetKind::Oracle { member } => member(x),
            _ => {
                let d = linalg::dist(x, &self.center);
                if d <= self.tol {
                    return true;
                }
                let mut u = vec![T::zero(); self.dim];
                for (ui, (&xi, &ci)) in u.iter_mut().zip(x.iter().zip(&self.center)) {
                    *ui = (xi - ci) / d;
                }
                let r = self.radial_at(&u).expect("radial kinds provide a radius");
                d <= r + self.tol
            }
        }
    }

    /// Sample `a + (j/m)·(b − a)` for `j = 0..=m` and report whether every
    /// point is a member. `witness_t` is the smallest violating `j/m`.
    ///
    /// # Errors
    /// - [`Error::EndpointOutsideSet`] when `a` or `b` is not a member.
    /// - [`Error::DimensionMismatch`] on length mismatch.
    /// - [`Error::ConfigError`] when `m < 2`.
    pub fn segment_contained(&self, a: &[T], b: &[T], m: usize) -> Result<SegmentReport> {
        if m < 2 {
            return Err(Error::ConfigError { reason: format!("segment sampling needs m >= 2 (got {m})") });
        }
        if !self.contains(a)? {
            return Err(Error::EndpointOutsideSet { which: "a" });
        }
        if !self.contains(b)? {
            return Err(Error::EndpointOutsideSet { which: "b" });
        }
        let mut point = vec![T::zero(); self.dim];
        let mut witness_t = None;
        for j in 0..=m {
            let t = fl::<T>(j as f64 / m as f64);
            for (pi, (&ai, &bi)) in point.iter_mut().zip(a.iter().zip(b)) {
                *pi = ai + t * (bi - ai);
            }
            if !self.contains_unchecked(&point) {
                witness_t = Some(j as f64 / m as f64);
                break;
            }
        }
        Ok(SegmentReport { contained: witness_t.is_none(), witness_t, n_samples: m + 1 })
    }

    /// Certify that the designated center sees the whole set: locate a
    /// boundary (or far) point along each of `n_dirs` fan directions and
    /// sample the connecting segment at `m + 1` points.
    ///
    /// The reported residual is `0` for a direction whose segment is fully
    /// contained and `−t` for the smallest violating fraction `t`.
    ///
    /// # Errors
    /// [`Error::ConfigError`] for an oracle-only set without
    /// `bounding_radius`, or `m < 2`.
    pub fn certify_star_center(&self, n_dirs: usize, m: usize) -> Result<CheckReport> {
        if m < 2 {
            return Err(Error::ConfigError { reason: format!("segment sampling needs m >= 2 (got {m})") });
        }
        let mut worst = 0.0_f64;
        let mut witness: Option<Witness> = None;
        let mut n_samples = 0usize;
        let mut boundary = vec![T::zero(); self.dim];
        for u in direction_fan::<T>(self.dim, n_dirs, CERTIFY_SEED) {
            let t_boundary = match &self.kind {
                SetKind::WholeSpace => self.bounding_radius.unwrap_or_else(|| fl(4.0)),
                SetKind::Ball { radius } => *radius,
                SetKind::RadialFn { .. } | SetKind::Table { .. } => {
                    self.radial_at(&u).expect("radial kinds provide a radius")
                }
                SetKind::Oracle { member } => {
                    let rb = self.bounding_radius.ok_or_else(|| Error::ConfigError {
                        reason: "oracle-only sets need bounding_radius for boundary searches".into(),
                    })?;
                    self.oracle_boundary(member.as_ref(), &u, rb)
                }
            };
            if t_boundary <= self.tol {
                // Boundary collapses onto the center along this direction.
                continue;
            }
            linalg::ray_point(&self.center, &u, t_boundary, &mut boundary);
            if !self.contains_unchecked(&boundary) {
                // Numerical overshoot at the boundary: pull back by tol.
                linalg::ray_point(&self.center, &u, t_boundary - self.tol, &mut boundary);
                if !self.contains_unchecked(&boundary) {
                    continue;
                }
            }
            let rep = self.segment_contained(&self.center, &boundary, m)?;
            n_samples += rep.n_samples;
            if let Some(t) = rep.witness_t {
                if -t < worst {
                    worst = -t;
                    let mut point = vec![T::zero(); self.dim];
                    for (pi, (&ci, &bi)) in point.iter_mut().zip(self.center.iter().zip(&boundary)) {
                        *pi = ci + fl::<T>(t) * (bi - ci);
                    }
                    witness = Some(Witness {
                        point: point.iter().map(|&c| as_f64(c)).collect(),
                        point2: Some(boundary.iter().map(|&c| as_f64(c)).collect()),
                        lambda: None,
                        t: Some(t),
                        delta: None,
                        beta: None,
                        residual: -t,
                    });
                }
            }
        }
        let mut report = CheckReport::new("star_center", witness.is_none(), worst, n_samples, CERTIFY_SEED);
        report.witness = witness;
        Ok(report)
    }

    /// Outermost member along `u` for an oracle set: coarse outward scan to
    /// `rb`, then membership bisection.
    fn oracle_boundary(&self, member: &MemberFn<T>, u: &[T], rb: T) -> T {
        const SCAN_STEPS: usize = 64;
        const BISECT_ITERS: usize = 60;
        let mut point = vec![T::zero(); self.dim];
        let mut last_in = T::zero();
        let mut first_out = None;
        for k in 1..=SCAN_STEPS {
            let t = rb * fl::<T>(k as f64 / SCAN_STEPS as f64);
            linalg::ray_point(&self.center, u, t, &mut point);
            if member(&point) {
                last_in = t;
                first_out = None;
            } else if first_out.is_none() {
                first_out = Some(t);
            }
        }
        // `last_in` is the outermost member seen; bisect toward the next
        // non-member (or rb when the set fills the scanned ray).
        let mut lo = last_in;
        let mut hi = match first_out {
            Some(t) if t > last_in => t,
            _ => return last_in,
        };
        for _ in 0..BISECT_ITERS {
            let mid = (lo + hi) * fl::<T>(0.5);
            linalg::ray_point(&self.center, u, mid, &mut point);
            if member(&point) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// Tabulate the set's radial function at `n_angles` uniform angles
    /// (planar radial sets only).
    ///
    /// # Errors
    /// [`Error::ConfigError`] when the set has no radial oracle or is not
    /// 2-D, or `n_angles == 0`.
    pub fn to_radial_table(&self, n_angles: usize) -> Result<RadialTable> {
        if self.dim != 2 || !self.has_radial_oracle() {
            return Err(Error::ConfigError { reason: "radial tables require a planar set with a radial oracle".into() });
        }
        if n_angles == 0 {
            return Err(Error::ConfigError { reason: "n_angles must be positive".into() });
        }
        let mut angles = Vec::with_capacity(n_angles);
        let mut radii = Vec::with_capacity(n_angles);
        for i in 0..n_angles {
            let theta = 2.0 * std::f64::consts::PI * (i as f64) / (n_angles as f64);
            let u = [fl::<T>(theta.cos()), fl::<T>(theta.sin())];
            angles.push(theta);
            radii.push(as_f64(self.radial_at(&u).expect("radial oracle checked above")));
        }
        Ok(RadialTable { center: self.center.iter().map(|&c| as_f64(c)).collect(), angles, radii })
    }

    /// Radii along the `n` standard scan angles `2πi/n`, computed once and
    /// cached (the set is immutable, so the cache never goes stale).
    ///
    /// Returns `None` for sets without a radial oracle or non-planar sets.
    pub(crate) fn scan_radii(&self, n: usize) -> Option<&[T]> {
        if self.dim != 2 || !self.has_radial_oracle() {
            return None;
        }
        let (cached_n, radii) = self.scan_cache.get_or_init(|| {
            let mut radii = Vec::with_capacity(n);
            for i in 0..n {
                let theta = 2.0 * std::f64::consts::PI * (i as f64) / (n as f64);
                let u = [fl::<T>(theta.cos()), fl::<T>(theta.sin())];
                radii.push(self.radial_at(&u).expect("radial oracle checked above"));
            }
            (n, radii)
        });
        if *cached_n == n {
            Some(radii)
        } else {
            None
        }
    }
}
