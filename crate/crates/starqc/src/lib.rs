// Validation guards here are written `!(x > y)` on purpose: unlike
// `x <= y`, the negated form also fires when either side is NaN, which is
// exactly what input rejection wants.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Numerical toolkit for (strongly) star quasiconvex optimization.
//!
//! A function `h` with minimizer `x̄` is *strongly star quasiconvex* with
//! modulus `γ ≥ 0` when
//!
//! ```text
//! h(λx̄ + (1−λ)y) ≤ h(y) − λ(1−λ)(γ/2)‖y − x̄‖²   for all y, λ ∈ [0,1].
//! ```
//!
//! Unlike convexity this only constrains segments *through the minimizer*,
//! which admits highly nonconvex members (the four-leaf clover of
//! [`funcs::make_clover`] is star quasiconvex yet not even quasiconvex).
//! The class still enjoys a rich set of equivalent characterizations —
//! star-shaped sublevel sets, strong quasiconvexity along rays through `x̄`,
//! a pointwise "stronger property", a first-order inequality — plus derived
//! properties (quadratic growth, 2-supercoercivity, Polyak–Łojasiewicz), and
//! first-order methods converge linearly on it.
//!
//! The crate provides:
//!
//! * [`funcs`] — the test-function zoo (quadratics, the clover, random
//!   radial-product functions) with exact oracles and a string registry;
//! * [`sets`] — star-shaped constraint sets with membership/radial oracles
//!   and star-center certification;
//! * [`analysis`] — sampling-based certification of every inequality above,
//!   modulus/Lipschitz estimation, and counterexample witness search;
//! * [`prox`] — the proximity operator `argmin_{y∈K} h(y) + ‖y−z‖²/(2β)` on
//!   star-shaped sets, with fixed-point and inequality verification;
//! * [`solvers`] — gradient, heavy-ball, Nesterov, and proximal-point
//!   iterations with validated parameter windows and per-iteration rate
//!   verification on the produced traces;
//! * [`report`] — JSON/CSV serialization with atomic writes.
//!
//! Core numerics are generic over the scalar type via [`Scalar`]; the
//! `*64` aliases at the crate root fix `f64` for everyday use.

#![warn(missing_docs)]

pub mod analysis;
pub mod error;
pub mod funcs;
pub(crate) mod linalg;
pub mod prox;
pub mod report;
pub mod sample;
pub mod sets;
pub mod solvers;

/// Floating-point scalar the toolkit is generic over.
///
/// Everything needed: IEEE arithmetic with transcendentals
/// (`num_traits::Float`), conversion from/to `f64` for constants and
/// reporting, assign ops for accumulation loops, and thread-safety bounds so
/// oracles can be shared across workers.
pub trait Scalar:
    num_traits::Float
    + num_traits::FromPrimitive
    + num_traits::ToPrimitive
    + num_traits::NumAssign
    + core::fmt::Debug
    + core::fmt::Display
    + core::iter::Sum
    + Send
    + Sync
    + 'static
{
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Convert an `f64` constant into the working scalar type.
///
/// # Panics
/// Panics if the conversion fails, which cannot happen for finite constants
/// into `f32`/`f64`.
pub(crate) fn fl<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("finite f64 constant converts into the scalar type")
}

/// Report a scalar as `f64` for serialization.
pub(crate) fn as_f64<T: Scalar>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Objective function over `f64`.
pub type Objective64 = funcs::ObjectiveFunction<f64>;
/// One-dimensional function over `f64`.
pub type ScalarFunction64 = funcs::ScalarFunction<f64>;
/// Star-shaped set over `f64`.
pub type StarShapedSet64 = sets::StarShapedSet<f64>;
/// Sample plan over `f64`.
pub type SamplePlan64 = sample::SamplePlan<f64>;
/// Solver configuration over `f64`.
pub type SolverConfig64 = solvers::SolverConfig<f64>;
/// Iterate trace over `f64`.
pub type IterateTrace64 = solvers::IterateTrace<f64>;
/// Proximity-operator result over `f64`.
pub type ProxResult64 = prox::ProxResult<f64>;
