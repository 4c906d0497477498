//! First-order methods with certified linear rates:
//!
//! - **gradient** / **heavy ball**: `x_{k+1} = x_k + α(x_k − x_{k−1}) − β∇h(x_k)`
//!   with `0 ≤ α < √2/2` and `0 < β ≤ (1 − 2α²)/L`. The energy
//!   `E_k = h(x_k) − h* + (α²/β)‖x_k − x_{k−1}‖²` contracts by
//!   `1 − ρ/σ` per step, where `ρ = min{β/2, (1 − βL − 2α²)/(2β)}` and
//!   `σ = max{15/β, 2L/γ² + 15β}` (the gradient method is `α = 0`).
//! - **Nesterov acceleration**: `y_k = x_k + α(x_k − x_{k−1})`,
//!   `x_{k+1} = y_k − β∇h(y_k)` with `η > 1`, `0 < β < γ/(ηL²)`; with
//!   `μ₁ = 1/(1 + β(γ − ηβL²))`, `μ₂ = (1 − 1/η)/(1 + β(γ − ηβL²))`,
//!   `ε ∈ (0, 1/μ₁ − 1)` and `α` below its admissible bound, the distance
//!   obeys `‖x_k − x̄‖² ≤ (μ₁(1+ε))^{k−1} E₁` with
//!   `E_k = ‖x_k − x̄‖² + μ₂(1 − α)‖x_k − x_{k−1}‖²`.
//! - **proximal point**: `x_{k+1} ∈ prox_{β_k h}(K, x_k)` on a star-shaped
//!   set; with `β_k ≥ β′` the squared distance contracts by
//!   `1/(1 + β′γ)` per step. Derivative-free, so traces carry no gradient
//!   norms.
//!
//! Every run validates its parameter window *before* touching the
//! objective; [`theoretical_rates`] additionally evaluates the proven
//! constants and insists the resulting rate is a genuine contraction
//! (strictly inside `(0,1)`). Traces record iterate `k` before deciding to
//! stop, so a start at the minimizer yields a single-row trace.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcs::ObjectiveFunction;
use crate::linalg;
use crate::prox::prox;
use crate::report::{atomic_write, RateReport};
use crate::sets::StarShapedSet;
use crate::{as_f64, fl, Scalar};

/// Default stopping tolerance (gradient norm for smooth methods, step
/// length for the proximal point method).
pub const DEFAULT_STOP_TOL: f64 = 1e-10;

/// Which iteration to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Plain gradient descent (inertial weight pinned to zero).
    Gradient,
    /// Heavy-ball: gradient step plus an inertial term.
    HeavyBall,
    /// Nesterov acceleration: gradient evaluated at the extrapolated point.
    Nesterov,
    /// Proximal point on a star-shaped set.
    Ppa,
}

impl Method {
    /// Stable lowercase name.
    pub fn name(self) -> &'static str {
        match self {
            Method::Gradient => "gradient",
            Method::HeavyBall => "heavy_ball",
            Method::Nesterov => "nesterov",
            Method::Ppa => "ppa",
        }
    }
}

/// Proximal weights `β_k`, constant or an explicit sequence (the last
/// entry repeats beyond its end).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum BetaSchedule<T> {
    /// The same weight every step.
    Constant(T),
    /// Per-step weights; steps past the end reuse the final entry.
    Sequence(Vec<T>),
}

impl<T: Scalar> BetaSchedule<T> {
    fn at(&self, k: usize) -> T {
        match self {
            BetaSchedule::Constant(b) => *b,
            BetaSchedule::Sequence(v) => v[k.min(v.len() - 1)],
        }
    }
    fn min_value(&self) -> T {
        match self {
            BetaSchedule::Constant(b) => *b,
            BetaSchedule::Sequence(v) => {
                let mut m = T::infinity();
                for &b in v {
                    if b < m {
                        m = b;
                    }
                }
                m
            }
        }
    }
    fn is_empty_sequence(&self) -> bool {
        matches!(self, BetaSchedule::Sequence(v) if v.is_empty())
    }
}

/// Full solver configuration. Build via the per-method constructors, then
/// adjust fields as needed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolverConfig<T> {
    /// Iteration to run.
    pub method: Method,
    /// Inertial / extrapolation weight. `None` means "derive it": zero for
    /// the gradient and heavy-ball methods, `0.99×` its admissible bound
    /// for Nesterov.
    pub alpha: Option<T>,
    /// Step size for the gradient-based methods.
    pub beta: T,
    /// Nesterov window parameter, `> 1`.
    pub eta: T,
    /// Nesterov balance parameter `ε`; `None` picks the midpoint of its
    /// window `(0, 1/μ₁ − 1)`.
    pub epsilon: Option<T>,
    /// Proximal weights `β_k`.
    pub beta_schedule: BetaSchedule<T>,
    /// Lower bound `β′ ≤ β_k` entering the proximal rate `1/(1 + β′γ)`.
    pub beta_prime: T,
    /// Maximum number of iterations (the trace then holds `max_iter + 1`
    /// rows unless a tolerance stop fires first).
    pub max_iter: usize,
    /// Stopping tolerance: gradient norm (smooth methods) or step length
    /// (proximal point). Checked after recording the current row.
    pub stop_tol: T,
}

impl<T: Scalar> SolverConfig<T> {
    fn base(method: Method) -> Self {
        Self {
            method,
            alpha: None,
            beta: fl(0.1),
            eta: fl(1.5),
            epsilon: None,
            beta_schedule: BetaSchedule::Constant(T::one()),
            beta_prime: T::one(),
            max_iter: 100,
            stop_tol: fl(DEFAULT_STOP_TOL),
        }
    }

    /// Gradient descent with step `beta`.
    pub fn gradient(beta: T, max_iter: usize) -> Self {
        Self { beta, max_iter, ..Self::base(Method::Gradient) }
    }

    /// Heavy ball with inertia `alpha` and step `beta`.
    pub fn heavy_ball(alpha: T, beta: T, max_iter: usize) -> Self {
        Self { alpha: Some(alpha), beta, max_iter, ..Self::base(Method::HeavyBall) }
    }

    /// Nesterov acceleration with step `beta` and window parameter `eta`;
    /// `ε` and `α` resolve to defaults inside their admissible windows.
    pub fn nesterov(beta: T, eta: T, max_iter: usize) -> Self {
        Self { beta, eta, max_iter, ..Self::base(Method::Nesterov) }
    }

    /// Proximal point with constant weight `beta` (which then also serves
    /// as the rate's lower bound `β′`).
    pub fn ppa(beta: T, max_iter: usize) -> Self {
        Self {
            beta_schedule: BetaSchedule::Constant(beta),
            beta_prime: beta,
            max_iter,
            ..Self::base(Method::Ppa)
        }
    }
}

/// The proven constants behind a configuration's linear rate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RateConstants<T> {
    /// Method the constants apply to.
    pub method: Method,
    /// Claimed modulus used in the bounds.
    pub gamma: T,
    /// Claimed gradient Lipschitz constant (smooth methods).
    pub lipschitz: Option<T>,
    /// Per-iteration contraction factor, strictly inside (0,1).
    pub rate: T,
    /// Which tracked quantity the rate contracts (`energy` for the
    /// heavy-ball family, `dist_sq` otherwise).
    pub quantity: &'static str,
    /// Heavy-ball decrement coefficient `ρ`.
    #[serde(skip_serializing_if = "Option::is_none", default = "Option::default")]
    pub rho: Option<T>,
    /// Heavy-ball comparison coefficient `σ`.
    #[serde(skip_serializing_if = "Option::is_none", default = "Option::default")]
    pub sigma: Option<T>,
    /// Nesterov `μ₁`.
    #[serde(skip_serializing_if = "Option::is_none", default = "Option::default")]
    pub mu1: Option<T>,
    /// Nesterov `μ₂`.
    #[serde(skip_serializing_if = "Option::is_none", default = "Option::default")]
    pub mu2: Option<T>,
    /// Resolved Nesterov `ε`.
    #[serde(skip_serializing_if = "Option::is_none", default = "Option::default")]
    pub epsilon: Option<T>,
    /// Resolved inertial / extrapolation weight.
    #[serde(skip_serializing_if = "Option::is_none", default = "Option::default")]
    pub alpha: Option<T>,
}

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    /// The iteration cap was reached.
    MaxIter,
    /// The recorded gradient norm fell to the stopping tolerance.
    GradientTol,
    /// A proximal step moved less than the stopping tolerance.
    FixedPoint,
}

/// Run-level metadata attached to a trace.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceMeta<T> {
    /// Identifier of the objective.
    pub function_id: String,
    /// Method that produced the trace.
    pub method: Method,
    /// Claimed modulus, when the objective carries one.
    pub gamma: Option<T>,
    /// Optimal value used for gaps: the exact minimum when known,
    /// otherwise the best value seen along the trace.
    pub h_star: T,
    /// Whether `h_star` is the exact minimum rather than best-seen.
    pub h_star_exact: bool,
    /// Proximal steps whose inner solve hit its budget (0 for smooth
    /// methods).
    pub nonconverged_steps: usize,
}

/// Recorded iterates of one run. Row `k` holds `x_k` together with the
/// value, gradient norm, and distance measured *at* `x_k`.
#[derive(Debug, Clone)]
pub struct IterateTrace<T> {
    /// The iterates, row per iteration.
    pub iterates: Vec<Vec<T>>,
    /// `h(x_k)` per row.
    pub values: Vec<T>,
    /// `‖∇h(x_k)‖` per row; absent for the derivative-free proximal
    /// method.
    pub grad_norms: Option<Vec<T>>,
    /// `‖x_k − x̄‖` per row; absent when no minimizer is known.
    pub dist_to_min: Option<Vec<T>>,
    /// Method-specific energy per row; absent for the proximal method.
    pub energies: Option<Vec<T>>,
    /// Why the run ended.
    pub stop_reason: StopReason,
    /// Run-level metadata.
    pub meta: TraceMeta<T>,
}

impl<T: Scalar> IterateTrace<T> {
    /// Number of recorded rows.
    pub fn len(&self) -> usize {
        self.iterates.len()
    }

    /// Whether the trace is empty (never true for a successful run).
    pub fn is_empty(&self) -> bool {
        self.iterates.is_empty()
    }

    /// Render the trace as CSV bytes with columns
    /// `k, x_0…x_{d−1}, h, grad_norm, dist_to_min, dist_sq_ratio, energy`.
    /// Floats are printed as `{:.16e}` (full round-trip precision);
    /// unavailable entries print as `NaN`. Equal traces produce
    /// byte-identical output.
    ///
    /// # Errors
    /// CSV encoding failures.
    pub fn to_csv_bytes(&self) -> Result<Vec<u8>> {
        let dim = self.iterates.first().map_or(0, Vec::len);
        let mut wtr = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<String> = vec!["k".into()];
        for i in 0..dim {
            header.push(format!("x_{i}"));
        }
        for tail in ["h", "grad_norm", "dist_to_min", "dist_sq_ratio", "energy"] {
            header.push(tail.into());
        }
        wtr.write_record(&header)?;
        let fmt = |v: f64| format!("{v:.16e}");
        for k in 0..self.len() {
            let mut row: Vec<String> = vec![k.to_string()];
            for &c in &self.iterates[k] {
                row.push(fmt(as_f64(c)));
            }
            row.push(fmt(as_f64(self.values[k])));
            row.push(fmt(self.grad_norms.as_ref().map_or(f64::NAN, |g| as_f64(g[k]))));
            let dist_k = self.dist_to_min.as_ref().map(|d| as_f64(d[k]));
            row.push(fmt(dist_k.unwrap_or(f64::NAN)));
            let ratio = match (k, &self.dist_to_min) {
                (0, _) | (_, None) => f64::NAN,
                (_, Some(d)) => {
                    let prev = as_f64(d[k - 1]);
                    if prev > 0.0 {
                        let cur = as_f64(d[k]);
                        (cur * cur) / (prev * prev)
                    } else {
                        f64::NAN
                    }
                }
            };
            row.push(fmt(ratio));
            row.push(fmt(self.energies.as_ref().map_or(f64::NAN, |e| as_f64(e[k]))));
            wtr.write_record(&row)?;
        }
        wtr.into_inner().map_err(|e| Error::ConfigError { reason: format!("csv buffer: {e}") })
    }

    /// Write [`Self::to_csv_bytes`] to `path` atomically.
    ///
    /// # Errors
    /// I/O or CSV failures.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        atomic_write(path, &self.to_csv_bytes()?)
    }
}

fn positive_claim<T: Scalar>(claim: Option<T>, name: &str) -> Result<T> {
    let v = claim.ok_or_else(|| Error::MissingClaim { missing: name.to_string() })?;
    if !(v > T::zero()) || !v.is_finite() {
        return Err(Error::ConfigError { reason: format!("{name} must be positive and finite (got {})", as_f64(v)) });
    }
    Ok(v)
}

/// Resolved heavy-ball window: (α, L).
fn hb_window<T: Scalar>(f: &ObjectiveFunction<T>, config: &SolverConfig<T>) -> Result<(T, T)> {
    let lips = positive_claim(f.lipschitz_claim, "lipschitz_claim")?;
    let alpha = match config.method {
        Method::Gradient => {
            if let Some(a) = config.alpha {
                if a != T::zero() {
                    return Err(Error::ConfigError {
                        reason: "the gradient method has no inertial term; leave alpha unset or zero".into(),
                    });
                }
            }
            T::zero()
        }
        Method::HeavyBall => config.alpha.unwrap_or_else(T::zero),
        _ => {
            return Err(Error::ConfigError { reason: "heavy-ball window asked for a non-heavy-ball method".into() })
        }
    };
    if !(alpha >= T::zero()) || !alpha.is_finite() {
        return Err(Error::ConfigError { reason: format!("alpha must be nonnegative (got {})", as_f64(alpha)) });
    }
    let two_a2 = fl::<T>(2.0) * alpha * alpha;
    if !(two_a2 < T::one()) {
        return Err(Error::ConfigError {
            reason: format!("alpha = {} is out of window: need alpha < sqrt(2)/2", as_f64(alpha)),
        });
    }
    let beta_cap = (T::one() - two_a2) / lips;
    if !(config.beta > T::zero()) || !config.beta.is_finite() || config.beta > beta_cap {
        return Err(Error::ConfigError {
            reason: format!(
                "step beta = {} is out of window: need 0 < beta <= (1 - 2*alpha^2)/L = {}",
                as_f64(config.beta),
                as_f64(beta_cap)
            ),
        });
    }
    Ok((alpha, lips))
}

/// Resolved Nesterov window.
struct NesterovParams<T> {
    alpha: T,
    epsilon: T,
    mu1: T,
    mu2: T,
}

fn nesterov_window<T: Scalar>(f: &ObjectiveFunction<T>, config: &SolverConfig<T>) -> Result<(NesterovParams<T>, T, T)> {
    let gamma = positive_claim(f.modulus_claim, "modulus_claim")?;
    let lips = positive_claim(f.lipschitz_claim, "lipschitz_claim")?;
    let eta = config.eta;
    if !(eta > T::one()) || !eta.is_finite() {
        return Err(Error::ConfigError { reason: format!("eta must exceed 1 (got {})", as_f64(eta)) });
    }
    let beta = config.beta;
    let beta_cap = gamma / (eta * lips * lips);
    if !(beta > T::zero()) || !beta.is_finite() || !(beta < beta_cap) {
        return Err(Error::ConfigError {
            reason: format!(
                "step beta = {} is out of window: need 0 < beta < gamma/(eta*L^2) = {}",
                as_f64(beta),
                as_f64(beta_cap)
            ),
        });
    }
    let denom = T::one() + beta * (gamma - eta * beta * lips * lips);
    let mu1 = T::one() / denom;
    let mu2 = (T::one() - T::one() / eta) / denom;
    let eps_max = denom - T::one();
    let epsilon = config.epsilon.unwrap_or_else(|| fl::<T>(0.5) * eps_max);
    if !(epsilon > T::zero()) || !(epsilon < eps_max) {
        return Err(Error::ConfigError {
            reason: format!(
                "epsilon = {} is out of window: need 0 < epsilon < 1/mu1 - 1 = {}",
                as_f64(epsilon),
                as_f64(eps_max)
            ),
        });
    }
    let lift = T::one() + epsilon;
    let alpha_bound = mu1 * mu2 * lift / (mu1 * mu2 * lift + mu1 + mu1 / epsilon + mu2);
    let alpha = config.alpha.unwrap_or_else(|| fl::<T>(0.99) * alpha_bound);
    if !(alpha >= T::zero()) || alpha > alpha_bound {
        return Err(Error::ConfigError {
            reason: format!(
                "alpha = {} is out of window: need 0 <= alpha <= {}",
                as_f64(alpha),
                as_f64(alpha_bound)
            ),
        });
    }
    Ok((NesterovParams { alpha, epsilon, mu1, mu2 }, gamma, lips))
}

fn ppa_window<T: Scalar>(config: &SolverConfig<T>) -> Result<()> {
    let bp = config.beta_prime;
    if !(bp > T::zero()) || !bp.is_finite() {
        return Err(Error::ConfigError {
            reason: format!("beta_prime must be positive and finite (got {})", as_f64(bp)),
        });
    }
    if config.beta_schedule.is_empty_sequence() {
        return Err(Error::ConfigError { reason: "the weight sequence must not be empty".into() });
    }
    let min_b = config.beta_schedule.min_value();
    if !min_b.is_finite() || !(min_b >= bp) {
        return Err(Error::ConfigError {
            reason: format!(
                "every proximal weight must be finite and >= beta_prime = {} (minimum found {})",
                as_f64(bp),
                as_f64(min_b)
            ),
        });
    }
    Ok(())
}

/// Evaluate the proven rate constants for `config` on `f`, validating the
/// full parameter window first.
///
/// # Errors
/// [`Error::MissingClaim`] when the needed claimed constants are absent,
/// [`Error::ConfigError`] when a parameter leaves its window or the
/// resulting rate degenerates (e.g. the heavy-ball step sitting exactly on
/// the window edge gives `ρ = 0`, i.e. no contraction).
pub fn theoretical_rates<T: Scalar>(f: &ObjectiveFunction<T>, config: &SolverConfig<T>) -> Result<RateConstants<T>> {
    match config.method {
        Method::Gradient | Method::HeavyBall => {
            let gamma = positive_claim(f.modulus_claim, "modulus_claim")?;
            let (alpha, lips) = hb_window(f, config)?;
            let beta = config.beta;
            let two = fl::<T>(2.0);
            let rho_a = beta / two;
            let rho_b = (T::one() - beta * lips - two * alpha * alpha) / (two * beta);
            let rho = rho_a.min(rho_b);
            if !(rho > T::zero()) {
                return Err(Error::ConfigError {
                    reason: format!(
                        "contraction coefficient rho = {} degenerates; pick beta strictly inside (0, (1-2*alpha^2)/L)",
                        as_f64(rho)
                    ),
                });
            }
            let sigma = (fl::<T>(15.0) / beta).max(two * lips / (gamma * gamma) + fl::<T>(15.0) * beta);
            if !(rho < sigma) {
                return Err(Error::ConfigError {
                    reason: format!("need rho < sigma (got rho = {}, sigma = {})", as_f64(rho), as_f64(sigma)),
                });
            }
            let rate = T::one() - rho / sigma;
            Ok(RateConstants {
                method: config.method,
                gamma,
                lipschitz: Some(lips),
                rate,
                quantity: "energy",
                rho: Some(rho),
                sigma: Some(sigma),
                mu1: None,
                mu2: None,
                epsilon: None,
                alpha: Some(alpha),
            })
        }
        Method::Nesterov => {
            let (p, gamma, lips) = nesterov_window(f, config)?;
            let rate = p.mu1 * (T::one() + p.epsilon);
            if !(rate > T::zero() && rate < T::one()) {
                return Err(Error::ConfigError {
                    reason: format!("rate mu1*(1+epsilon) = {} is not inside (0,1)", as_f64(rate)),
                });
            }
            Ok(RateConstants {
                method: Method::Nesterov,
                gamma,
                lipschitz: Some(lips),
                rate,
                quantity: "dist_sq",
                rho: None,
                sigma: None,
                mu1: Some(p.mu1),
                mu2: Some(p.mu2),
                epsilon: Some(p.epsilon),
                alpha: Some(p.alpha),
            })
        }
        Method::Ppa => {
            let gamma = positive_claim(f.modulus_claim, "modulus_claim")?;
            ppa_window(config)?;
            let rate = T::one() / (T::one() + config.beta_prime * gamma);
            Ok(RateConstants {
                method: Method::Ppa,
                gamma,
                lipschitz: None,
                rate,
                quantity: "dist_sq",
                rho: None,
                sigma: None,
                mu1: None,
                mu2: None,
                epsilon: None,
                alpha: None,
            })
        }
    }
}

fn resolve_h_star<T: Scalar>(f: &ObjectiveFunction<T>, values: &[T]) -> (T, bool) {
    if let Some(h) = f.min_value {
        return (h, true);
    }
    let mut best = T::infinity();
    for &v in values {
        if v < best {
            best = v;
        }
    }
    (best, false)
}

fn distances<T: Scalar>(f: &ObjectiveFunction<T>, iterates: &[Vec<T>]) -> Option<Vec<T>> {
    let xbar = f.minimizer.as_ref()?;
    Some(iterates.iter().map(|x| linalg::dist(x, xbar)).collect())
}

/// Run the gradient or heavy-ball iteration from `x0`.
///
/// # Errors
/// Window violations ([`Error::ConfigError`] / [`Error::MissingClaim`]),
/// dimension mismatches, or gradient-oracle failures.
pub fn heavy_ball<T: Scalar>(f: &ObjectiveFunction<T>, config: &SolverConfig<T>, x0: &[T]) -> Result<IterateTrace<T>> {
    if !matches!(config.method, Method::Gradient | Method::HeavyBall) {
        return Err(Error::ConfigError { reason: "heavy_ball expects a gradient or heavy-ball configuration".into() });
    }
    let (alpha, _lips) = hb_window(f, config)?;
    if x0.len() != f.dim {
        return Err(Error::DimensionMismatch { expected: f.dim, got: x0.len() });
    }
    let beta = config.beta;

    let mut iterates: Vec<Vec<T>> = Vec::new();
    let mut values: Vec<T> = Vec::new();
    let mut grad_norms: Vec<T> = Vec::new();
    let mut x_prev = x0.to_vec();
    let mut x = x0.to_vec();
    let mut stop_reason = StopReason::MaxIter;
    for k in 0..=config.max_iter {
        let g = f.grad_default(&x)?;
        let gn = linalg::norm(&g);
        iterates.push(x.clone());
        values.push(f.value_at(&x));
        grad_norms.push(gn);
        if gn <= config.stop_tol {
            stop_reason = StopReason::GradientTol;
            break;
        }
        if k == config.max_iter {
            break;
        }
        let mut x_next = Vec::with_capacity(f.dim);
        for i in 0..f.dim {
            x_next.push(x[i] + alpha * (x[i] - x_prev[i]) - beta * g[i]);
        }
        x_prev = std::mem::replace(&mut x, x_next);
    }

    let (h_star, h_star_exact) = resolve_h_star(f, &values);
    let inertia = alpha * alpha / beta;
    let mut energies: Vec<T> = Vec::with_capacity(values.len());
    for k in 0..values.len() {
        let step_sq = if k == 0 { T::zero() } else { linalg::dist_sq(&iterates[k], &iterates[k - 1]) };
        energies.push(values[k] - h_star + inertia * step_sq);
    }
    Ok(IterateTrace {
        dist_to_min: distances(f, &iterates),
        iterates,
        values,
        grad_norms: Some(grad_norms),
        energies: Some(energies),
        stop_reason,
        meta: TraceMeta {
            function_id: f.id.clone(),
            method: config.method,
            gamma: f.modulus_claim,
            h_star,
            h_star_exact,
            nonconverged_steps: 0,
        },
    })
}

/// Run the Nesterov acceleration from `x0` (with `x_{−1} := x_0`).
///
/// # Errors
/// Window violations, dimension mismatches, or gradient-oracle failures.
pub fn nesterov<T: Scalar>(f: &ObjectiveFunction<T>, config: &SolverConfig<T>, x0: &[T]) -> Result<IterateTrace<T>> {
    if config.method != Method::Nesterov {
        return Err(Error::ConfigError { reason: "nesterov expects a Nesterov configuration".into() });
    }
    let (p, _gamma, _lips) = nesterov_window(f, config)?;
    if x0.len() != f.dim {
        return Err(Error::DimensionMismatch { expected: f.dim, got: x0.len() });
    }
    let beta = config.beta;
    let alpha = p.alpha;

    let mut iterates: Vec<Vec<T>> = Vec::new();
    let mut values: Vec<T> = Vec::new();
    let mut grad_norms: Vec<T> = Vec::new();
    let mut x_prev = x0.to_vec();
    let mut x = x0.to_vec();
    let mut stop_reason = StopReason::MaxIter;
    for k in 0..=config.max_iter {
        // The recorded gradient norm is taken at the iterate itself; the
        // update differentiates at the extrapolated point instead.
        let g_here = f.grad_default(&x)?;
        let gn = linalg::norm(&g_here);
        iterates.push(x.clone());
        values.push(f.value_at(&x));
        grad_norms.push(gn);
        if gn <= config.stop_tol {
            stop_reason = StopReason::GradientTol;
            break;
        }
        if k == config.max_iter {
            break;
        }
        let mut y = Vec::with_capacity(f.dim);
        for i in 0..f.dim {
            y.push(x[i] + alpha * (x[i] - x_prev[i]));
        }
        let gy = f.grad_default(&y)?;
        let mut x_next = Vec::with_capacity(f.dim);
        for i in 0..f.dim {
            x_next.push(y[i] - beta * gy[i]);
        }
        x_prev = std::mem::replace(&mut x, x_next);
    }

    let (h_star, h_star_exact) = resolve_h_star(f, &values);
    let dist_to_min = distances(f, &iterates);
    let energies = dist_to_min.as_ref().map(|dists| {
        let weight = p.mu2 * (T::one() - alpha);
        (0..iterates.len())
            .map(|k| {
                let step_sq = if k == 0 { T::zero() } else { linalg::dist_sq(&iterates[k], &iterates[k - 1]) };
                dists[k] * dists[k] + weight * step_sq
            })
            .collect()
    });
    Ok(IterateTrace {
        dist_to_min,
        iterates,
        values,
        grad_norms: Some(grad_norms),
        energies,
        stop_reason,
        meta: TraceMeta {
            function_id: f.id.clone(),
            method: Method::Nesterov,
            gamma: f.modulus_claim,
            h_star,
            h_star_exact,
            nonconverged_steps: 0,
        },
    })
}

/// Run the proximal point iteration on the star-shaped set `k_set` from
/// `x0 ∈ K`, spending at most `budget_per_step` objective evaluations per
/// proximal solve. Stops (after recording the current row) when a step
/// moves less than `stop_tol`.
///
/// # Errors
/// Window violations, `x0` outside the set, dimension mismatches, or
/// failures from the inner proximal solves.
pub fn ppa<T: Scalar>(
    f: &ObjectiveFunction<T>,
    k_set: &StarShapedSet<T>,
    config: &SolverConfig<T>,
    x0: &[T],
    budget_per_step: usize,
) -> Result<IterateTrace<T>> {
    if config.method != Method::Ppa {
        return Err(Error::ConfigError { reason: "ppa expects a proximal-point configuration".into() });
    }
    ppa_window(config)?;
    if x0.len() != f.dim {
        return Err(Error::DimensionMismatch { expected: f.dim, got: x0.len() });
    }
    if !k_set.contains(x0)? {
        return Err(Error::ConfigError { reason: "the proximal iteration must start inside the set".into() });
    }

    let mut iterates: Vec<Vec<T>> = Vec::new();
    let mut values: Vec<T> = Vec::new();
    let mut x = x0.to_vec();
    let mut stop_reason = StopReason::MaxIter;
    let mut nonconverged_steps = 0usize;
    for k in 0..=config.max_iter {
        iterates.push(x.clone());
        values.push(f.value_at(&x));
        if k == config.max_iter {
            break;
        }
        let beta_k = config.beta_schedule.at(k);
        let step = prox(f, k_set, beta_k, &x, budget_per_step)?;
        if !step.converged {
            nonconverged_steps += 1;
        }
        if linalg::dist(&step.point, &x) <= config.stop_tol {
            stop_reason = StopReason::FixedPoint;
            break;
        }
        x = step.point;
    }

    let (h_star, h_star_exact) = resolve_h_star(f, &values);
    Ok(IterateTrace {
        dist_to_min: distances(f, &iterates),
        iterates,
        values,
        grad_norms: None,
        energies: None,
        stop_reason,
        meta: TraceMeta {
            function_id: f.id.clone(),
            method: Method::Ppa,
            gamma: f.modulus_claim,
            h_star,
            h_star_exact,
            nonconverged_steps,
        },
    })
}

/// Dispatch on `config.method`. The proximal method needs `set`
/// (and uses `budget_per_step`); the smooth methods ignore both.
///
/// # Errors
/// Everything the individual runners can raise, plus a missing set for the
/// proximal method.
pub fn run<T: Scalar>(
    f: &ObjectiveFunction<T>,
    set: Option<&StarShapedSet<T>>,
    config: &SolverConfig<T>,
    x0: &[T],
    budget_per_step: usize,
) -> Result<IterateTrace<T>> {
    match config.method {
        Method::Gradient | Method::HeavyBall => heavy_ball(f, config, x0),
        Method::Nesterov => nesterov(f, config, x0),
        Method::Ppa => {
            let k_set = set.ok_or_else(|| Error::ConfigError {
                reason: "the proximal point method needs a constraint set".into(),
            })?;
            ppa(f, k_set, config, x0, budget_per_step)
        }
    }
}

/// Which per-iteration quantity a rate claim contracts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RateQuantity {
    /// `‖x_k − x̄‖²`.
    DistSq,
    /// `h(x_k) − h*`.
    ValueGap,
    /// The method's energy.
    Energy,
}

impl RateQuantity {
    /// Stable lowercase name.
    pub fn as_str(self) -> &'static str {
        match self {
            RateQuantity::DistSq => "dist_sq",
            RateQuantity::ValueGap => "value_gap",
            RateQuantity::Energy => "energy",
        }
    }
}

fn log_fit(series: &[f64]) -> (f64, f64) {
    let n = series.len();
    let start = n / 2;
    let pts: Vec<(f64, f64)> = (start..n).filter(|&k| series[k] > 0.0).map(|k| (k as f64, series[k].ln())).collect();
    if pts.len() < 2 {
        return (0.0, 0.0);
    }
    let m = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = m * sxx - sx * sx;
    if denom.abs() < f64::MIN_POSITIVE {
        return (0.0, 0.0);
    }
    let slope = (m * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / m;
    (slope.exp(), intercept.exp())
}

/// Verify a claimed linear rate against a trace, iteration by iteration.
///
/// - `per_iter_violations` counts `q_{k+1} > rate·q_k·(1 + 1e-9)`;
/// - `empirical_rate` is the least-squares decay fitted over the tail half
///   of the trace (skipping nonpositive entries; fewer than two usable
///   points yields 0), with `c0` the fitted level at iteration 0;
/// - `envelope_violations` (traces of length ≥ 2) counts rows `k ≥ 1` with
///   `q_k > rate^{k−1}·q_1·(1 + 1e-9)`;
/// - `chained_violations` (energy traces with distances and a claimed
///   modulus) counts rows `k ≥ 1` where
///   `(γ/4)‖x_k − x̄‖² ≤ h(x_k) − h* ≤ rate^{k−1}·E₁` fails; value
///   comparisons carry an absolute floor at the float resolution of the
///   values involved.
///
/// An all-zero series (exact convergence) passes vacuously with zero
/// violations and `empirical_rate = 0`.
///
/// # Errors
/// [`Error::ConfigError`] when `rate ∉ (0,1)` or the trace lacks the data
/// the requested quantity needs.
pub fn verify_linear_rate<T: Scalar>(
    trace: &IterateTrace<T>,
    quantity: RateQuantity,
    rate: f64,
) -> Result<RateReport> {
    if !rate.is_finite() || !(rate > 0.0 && rate < 1.0) {
        return Err(Error::ConfigError { reason: format!("rate must lie strictly inside (0,1), got {rate}") });
    }
    let h_star = as_f64(trace.meta.h_star);
    let series: Vec<f64> = match quantity {
        RateQuantity::DistSq => {
            let d = trace
                .dist_to_min
                .as_ref()
                .ok_or_else(|| Error::ConfigError { reason: "trace lacks distances to the minimizer".into() })?;
            d.iter().map(|&v| as_f64(v) * as_f64(v)).collect()
        }
        RateQuantity::ValueGap => trace.values.iter().map(|&v| as_f64(v) - h_star).collect(),
        RateQuantity::Energy => trace
            .energies
            .as_ref()
            .ok_or_else(|| Error::ConfigError { reason: "trace lacks energies for this method".into() })?
            .iter()
            .map(|&v| as_f64(v))
            .collect(),
    };
    let n = series.len();
    let rel = 1.0 + 1e-9;

    let mut per_iter_violations = 0usize;
    for k in 0..n.saturating_sub(1) {
        if series[k + 1] > rate * series[k] * rel {
            per_iter_violations += 1;
        }
    }

    let envelope_violations = if n >= 2 {
        let base = series[1];
        let mut count = 0usize;
        for (k, &q) in series.iter().enumerate().skip(1) {
            if q > rate.powi((k - 1) as i32) * base * rel {
                count += 1;
            }
        }
        Some(count)
    } else {
        None
    };

    let chained_violations = match (quantity, &trace.dist_to_min, trace.meta.gamma) {
        (RateQuantity::Energy, Some(dists), Some(gamma)) if n >= 2 => {
            let base = series[1];
            let g4 = as_f64(gamma) / 4.0;
            let mut count = 0usize;
            for (k, (&vk_t, &dk_t)) in trace.values.iter().zip(dists.iter()).enumerate().skip(1) {
                let vk = as_f64(vk_t);
                let gap = vk - h_star;
                let d = as_f64(dk_t);
                let floor = f64::EPSILON * (vk.abs() + h_star.abs() + 1.0);
                let lower_fails = g4 * d * d > gap * rel + floor;
                let upper_fails = gap > rate.powi((k - 1) as i32) * base * rel + floor;
                if lower_fails || upper_fails {
                    count += 1;
                }
            }
            Some(count)
        }
        _ => None,
    };

    let (empirical_rate, c0) = log_fit(&series);
    Ok(RateReport {
        theoretical_rate: rate,
        empirical_rate,
        c0,
        per_iter_violations,
        envelope_violations,
        chained_violations,
        quantity: quantity.as_str().to_string(),
        n_iters: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcs::registry;

    #[test]
    fn heavy_ball_constants_frozen() {
        // gamma = L = 2, alpha = 0, beta = 0.25:
        // rho = min(0.125, (1 - 0.5)/0.5) = 0.125, sigma = max(60, 1 + 3.75) = 60.
        let f = registry::<f64>("quadratic:2:2").unwrap();
        let cfg = SolverConfig::gradient(0.25, 100);
        let rc = theoretical_rates(&f, &cfg).unwrap();
        assert!((rc.rho.unwrap() - 0.125).abs() < 1e-15);
        assert!((rc.sigma.unwrap() - 60.0).abs() < 1e-15);
        assert!((rc.rate - (1.0 - 0.125 / 60.0)).abs() < 1e-15);
        assert!((rc.rate - 0.997_916_666_666_666_7).abs() < 1e-12);
        assert_eq!(rc.quantity, "energy");
    }

    #[test]
    fn nesterov_constants_frozen() {
        // gamma = L = 2, eta = 1.5, beta = 0.2:
        // denom = 1 + 0.2*(2 - 1.2) = 1.16, mu1 = 1/1.16, mu2 = (1/3)/1.16.
        let f = registry::<f64>("quadratic:2:1").unwrap();
        let mut cfg = SolverConfig::nesterov(0.2, 1.5, 100);
        cfg.epsilon = Some(0.1584); // 0.99 of the window width 0.16
        let rc = theoretical_rates(&f, &cfg).unwrap();
        assert!((rc.mu1.unwrap() - 1.0 / 1.16).abs() < 1e-15);
        assert!((rc.mu2.unwrap() - (1.0 - 1.0 / 1.5) / 1.16).abs() < 1e-15);
        assert!((rc.alpha.unwrap() - 0.99 * 0.041716938732421) < 1e-10);
        assert!((rc.alpha.unwrap() / 0.99 - 0.041716938732421).abs() < 1e-10);
        assert!((rc.rate - 1.1584 / 1.16).abs() < 1e-15);
        assert!((rc.rate - 0.998_620_689_655_172_4).abs() < 1e-12);
        assert_eq!(rc.quantity, "dist_sq");
    }

    #[test]
    fn ppa_rate_frozen() {
        let f = registry::<f64>("quadratic:2:2").unwrap();
        let cfg = SolverConfig::ppa(1.0, 50);
        let rc = theoretical_rates(&f, &cfg).unwrap();
        assert!((rc.rate - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(rc.quantity, "dist_sq");
    }

    #[test]
    fn window_rejections() {
        let f = registry::<f64>("quadratic:2:2").unwrap();
        // Edge of the heavy-ball window: alpha = 0.5, beta = (1 - 0.5)/2 = 0.25
        // is admissible for running but yields rho = 0, hence no rate. Both
        // 2·alpha² = 0.5 and beta·L = 0.5 are exact in binary, so the edge is
        // hit exactly rather than landing a few ulps to either side.
        let edge = SolverConfig::heavy_ball(0.5, 0.25, 10);
        assert!(heavy_ball(&f, &edge, &[1.0, 1.0]).is_ok());
        assert!(matches!(theoretical_rates(&f, &edge), Err(Error::ConfigError { .. })));
        // Outside the window entirely.
        assert!(heavy_ball(&f, &SolverConfig::heavy_ball(0.5, 0.26, 10), &[1.0, 1.0]).is_err());
        assert!(heavy_ball(&f, &SolverConfig::heavy_ball(0.75, 0.01, 10), &[1.0, 1.0]).is_err());
        assert!(heavy_ball(&f, &SolverConfig::gradient(0.0, 10), &[1.0, 1.0]).is_err());
        // Nesterov needs beta strictly below gamma/(eta L^2) = 2/(1.5*4).
        let cap = 2.0 / 6.0;
        assert!(nesterov(&f, &SolverConfig::nesterov(cap, 1.5, 10), &[1.0, 1.0]).is_err());
        assert!(nesterov(&f, &SolverConfig::nesterov(cap * 0.9, 1.0, 10), &[1.0, 1.0]).is_err());
        let mut bad_eps = SolverConfig::nesterov(0.2, 1.5, 10);
        bad_eps.epsilon = Some(0.17); // window is (0, 0.16)
        let f1 = registry::<f64>("quadratic:2:1").unwrap();
        assert!(nesterov(&f1, &bad_eps, &[1.0]).is_err());
        let mut bad_alpha = SolverConfig::nesterov(0.2, 1.5, 10);
        bad_alpha.alpha = Some(0.5); // far above the admissible bound ~0.042
        assert!(nesterov(&f1, &bad_alpha, &[1.0]).is_err());
        // Proximal: schedule entries below beta_prime, and starts outside K.
        let mut bad_sched = SolverConfig::ppa(1.0, 10);
        bad_sched.beta_schedule = BetaSchedule::Sequence(vec![1.0, 0.5]);
        let k = crate::sets::StarShapedSet::whole_space(2, vec![0.0, 0.0]);
        assert!(ppa(&f, &k, &bad_sched, &[1.0, 0.0], 1000).is_err());
        let ball = crate::sets::StarShapedSet::ball(vec![0.0, 0.0], 1.0);
        assert!(ppa(&f, &ball, &SolverConfig::ppa(1.0, 10), &[5.0, 0.0], 1000).is_err());
        // Missing claims surface as such.
        let bare = f.with_claims(None, None);
        assert!(matches!(
            theoretical_rates(&bare, &SolverConfig::ppa(1.0, 10)),
            Err(Error::MissingClaim { .. })
        ));
        assert!(matches!(
            heavy_ball(&bare, &SolverConfig::gradient(0.25, 10), &[1.0, 1.0]),
            Err(Error::MissingClaim { .. })
        ));
    }

    #[test]
    fn ppa_exact_recursion_on_quadratic() {
        // Closed-form prox over the whole space: x_{k+1} = x_k/(1 + beta*gamma),
        // so with beta = 1, gamma = 2 each step divides by 3 exactly.
        let f = registry::<f64>("quadratic:2:1").unwrap();
        let k = crate::sets::StarShapedSet::whole_space(1, vec![0.0]);
        let cfg = SolverConfig::ppa(1.0, 15);
        let trace = ppa(&f, &k, &cfg, &[1.7], 1000).unwrap();
        assert_eq!(trace.len(), 16);
        for j in 0..trace.len() - 1 {
            let expected = trace.iterates[j][0] / 3.0;
            assert!(
                (trace.iterates[j + 1][0] - expected).abs() <= 1e-12 * (1.0 + expected.abs()),
                "recursion broke at step {j}"
            );
        }
        let rc = theoretical_rates(&f, &cfg).unwrap();
        let rr = verify_linear_rate(&trace, RateQuantity::DistSq, rc.rate).unwrap();
        assert_eq!(rr.per_iter_violations, 0);
        assert_eq!(rr.envelope_violations, Some(0));
        // The empirical squared-distance decay is exactly 1/9; its square
        // root recovers the per-step distance factor 1/3.
        assert!((rr.empirical_rate.sqrt() - 1.0 / 3.0).abs() < 1e-10, "fit {}", rr.empirical_rate);
    }

    #[test]
    fn gradient_one_step_at_edge_step() {
        // beta = 1/L sits on the admissible edge: the run is legal (and
        // converges in one exact step) even though no rate is certified.
        let f = registry::<f64>("quadratic:2:2").unwrap();
        let cfg = SolverConfig::gradient(0.5, 50);
        let trace = heavy_ball(&f, &cfg, &[3.0, -2.0]).unwrap();
        assert_eq!(trace.len(), 2);
        assert_eq!(trace.iterates[1], vec![0.0, 0.0]);
        assert_eq!(trace.stop_reason, StopReason::GradientTol);
    }

    #[test]
    fn start_at_minimizer_gives_single_row() {
        let f = registry::<f64>("quadratic:2:2").unwrap();
        let cfg = SolverConfig::gradient(0.25, 50);
        let trace = heavy_ball(&f, &cfg, &[0.0, 0.0]).unwrap();
        assert_eq!(trace.len(), 1);
        assert_eq!(trace.stop_reason, StopReason::GradientTol);

        let k = crate::sets::StarShapedSet::whole_space(2, vec![0.0, 0.0]);
        let trace = ppa(&f, &k, &SolverConfig::ppa(1.0, 50), &[0.0, 0.0], 1000).unwrap();
        assert_eq!(trace.len(), 1);
        assert_eq!(trace.stop_reason, StopReason::FixedPoint);

        let mut ncfg = SolverConfig::nesterov(0.2, 1.5, 50);
        ncfg.epsilon = Some(0.08);
        let f1 = registry::<f64>("quadratic:2:1").unwrap();
        let trace = nesterov(&f1, &ncfg, &[0.0]).unwrap();
        assert_eq!(trace.len(), 1);
    }

    #[test]
    fn heavy_ball_energy_decays_within_rate() {
        let f = registry::<f64>("quadratic:2:2").unwrap();
        let cfg = SolverConfig::heavy_ball(0.2, 0.3, 400);
        let trace = heavy_ball(&f, &cfg, &[3.0, -2.0]).unwrap();
        let rc = theoretical_rates(&f, &cfg).unwrap();
        let rr = verify_linear_rate(&trace, RateQuantity::Energy, rc.rate).unwrap();
        assert_eq!(rr.per_iter_violations, 0, "{rr:?}");
        assert_eq!(rr.envelope_violations, Some(0));
        assert_eq!(rr.chained_violations, Some(0));
        assert!(rr.empirical_rate < rc.rate, "actual decay beats the certified bound");
        // Any iterate of a run on a function with claimed modulus gamma
        // stays within (2/gamma)·‖∇h‖ of the minimizer.
        let dists = trace.dist_to_min.as_ref().unwrap();
        let grads = trace.grad_norms.as_ref().unwrap();
        let bound = 2.0 / rc.gamma;
        for k in 0..trace.len() {
            assert!(dists[k] <= bound * grads[k] * (1.0 + 1e-9) + 1e-15);
        }
    }

    #[test]
    fn nesterov_envelope_holds() {
        let f = registry::<f64>("quadratic:2:1").unwrap();
        let cfg = SolverConfig::nesterov(0.2, 1.5, 300);
        let trace = nesterov(&f, &cfg, &[3.0]).unwrap();
        let rc = theoretical_rates(&f, &cfg).unwrap();
        let rr = verify_linear_rate(&trace, RateQuantity::DistSq, rc.rate).unwrap();
        assert_eq!(rr.envelope_violations, Some(0), "{rr:?}");
        assert!(trace.energies.is_some());
    }

    #[test]
    fn ppa_values_monotone_and_contracting() {
        let f = registry::<f64>("quadratic:2:2").unwrap();
        let ball = crate::sets::StarShapedSet::ball(vec![0.0, 0.0], 2.0);
        let cfg = SolverConfig::ppa(1.0, 30);
        let trace = ppa(&f, &ball, &cfg, &[1.5, 0.8], 1000).unwrap();
        for k in 1..trace.len() {
            assert!(trace.values[k] <= trace.values[k - 1] * (1.0 + 1e-12) + 1e-18);
        }
        let rc = theoretical_rates(&f, &cfg).unwrap();
        let rr = verify_linear_rate(&trace, RateQuantity::DistSq, rc.rate).unwrap();
        assert_eq!(rr.per_iter_violations, 0);
        assert_eq!(trace.meta.nonconverged_steps, 0);
    }

    #[test]
    fn runs_are_deterministic() {
        let f = registry::<f64>("quadratic:4:2").unwrap();
        let cfg = SolverConfig::heavy_ball(0.25, 0.2, 60);
        let a = heavy_ball(&f, &cfg, &[2.0, 1.0]).unwrap();
        let b = heavy_ball(&f, &cfg, &[2.0, 1.0]).unwrap();
        assert_eq!(a.iterates, b.iterates);
        assert_eq!(a.values, b.values);
    }

    #[test]
    fn verify_rejects_bad_inputs() {
        let f = registry::<f64>("quadratic:2:2").unwrap();
        let k = crate::sets::StarShapedSet::whole_space(2, vec![0.0, 0.0]);
        let trace = ppa(&f, &k, &SolverConfig::ppa(1.0, 5), &[1.0, 1.0], 1000).unwrap();
        assert!(verify_linear_rate(&trace, RateQuantity::Energy, 0.5).is_err());
        assert!(verify_linear_rate(&trace, RateQuantity::DistSq, 1.0).is_err());
        assert!(verify_linear_rate(&trace, RateQuantity::DistSq, 0.0).is_err());
        let ok = verify_linear_rate(&trace, RateQuantity::ValueGap, 1.0 / 9.0).unwrap();
        // Values of the quadratic contract like the squared distance: 1/9.
        assert_eq!(ok.per_iter_violations, 0);
    }

    #[test]
    fn csv_layout_and_determinism() {
        let f = registry::<f64>("quadratic:2:2").unwrap();
        let cfg = SolverConfig::gradient(0.25, 5);
        let trace = heavy_ball(&f, &cfg, &[1.0, -1.0]).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("trace.csv");
        trace.write_csv(&path).unwrap();
        let body = std::fs::read_to_string(&path).unwrap();
        let mut lines = body.lines();
        assert_eq!(
            lines.next().unwrap(),
            "k,x_0,x_1,h,grad_norm,dist_to_min,dist_sq_ratio,energy"
        );
        let first = lines.next().unwrap();
        assert!(first.starts_with("0,"));
        assert!(first.contains(",NaN,"), "row 0 has no distance ratio: {first}");
        assert!(first.contains('e'), "floats use scientific notation: {first}");
        let second = lines.next().unwrap();
        assert!(!second.contains("NaN"), "row 1 has every column: {second}");
        trace.write_csv(&path).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), body, "rewrites are byte-identical");
    }

    #[test]
    fn value_gap_uses_best_seen_when_minimum_unknown() {
        let f = registry::<f64>("quadratic:2:2").unwrap().with_claims(Some(2.0), Some(2.0));
        let mut bare = f.clone();
        bare.min_value = None;
        let cfg = SolverConfig::gradient(0.25, 20);
        let trace = heavy_ball(&bare, &cfg, &[2.0, 0.0]).unwrap();
        assert!(!trace.meta.h_star_exact);
        let last = *trace.values.last().unwrap();
        assert!((trace.meta.h_star - last).abs() < 1e-30, "best-seen is the final value here");
    }
}
