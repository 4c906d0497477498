//! Error types shared across the toolkit.

use thiserror::Error;

/// Everything that can go wrong constructing or querying functions, sets,
/// checks, proximity operators, and solvers.
#[derive(Debug, Error)]
pub enum Error {
    /// A point had the wrong number of coordinates for the oracle it was
    /// passed to.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch {
        /// Dimension the oracle was built for.
        expected: usize,
        /// Dimension of the offending argument.
        got: usize,
    },

    /// A one-dimensional function was evaluated outside its domain.
    #[error("argument {arg} outside domain [{lo}, {hi}]")]
    DomainError {
        /// Offending argument.
        arg: f64,
        /// Domain lower end.
        lo: f64,
        /// Domain upper end.
        hi: f64,
    },

    /// A finite-difference stencil point evaluated to a nonfinite value.
    #[error("nonfinite value in finite-difference stencil near {point:?}")]
    NonfiniteStencil {
        /// Center of the stencil.
        point: Vec<f64>,
    },

    /// Radial-product construction found a direction where the angular
    /// factor drops below 1.
    #[error("angular factor below 1 (value {value}) at direction {direction:?}")]
    AngularFactorBelowOne {
        /// Witness direction on the unit sphere.
        direction: Vec<f64>,
        /// Offending value g(direction) < 1.
        value: f64,
    },

    /// Ray restriction through two coincident points.
    #[error("degenerate ray: base point equals target point")]
    DegenerateRay,

    /// An operation requiring a known minimizer was called on a function
    /// without one.
    #[error("operation requires a function with a known minimizer")]
    MinimizerRequired,

    /// An operation requiring claimed constants (modulus and/or gradient
    /// Lipschitz constant) found them missing.
    #[error("operation requires claimed constants: {missing}")]
    MissingClaim {
        /// Which claim was absent.
        missing: String,
    },

    /// Every sampled point was filtered out as nonsmooth, so a
    /// gradient-based check has nothing to certify.
    #[error("all {filtered} sampled points were filtered as nonsmooth")]
    InsufficientSmoothSamples {
        /// Number of points that were filtered away.
        filtered: usize,
    },

    /// The bisection bracket for a sublevel boundary is too small: the
    /// function is still at or below the level at the bracket end.
    #[error("t_max {t_max} too small: value {value} at the bracket end is still <= {delta} along direction {direction:?}")]
    TMaxTooSmall {
        /// Bracket end that failed.
        t_max: f64,
        /// Level being traced.
        delta: f64,
        /// Direction along which the sublevel set escapes the bracket.
        direction: Vec<f64>,
        /// Function value at the bracket end.
        value: f64,
    },

    /// A segment-containment query was passed an endpoint outside the set.
    #[error("segment endpoint {which} lies outside the set")]
    EndpointOutsideSet {
        /// `"a"` or `"b"`.
        which: &'static str,
    },

    /// A solver configuration violated its parameter window.
    #[error("solver configuration invalid: {reason}")]
    ConfigError {
        /// Human-readable description naming the violated bound.
        reason: String,
    },

    /// A registry id did not resolve.
    #[error("unknown id: {id}")]
    UnknownId {
        /// The unresolvable id.
        id: String,
    },

    /// An I/O failure while writing an artifact.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// Serialization failure.
    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),

    /// CSV write failure.
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

/// Convenient result alias.
pub type Result<V> = std::result::Result<V, Error>;
