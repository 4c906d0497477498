//! Radial-product construction `h(x) = f(‖x‖)·g(x/‖x‖)` and the randomized
//! trigonometric instance built on `f(t) = max(|t|^α, t² − k)`.
//!
//! When the radial profile `f` vanishes only at 0 and the angular factor
//! satisfies `g ≥ 1`, the product is strongly star quasiconvex at the
//! origin. The angular factor may be wildly oscillatory — the randomized
//! instance uses sums of `sin²/cos²` with coefficients drawn once from a
//! seeded generator — and the resulting sublevel sets are star-shaped but
//! heavily lobed.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ObjectiveFunction, ScalarFunction};
use crate::error::{Error, Result};
use crate::sample::direction_fan;
use crate::{as_f64, fl, Scalar};

/// Shared shape of angular factors: a positive weight on unit directions.
pub type AngularFn<T> = Arc<dyn Fn(&[T]) -> T + Send + Sync>;

/// Directions used to validate angular factors at construction time.
const N_VALIDATION_DIRS: usize = 10_000;
/// Absolute slack for the `g ≥ 1` validation: a factor shifted to make its
/// sampled minimum exactly 1 may land one rounding step below it.
const G_VALIDATION_SLACK: f64 = 1e-12;

/// Build `h(x) = f(‖x‖)·g(x/‖x‖)`, `h(0) = 0`.
///
/// Validation at construction: `f(0) = 0` and `f ≥ 0` on a sample of its
/// domain (0 must minimize the profile), and `g ≥ 1` over a deterministic
/// fan of 10⁴ unit directions.
///
/// # Errors
/// [`Error::AngularFactorBelowOne`] with the witness direction when the
/// `g ≥ 1` validation fails; [`Error::ConfigError`] when the profile does
/// not vanish at 0 or dips negative.
pub fn make_radial_product<T: Scalar>(
    f: ScalarFunction<T>,
    g_angular: AngularFn<T>,
    dim: usize,
) -> Result<ObjectiveFunction<T>> {
    assert!(dim >= 1, "radial product needs dim >= 1");
    let f0 = f.value_at(T::zero());
    if f0.abs() > fl(1e-12) {
        return Err(Error::ConfigError {
            reason: format!("radial profile must vanish at 0, got {}", as_f64(f0)),
        });
    }
    for i in 1..=64 {
        let t = fl::<T>(10.0 * i as f64 / 64.0);
        let v = f.value_at(t);
        if v < fl(-1e-12) {
            return Err(Error::ConfigError {
                reason: format!("radial profile dips to {} at t = {}; 0 must minimize it", as_f64(v), as_f64(t)),
            });
        }
    }
    for u in direction_fan::<T>(dim, N_VALIDATION_DIRS, 0) {
        let gu = g_angular(&u);
        if gu < fl(1.0 - G_VALIDATION_SLACK) {
            return Err(Error::AngularFactorBelowOne {
                direction: u.iter().map(|&v| as_f64(v)).collect(),
                value: as_f64(gu),
            });
        }
    }

    let fc = f.clone();
    let g = Arc::clone(&g_angular);
    let value = Arc::new(move |x: &[T]| {
        let mut s = T::zero();
        for &v in x {
            s += v * v;
        }
        let r = s.sqrt();
        if r == T::zero() {
            return T::zero();
        }
        let u: Vec<T> = x.iter().map(|&v| v / r).collect();
        fc.value_at(r) * g(&u)
    });
    Ok(ObjectiveFunction::new(
        format!("radial({})", f.id),
        dim,
        value,
        None,
        Some(vec![T::zero(); dim]),
        Some(T::zero()),
        None,
        None,
        (vec![fl(-5.0); dim], vec![fl(5.0); dim]),
    ))
}

/// Number of trigonometric terms in the randomized angular factor.
const N_TERMS: usize = 10;

/// Randomized radial product on ℝ²:
/// `f(t) = max(|t|^α, t² − k)` and
/// `g(u₁,u₂) = (1/(4N)) Σᵢ (aᵢ sin²(bᵢu₁) + cᵢ cos²(dᵢu₂))`, `N = 10`,
/// with `aᵢ, cᵢ ~ U[0,20]` and `bᵢ, dᵢ ~ U[−25,25]` drawn once from a
/// seeded generator (bit-identical coefficients per seed).
///
/// The drawn `g` may dip below 1; after sampling its minimum over 10⁴
/// directions, the factor is shifted by `1 − ĝmin` when needed so the
/// construction always satisfies the `g ≥ 1` hypothesis. The shift and the
/// sampled minimum are recorded in metadata alongside the coefficients.
///
/// # Panics
/// Panics when `alpha ∉ (0,1)` or `k == 0`.
pub fn make_example312<T: Scalar>(alpha: T, k: u32, seed: u64) -> ObjectiveFunction<T> {
    let a64 = as_f64(alpha);
    assert!(0.0 < a64 && a64 < 1.0, "alpha must lie in (0,1)");
    assert!(k >= 1, "k must be a positive integer");
    let kf = k as f64;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ca = [0.0_f64; N_TERMS];
    let mut cb = [0.0_f64; N_TERMS];
    let mut cc = [0.0_f64; N_TERMS];
    let mut cd = [0.0_f64; N_TERMS];
    for i in 0..N_TERMS {
        ca[i] = 20.0 * rng.gen::<f64>();
        cb[i] = -25.0 + 50.0 * rng.gen::<f64>();
        cc[i] = 20.0 * rng.gen::<f64>();
        cd[i] = -25.0 + 50.0 * rng.gen::<f64>();
    }

    let g_raw = move |u1: f64, u2: f64| -> f64 {
        let mut s = 0.0;
        for i in 0..N_TERMS {
            let sb = (cb[i] * u1).sin();
            let cd_ = (cd[i] * u2).cos();
            s += ca[i] * sb * sb + cc[i] * cd_ * cd_;
        }
        s / (4.0 * N_TERMS as f64)
    };

    let mut g_min = f64::INFINITY;
    for u in direction_fan::<f64>(2, N_VALIDATION_DIRS, 0) {
        g_min = g_min.min(g_raw(u[0], u[1]));
    }
    let g_shift = if g_min < 1.0 { 1.0 - g_min } else { 0.0 };

    let profile = ScalarFunction::new(
        format!("max-power-quad:{a64}:{k}"),
        T::neg_infinity(),
        T::infinity(),
        Arc::new(move |t: T| {
            let t = t.to_f64().unwrap();
            fl::<T>((t.abs().powf(a64)).max(t * t - kf))
        }),
    );
    let g_angular: AngularFn<T> = Arc::new(move |u: &[T]| {
        fl::<T>(g_raw(u[0].to_f64().unwrap(), u[1].to_f64().unwrap()) + g_shift)
    });

    let mut f = make_radial_product(profile, g_angular, 2)
        .expect("shifted angular factor satisfies g >= 1 by construction");
    f.id = format!("example312:{a64}:{k}:{seed}");
    f.eval_box = (vec![fl(-3.0); 2], vec![fl(3.0); 2]);
    f.metadata.insert("alpha".into(), serde_json::json!(a64));
    f.metadata.insert("k".into(), serde_json::json!(k));
    f.metadata.insert("seed".into(), serde_json::json!(seed));
    f.metadata.insert("a".into(), serde_json::json!(ca.to_vec()));
    f.metadata.insert("b".into(), serde_json::json!(cb.to_vec()));
    f.metadata.insert("c".into(), serde_json::json!(cc.to_vec()));
    f.metadata.insert("d".into(), serde_json::json!(cd.to_vec()));
    f.metadata.insert("g_min_sampled".into(), serde_json::json!(g_min));
    f.metadata.insert("g_shift".into(), serde_json::json!(g_shift));
    f
}
