//! Deterministic sample plans and low-discrepancy point streams.
//!
//! Every certification check in [`crate::analysis`] consumes the same
//! deterministic stream for a given plan, so that checks run on *shared
//! samples*: the modulus estimated from a stream is, by construction, a
//! lower bound for every ratio any check re-evaluates on that stream.
//!
//! Points are a scrambled-radical-inverse (Halton-type) sequence with a
//! seeded Cranley–Patterson rotation, plus 10% boundary-biased points —
//! inequality violations on lobed functions concentrate near box/lobe
//! boundaries, which plain low-discrepancy streams undersample.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::{fl, Scalar};

/// First sixteen primes: radical-inverse bases for up to 16 dimensions.
const BASES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// Deterministic sampling recipe for certification checks.
#[derive(Debug, Clone)]
pub struct SamplePlan<T: Scalar> {
    /// Seed for scrambling/rotation; equal seeds give identical streams.
    pub seed: u64,
    /// Number of points in the stream.
    pub n_points: usize,
    /// Axis-aligned box: per-coordinate lower bounds.
    pub lo: Vec<T>,
    /// Axis-aligned box: per-coordinate upper bounds.
    pub hi: Vec<T>,
    /// Number of interior λ-grid values (λ_j = j/(n_lambdas+1)).
    pub n_lambdas: usize,
}

impl<T: Scalar> SamplePlan<T> {
    /// Plan over an explicit box.
    pub fn new(seed: u64, n_points: usize, lo: Vec<T>, hi: Vec<T>, n_lambdas: usize) -> Self {
        assert!(n_points >= 1, "a plan needs at least one point");
        assert!(n_lambdas >= 1, "a plan needs at least one interior lambda");
        assert_eq!(lo.len(), hi.len(), "box bounds must agree in length");
        Self { seed, n_points, lo, hi, n_lambdas }
    }

    /// Plan over the symmetric box `[-half_width, half_width]^dim`.
    pub fn centered(seed: u64, n_points: usize, dim: usize, half_width: f64, n_lambdas: usize) -> Self {
        Self::new(
            seed,
            n_points,
            vec![fl(-half_width); dim],
            vec![fl(half_width); dim],
            n_lambdas,
        )
    }

    /// Box dimension.
    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    /// Interior λ grid: `j/(n_lambdas+1)`, `j = 1..=n_lambdas`.
    pub fn lambdas(&self) -> Vec<T> {
        (1..=self.n_lambdas)
            .map(|j| fl::<T>(j as f64 / (self.n_lambdas as f64 + 1.0)))
            .collect()
    }

    /// The point stream. Deterministic given `(seed, n_points, box)`.
    pub fn points(&self) -> Vec<Vec<T>> {
        let dim = self.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        // Per-dimension digit permutation (same permutation at every digit
        // position) and rotation offset.
        let mut perms: Vec<Vec<u8>> = Vec::with_capacity(dim);
        let mut rots: Vec<f64> = Vec::with_capacity(dim);
        for d in 0..dim {
            let base = BASES[d % BASES.len()];
            let mut perm: Vec<u8> = (0..base as u8).collect();
            // Keep 0 -> 0 so that exact dyadic indices stay spread; shuffle
            // the remaining digits.
            perm[1..].shuffle(&mut rng);
            perms.push(perm);
            rots.push(rng.gen::<f64>());
        }

        let mut pts = Vec::with_capacity(self.n_points);
        for i in 0..self.n_points {
            let mut x = Vec::with_capacity(dim);
            for d in 0..dim {
                let base = BASES[d % BASES.len()];
                let u = radical_inverse((i + 1) as u64, base, &perms[d]);
                let u = (u + rots[d]).fract();
                let lo = self.lo[d].to_f64().unwrap();
                let hi = self.hi[d].to_f64().unwrap();
                x.push(fl::<T>(lo + u * (hi - lo)));
            }
            // Every tenth point is pushed to a box face: violations cluster
            // near boundaries.
            if i % 10 == 9 {
                let face = (i / 10) % dim;
                let low_side = (i / (10 * dim)).is_multiple_of(2);
                x[face] = if low_side { self.lo[face] } else { self.hi[face] };
            }
            pts.push(x);
        }
        pts
    }

    /// Check the plan's box dimension against an oracle's dimension.
    pub fn expect_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: self.dim() });
        }
        Ok(())
    }
}

/// Scrambled radical inverse of `n` in `base` under digit permutation `perm`.
fn radical_inverse(mut n: u64, base: u64, perm: &[u8]) -> f64 {
    let mut inv = 0.0;
    let mut denom = 1.0;
    while n > 0 {
        denom *= base as f64;
        inv += perm[(n % base) as usize] as f64 / denom;
        n /= base;
    }
    inv
}

/// Deterministic fan of unit directions, for radial/ray sampling without a
/// full plan. In 2-D the fan is equiangular; in other dimensions directions
/// come from a seeded Gaussian draw, normalized.
pub fn direction_fan<T: Scalar>(dim: usize, n_dirs: usize, seed: u64) -> Vec<Vec<T>> {
    assert!(dim >= 1);
    assert!(n_dirs >= 1);
    if dim == 1 {
        // Alternate the two rays of the line.
        return (0..n_dirs)
            .map(|i| vec![if i % 2 == 0 { T::one() } else { -T::one() }])
            .collect();
    }
    if dim == 2 {
        return (0..n_dirs)
            .map(|i| {
                let th = 2.0 * std::f64::consts::PI * (i as f64) / (n_dirs as f64);
                vec![fl::<T>(th.cos()), fl::<T>(th.sin())]
            })
            .collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dirs = Vec::with_capacity(n_dirs);
    while dirs.len() < n_dirs {
        // Box–Muller from uniform draws keeps us off extra dependencies.
        let mut u: Vec<f64> = Vec::with_capacity(dim);
        while u.len() < dim {
            let (a, b) = (rng.gen::<f64>(), rng.gen::<f64>());
            let r = (-2.0 * a.max(1e-300).ln()).sqrt();
            let th = 2.0 * std::f64::consts::PI * b;
            u.push(r * th.cos());
            if u.len() < dim {
                u.push(r * th.sin());
            }
        }
        let n = u.iter().map(|v| v * v).sum::<f64>().sqrt();
        if n > 1e-12 {
            dirs.push(u.into_iter().map(|v| fl::<T>(v / n)).collect());
        }
    }
    dirs
}
