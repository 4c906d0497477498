//! Serializable artifacts: check reports, rate reports, and atomic file
//! writes.
//!
//! Reports are plain-`f64` records regardless of the working scalar type;
//! JSON is emitted with `serde_json` (shortest round-trip float printing,
//! so repeated runs with equal inputs produce byte-identical artifacts).

use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Inputs achieving the worst residual of a check (or the violation found
/// by a witness search). Only the coordinates meaningful for the check are
/// populated.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Witness {
    /// Primary point (`y` in segment checks, the violating sample in
    /// searches).
    pub point: Vec<f64>,
    /// Secondary point for pairwise checks (e.g. the other segment end).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub point2: Option<Vec<f64>>,
    /// Segment parameter λ, when the check samples one.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda: Option<f64>,
    /// Ray parameter t, when the check samples one.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<f64>,
    /// Sublevel height δ, for sublevel checks.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub delta: Option<f64>,
    /// Quasar weight β, for quasar searches.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub beta: Option<f64>,
    /// The residual at this witness.
    pub residual: f64,
}

impl Witness {
    /// Witness with only a point and residual.
    pub fn at_point(point: Vec<f64>, residual: f64) -> Self {
        Self {
            point,
            point2: None,
            lambda: None,
            t: None,
            delta: None,
            beta: None,
            residual,
        }
    }
}

/// Outcome of one property check.
///
/// `passed` reflects the per-sample slack tests; `worst_residual` is the raw
/// minimum residual (negative values are violation magnitudes). For witness
/// searches (`quasiconvexity_violation`, `quasar_violation`) the convention
/// flips: `passed = false` means a violation *was found* and
/// `worst_residual` is the largest violation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    /// Stable identifier of the check.
    pub check_id: String,
    /// Whether the property survived (see struct docs for search checks).
    pub passed: bool,
    /// Minimum residual over samples (or maximum violation for searches).
    pub worst_residual: f64,
    /// Inputs achieving `worst_residual`, present when `passed = false`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    /// Number of residuals evaluated.
    pub n_samples: usize,
    /// Seed of the sample stream the check consumed.
    pub seed: u64,
    /// Free-form diagnostics (estimated constants, exclusion counts).
    /// Not part of the serialized schema.
    #[serde(skip)]
    pub notes: Option<String>,
}

impl CheckReport {
    /// Report with no witness.
    pub fn new(check_id: impl Into<String>, passed: bool, worst_residual: f64, n_samples: usize, seed: u64) -> Self {
        Self {
            check_id: check_id.into(),
            passed,
            worst_residual,
            witness: None,
            n_samples,
            seed,
            notes: None,
        }
    }
}

/// Theoretical-versus-empirical linear-rate comparison for one trace.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RateReport {
    /// The proven contraction factor, in (0,1).
    pub theoretical_rate: f64,
    /// Least-squares fit of the decay of the tracked quantity over the tail
    /// half of the iterations (0 when the tail has fewer than two positive
    /// entries).
    pub empirical_rate: f64,
    /// Fitted intercept of the log-linear model (level of the quantity at
    /// iteration 0 extrapolated from the tail).
    pub c0: f64,
    /// Count of iterations k with `q_{k+1} > rate·q_k·(1+1e-9)`.
    pub per_iter_violations: usize,
    /// Count of iterations violating the cumulative envelope
    /// `q_k ≤ rate^{k−1}·E₁` (momentum methods; present when the trace
    /// carries energies).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub envelope_violations: Option<usize>,
    /// Count of iterations violating the chained bound
    /// `(γ/4)‖x_k−x̄‖² ≤ h(x_k)−h* ≤ rate^{k−1}·E₁` (heavy-ball energy
    /// traces only).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub chained_violations: Option<usize>,
    /// Which quantity was tracked.
    pub quantity: String,
    /// Trace length the verification consumed.
    pub n_iters: usize,
}

/// Write `bytes` to `path` atomically: write to a temporary file in the
/// same directory, flush, then rename over the target.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| crate::error::Error::Io(e.error))?;
    Ok(())
}

/// Serialize a value to pretty JSON with a trailing newline (stable bytes
/// for equal inputs).
pub fn to_json_bytes<V: Serialize>(value: &V) -> Result<Vec<u8>> {
    let mut buf = serde_json::to_vec_pretty(value)?;
    buf.push(b'\n');
    Ok(buf)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_report_json_schema() {
        let mut rep = CheckReport::new("star_quasiconvex", true, 0.25, 1000, 42);
        rep.notes = Some("internal note".into());
        let json = serde_json::to_value(&rep).unwrap();
        let obj = json.as_object().unwrap();
        let keys: Vec<&str> = obj.keys().map(|s| s.as_str()).collect();
        assert_eq!(keys, vec!["check_id", "n_samples", "passed", "seed", "worst_residual"]);

        let mut failed = CheckReport::new("star_quasiconvex", false, -0.5, 10, 1);
        failed.witness = Some(Witness::at_point(vec![1.0, 2.0], -0.5));
        let json = serde_json::to_value(&failed).unwrap();
        assert!(json.get("witness").is_some());
        let round: CheckReport = serde_json::from_value(json).unwrap();
        assert_eq!(round.witness.unwrap().point, vec![1.0, 2.0]);
    }

    #[test]
    fn atomic_write_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sub").join("report.json");
        atomic_write(&path, b"{\"ok\":true}\n").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"{\"ok\":true}\n");
        // Overwrite is atomic too.
        atomic_write(&path, b"second").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"second");
    }
}
