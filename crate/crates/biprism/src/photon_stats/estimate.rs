//! Count-based estimators for which-path knowledge, and aggregation
//! helpers for repeated measurements.
//!
//! Estimators return what the counts say, even when noise pushes a value
//! past its physical bound; clamping is a presentation choice left to
//! reporting code.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Effective counts at the two ports from a single-path run, with their
/// variances. Counts are `f64` so a dark-count expectation can be
/// subtracted before estimation; variances stay at the raw-count level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PortCounts {
    pub p1: f64,
    pub p2: f64,
    pub var_p1: f64,
    pub var_p2: f64,
}

impl PortCounts {
    /// Raw counts: variance equals the count (Poisson).
    pub fn raw(p1: u64, p2: u64) -> Self {
        PortCounts {
            p1: p1 as f64,
            p2: p2 as f64,
            var_p1: (p1 as f64).max(1.0),
            var_p2: (p2 as f64).max(1.0),
        }
    }

    /// Counts with a known background expectation removed from each
    /// port. The variance keeps the raw-count value: subtracting a known
    /// mean shifts a Poisson variable without shrinking its spread.
    pub fn background_subtracted(p1: u64, p2: u64, background: f64) -> Self {
        PortCounts {
            p1: p1 as f64 - background,
            p2: p2 as f64 - background,
            var_p1: (p1 as f64).max(1.0),
            var_p2: (p2 as f64).max(1.0),
        }
    }
}

/// Per-path knowledge from one single-path run:
/// `D_j = |n1 - n2| / (2 (n1 + n2))`, with its propagated one-sigma
/// uncertainty.
pub fn path_imbalance(counts: &PortCounts) -> Result<(f64, f64)> {
    let sum = counts.p1 + counts.p2;
    if !(sum > 0.0) {
        return Err(Error::InvalidParameter {
            name: "counts",
            reason: format!("port counts sum to {sum}, need > 0"),
        });
    }
    let d = 0.5 * (counts.p1 - counts.p2).abs() / sum;
    // d = |n1 - n2| / (2 s): dd/dn1 = n2 / s^2, dd/dn2 = -n1 / s^2
    // (up to the overall sign of n1 - n2, which squares away).
    let s2 = sum * sum;
    let var = (counts.p2 * counts.p2 * counts.var_p1 + counts.p1 * counts.p1 * counts.var_p2)
        / (s2 * s2);
    Ok((d, var.max(0.0).sqrt()))
}

/// Total distinguishability from the two single-path runs: the sum of
/// the per-path imbalances, errors combined in quadrature.
pub fn estimate_distinguishability(
    one_open: &PortCounts,
    two_open: &PortCounts,
) -> Result<DistinguishabilityEstimate> {
    let (d1, e1) = path_imbalance(one_open)?;
    let (d2, e2) = path_imbalance(two_open)?;
    Ok(DistinguishabilityEstimate {
        d: d1 + d2,
        d_err: (e1 * e1 + e2 * e2).sqrt(),
        d1,
        d2,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistinguishabilityEstimate {
    pub d: f64,
    pub d_err: f64,
    pub d1: f64,
    pub d2: f64,
}

/// Unweighted mean and its standard error over repeated measurements.
pub fn aggregate(values: &[f64]) -> Result<(f64, f64)> {
    if values.is_empty() {
        return Err(Error::Empty("aggregate input"));
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() == 1 {
        return Ok((mean, 0.0));
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    Ok((mean, (var / n).sqrt()))
}

/// Restricts a value to [0, 1] for display.
pub fn clamp_unit(value: f64) -> f64 {
    value.clamp(0.0, 1.0)
}
