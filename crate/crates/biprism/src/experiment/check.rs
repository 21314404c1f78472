//! Consistency flags on measured complementarity values.

/// Measurements above `V^2 + D^2 = 1` by more than this many sigma are
/// flagged; anything less is statistics.
pub const DUALITY_VIOLATION_Z: f64 = 5.0;

/// Signed z-score of a measured `V^2 + D^2` against the unit bound.
/// Non-positive uncertainty yields infinity for any excess.
pub fn duality_zscore(sum_sq: f64, sum_sq_err: f64) -> f64 {
    if sum_sq_err > 0.0 {
        (sum_sq - 1.0) / sum_sq_err
    } else if sum_sq > 1.0 {
        f64::INFINITY
    } else {
        f64::NEG_INFINITY
    }
}

/// True when the measurement exceeds the bound by more than
/// [`DUALITY_VIOLATION_Z`] sigma, which indicates a broken setup or
/// analysis rather than an interesting result.
pub fn violates_duality(sum_sq: f64, sum_sq_err: f64) -> bool {
    duality_zscore(sum_sq, sum_sq_err) > DUALITY_VIOLATION_Z
}
