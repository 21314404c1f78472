//! One full complementarity measurement per slit width, and the sweep
//! over widths.
//!
//! A width measurement is the laboratory sequence in miniature: scan the
//! grating to fit the fringe visibility, close the shutter to estimate
//! dark counts, then block each path in turn to estimate the port
//! imbalance. The dark expectation is subtracted from both the scan
//! points before fitting and the blocked counts before estimation;
//! skipping either subtraction biases the corresponding estimate by far
//! more than its statistical error at realistic dark rates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::photon_stats::{
    estimate_distinguishability, fit_fringe, run_blocked, run_scan, BlockedCounts,
    DetectorResponse, DistinguishabilityEstimate, FitOptions, FringeFit, PortCounts, ScanPlan,
    ScanResult, Source,
};
use crate::photon_stats::derive_seed;
use crate::wave_optics::{analytic, Geometry, Path};

/// Everything a width measurement needs besides geometry and seed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementPlan {
    pub scan: ScanPlan,
    /// Counting time of each single-path run, seconds.
    pub blocked_duration: f64,
    pub detector: DetectorResponse,
    pub fit: FitOptions,
}

impl MeasurementPlan {
    pub fn default_for(geom: &Geometry) -> Self {
        let scan = ScanPlan::default_for(geom);
        MeasurementPlan {
            scan,
            blocked_duration: scan.bin_time,
            detector: DetectorResponse::Point,
            fit: FitOptions::default(),
        }
    }
}

/// Outcome of the full sequence at one slit width.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WidthMeasurement {
    pub slit_width: f64,
    pub scan: ScanResult,
    pub fit: FringeFit,
    pub blocked_one: BlockedCounts,
    pub blocked_two: BlockedCounts,
    pub visibility: f64,
    pub visibility_err: f64,
    pub distinguishability: DistinguishabilityEstimate,
    pub sum_sq: f64,
    pub sum_sq_err: f64,
    pub analytic_visibility: f64,
    pub analytic_distinguishability: f64,
}

/// Runs scan, dark run, and both single-path runs at one width.
pub fn measure_width(
    geom: &Geometry,
    source: &Source,
    plan: &MeasurementPlan,
    seed: u64,
    parallel: bool,
) -> Result<WidthMeasurement> {
    if !plan.blocked_duration.is_finite() || plan.blocked_duration <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "blocked_duration",
            reason: format!("must be finite and > 0, got {}", plan.blocked_duration),
        });
    }
    let scan = run_scan(geom, source, plan.detector, &plan.scan, seed, parallel)?;
    let dark_per_bin = scan.dark_estimate_hz * plan.scan.bin_time;

    let xs: Vec<f64> = scan.points.iter().map(|p| p.x).collect();
    let ys: Vec<f64> = scan
        .points
        .iter()
        .map(|p| p.counts_p1 as f64 - dark_per_bin)
        .collect();
    let vars: Vec<f64> = scan
        .points
        .iter()
        .map(|p| (p.counts_p1 as f64).max(1.0))
        .collect();
    let fit = fit_fringe(&xs, &ys, Some(&vars), geom.period(), &plan.fit)?;

    let blocked_one = run_blocked(
        geom,
        source,
        plan.detector,
        Path::One,
        plan.scan.start,
        plan.blocked_duration,
        seed,
    )?;
    let blocked_two = run_blocked(
        geom,
        source,
        plan.detector,
        Path::Two,
        plan.scan.start,
        plan.blocked_duration,
        seed,
    )?;
    let dark_per_run = scan.dark_estimate_hz * plan.blocked_duration;
    let counts_one =
        PortCounts::background_subtracted(blocked_one.counts_p1, blocked_one.counts_p2, dark_per_run);
    let counts_two =
        PortCounts::background_subtracted(blocked_two.counts_p1, blocked_two.counts_p2, dark_per_run);
    let distinguishability = estimate_distinguishability(&counts_one, &counts_two)?;

    let visibility = fit.visibility;
    let visibility_err = fit.visibility_err;
    let d = distinguishability.d;
    let d_err = distinguishability.d_err;
    let sum_sq = visibility * visibility + d * d;
    let sum_sq_err = ((2.0 * visibility * visibility_err).powi(2)
        + (2.0 * d * d_err).powi(2))
    .sqrt();

    Ok(WidthMeasurement {
        slit_width: geom.slit_width(),
        scan,
        fit,
        blocked_one,
        blocked_two,
        visibility,
        visibility_err,
        distinguishability,
        sum_sq,
        sum_sq_err,
        analytic_visibility: analytic::visibility(geom),
        analytic_distinguishability: analytic::distinguishability(geom),
    })
}

/// A sweep over slit widths with a shared base geometry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Campaign {
    pub widths: Vec<WidthMeasurement>,
    /// Unweighted mean of `V^2 + D^2` over the widths, with its
    /// standard error.
    pub sum_sq_mean: f64,
    pub sum_sq_sem: f64,
}

/// Measures every width in turn. Width `i` runs under a sub-seed derived
/// from `seed` and `i`, so single-width reruns reproduce sweep entries.
pub fn run_campaign(
    base: &Geometry,
    source: &Source,
    slit_widths: &[f64],
    plan: &MeasurementPlan,
    seed: u64,
    parallel: bool,
) -> Result<Campaign> {
    if slit_widths.is_empty() {
        return Err(Error::Empty("slit widths"));
    }
    let mut widths = Vec::with_capacity(slit_widths.len());
    for (i, &w) in slit_widths.iter().enumerate() {
        let geom = base.with_slit_width(w)?;
        let sub_seed = derive_seed(seed, i as u64);
        widths.push(measure_width(&geom, source, plan, sub_seed, parallel)?);
    }
    let sums: Vec<f64> = widths.iter().map(|w| w.sum_sq).collect();
    let (sum_sq_mean, sum_sq_sem) = crate::photon_stats::aggregate(&sums)?;
    Ok(Campaign {
        widths,
        sum_sq_mean,
        sum_sq_sem,
    })
}
