//! Monte Carlo counting runs: displacement scans, shutter-closed dark
//! runs, and single-path (blocked) runs.
//!
//! Every run draws Poisson counts around the expected-rate model. Counts
//! at different sites come from independent ChaCha streams (see
//! [`super::rng`]), so a scan is reproducible from its seed alone and
//! identical whether points are sampled in parallel or sequentially.

use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::map_indexed;
use crate::wave_optics::{Geometry, Path, Port};

use super::model::{blocked_port_rate, port_rate, DetectorResponse, Source};
use super::rng::{stream_rng, StreamDomain};

/// Dark runs integrate this many times longer than one scan bin.
pub const DARK_RUN_BINS: f64 = 10.0;

/// Displacement-scan schedule: `points` positions starting at `start`,
/// spaced by `step`, each counted for `bin_time` on both ports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanPlan {
    pub start: f64,
    pub step: f64,
    pub points: usize,
    pub bin_time: f64,
}

impl ScanPlan {
    /// Default schedule for a geometry: 4 um steps covering two and a
    /// half fringe periods, three-second bins.
    pub fn default_for(geom: &Geometry) -> Self {
        let step = 4.0e-6;
        let points = (2.5 * geom.period() / step).floor() as usize + 1;
        ScanPlan {
            start: 0.0,
            step,
            points,
            bin_time: 3.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.step.is_finite() || self.step <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "step",
                reason: format!("must be finite and > 0, got {}", self.step),
            });
        }
        if !self.start.is_finite() {
            return Err(Error::InvalidParameter {
                name: "start",
                reason: "must be finite".into(),
            });
        }
        if self.points < 2 {
            return Err(Error::InvalidParameter {
                name: "points",
                reason: format!("need at least 2 points, got {}", self.points),
            });
        }
        if !self.bin_time.is_finite() || self.bin_time <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "bin_time",
                reason: format!("must be finite and > 0, got {}", self.bin_time),
            });
        }
        Ok(())
    }

    pub fn position(&self, index: usize) -> f64 {
        self.start + index as f64 * self.step
    }

    /// Total displacement range covered, `(points - 1) * step`.
    pub fn span(&self) -> f64 {
        (self.points - 1) as f64 * self.step
    }
}

/// One scan position: observed counts and the model rates behind them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub x: f64,
    pub counts_p1: u64,
    pub counts_p2: u64,
    pub expected_rate_p1: f64,
    pub expected_rate_p2: f64,
}

/// A full displacement scan plus its shutter-closed dark estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub plan: ScanPlan,
    pub points: Vec<ScanPoint>,
    /// Dark rate estimated from a shutter-closed run of
    /// [`DARK_RUN_BINS`] bin lengths, averaged over both detectors, Hz.
    pub dark_estimate_hz: f64,
}

/// Counts from a run with one path blocked, both ports recorded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockedCounts {
    pub open_path: Path,
    pub counts_p1: u64,
    pub counts_p2: u64,
    pub duration: f64,
}

pub(crate) fn sample_poisson(rng: &mut ChaCha8Rng, mean: f64) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    let dist = Poisson::new(mean).expect("Poisson mean must be positive and finite");
    let draw: f64 = dist.sample(rng);
    draw as u64
}

/// Runs a displacement scan followed by a dark run.
pub fn run_scan(
    geom: &Geometry,
    source: &Source,
    detector: DetectorResponse,
    plan: &ScanPlan,
    seed: u64,
    parallel: bool,
) -> Result<ScanResult> {
    plan.validate()?;
    source.validate()?;
    let points = map_indexed(parallel, plan.points, |i| {
        let x = plan.position(i);
        let r1 = port_rate(geom, source, detector, Port::P1, x);
        let r2 = port_rate(geom, source, detector, Port::P2, x);
        let mut rng = stream_rng(seed, StreamDomain::ScanPoint, i as u64);
        let counts_p1 = sample_poisson(&mut rng, r1 * plan.bin_time);
        let counts_p2 = sample_poisson(&mut rng, r2 * plan.bin_time);
        ScanPoint {
            x,
            counts_p1,
            counts_p2,
            expected_rate_p1: r1,
            expected_rate_p2: r2,
        }
    });
    let dark_estimate_hz = run_dark(source, plan.bin_time, seed)?;
    Ok(ScanResult {
        plan: *plan,
        points,
        dark_estimate_hz,
    })
}

/// Shutter-closed run: both detectors counted for [`DARK_RUN_BINS`] bin
/// lengths; returns the per-detector dark-rate estimate in Hz.
pub fn run_dark(source: &Source, bin_time: f64, seed: u64) -> Result<f64> {
    source.validate()?;
    if !bin_time.is_finite() || bin_time <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "bin_time",
            reason: format!("must be finite and > 0, got {bin_time}"),
        });
    }
    let duration = DARK_RUN_BINS * bin_time;
    let mut rng = stream_rng(seed, StreamDomain::DarkRun, 0);
    let c1 = sample_poisson(&mut rng, source.dark_rate * duration);
    let c2 = sample_poisson(&mut rng, source.dark_rate * duration);
    Ok((c1 + c2) as f64 / (2.0 * duration))
}

/// Counts both ports with only `open` transmitting, grating at `x`.
pub fn run_blocked(
    geom: &Geometry,
    source: &Source,
    detector: DetectorResponse,
    open: Path,
    x: f64,
    duration: f64,
    seed: u64,
) -> Result<BlockedCounts> {
    source.validate()?;
    if !duration.is_finite() || duration <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "duration",
            reason: format!("must be finite and > 0, got {duration}"),
        });
    }
    let index = match open {
        Path::One => 0,
        Path::Two => 1,
    };
    let mut rng = stream_rng(seed, StreamDomain::BlockedRun, index);
    let r1 = blocked_port_rate(geom, source, detector, open, Port::P1, x);
    let r2 = blocked_port_rate(geom, source, detector, open, Port::P2, x);
    let counts_p1 = sample_poisson(&mut rng, r1 * duration);
    let counts_p2 = sample_poisson(&mut rng, r2 * duration);
    Ok(BlockedCounts {
        open_path: open,
        counts_p1,
        counts_p2,
        duration,
    })
}
