//! Photon-counting layer: the expected-rate model, Monte Carlo counting
//! runs, the fringe fit, count-based estimators, and the beamsplitter
//! correlation test.

pub mod estimate;
pub mod fit;
pub mod hbt;
pub mod model;
pub mod rng;
pub mod scan;

pub use estimate::{
    aggregate, clamp_unit, estimate_distinguishability, path_imbalance,
    DistinguishabilityEstimate, PortCounts,
};
pub use fit::{fit_fringe, FitOptions, FringeFit};
pub use hbt::{expected_alpha, simulate as simulate_hbt, HbtOutcome};
pub use model::{blocked_port_rate, port_rate, DetectorResponse, Source};
pub use rng::{derive_seed, stream_rng, StreamDomain};
pub use scan::{
    run_blocked, run_dark, run_scan, BlockedCounts, ScanPlan, ScanPoint, ScanResult,
    DARK_RUN_BINS,
};
