//! Wave-optics core: the fixed layout, its closed-form far field, the
//! analytic visibility/distinguishability pair, and a quadrature oracle
//! that rederives the same intensities from first principles.

pub mod amplitude;
pub mod analytic;
pub mod geometry;
pub mod oracle;

pub use amplitude::{
    array_factor, intensity, path_amplitude, sinc, single_path_intensity, total_amplitude,
    ARRAY_FACTOR_SINGULARITY_WINDOW,
};
pub use analytic::{
    distinguishability, duality_sum, envelope_overlap, joint_port_probability,
    path_distinguishability, visibility,
};
pub use geometry::{Geometry, Path, Port, PERIOD_MATCH_TOLERANCE};
pub use oracle::OracleSettings;
