//! Orchestration: full width measurements, the width sweep, intensity
//! maps, and consistency checks.

pub mod campaign;
pub mod check;
pub mod map;

pub use campaign::{measure_width, run_campaign, Campaign, MeasurementPlan, WidthMeasurement};
pub use check::{duality_zscore, violates_duality, DUALITY_VIOLATION_Z};
pub use map::{closed_form_map, oracle_map, IntensityMap, MapAxes};
