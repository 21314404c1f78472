//! Deterministic text outputs: CSV tables and JSON reports. Floats are
//! written in scientific notation with nine significant digits and '.'
//! as the decimal separator; counts stay integers. Nothing here depends
//! on the clock or the environment, so reruns produce identical bytes.

use anyhow::{Context, Result};
use serde::Serialize;
use std::io::Write;
use std::path::Path;

use biprism::experiment::{Campaign, IntensityMap, WidthMeasurement};
use biprism::photon_stats::{clamp_unit, HbtOutcome, ScanResult};

/// Nine significant digits, scientific: `1.23456789e-6`.
pub fn sig9(value: f64) -> String {
    format!("{value:.8e}")
}

pub const SCAN_CSV_HEADER: &str = "x_m,counts_p1,counts_p2,expected_rate_p1,expected_rate_p2";

pub fn scan_csv(scan: &ScanResult) -> String {
    let mut out = String::from(SCAN_CSV_HEADER);
    out.push('\n');
    for p in &scan.points {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            sig9(p.x),
            p.counts_p1,
            p.counts_p2,
            sig9(p.expected_rate_p1),
            sig9(p.expected_rate_p2),
        ));
    }
    out
}

/// Grid as CSV: corner label, then the displacement axis across the
/// first row; each further row is one spatial frequency.
pub const MAP_CSV_CORNER: &str = "u_per_m\\x_m";

pub fn map_csv(map: &IntensityMap) -> String {
    let mut out = String::from(MAP_CSV_CORNER);
    for &x in &map.x {
        out.push(',');
        out.push_str(&sig9(x));
    }
    out.push('\n');
    for (iu, &u) in map.u.iter().enumerate() {
        out.push_str(&sig9(u));
        for ix in 0..map.x.len() {
            out.push(',');
            out.push_str(&sig9(map.value(iu, ix)));
        }
        out.push('\n');
    }
    out
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .with_context(|| format!("creating {}", parent.display()))?;
        }
    }
    let mut file =
        std::fs::File::create(path).with_context(|| format!("writing {}", path.display()))?;
    file.write_all(text.as_bytes())?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(path, &text)
}

/// Summary of one campaign width for the JSON report. Estimates are
/// reported as measured; the clamped copies are for plotting against
/// the unit bound.
#[derive(Debug, Serialize)]
pub struct WidthReport {
    pub slit_width_m: f64,
    #[serde(rename = "V")]
    pub v: f64,
    #[serde(rename = "V_err")]
    pub v_err: f64,
    #[serde(rename = "D")]
    pub d: f64,
    #[serde(rename = "D_err")]
    pub d_err: f64,
    pub d1: f64,
    pub d2: f64,
    pub sum_sq: f64,
    pub sum_sq_err: f64,
    #[serde(rename = "V_clamped")]
    pub v_clamped: f64,
    #[serde(rename = "D_clamped")]
    pub d_clamped: f64,
    #[serde(rename = "analytic_V")]
    pub analytic_v: f64,
    #[serde(rename = "analytic_D")]
    pub analytic_d: f64,
    pub fit_phase_rad: f64,
    pub fit_chi2_dof: f64,
    pub dark_estimate_hz: f64,
    pub violates_duality: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan_csv: Option<String>,
}

impl WidthReport {
    pub fn from_measurement(m: &WidthMeasurement, scan_csv: Option<String>) -> Self {
        WidthReport {
            slit_width_m: m.slit_width,
            v: m.visibility,
            v_err: m.visibility_err,
            d: m.distinguishability.d,
            d_err: m.distinguishability.d_err,
            d1: m.distinguishability.d1,
            d2: m.distinguishability.d2,
            sum_sq: m.sum_sq,
            sum_sq_err: m.sum_sq_err,
            v_clamped: clamp_unit(m.visibility),
            d_clamped: clamp_unit(m.distinguishability.d),
            analytic_v: m.analytic_visibility,
            analytic_d: m.analytic_distinguishability,
            fit_phase_rad: m.fit.phase,
            fit_chi2_dof: m.fit.chi2_dof,
            dark_estimate_hz: m.scan.dark_estimate_hz,
            violates_duality: biprism::experiment::violates_duality(m.sum_sq, m.sum_sq_err),
            scan_csv,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CampaignReport {
    pub seed: u64,
    pub widths: Vec<WidthReport>,
    pub aggregate: AggregateReport,
}

#[derive(Debug, Serialize)]
pub struct AggregateReport {
    pub sum_sq_mean: f64,
    pub sum_sq_sem: f64,
}

impl CampaignReport {
    pub fn new(campaign: &Campaign, seed: u64, scan_csvs: Vec<Option<String>>) -> Self {
        CampaignReport {
            seed,
            widths: campaign
                .widths
                .iter()
                .zip(scan_csvs)
                .map(|(m, csv)| WidthReport::from_measurement(m, csv))
                .collect(),
            aggregate: AggregateReport {
                sum_sq_mean: campaign.sum_sq_mean,
                sum_sq_sem: campaign.sum_sq_sem,
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct HbtReport {
    pub seed: u64,
    pub triggers: u64,
    pub singles_p1: u64,
    pub singles_p2: u64,
    pub coincidences: u64,
    pub alpha: f64,
    pub alpha_err: Option<f64>,
    pub expected_alpha: f64,
}

impl HbtReport {
    pub fn new(outcome: &HbtOutcome, expected_alpha: f64, seed: u64) -> Self {
        HbtReport {
            seed,
            triggers: outcome.triggers,
            singles_p1: outcome.singles_p1,
            singles_p2: outcome.singles_p2,
            coincidences: outcome.coincidences,
            alpha: outcome.alpha,
            alpha_err: outcome.alpha_err,
            expected_alpha,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AnalyticReport {
    pub wavelength_m: f64,
    pub refractive_index: f64,
    pub biprism_angle_rad: f64,
    pub deflection_angle_rad: f64,
    pub carrier_per_m: f64,
    pub period_m: f64,
    pub slit_count: u32,
    pub slit_width_m: f64,
    pub envelope_overlap: f64,
    #[serde(rename = "V")]
    pub v: f64,
    #[serde(rename = "D")]
    pub d: f64,
    pub sum_sq: f64,
}
