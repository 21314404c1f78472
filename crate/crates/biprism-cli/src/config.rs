//! TOML run configuration. Lengths are strings with explicit units
//! ("670nm", "4um"); other dimensioned fields carry the unit in their
//! name. Every section is optional and falls back to the reference
//! bench values.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

use biprism::experiment::{MapAxes, MeasurementPlan};
use biprism::photon_stats::{DetectorResponse, FitOptions, ScanPlan, Source};
use biprism::wave_optics::{Geometry, OracleSettings};

use crate::units::parse_length;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub geometry: GeometryConfig,
    pub source: SourceConfig,
    pub scan: ScanConfig,
    pub campaign: CampaignConfig,
    pub hbt: HbtConfig,
    pub map: MapConfig,
    pub fit: FitConfig,
    pub oracle: OracleConfig,
    /// Spread heavy runs over a thread pool. Results are identical
    /// either way; builds without the pool ignore this.
    pub parallel: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            geometry: GeometryConfig::default(),
            source: SourceConfig::default(),
            scan: ScanConfig::default(),
            campaign: CampaignConfig::default(),
            hbt: HbtConfig::default(),
            map: MapConfig::default(),
            fit: FitConfig::default(),
            oracle: OracleConfig::default(),
            parallel: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GeometryConfig {
    pub wavelength: String,
    pub refractive_index: f64,
    pub biprism_angle_rad: f64,
    pub slit_width: String,
    pub slit_count: u32,
    /// Independently measured grating period, checked against the one
    /// the deflection fixes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measured_period: Option<String>,
    pub allow_period_mismatch: bool,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        GeometryConfig {
            wavelength: "670nm".into(),
            refractive_index: 1.51,
            biprism_angle_rad: 7.5e-3,
            slit_width: "20um".into(),
            slit_count: 20,
            measured_period: None,
            allow_period_mismatch: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SourceConfig {
    pub rep_rate_hz: f64,
    pub emission_probability: f64,
    pub background_mean: f64,
    pub collection_efficiency: f64,
    pub quantum_efficiency: f64,
    pub dark_rate_hz: f64,
}

impl Default for SourceConfig {
    fn default() -> Self {
        let s = Source::default();
        SourceConfig {
            rep_rate_hz: s.rep_rate,
            emission_probability: s.emission_probability,
            background_mean: s.background_mean,
            collection_efficiency: s.collection_efficiency,
            quantum_efficiency: s.quantum_efficiency,
            dark_rate_hz: s.dark_rate,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScanConfig {
    pub start: String,
    pub step: String,
    /// Number of scan positions; omitted means enough 4 um steps to
    /// cover two and a half fringe periods.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    pub bin_time_s: f64,
    /// Detector pixel width as a fraction of the order spacing;
    /// omitted means point sampling.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pixel_width_carriers: Option<f64>,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            start: "0um".into(),
            step: "4um".into(),
            points: None,
            bin_time_s: 3.0,
            pixel_width_carriers: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CampaignConfig {
    pub slit_widths: Vec<String>,
    /// Counting time of each single-path run; omitted means one scan
    /// bin.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocked_duration_s: Option<f64>,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            slit_widths: vec!["20um".into(), "50um".into(), "70um".into(), "80um".into()],
            blocked_duration_s: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct HbtConfig {
    pub triggers: u64,
}

impl Default for HbtConfig {
    fn default() -> Self {
        HbtConfig {
            triggers: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MapConfig {
    /// Half-span of the frequency axis in order spacings (multiples of
    /// the carrier).
    pub u_span_carriers: f64,
    pub u_points: usize,
    pub x_min: String,
    /// Omitted means one grating period.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_max: Option<String>,
    pub x_points: usize,
}

impl Default for MapConfig {
    fn default() -> Self {
        MapConfig {
            u_span_carriers: 3.0,
            u_points: 256,
            x_min: "0um".into(),
            x_max: None,
            x_points: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FitConfig {
    pub chi2_dof_max: f64,
    pub min_coverage_periods: f64,
}

impl Default for FitConfig {
    fn default() -> Self {
        let f = FitOptions::default();
        FitConfig {
            chi2_dof_max: f.chi2_dof_max,
            min_coverage_periods: f.min_coverage,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OracleConfig {
    pub samples_per_slit: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            samples_per_slit: OracleSettings::default().samples_per_slit,
        }
    }
}

/// Config resolved into domain types, ready to run.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub geometry: Geometry,
    pub source: Source,
    pub plan: MeasurementPlan,
    pub campaign_widths: Vec<f64>,
    pub hbt_triggers: u64,
    pub map_axes: MapAxes,
    pub oracle: OracleSettings,
    pub parallel: bool,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let config: RunConfig =
            toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
        Ok(config)
    }

    pub fn to_toml(&self) -> Result<String> {
        Ok(toml::to_string_pretty(self)?)
    }

    pub fn resolve(&self) -> Result<Resolved> {
        let g = &self.geometry;
        let wavelength = parse_length(&g.wavelength).map_err(anyhow::Error::msg)?;
        let slit_width = parse_length(&g.slit_width).map_err(anyhow::Error::msg)?;
        let geometry = match &g.measured_period {
            Some(period) => Geometry::with_measured_period(
                wavelength,
                g.refractive_index,
                g.biprism_angle_rad,
                slit_width,
                g.slit_count,
                parse_length(period).map_err(anyhow::Error::msg)?,
                g.allow_period_mismatch,
            )?,
            None => Geometry::new(
                wavelength,
                g.refractive_index,
                g.biprism_angle_rad,
                slit_width,
                g.slit_count,
            )?,
        };

        let source = Source {
            rep_rate: self.source.rep_rate_hz,
            emission_probability: self.source.emission_probability,
            background_mean: self.source.background_mean,
            collection_efficiency: self.source.collection_efficiency,
            quantum_efficiency: self.source.quantum_efficiency,
            dark_rate: self.source.dark_rate_hz,
        };
        source.validate()?;

        let step = parse_length(&self.scan.step).map_err(anyhow::Error::msg)?;
        let points = match self.scan.points {
            Some(p) => p,
            None => {
                // Same coverage rule as ScanPlan::default_for, at the
                // configured step.
                if !(step > 0.0 && step.is_finite()) {
                    bail!("scan step must be finite and > 0, got {step}");
                }
                (2.5 * geometry.period() / step).floor() as usize + 1
            }
        };
        let scan = ScanPlan {
            start: parse_length(&self.scan.start).map_err(anyhow::Error::msg)?,
            step,
            points,
            bin_time: self.scan.bin_time_s,
        };
        scan.validate()?;

        let detector = match self.scan.pixel_width_carriers {
            None => DetectorResponse::Point,
            Some(f) if f > 0.0 && f.is_finite() => DetectorResponse::Averaged {
                width: f * geometry.carrier_frequency(),
            },
            Some(f) => bail!("pixel_width_carriers must be finite and > 0, got {f}"),
        };

        let plan = MeasurementPlan {
            scan,
            blocked_duration: self.campaign.blocked_duration_s.unwrap_or(scan.bin_time),
            detector,
            fit: FitOptions {
                chi2_dof_max: self.fit.chi2_dof_max,
                min_coverage: self.fit.min_coverage_periods,
            },
        };

        let campaign_widths = self
            .campaign
            .slit_widths
            .iter()
            .map(|w| parse_length(w).map_err(anyhow::Error::msg))
            .collect::<Result<Vec<f64>>>()?;
        if campaign_widths.is_empty() {
            bail!("campaign.slit_widths must not be empty");
        }

        let u0 = geometry.carrier_frequency();
        let x_min = parse_length(&self.map.x_min).map_err(anyhow::Error::msg)?;
        let x_max = match &self.map.x_max {
            Some(x) => parse_length(x).map_err(anyhow::Error::msg)?,
            None => x_min + geometry.period(),
        };
        if !(self.map.u_span_carriers > 0.0) {
            bail!(
                "map.u_span_carriers must be > 0, got {}",
                self.map.u_span_carriers
            );
        }
        let map_axes = MapAxes {
            u_min: -self.map.u_span_carriers * u0,
            u_max: self.map.u_span_carriers * u0,
            u_points: self.map.u_points,
            x_min,
            x_max,
            x_points: self.map.x_points,
        };

        Ok(Resolved {
            geometry,
            source,
            plan,
            campaign_widths,
            hbt_triggers: self.hbt.triggers,
            map_axes,
            oracle: OracleSettings {
                samples_per_slit: self.oracle.samples_per_slit,
            },
            parallel: self.parallel,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn default_config_resolves_to_reference_values() {
        let r = RunConfig::default().resolve().unwrap();
        assert_relative_eq!(r.geometry.wavelength(), 670e-9);
        assert_relative_eq!(r.geometry.deflection_angle(), 3.825e-3, max_relative = 1e-12);
        assert_eq!(r.geometry.slit_count(), 20);
        assert_eq!(r.plan.scan.points, 55);
        assert_relative_eq!(r.plan.scan.bin_time, 3.0);
        assert_eq!(r.campaign_widths.len(), 4);
        assert_relative_eq!(r.campaign_widths[3], 80e-6);
        assert_eq!(r.hbt_triggers, 1_000_000);
        assert!(r.parallel);
    }

    #[test]
    fn toml_round_trip_preserves_the_config() {
        let mut config = RunConfig::default();
        config.geometry.slit_width = "73.25um".into();
        config.scan.points = Some(41);
        config.campaign.slit_widths = vec!["10um".into(), "87.5817µm".into()];
        config.parallel = false;
        let text = config.to_toml().unwrap();
        let back: RunConfig = toml::from_str(&text).unwrap();
        assert_eq!(config, back);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let err = toml::from_str::<RunConfig>("[geometry]\nslit_widht = \"20um\"\n");
        assert!(err.is_err());
        let err = toml::from_str::<RunConfig>("typo_top_level = 3\n");
        assert!(err.is_err());
    }

    #[test]
    fn partial_configs_inherit_defaults() {
        let config: RunConfig = toml::from_str(
            "[geometry]\nslit_width = \"80um\"\n\n[scan]\nbin_time_s = 0.5\n",
        )
        .unwrap();
        let r = config.resolve().unwrap();
        assert_relative_eq!(r.geometry.slit_width(), 80e-6);
        assert_relative_eq!(r.plan.scan.bin_time, 0.5);
        assert_eq!(r.geometry.slit_count(), 20);
    }

    #[test]
    fn measured_period_check_is_wired_through() {
        let config: RunConfig =
            toml::from_str("[geometry]\nmeasured_period = \"87um\"\n").unwrap();
        assert!(config.resolve().is_err());

        let config: RunConfig = toml::from_str(
            "[geometry]\nmeasured_period = \"87um\"\nallow_period_mismatch = true\n",
        )
        .unwrap();
        assert!(config.resolve().is_ok());
    }

    #[test]
    fn custom_step_recomputes_point_count() {
        let config: RunConfig = toml::from_str("[scan]\nstep = \"8um\"\n").unwrap();
        let r = config.resolve().unwrap();
        assert_eq!(r.plan.scan.points, 28);
        assert!(r.plan.scan.span() >= 1.5 * r.geometry.period());
    }

    #[test]
    fn bad_lengths_are_reported() {
        let config: RunConfig = toml::from_str("[geometry]\nwavelength = \"670\"\n").unwrap();
        assert!(config.resolve().is_err());
    }
}
