//! Source and detector parameters, and the expected count-rate model.
//!
//! Rates are per detector port in counts per second. The interferometer
//! halves the source between the two paths, so the usable rate behind
//! either path alone is `rep_rate * emission_probability *
//! collection_efficiency * quantum_efficiency / 2`; the far-field
//! intensity (normalised by `N^2`) then modulates it, and detector dark
//! counts add on top.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::integrate;
use crate::wave_optics::{intensity, single_path_intensity, Geometry, Path, Port};

/// Pulsed single-photon source plus detection chain.
///
/// The defaults are bench-test values chosen for quick simulations, not a
/// characterisation of any particular laboratory source.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Source {
    /// Trigger rate, Hz.
    pub rep_rate: f64,
    /// Probability that a trigger yields one signal photon.
    pub emission_probability: f64,
    /// Mean number of uncorrelated background photons per trigger window.
    pub background_mean: f64,
    /// Fraction of emitted photons that make it into the interferometer.
    pub collection_efficiency: f64,
    /// Detector quantum efficiency.
    pub quantum_efficiency: f64,
    /// Dark counts per second, per detector.
    pub dark_rate: f64,
}

impl Default for Source {
    fn default() -> Self {
        Source {
            rep_rate: 4.0e6,
            emission_probability: 0.02,
            background_mean: 0.004,
            collection_efficiency: 1.0,
            quantum_efficiency: 1.0,
            dark_rate: 180.0,
        }
    }
}

impl Source {
    pub fn validate(&self) -> Result<()> {
        if !self.rep_rate.is_finite() || self.rep_rate <= 0.0 {
            return Err(invalid("rep_rate", "must be finite and > 0", self.rep_rate));
        }
        check_unit("emission_probability", self.emission_probability)?;
        check_unit("collection_efficiency", self.collection_efficiency)?;
        check_unit("quantum_efficiency", self.quantum_efficiency)?;
        if !self.background_mean.is_finite() || self.background_mean < 0.0 {
            return Err(invalid(
                "background_mean",
                "must be finite and >= 0",
                self.background_mean,
            ));
        }
        if !self.dark_rate.is_finite() || self.dark_rate < 0.0 {
            return Err(invalid("dark_rate", "must be finite and >= 0", self.dark_rate));
        }
        Ok(())
    }

    /// Detected photon rate available to one path, counts per second.
    pub fn half_rate(&self) -> f64 {
        0.5 * self.rep_rate
            * self.emission_probability
            * self.collection_efficiency
            * self.quantum_efficiency
    }
}

fn invalid(name: &'static str, what: &str, got: f64) -> Error {
    Error::InvalidParameter {
        name,
        reason: format!("{what}, got {got}"),
    }
}

fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() || !(0.0..=1.0).contains(&value) {
        return Err(invalid(name, "must lie in [0, 1]", value));
    }
    Ok(())
}

/// How a detector samples the far field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum DetectorResponse {
    /// Evaluate the intensity at the port centre. The default.
    Point,
    /// Average the intensity over a pixel of the given width in spatial
    /// frequency, using one 16-point Gauss-Legendre panel.
    Averaged { width: f64 },
}

impl Default for DetectorResponse {
    fn default() -> Self {
        DetectorResponse::Point
    }
}

impl DetectorResponse {
    fn apply<F: Fn(f64) -> f64>(&self, f: F, centre: f64) -> f64 {
        match *self {
            DetectorResponse::Point => f(centre),
            DetectorResponse::Averaged { width } => {
                integrate(f, centre - 0.5 * width, centre + 0.5 * width, 1) / width
            }
        }
    }
}

/// Expected count rate at a port with both paths open and the grating
/// displaced by `x`.
pub fn port_rate(
    geom: &Geometry,
    source: &Source,
    detector: DetectorResponse,
    port: Port,
    x: f64,
) -> f64 {
    let n2 = (geom.slit_count() as f64).powi(2);
    let i = detector.apply(|u| intensity(geom, u, x), geom.port_frequency(port));
    source.half_rate() * i / n2 + source.dark_rate
}

/// Expected count rate at a port with only `open` transmitting.
pub fn blocked_port_rate(
    geom: &Geometry,
    source: &Source,
    detector: DetectorResponse,
    open: Path,
    port: Port,
    x: f64,
) -> f64 {
    let n2 = (geom.slit_count() as f64).powi(2);
    let i = detector.apply(
        |u| single_path_intensity(geom, open, u, x),
        geom.port_frequency(port),
    );
    source.half_rate() * i / n2 + source.dark_rate
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wave_optics::envelope_overlap;
    use approx::assert_relative_eq;

    fn geom() -> Geometry {
        Geometry::new(670e-9, 1.51, 7.5e-3, 20e-6, 20).unwrap()
    }

    #[test]
    fn default_source_is_valid() {
        let s = Source::default();
        s.validate().unwrap();
        assert_relative_eq!(s.half_rate(), 40_000.0);
    }

    #[test]
    fn validation_rejects_out_of_range() {
        let mut s = Source::default();
        s.emission_probability = 1.5;
        assert!(s.validate().is_err());
        let mut s = Source::default();
        s.dark_rate = -1.0;
        assert!(s.validate().is_err());
        let mut s = Source::default();
        s.rep_rate = 0.0;
        assert!(s.validate().is_err());
    }

    #[test]
    fn blocked_rates_reflect_envelope_overlap() {
        let g = geom();
        let s = Source::default();
        let own = blocked_port_rate(&g, &s, DetectorResponse::Point, Path::One, Port::P1, 0.0);
        let cross = blocked_port_rate(&g, &s, DetectorResponse::Point, Path::One, Port::P2, 0.0);
        let overlap = envelope_overlap(&g);
        assert_relative_eq!(own, s.half_rate() + s.dark_rate, max_relative = 1e-12);
        assert_relative_eq!(
            cross,
            s.half_rate() * overlap * overlap + s.dark_rate,
            max_relative = 1e-9
        );
        // Blocked rates are displacement-independent.
        let moved = blocked_port_rate(&g, &s, DetectorResponse::Point, Path::One, Port::P1, 7e-6);
        assert_relative_eq!(own, moved, max_relative = 1e-12);
    }

    #[test]
    fn open_rate_oscillates_about_the_blocked_sum() {
        let g = geom();
        let s = Source::default();
        let overlap = envelope_overlap(&g);
        let base = s.half_rate() * (1.0 + overlap * overlap) + s.dark_rate;
        let bright = port_rate(&g, &s, DetectorResponse::Point, Port::P1, 0.0);
        let dark = port_rate(&g, &s, DetectorResponse::Point, Port::P1, g.period() / 2.0);
        assert_relative_eq!(
            bright,
            base + 2.0 * s.half_rate() * overlap,
            max_relative = 1e-9
        );
        assert_relative_eq!(
            dark,
            base - 2.0 * s.half_rate() * overlap,
            max_relative = 1e-9
        );
    }

    #[test]
    fn averaged_detector_softens_the_fringe() {
        let g = geom();
        let s = Source::default();
        // A pixel a quarter of the order spacing wide barely moves the
        // peak rate; a pathological full-spacing pixel would.
        let narrow = DetectorResponse::Averaged {
            width: 0.05 * g.carrier_frequency(),
        };
        let point = port_rate(&g, &s, DetectorResponse::Point, Port::P1, 0.0);
        let avg = port_rate(&g, &s, narrow, Port::P1, 0.0);
        assert!(avg < point);
        assert!(avg > 0.9 * point);
    }
}
