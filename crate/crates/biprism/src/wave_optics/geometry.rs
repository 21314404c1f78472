use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Relative tolerance for an explicitly supplied grating period against
/// the value fixed by the deflection geometry.
pub const PERIOD_MATCH_TOLERANCE: f64 = 1e-9;

/// The two beams emerging from the biprism.
///
/// Path one is deflected toward positive angles and carries spatial
/// frequency `+u0` at the grating; path two carries `-u0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Path {
    One,
    Two,
}

/// The two detector ports in the far field.
///
/// `P1` sits at spatial frequency `-u0`, where the zero order of path one
/// coincides with the minus-first order of path two. `P2` mirrors it at
/// `+u0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Port {
    P1,
    P2,
}

impl Port {
    pub fn other(self) -> Port {
        match self {
            Port::P1 => Port::P2,
            Port::P2 => Port::P1,
        }
    }
}

/// Fixed optical layout: biprism deflection plus an N-slit grating whose
/// period interleaves the diffraction orders of the two deflected beams.
///
/// All lengths are in metres, angles in radians, spatial frequencies in
/// cycles per metre. Construction validates physicality; the grating
/// period is derived from the deflection so that `period * 2 * carrier`
/// is exactly 1 in floating point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Geometry {
    wavelength: f64,
    refractive_index: f64,
    biprism_angle: f64,
    slit_width: f64,
    slit_count: u32,
    deflection: f64,
    carrier: f64,
}

impl Geometry {
    pub fn new(
        wavelength: f64,
        refractive_index: f64,
        biprism_angle: f64,
        slit_width: f64,
        slit_count: u32,
    ) -> Result<Self> {
        check_positive("wavelength", wavelength)?;
        if !refractive_index.is_finite() || refractive_index <= 1.0 {
            return Err(Error::InvalidParameter {
                name: "refractive_index",
                reason: format!("must be finite and > 1, got {refractive_index}"),
            });
        }
        check_positive("biprism_angle", biprism_angle)?;
        if biprism_angle >= std::f64::consts::FRAC_PI_2 {
            return Err(Error::InvalidParameter {
                name: "biprism_angle",
                reason: format!("must be below pi/2, got {biprism_angle}"),
            });
        }
        if !slit_width.is_finite() || slit_width < 0.0 {
            return Err(Error::InvalidParameter {
                name: "slit_width",
                reason: format!("must be finite and >= 0, got {slit_width}"),
            });
        }
        if slit_count == 0 {
            return Err(Error::InvalidParameter {
                name: "slit_count",
                reason: "must be >= 1".into(),
            });
        }

        let deflection = (refractive_index - 1.0) * biprism_angle;
        let carrier = deflection / wavelength;
        let geom = Geometry {
            wavelength,
            refractive_index,
            biprism_angle,
            slit_width,
            slit_count,
            deflection,
            carrier,
        };
        if slit_width > geom.period() {
            return Err(Error::InvalidParameter {
                name: "slit_width",
                reason: format!(
                    "slit width {slit_width:.3e} m exceeds grating period {:.3e} m",
                    geom.period()
                ),
            });
        }
        Ok(geom)
    }

    /// Like [`Geometry::new`] but checks an explicitly measured grating
    /// period against the one fixed by the deflection. A mismatch beyond
    /// [`PERIOD_MATCH_TOLERANCE`] (relative) is an error unless
    /// `allow_mismatch` is set, in which case the derived period still
    /// wins: the orders would no longer interleave at the detectors, so
    /// silently adopting a mismatched period would invalidate every
    /// downstream formula.
    pub fn with_measured_period(
        wavelength: f64,
        refractive_index: f64,
        biprism_angle: f64,
        slit_width: f64,
        slit_count: u32,
        measured_period: f64,
        allow_mismatch: bool,
    ) -> Result<Self> {
        let geom = Self::new(
            wavelength,
            refractive_index,
            biprism_angle,
            slit_width,
            slit_count,
        )?;
        check_positive("measured_period", measured_period)?;
        let expected = geom.period();
        let rel = ((measured_period - expected) / expected).abs();
        if rel > PERIOD_MATCH_TOLERANCE && !allow_mismatch {
            return Err(Error::PeriodMismatch {
                got: measured_period,
                expected,
            });
        }
        Ok(geom)
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn refractive_index(&self) -> f64 {
        self.refractive_index
    }

    pub fn biprism_angle(&self) -> f64 {
        self.biprism_angle
    }

    pub fn slit_width(&self) -> f64 {
        self.slit_width
    }

    pub fn slit_count(&self) -> u32 {
        self.slit_count
    }

    /// Deflection angle of each beam, `(n - 1) * biprism_angle`, radians.
    pub fn deflection_angle(&self) -> f64 {
        self.deflection
    }

    /// Spatial frequency `u0` carried by each deflected beam at the
    /// grating plane, cycles per metre.
    pub fn carrier_frequency(&self) -> f64 {
        self.carrier
    }

    /// Grating period, `1 / (2 * u0)`. Also the period of the count-rate
    /// fringe traced out when the grating is displaced.
    pub fn period(&self) -> f64 {
        1.0 / (2.0 * self.carrier)
    }

    /// Far-field spatial frequency of a detector port.
    pub fn port_frequency(&self, port: Port) -> f64 {
        match port {
            Port::P1 => -self.carrier,
            Port::P2 => self.carrier,
        }
    }

    /// Returns a copy with a different slit width, other parameters fixed.
    pub fn with_slit_width(&self, slit_width: f64) -> Result<Self> {
        Geometry::new(
            self.wavelength,
            self.refractive_index,
            self.biprism_angle,
            slit_width,
            self.slit_count,
        )
    }
}

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() || value <= 0.0 {
        return Err(Error::InvalidParameter {
            name,
            reason: format!("must be finite and > 0, got {value}"),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    pub(crate) fn reference() -> Geometry {
        Geometry::new(670e-9, 1.51, 7.5e-3, 20e-6, 20).unwrap()
    }

    #[test]
    fn reference_deflection_and_period() {
        let g = reference();
        assert_relative_eq!(g.deflection_angle(), 3.825e-3, max_relative = 1e-12);
        assert_relative_eq!(g.period(), 87.581_699e-6, max_relative = 1e-6);
        // The derived period sits within a micron of the nominal 87 um.
        assert!((g.period() - 87e-6).abs() < 1e-6);
    }

    #[test]
    fn period_carrier_product_is_exact() {
        let g = reference();
        assert_eq!(g.period() * 2.0 * g.carrier_frequency(), 1.0);
    }

    #[test]
    fn port_frequencies_are_opposite() {
        let g = reference();
        assert_eq!(g.port_frequency(Port::P1), -g.port_frequency(Port::P2));
        assert!(g.port_frequency(Port::P1) < 0.0);
    }

    #[test]
    fn rejects_unphysical_parameters() {
        assert!(Geometry::new(0.0, 1.51, 7.5e-3, 20e-6, 20).is_err());
        assert!(Geometry::new(670e-9, 1.0, 7.5e-3, 20e-6, 20).is_err());
        assert!(Geometry::new(670e-9, 1.51, 0.0, 20e-6, 20).is_err());
        assert!(Geometry::new(670e-9, 1.51, 7.5e-3, -1e-6, 20).is_err());
        assert!(Geometry::new(670e-9, 1.51, 7.5e-3, 20e-6, 0).is_err());
        // Slits wider than the period would overlap.
        assert!(Geometry::new(670e-9, 1.51, 7.5e-3, 90e-6, 20).is_err());
        // Fully open grating (width == period) is the degenerate limit and allowed.
        let g = reference();
        assert!(g.with_slit_width(g.period()).is_ok());
    }

    #[test]
    fn measured_period_validation() {
        let expected = reference().period();
        let ok = Geometry::with_measured_period(
            670e-9,
            1.51,
            7.5e-3,
            20e-6,
            20,
            expected * (1.0 + 5e-10),
            false,
        );
        assert!(ok.is_ok());

        let err = Geometry::with_measured_period(670e-9, 1.51, 7.5e-3, 20e-6, 20, 87e-6, false);
        assert!(matches!(err, Err(Error::PeriodMismatch { .. })));

        let overridden =
            Geometry::with_measured_period(670e-9, 1.51, 7.5e-3, 20e-6, 20, 87e-6, true).unwrap();
        assert_relative_eq!(overridden.period(), expected);
    }
}
