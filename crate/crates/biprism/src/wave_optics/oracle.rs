//! Brute-force cross-check for the closed-form amplitudes.
//!
//! Integrates `exp(-2 i pi nu x')` directly over every slit opening with
//! composite Gauss-Legendre panels, normalising by the slit width so the
//! zero-order peak equals the slit count. Slit `m` is centred at
//! `x + m * period`, which places a bright fringe at zero displacement.
//!
//! No factored envelope, no array factor, no special-cased singularities:
//! everything the closed form derives symbolically is reproduced here by
//! plain quadrature, so agreement is evidence rather than tautology. The
//! integral carries its own per-path phase reference; intensities are the
//! convention-free quantities to compare (see [`super::amplitude`]).

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature::gl16;

use super::geometry::{Geometry, Path};

/// Resolution of the oracle quadrature.
#[derive(Debug, Clone, Copy)]
pub struct OracleSettings {
    /// Gauss-Legendre sample points per slit; 16 samples per panel.
    /// Must be at least 32 so every slit gets two panels or more.
    pub samples_per_slit: usize,
}

impl Default for OracleSettings {
    fn default() -> Self {
        OracleSettings {
            samples_per_slit: 64,
        }
    }
}

impl OracleSettings {
    fn panels(&self) -> Result<usize> {
        if self.samples_per_slit < 32 {
            return Err(Error::OracleResolution(self.samples_per_slit));
        }
        Ok(self.samples_per_slit.div_ceil(16))
    }
}

/// Far-field amplitude of one path by direct quadrature.
pub fn amplitude(
    geom: &Geometry,
    path: Path,
    u: f64,
    x: f64,
    settings: &OracleSettings,
) -> Result<Complex64> {
    let panels = settings.panels()?;
    let u0 = geom.carrier_frequency();
    // The beam's own carrier shifts the effective frequency of the
    // Fourier kernel: path one integrates at u + u0, path two at u - u0.
    let nu = match path {
        Path::One => u + u0,
        Path::Two => u - u0,
    };
    let a = geom.slit_width();
    let period = geom.period();
    let n = geom.slit_count();

    if a == 0.0 {
        // Point-scatterer limit: each slit contributes a unit phasor.
        let mut acc = Complex64::new(0.0, 0.0);
        for m in 0..n {
            let c = x + m as f64 * period;
            acc += Complex64::from_polar(1.0, -2.0 * PI * nu * c);
        }
        return Ok(acc);
    }

    let rule = gl16();
    let half_width = 0.5 * a / panels as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for m in 0..n {
        let centre = x + m as f64 * period;
        let lo = centre - 0.5 * a;
        for p in 0..panels {
            let mid = lo + (2.0 * p as f64 + 1.0) * half_width;
            for &(t, w) in rule.iter() {
                let xp = mid + half_width * t;
                acc += w * Complex64::from_polar(1.0, -2.0 * PI * nu * xp);
            }
        }
    }
    Ok(acc * half_width / a)
}

/// Combined two-path intensity by quadrature.
pub fn intensity(geom: &Geometry, u: f64, x: f64, settings: &OracleSettings) -> Result<f64> {
    let s1 = amplitude(geom, Path::One, u, x, settings)?;
    let s2 = amplitude(geom, Path::Two, u, x, settings)?;
    Ok((s1 + s2).norm_sqr())
}

/// Single-path intensity by quadrature.
pub fn single_path_intensity(
    geom: &Geometry,
    path: Path,
    u: f64,
    x: f64,
    settings: &OracleSettings,
) -> Result<f64> {
    Ok(amplitude(geom, path, u, x, settings)?.norm_sqr())
}
