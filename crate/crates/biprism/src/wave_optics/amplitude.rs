//! Closed-form far-field amplitudes of the two-beam, N-slit layout.
//!
//! Each deflected beam illuminates the same grating; its far field is a
//! slit envelope times an N-slit array factor, offset by the carrier
//! `±u0` and phase-shifted by the grating displacement `x`. Amplitudes
//! are normalised so a single slit contributes 1 at its envelope centre.
//!
//! Phase convention: the per-path phase factors below reference each
//! path's own carrier. A direct Fourier integral over the slit openings
//! (see [`super::oracle`]) lands on a different but equally valid
//! reference; for an integer slit count the two conventions give
//! identical single-path and combined intensities, which is why all
//! cross-checks compare intensities rather than raw phases.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::geometry::{Geometry, Path};

/// `sin(z)/z` with the removable singularity filled in.
///
/// Takes the full printed argument: callers pass `pi * nu * a`, not
/// `nu * a`.
pub fn sinc(z: f64) -> f64 {
    if z == 0.0 {
        1.0
    } else {
        z.sin() / z
    }
}

/// Width of the window around integer arguments inside which the N-slit
/// array factor switches to its analytic limit.
pub const ARRAY_FACTOR_SINGULARITY_WINDOW: f64 = 1e-9;

/// N-slit array factor `sin(N pi q) / sin(pi q)`.
///
/// At integer `q = m` both sines vanish; the limit is
/// `N cos(N pi m) / cos(pi m) = N * (-1)^(m (N - 1))`, selected by
/// integer parity whenever `|q - round(q)|` falls below
/// [`ARRAY_FACTOR_SINGULARITY_WINDOW`].
pub fn array_factor(q: f64, n: u32) -> f64 {
    let nearest = q.round();
    if (q - nearest).abs() < ARRAY_FACTOR_SINGULARITY_WINDOW {
        let m = nearest as i64;
        let sign = if (m * (n as i64 - 1)) % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        return n as f64 * sign;
    }
    (n as f64 * PI * q).sin() / (PI * q).sin()
}

/// Far-field amplitude of one path at spatial frequency `u`, with the
/// grating displaced by `x` (metres).
pub fn path_amplitude(geom: &Geometry, path: Path, u: f64, x: f64) -> Complex64 {
    let u0 = geom.carrier_frequency();
    let a = geom.slit_width();
    let period = geom.period();
    let n = geom.slit_count();
    // Path one diffracts around -u0 in the far field: its envelope and
    // array factor peak where u + u0 = 0. Path two mirrors it.
    let (nu, co) = match path {
        Path::One => (u + u0, u - u0),
        Path::Two => (u - u0, u + u0),
    };
    let envelope = sinc(PI * nu * a);
    let comb = array_factor(nu * period, n);
    let phase = PI * (n as f64 - 1.0) * co / (2.0 * u0) - 2.0 * PI * co * x;
    Complex64::from_polar(envelope * comb, phase)
}

/// Combined two-path amplitude: coherent sum of both paths.
pub fn total_amplitude(geom: &Geometry, u: f64, x: f64) -> Complex64 {
    path_amplitude(geom, Path::One, u, x) + path_amplitude(geom, Path::Two, u, x)
}

/// Combined two-path intensity `|S1 + S2|^2`.
pub fn intensity(geom: &Geometry, u: f64, x: f64) -> f64 {
    total_amplitude(geom, u, x).norm_sqr()
}

/// Single-path intensity `|Sj|^2`, the pattern seen with the other path
/// blocked.
pub fn single_path_intensity(geom: &Geometry, path: Path, u: f64, x: f64) -> f64 {
    path_amplitude(geom, path, u, x).norm_sqr()
}
