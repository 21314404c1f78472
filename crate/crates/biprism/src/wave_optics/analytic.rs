//! Closed-form fringe visibility and which-path distinguishability.
//!
//! Both quantities are controlled by a single number: the envelope
//! overlap `s = sinc(pi * slit_width / period)`, the value of one path's
//! slit envelope at the other path's detector port. Narrow slits spread
//! the envelope (s -> 1, full interference); wide slits confine it
//! (s -> 0, full path knowledge).

use std::f64::consts::PI;

use super::amplitude::sinc;
use super::geometry::{Geometry, Path, Port};

/// Envelope overlap `s = sinc(pi * slit_width / period)`.
pub fn envelope_overlap(geom: &Geometry) -> f64 {
    sinc(PI * geom.slit_width() / geom.period())
}

/// Fringe visibility of the count rate at either port as the grating is
/// displaced: `V = 2 s / (1 + s^2)`.
pub fn visibility(geom: &Geometry) -> f64 {
    let s = envelope_overlap(geom);
    2.0 * s / (1.0 + s * s)
}

/// Which-path distinguishability read off the port imbalance:
/// `D = (1 - s^2) / (1 + s^2)`.
pub fn distinguishability(geom: &Geometry) -> f64 {
    let s = envelope_overlap(geom);
    (1.0 - s * s) / (1.0 + s * s)
}

/// `V^2 + D^2`; identically 1 for this layout at every slit width.
pub fn duality_sum(geom: &Geometry) -> f64 {
    let v = visibility(geom);
    let d = distinguishability(geom);
    v * v + d * d
}

/// Joint probability of a photon taking `path` and landing in `port`,
/// with the paths equally likely and only the two ports retained.
///
/// Conditioned on its path, a photon lands in its own zero-order port
/// with weight 1 and in the opposite port with weight `s^2`.
pub fn joint_port_probability(geom: &Geometry, path: Path, port: Port) -> f64 {
    let s = envelope_overlap(geom);
    let s2 = s * s;
    let own = matches!(
        (path, port),
        (Path::One, Port::P1) | (Path::Two, Port::P2)
    );
    let weight = if own { 1.0 } else { s2 };
    0.5 * weight / (1.0 + s2)
}

/// Per-path distinguishability from the joint probabilities:
/// `D_j = |p(P1, j) - p(P2, j)|`. Their sum over both paths equals
/// [`distinguishability`].
pub fn path_distinguishability(geom: &Geometry, path: Path) -> f64 {
    (joint_port_probability(geom, path, Port::P1) - joint_port_probability(geom, path, Port::P2))
        .abs()
}
