//! Far-field intensity maps over spatial frequency and grating
//! displacement, from the closed form or the quadrature oracle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::map_indexed;
use crate::wave_optics::{intensity, oracle, Geometry, OracleSettings};

/// Rectangular evaluation grid. Both axes include their endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MapAxes {
    pub u_min: f64,
    pub u_max: f64,
    pub u_points: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub x_points: usize,
}

impl MapAxes {
    /// Three order spacings either side of centre, one displacement
    /// period.
    pub fn default_for(geom: &Geometry) -> Self {
        let u0 = geom.carrier_frequency();
        MapAxes {
            u_min: -3.0 * u0,
            u_max: 3.0 * u0,
            u_points: 256,
            x_min: 0.0,
            x_max: geom.period(),
            x_points: 64,
        }
    }

    fn validate(&self) -> Result<()> {
        for (name, n) in [("u_points", self.u_points), ("x_points", self.x_points)] {
            if n < 2 {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("need at least 2 grid points, got {n}"),
                });
            }
        }
        for (name, lo, hi) in [
            ("u range", self.u_min, self.u_max),
            ("x range", self.x_min, self.x_max),
        ] {
            if !lo.is_finite() || !hi.is_finite() || lo >= hi {
                return Err(Error::InvalidParameter {
                    name: match name {
                        "u range" => "u_range",
                        _ => "x_range",
                    },
                    reason: format!("need finite min < max, got [{lo}, {hi}]"),
                });
            }
        }
        Ok(())
    }

    fn u_grid(&self) -> Vec<f64> {
        linspace(self.u_min, self.u_max, self.u_points)
    }

    fn x_grid(&self) -> Vec<f64> {
        linspace(self.x_min, self.x_max, self.x_points)
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(|i| lo + i as f64 * step).collect()
}

/// Intensity on a grid, row-major with the frequency axis outermost:
/// `values[iu * x.len() + ix]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntensityMap {
    pub u: Vec<f64>,
    pub x: Vec<f64>,
    pub values: Vec<f64>,
}

impl IntensityMap {
    pub fn value(&self, iu: usize, ix: usize) -> f64 {
        self.values[iu * self.x.len() + ix]
    }
}

/// Map of the closed-form combined intensity.
pub fn closed_form_map(geom: &Geometry, axes: &MapAxes, parallel: bool) -> Result<IntensityMap> {
    axes.validate()?;
    let u = axes.u_grid();
    let x = axes.x_grid();
    let rows = map_indexed(parallel, u.len(), |iu| {
        x.iter()
            .map(|&xv| intensity(geom, u[iu], xv))
            .collect::<Vec<f64>>()
    });
    Ok(IntensityMap {
        values: rows.concat(),
        u,
        x,
    })
}

/// Same grid evaluated by the quadrature oracle.
pub fn oracle_map(
    geom: &Geometry,
    axes: &MapAxes,
    settings: &OracleSettings,
    parallel: bool,
) -> Result<IntensityMap> {
    axes.validate()?;
    let u = axes.u_grid();
    let x = axes.x_grid();
    let rows: Vec<Result<Vec<f64>>> = map_indexed(parallel, u.len(), |iu| {
        x.iter()
            .map(|&xv| oracle::intensity(geom, u[iu], xv, settings))
            .collect()
    });
    let mut values = Vec::with_capacity(u.len() * x.len());
    for row in rows {
        values.extend(row?);
    }
    Ok(IntensityMap { values, u, x })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geom() -> Geometry {
        Geometry::new(670e-9, 1.51, 7.5e-3, 20e-6, 20).unwrap()
    }

    #[test]
    fn grid_shape_and_endpoints() {
        let g = geom();
        let axes = MapAxes {
            u_points: 16,
            x_points: 5,
            ..MapAxes::default_for(&g)
        };
        let map = closed_form_map(&g, &axes, false).unwrap();
        assert_eq!(map.u.len(), 16);
        assert_eq!(map.x.len(), 5);
        assert_eq!(map.values.len(), 80);
        assert_eq!(map.u[0], axes.u_min);
        assert_eq!(*map.u.last().unwrap(), axes.u_max);
        assert_eq!(map.x[0], axes.x_min);
        assert_eq!(*map.x.last().unwrap(), axes.x_max);
    }

    #[test]
    fn parallel_map_is_bitwise_identical() {
        let g = geom();
        let axes = MapAxes {
            u_points: 32,
            x_points: 8,
            ..MapAxes::default_for(&g)
        };
        let a = closed_form_map(&g, &axes, false).unwrap();
        let b = closed_form_map(&g, &axes, true).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn oracle_map_matches_closed_form() {
        let g = geom();
        let axes = MapAxes {
            u_points: 12,
            x_points: 4,
            ..MapAxes::default_for(&g)
        };
        let a = closed_form_map(&g, &axes, false).unwrap();
        let b = oracle_map(&g, &axes, &OracleSettings::default(), false).unwrap();
        for (i, (&va, &vb)) in a.values.iter().zip(&b.values).enumerate() {
            let scale = va.abs().max(vb.abs()).max(1e-30);
            assert!(((va - vb) / scale).abs() < 1e-8, "cell {i}: {va} vs {vb}");
        }
    }

    #[test]
    fn degenerate_axes_are_rejected() {
        let g = geom();
        let mut axes = MapAxes::default_for(&g);
        axes.u_points = 1;
        assert!(closed_form_map(&g, &axes, false).is_err());
        let mut axes = MapAxes::default_for(&g);
        axes.x_min = axes.x_max;
        assert!(closed_form_map(&g, &axes, false).is_err());
    }
}
