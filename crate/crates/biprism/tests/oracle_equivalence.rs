//! The closed-form far field against the quadrature oracle, over the
//! same systematic grids the acceptance suite uses.

use biprism::wave_optics::{self as wo, Geometry, OracleSettings, Path};

fn geometry(slit_width: f64, slit_count: u32) -> Geometry {
    Geometry::new(670e-9, 1.51, 7.5e-3, slit_width, slit_count).unwrap()
}

fn relative_deviation(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale < 1e-6 {
        // Both sides agree the point is a null; rounding noise there
        // carries no information about the formulas.
        0.0
    } else {
        (a - b).abs() / scale
    }
}

#[test]
fn combined_intensity_matches_over_acceptance_grid() {
    let settings = OracleSettings::default();
    let mut worst: f64 = 0.0;
    for &width in &[20e-6, 50e-6, 70e-6, 80e-6] {
        for &count in &[5u32, 20] {
            let g = geometry(width, count);
            let u0 = g.carrier_frequency();
            let xs = [0.0, g.period() / 4.0, g.period() / 2.0];
            for i in 0..256 {
                let u = -3.0 * u0 + i as f64 * (6.0 * u0 / 255.0);
                for &x in &xs {
                    let ana = wo::intensity(&g, u, x);
                    let num = wo::oracle::intensity(&g, u, x, &settings).unwrap();
                    worst = worst.max(relative_deviation(ana, num));
                }
            }
        }
    }
    assert!(worst < 1e-6, "worst relative deviation {worst:.3e}");
}

#[test]
fn single_path_intensities_match() {
    let settings = OracleSettings::default();
    for &width in &[0.0, 20e-6, 80e-6] {
        for &count in &[1u32, 5, 20] {
            let g = geometry(width, count);
            let u0 = g.carrier_frequency();
            for path in [Path::One, Path::Two] {
                for i in 0..64 {
                    let u = -2.5 * u0 + i as f64 * (5.0 * u0 / 63.0);
                    let ana = wo::single_path_intensity(&g, path, u, 7.3e-6);
                    let num = wo::oracle::single_path_intensity(&g, path, u, 7.3e-6, &settings)
                        .unwrap();
                    let dev = relative_deviation(ana, num);
                    assert!(
                        dev < 1e-6,
                        "width={width} count={count} u={u}: {ana} vs {num}"
                    );
                }
            }
        }
    }
}

#[test]
fn oracle_confirms_port_fringe_against_displacement() {
    // The count-rate fringe underlying every scan: the oracle must
    // reproduce the closed-form port intensity at many displacements.
    let g = geometry(50e-6, 20);
    let settings = OracleSettings::default();
    let u = g.port_frequency(biprism::Port::P1);
    for i in 0..40 {
        let x = i as f64 * g.period() / 13.0;
        let ana = wo::intensity(&g, u, x);
        let num = wo::oracle::intensity(&g, u, x, &settings).unwrap();
        assert!(
            relative_deviation(ana, num) < 1e-8,
            "x={x}: {ana} vs {num}"
        );
    }
}

#[test]
fn oracle_tracks_analytic_visibility_and_distinguishability() {
    // V and D rebuilt from oracle intensities alone, no closed form:
    // V from the port fringe extrema, D from single-path port ratios.
    let settings = OracleSettings::default();
    for &width in &[20e-6, 50e-6, 80e-6] {
        let g = geometry(width, 20);
        let p1 = g.port_frequency(biprism::Port::P1);
        let bright = wo::oracle::intensity(&g, p1, 0.0, &settings).unwrap();
        let dark = wo::oracle::intensity(&g, p1, g.period() / 2.0, &settings).unwrap();
        let v = (bright - dark) / (bright + dark);
        assert!(
            (v - wo::visibility(&g)).abs() < 1e-9,
            "width={width}: fringe V {v} vs analytic {}",
            wo::visibility(&g)
        );

        let own = wo::oracle::single_path_intensity(&g, Path::One, p1, 0.0, &settings).unwrap();
        let leak = wo::oracle::single_path_intensity(
            &g,
            Path::One,
            g.port_frequency(biprism::Port::P2),
            0.0,
            &settings,
        )
        .unwrap();
        let d = (own - leak) / (own + leak);
        assert!(
            (d - wo::distinguishability(&g)).abs() < 1e-9,
            "width={width}: port D {d} vs analytic {}",
            wo::distinguishability(&g)
        );
    }
}
