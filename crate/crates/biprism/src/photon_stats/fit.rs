//! Fringe fit: linear least squares on the basis
//! `{1, cos(2 pi x / period), sin(2 pi x / period)}` with the period held
//! fixed at its known value. The fringe visibility is the fitted
//! modulation depth over the fitted mean.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Guard rails for the fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitOptions {
    /// Reject fits whose reduced chi-square exceeds this bound. Only
    /// enforced when per-point variances are supplied, since otherwise
    /// the residual scale is fitted rather than predicted.
    pub chi2_dof_max: f64,
    /// Minimum displacement span in fringe periods.
    pub min_coverage: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            chi2_dof_max: 5.0,
            min_coverage: 1.5,
        }
    }
}

/// Result of a fixed-period cosine fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FringeFit {
    /// Fitted mean level (same units as the input values).
    pub mean: f64,
    /// Coefficients of the cosine and sine basis functions.
    pub cos_amp: f64,
    pub sin_amp: f64,
    /// Modulation depth over mean, `sqrt(cos^2 + sin^2) / mean`.
    pub visibility: f64,
    /// One-sigma uncertainty on `visibility` propagated through the
    /// parameter covariance.
    pub visibility_err: f64,
    /// Fringe phase at x = 0, radians in (-pi, pi].
    pub phase: f64,
    pub chi2_dof: f64,
    /// Parameter covariance, ordered (mean, cos_amp, sin_amp).
    pub covariance: [[f64; 3]; 3],
}

/// Fits `values` sampled at displacements `xs` against a cosine of fixed
/// `period`. `variances`, when given, weight the points by their inverse
/// and calibrate the covariance; otherwise the fit is unweighted and the
/// covariance is scaled by the residual variance.
pub fn fit_fringe(
    xs: &[f64],
    values: &[f64],
    variances: Option<&[f64]>,
    period: f64,
    options: &FitOptions,
) -> Result<FringeFit> {
    if xs.is_empty() {
        return Err(Error::Empty("fit input"));
    }
    if xs.len() != values.len() {
        return Err(Error::Fit(format!(
            "{} positions vs {} values",
            xs.len(),
            values.len()
        )));
    }
    if let Some(v) = variances {
        if v.len() != xs.len() {
            return Err(Error::Fit(format!(
                "{} positions vs {} variances",
                xs.len(),
                v.len()
            )));
        }
        if v.iter().any(|&w| !w.is_finite() || w <= 0.0) {
            return Err(Error::Fit("variances must be finite and > 0".into()));
        }
    }
    if !period.is_finite() || period <= 0.0 {
        return Err(Error::Fit(format!("period must be > 0, got {period}")));
    }
    if xs.len() < 4 {
        return Err(Error::Fit(format!(
            "need at least 4 points to constrain 3 parameters, got {}",
            xs.len()
        )));
    }
    let (lo, hi) = xs
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
    let coverage = (hi - lo) / period;
    if coverage < options.min_coverage {
        return Err(Error::Fit(format!(
            "scan spans {coverage:.2} fringe periods, need {:.2}",
            options.min_coverage
        )));
    }

    // Normal equations for the three-term basis.
    let mut m = [[0.0f64; 3]; 3];
    let mut b = [0.0f64; 3];
    for (i, (&x, &y)) in xs.iter().zip(values).enumerate() {
        let w = variances.map_or(1.0, |v| 1.0 / v[i]);
        let arg = 2.0 * PI * x / period;
        let phi = [1.0, arg.cos(), arg.sin()];
        for r in 0..3 {
            b[r] += w * phi[r] * y;
            for c in 0..3 {
                m[r][c] += w * phi[r] * phi[c];
            }
        }
    }
    let inv = invert3(&m).ok_or_else(|| {
        Error::Fit("normal equations are singular; positions may be degenerate".into())
    })?;
    let p: [f64; 3] = std::array::from_fn(|r| (0..3).map(|c| inv[r][c] * b[c]).sum());
    let (mean, cos_amp, sin_amp) = (p[0], p[1], p[2]);

    let mut chi2 = 0.0;
    for (i, (&x, &y)) in xs.iter().zip(values).enumerate() {
        let w = variances.map_or(1.0, |v| 1.0 / v[i]);
        let arg = 2.0 * PI * x / period;
        let model = mean + cos_amp * arg.cos() + sin_amp * arg.sin();
        chi2 += w * (y - model) * (y - model);
    }
    let dof = (xs.len() - 3) as f64;
    let chi2_dof = chi2 / dof;

    let mut covariance = inv;
    if variances.is_none() {
        // Calibrate the unweighted covariance from the residuals.
        for row in covariance.iter_mut() {
            for c in row.iter_mut() {
                *c *= chi2_dof;
            }
        }
    } else if chi2_dof > options.chi2_dof_max {
        return Err(Error::Fit(format!(
            "reduced chi-square {chi2_dof:.2} exceeds bound {:.2}",
            options.chi2_dof_max
        )));
    }

    if mean <= 0.0 {
        return Err(Error::Fit(format!(
            "fitted mean level {mean:.3e} is not positive"
        )));
    }

    let modulation = (cos_amp * cos_amp + sin_amp * sin_amp).sqrt();
    let visibility = modulation / mean;
    let visibility_err = if modulation > 0.0 {
        let g = [
            -modulation / (mean * mean),
            cos_amp / (modulation * mean),
            sin_amp / (modulation * mean),
        ];
        let mut var = 0.0;
        for r in 0..3 {
            for c in 0..3 {
                var += g[r] * covariance[r][c] * g[c];
            }
        }
        var.max(0.0).sqrt()
    } else {
        // Degenerate zero-modulation point: quote the quadrature error of
        // the two amplitude coefficients.
        (covariance[1][1] + covariance[2][2]).max(0.0).sqrt() / mean
    };
    let phase = (-sin_amp).atan2(cos_amp);

    Ok(FringeFit {
        mean,
        cos_amp,
        sin_amp,
        visibility,
        visibility_err,
        phase,
        chi2_dof,
        covariance,
    })
}

fn invert3(m: &[[f64; 3]; 3]) -> Option<[[f64; 3]; 3]> {
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if !det.is_finite() || det.abs() < 1e-300 {
        return None;
    }
    let inv_det = 1.0 / det;
    let mut out = [[0.0; 3]; 3];
    for r in 0..3 {
        for c in 0..3 {
            let (r1, r2) = match r {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let (c1, c2) = match c {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let minor = m[c1][r1] * m[c2][r2] - m[c1][r2] * m[c2][r1];
            let sign = if (r + c) % 2 == 0 { 1.0 } else { -1.0 };
            out[r][c] = sign * minor * inv_det;
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sample_fringe(
        n: usize,
        step: f64,
        period: f64,
        mean: f64,
        vis: f64,
        phase: f64,
    ) -> (Vec<f64>, Vec<f64>) {
        let xs: Vec<f64> = (0..n).map(|i| i as f64 * step).collect();
        let ys = xs
            .iter()
            .map(|&x| mean * (1.0 + vis * (2.0 * PI * x / period + phase).cos()))
            .collect();
        (xs, ys)
    }

    #[test]
    fn recovers_noiseless_parameters() {
        let period = 87.58e-6;
        let (xs, ys) = sample_fringe(55, 4e-6, period, 1000.0, 0.83, 0.4);
        let fit = fit_fringe(&xs, &ys, None, period, &FitOptions::default()).unwrap();
        assert_relative_eq!(fit.mean, 1000.0, max_relative = 1e-10);
        assert_relative_eq!(fit.visibility, 0.83, max_relative = 1e-10);
        assert_relative_eq!(fit.phase, 0.4, max_relative = 1e-9);
        assert!(fit.chi2_dof < 1e-18);
    }

    #[test]
    fn weighted_fit_matches_poisson_scale() {
        // Synthetic counts with Poisson-like scatter injected by hand.
        let period = 87.58e-6;
        let (xs, clean) = sample_fringe(55, 4e-6, period, 5000.0, 0.5, -1.1);
        let bumps = [1.0f64, -0.6, 0.3, 2.1, -1.4, 0.0, 0.9, -2.0];
        let ys: Vec<f64> = clean
            .iter()
            .enumerate()
            .map(|(i, &y)| y + bumps[i % bumps.len()] * y.sqrt())
            .collect();
        let vars: Vec<f64> = ys.iter().map(|&y| y.max(1.0)).collect();
        let fit = fit_fringe(&xs, &ys, Some(&vars), period, &FitOptions::default()).unwrap();
        assert!((fit.visibility - 0.5).abs() < 5.0 * fit.visibility_err);
        assert!(fit.chi2_dof < 5.0);
    }

    #[test]
    fn rejects_short_scans() {
        let period = 87.58e-6;
        let (xs, ys) = sample_fringe(20, 4e-6, period, 1000.0, 0.8, 0.0);
        let err = fit_fringe(&xs, &ys, None, period, &FitOptions::default());
        assert!(matches!(err, Err(Error::Fit(_))));
    }

    #[test]
    fn rejects_bad_chi2_when_variances_given() {
        let period = 87.58e-6;
        let (xs, ys) = sample_fringe(55, 4e-6, period, 1000.0, 0.8, 0.0);
        // Claim absurdly small variances: chi2/dof blows up on any
        // residual outside the basis span, here an alternating bump.
        let noisy: Vec<f64> = ys
            .iter()
            .enumerate()
            .map(|(i, &y)| y + if i % 2 == 0 { 30.0 } else { -30.0 })
            .collect();
        let wrong_vars: Vec<f64> = vec![1e-6; ys.len()];
        let err = fit_fringe(&xs, &noisy, Some(&wrong_vars), period, &FitOptions::default());
        assert!(matches!(err, Err(Error::Fit(_))));
    }

    #[test]
    fn rejects_nonpositive_mean() {
        let period = 87.58e-6;
        let xs: Vec<f64> = (0..55).map(|i| i as f64 * 4e-6).collect();
        let ys: Vec<f64> = xs.iter().map(|_| -5.0).collect();
        let err = fit_fringe(&xs, &ys, None, period, &FitOptions::default());
        assert!(matches!(err, Err(Error::Fit(_))));
    }

    #[test]
    fn invert3_recovers_identity() {
        let m = [[4.0, 1.0, 0.5], [2.0, 3.0, 0.2], [0.5, 0.7, 2.0]];
        let inv = invert3(&m).unwrap();
        for r in 0..3 {
            for c in 0..3 {
                let mut acc = 0.0;
                for k in 0..3 {
                    acc += m[r][k] * inv[k][c];
                }
                let expected = if r == c { 1.0 } else { 0.0 };
                assert_relative_eq!(acc, expected, epsilon = 1e-12);
            }
        }
    }
}
