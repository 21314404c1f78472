//! Subcommand bodies. Each resolves the config, runs the library, writes
//! the requested files, and prints a short human summary to stdout.

use anyhow::{Context, Result};
use std::path::{Path, PathBuf};

use biprism::experiment::{closed_form_map, oracle_map, run_campaign};
use biprism::photon_stats::{clamp_unit, expected_alpha, fit_fringe, run_scan, simulate_hbt};
use biprism::wave_optics;

use crate::config::{Resolved, RunConfig};
use crate::output::{self, map_csv, scan_csv, sig9, AnalyticReport, CampaignReport, HbtReport};

fn load(config: Option<&Path>, slit_width: Option<f64>) -> Result<(RunConfig, Resolved)> {
    let mut raw = match config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(width) = slit_width {
        // Keep the raw config consistent with the override so reports
        // and resolution agree.
        raw.geometry.slit_width = format!("{}m", width);
    }
    let resolved = raw.resolve()?;
    Ok((raw, resolved))
}

fn effective_parallel(configured: bool) -> bool {
    configured && biprism::parallel_available()
}

pub fn analytic(config: Option<&Path>, slit_width: Option<f64>, out: Option<&Path>) -> Result<()> {
    let (_, r) = load(config, slit_width)?;
    let g = &r.geometry;
    let report = AnalyticReport {
        wavelength_m: g.wavelength(),
        refractive_index: g.refractive_index(),
        biprism_angle_rad: g.biprism_angle(),
        deflection_angle_rad: g.deflection_angle(),
        carrier_per_m: g.carrier_frequency(),
        period_m: g.period(),
        slit_count: g.slit_count(),
        slit_width_m: g.slit_width(),
        envelope_overlap: wave_optics::envelope_overlap(g),
        v: wave_optics::visibility(g),
        d: wave_optics::distinguishability(g),
        sum_sq: wave_optics::duality_sum(g),
    };
    println!(
        "period {} m, overlap {:.6}, V {:.6}, D {:.6}, V^2+D^2 {:.12}",
        sig9(report.period_m),
        report.envelope_overlap,
        report.v,
        report.d,
        report.sum_sq
    );
    if let Some(path) = out {
        output::write_json(path, &report)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

pub fn scan(
    config: Option<&Path>,
    slit_width: Option<f64>,
    seed: u64,
    out: Option<&Path>,
) -> Result<()> {
    let (_, r) = load(config, slit_width)?;
    let parallel = effective_parallel(r.parallel);
    let result = run_scan(
        &r.geometry,
        &r.source,
        r.plan.detector,
        &r.plan.scan,
        seed,
        parallel,
    )?;

    let dark_per_bin = result.dark_estimate_hz * r.plan.scan.bin_time;
    let xs: Vec<f64> = result.points.iter().map(|p| p.x).collect();
    let ys: Vec<f64> = result
        .points
        .iter()
        .map(|p| p.counts_p1 as f64 - dark_per_bin)
        .collect();
    let vars: Vec<f64> = result
        .points
        .iter()
        .map(|p| (p.counts_p1 as f64).max(1.0))
        .collect();
    let fit = fit_fringe(&xs, &ys, Some(&vars), r.geometry.period(), &r.plan.fit)?;

    println!(
        "scan: {} points, dark {:.1} Hz, V {:.4} +- {:.4} (analytic {:.4}), chi2/dof {:.2}",
        result.points.len(),
        result.dark_estimate_hz,
        clamp_unit(fit.visibility),
        fit.visibility_err,
        wave_optics::visibility(&r.geometry),
        fit.chi2_dof
    );
    let path = out
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("scan.csv"));
    output::write_text(&path, &scan_csv(&result))?;
    println!("wrote {}", path.display());
    Ok(())
}

pub fn campaign(config: Option<&Path>, seed: u64, out: Option<&Path>) -> Result<()> {
    let (_, r) = load(config, None)?;
    let parallel = effective_parallel(r.parallel);
    let campaign = run_campaign(
        &r.geometry,
        &r.source,
        &r.campaign_widths,
        &r.plan,
        seed,
        parallel,
    )?;

    let dir = out
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("campaign"));
    std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;

    let mut scan_names = Vec::new();
    for (i, width) in campaign.widths.iter().enumerate() {
        let name = format!("scan_{i:02}.csv");
        output::write_text(&dir.join(&name), &scan_csv(&width.scan))?;
        scan_names.push(Some(name));
    }
    let report = CampaignReport::new(&campaign, seed, scan_names);
    output::write_json(&dir.join("summary.json"), &report)?;

    for w in &report.widths {
        println!(
            "width {} m: V {:.4} +- {:.4}, D {:.4} +- {:.4}, V^2+D^2 {:.4} +- {:.4}{}",
            sig9(w.slit_width_m),
            clamp_unit(w.v),
            w.v_err,
            clamp_unit(w.d),
            w.d_err,
            w.sum_sq,
            w.sum_sq_err,
            if w.violates_duality {
                "  [exceeds unit bound by > 5 sigma]"
            } else {
                ""
            }
        );
    }
    println!(
        "aggregate V^2+D^2: {:.4} +- {:.4}",
        report.aggregate.sum_sq_mean, report.aggregate.sum_sq_sem
    );
    println!("wrote {}", dir.join("summary.json").display());
    Ok(())
}

pub fn hbt(
    config: Option<&Path>,
    seed: u64,
    triggers: Option<u64>,
    out: Option<&Path>,
) -> Result<()> {
    let (_, r) = load(config, None)?;
    let parallel = effective_parallel(r.parallel);
    let n = triggers.unwrap_or(r.hbt_triggers);
    let outcome = simulate_hbt(&r.source, n, seed, parallel);
    let expected = expected_alpha(&r.source);
    let report = HbtReport::new(&outcome, expected, seed);
    match outcome.alpha_err {
        Some(err) => println!(
            "alpha {:.4} +- {:.4} (expected {:.4}) from {} triggers, {} coincidences",
            outcome.alpha, err, expected, n, outcome.coincidences
        ),
        None => println!(
            "alpha {:.4} (expected {:.4}) from {} triggers, no coincidences",
            outcome.alpha, expected, n
        ),
    }
    if let Some(path) = out {
        output::write_json(path, &report)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

pub fn map(config: Option<&Path>, use_oracle: bool, out: Option<&Path>) -> Result<()> {
    let (_, r) = load(config, None)?;
    let parallel = effective_parallel(r.parallel);
    let map = if use_oracle {
        oracle_map(&r.geometry, &r.map_axes, &r.oracle, parallel)?
    } else {
        closed_form_map(&r.geometry, &r.map_axes, parallel)?
    };
    println!(
        "map: {} x {} grid, {}",
        map.u.len(),
        map.x.len(),
        if use_oracle {
            "quadrature oracle"
        } else {
            "closed form"
        }
    );
    let path = out
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("map.csv"));
    output::write_text(&path, &map_csv(&map))?;
    println!("wrote {}", path.display());
    Ok(())
}

