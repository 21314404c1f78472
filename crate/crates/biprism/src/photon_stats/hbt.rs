//! Beamsplitter correlation test for single-photon character.
//!
//! Per trigger: at most one signal photon (Bernoulli) plus Poisson
//! background photons; each photon is detected with the quantum
//! efficiency and routed to either output with equal probability. A
//! detector reports one click per trigger no matter how many photons
//! land on it. The anticorrelation parameter compares coincidences to
//! accidentals:
//!
//! `alpha = N_c * N_t / (N_1 * N_2)`
//!
//! An ideal one-photon source gives 0; Poisson light gives 1.
//!
//! Detection here applies the quantum efficiency alone: the correlation
//! arm taps the source ahead of the interferometer, so the collection
//! efficiency of the main apparatus does not enter.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::exec::map_indexed;

use super::model::Source;
use super::rng::{stream_rng, StreamDomain};
use super::scan::sample_poisson;

/// Triggers per ChaCha stream. Fixing the block size makes the result a
/// pure function of `(seed, trigger index)`, independent of how blocks
/// are scheduled across threads.
const TRIGGERS_PER_BLOCK: u64 = 65_536;

/// Tallies and derived statistics of a correlation run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HbtOutcome {
    pub triggers: u64,
    /// Triggers with at least one click on output 1 / output 2.
    pub singles_p1: u64,
    pub singles_p2: u64,
    /// Triggers with clicks on both outputs.
    pub coincidences: u64,
    pub alpha: f64,
    /// Poisson-propagated one-sigma on alpha; `None` when no
    /// coincidences were seen.
    pub alpha_err: Option<f64>,
}

/// Runs `triggers` source triggers through the correlation setup.
pub fn simulate(source: &Source, triggers: u64, seed: u64, parallel: bool) -> HbtOutcome {
    let blocks = triggers.div_ceil(TRIGGERS_PER_BLOCK) as usize;
    let tallies = map_indexed(parallel, blocks, |b| {
        let b = b as u64;
        let in_block = TRIGGERS_PER_BLOCK.min(triggers - b * TRIGGERS_PER_BLOCK);
        let mut rng = stream_rng(seed, StreamDomain::HbtBlock, b);
        let mut n1 = 0u64;
        let mut n2 = 0u64;
        let mut nc = 0u64;
        for _ in 0..in_block {
            let mut hits1 = false;
            let mut hits2 = false;
            let signal = u64::from(rng.random_bool(source.emission_probability));
            let background = sample_poisson(&mut rng, source.background_mean);
            for _ in 0..signal + background {
                if !rng.random_bool(source.quantum_efficiency) {
                    continue;
                }
                if rng.random_bool(0.5) {
                    hits1 = true;
                } else {
                    hits2 = true;
                }
            }
            n1 += u64::from(hits1);
            n2 += u64::from(hits2);
            nc += u64::from(hits1 && hits2);
        }
        (n1, n2, nc)
    });
    let (singles_p1, singles_p2, coincidences) = tallies
        .into_iter()
        .fold((0, 0, 0), |(a, b, c), (x, y, z)| (a + x, b + y, c + z));

    let alpha = if coincidences == 0 || singles_p1 == 0 || singles_p2 == 0 {
        0.0
    } else {
        coincidences as f64 * triggers as f64 / (singles_p1 as f64 * singles_p2 as f64)
    };
    let alpha_err = if coincidences == 0 || singles_p1 == 0 || singles_p2 == 0 {
        None
    } else {
        Some(
            alpha
                * (1.0 / coincidences as f64
                    + 1.0 / singles_p1 as f64
                    + 1.0 / singles_p2 as f64)
                    .sqrt(),
        )
    };
    HbtOutcome {
        triggers,
        singles_p1,
        singles_p2,
        coincidences,
        alpha,
        alpha_err,
    }
}

/// Closed-form expectation of alpha for the simulated source model, in
/// the many-trigger limit.
///
/// With click probability per photon `eta / 2` per output, the chance
/// output 1 stays silent is `(1 - p eta / 2) exp(-mu eta / 2)`; both
/// outputs stay silent with probability `(1 - p eta) exp(-mu eta)`.
/// Inclusion-exclusion then gives the coincidence probability, and alpha
/// follows as `P_c / P_1 P_2`.
pub fn expected_alpha(source: &Source) -> f64 {
    let p = source.emission_probability;
    let mu = source.background_mean;
    let eta = source.quantum_efficiency;
    let p_silent_one = (1.0 - 0.5 * p * eta) * (-0.5 * mu * eta).exp();
    let p_silent_both = (1.0 - p * eta) * (-mu * eta).exp();
    let p_coincidence = 1.0 - 2.0 * p_silent_one + p_silent_both;
    let p_click = 1.0 - p_silent_one;
    if p_click <= 0.0 {
        return 0.0;
    }
    p_coincidence / (p_click * p_click)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn lone_photons_never_coincide() {
        let source = Source {
            emission_probability: 1.0,
            background_mean: 0.0,
            ..Source::default()
        };
        let out = simulate(&source, 200_000, 3, false);
        assert_eq!(out.coincidences, 0);
        assert_eq!(out.alpha, 0.0);
        assert!(out.alpha_err.is_none());
        assert_eq!(out.singles_p1 + out.singles_p2, out.triggers);
        assert_eq!(expected_alpha(&source), 0.0);
    }

    #[test]
    fn poisson_light_gives_unit_alpha() {
        let source = Source {
            emission_probability: 0.0,
            background_mean: 0.5,
            ..Source::default()
        };
        assert_relative_eq!(expected_alpha(&source), 1.0, max_relative = 1e-12);
        let out = simulate(&source, 400_000, 17, false);
        let err = out.alpha_err.unwrap();
        assert!(
            (out.alpha - 1.0).abs() < 4.0 * err,
            "alpha {} +- {}",
            out.alpha,
            err
        );
    }

    #[test]
    fn partial_quantum_efficiency_enters_squared_terms_only() {
        // For pure Poisson light alpha stays 1 at any efficiency.
        let source = Source {
            emission_probability: 0.0,
            background_mean: 0.8,
            quantum_efficiency: 0.35,
            ..Source::default()
        };
        assert_relative_eq!(expected_alpha(&source), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn simulation_tracks_expected_alpha_for_mixed_light() {
        let source = Source {
            emission_probability: 0.05,
            background_mean: 0.01,
            ..Source::default()
        };
        let expect = expected_alpha(&source);
        assert!(expect > 0.0 && expect < 1.0);
        let out = simulate(&source, 2_000_000, 23, false);
        let err = out.alpha_err.unwrap();
        assert!(
            (out.alpha - expect).abs() < 4.0 * err,
            "alpha {} expected {} err {}",
            out.alpha,
            expect,
            err
        );
    }

    #[test]
    fn parallel_run_is_bitwise_identical() {
        let source = Source::default();
        let a = simulate(&source, 300_000, 5, false);
        let b = simulate(&source, 300_000, 5, true);
        assert_eq!(a, b);
    }

    #[test]
    fn partial_blocks_count_every_trigger() {
        let source = Source {
            emission_probability: 1.0,
            background_mean: 0.0,
            ..Source::default()
        };
        // Not a multiple of the block size.
        let out = simulate(&source, 70_001, 9, false);
        assert_eq!(out.singles_p1 + out.singles_p2, 70_001);
    }
}
