//! Simulation and analysis of a two-path interferometer whose paths are
//! recombined on a transmission grating.
//!
//! A biprism splits the beam into two tilted paths; an N-slit grating
//! diffracts both so their orders interleave in the far field. The slit
//! width dials how much each path leaks into the other path's detector
//! port, trading fringe visibility against which-path knowledge while
//! `V^2 + D^2` stays pinned at 1.
//!
//! Layers:
//!
//! * [`wave_optics`]: layout, closed-form far field, analytic V and D,
//!   and a quadrature oracle that rederives the intensities numerically.
//! * [`photon_stats`]: expected count rates, Monte Carlo counting runs,
//!   the fixed-period fringe fit, count-based estimators, and the
//!   beamsplitter correlation test.
//! * [`experiment`]: full measurement sequences, width sweeps, intensity
//!   maps, and consistency flags.
//!
//! Monte Carlo output is a pure function of the seed: every sampling
//! site draws from its own counter-indexed stream, so results do not
//! depend on thread scheduling. The `parallel` feature (on by default)
//! backs the `parallel: bool` arguments with a rayon thread pool;
//! without it they fall back to sequential execution with identical
//! results.

pub mod error;
pub mod exec;
pub mod experiment;
pub mod photon_stats;
pub mod quadrature;
pub mod wave_optics;

pub use error::{Error, Result};
pub use exec::parallel_available;
pub use wave_optics::{Geometry, Path, Port};
