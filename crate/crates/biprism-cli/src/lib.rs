//! Config handling, output formatting, and command bodies behind the
//! `biprism` binary. Split out as a library so tests can exercise the
//! pieces directly.

pub mod commands;
pub mod config;
pub mod output;
pub mod units;
