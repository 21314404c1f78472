use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use biprism_cli::commands;
use biprism_cli::units::parse_length;

/// Two-path interferometer with a grating recombiner: analytic
/// complementarity values, Monte Carlo counting runs, width sweeps,
/// correlation tests, and far-field maps.
#[derive(Parser)]
#[command(name = "biprism", version, arg_required_else_help = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn length_arg(text: &str) -> Result<f64, String> {
    parse_length(text)
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form visibility, distinguishability, and layout constants.
    Analytic {
        /// TOML run configuration; defaults apply when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Override the slit width, e.g. "80um".
        #[arg(long, value_parser = length_arg)]
        slit_width: Option<f64>,
        /// Write a JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One Monte Carlo displacement scan plus fringe fit; writes CSV.
    Scan {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_parser = length_arg)]
        slit_width: Option<f64>,
        /// Root seed for the run.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV output path (default scan.csv).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full sweep over the configured slit widths; writes per-width scan
    /// CSVs and summary.json into a directory.
    Campaign {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output directory (default campaign/).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Beamsplitter correlation run: anticorrelation parameter alpha.
    Hbt {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Override the configured trigger count.
        #[arg(long)]
        triggers: Option<u64>,
        /// Write a JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Far-field intensity over frequency and displacement; writes CSV.
    Map {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Evaluate by numeric quadrature instead of the closed form.
        #[arg(long)]
        oracle: bool,
        /// CSV output path (default map.csv).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analytic {
            config,
            slit_width,
            out,
        } => commands::analytic(config.as_deref(), slit_width, out.as_deref()),
        Command::Scan {
            config,
            slit_width,
            seed,
            out,
        } => commands::scan(config.as_deref(), slit_width, seed, out.as_deref()),
        Command::Campaign { config, seed, out } => {
            commands::campaign(config.as_deref(), seed, out.as_deref())
        }
        Command::Hbt {
            config,
            seed,
            triggers,
            out,
        } => commands::hbt(config.as_deref(), seed, triggers, out.as_deref()),
        Command::Map {
            config,
            oracle,
            out,
        } => commands::map(config.as_deref(), oracle, out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
