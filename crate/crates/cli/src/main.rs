use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use polar_scl_cli::{emit_csv, run_report, run_sweep_with, write_csv, Settings};

#[derive(Parser)]
#[command(name = "polar-scl", version, about = "Polar code list decoding: error-rate sweeps and pipeline reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo FER/BER sweep over Eb/N0; CSV to --out or stdout.
    Sweep(CommonArgs),
    /// Latency, throughput and register estimate of the unrolled decoder.
    Report {
        #[command(flatten)]
        args: CommonArgs,
        /// Print JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Leaf census of the decoder tree.
    Tree(CommonArgs),
}

#[derive(clap::Args)]
struct CommonArgs {
    /// JSON file of settings; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    settings: Settings,
}

impl CommonArgs {
    fn resolve(self) -> Result<Settings> {
        Ok(match &self.config {
            Some(path) => self.settings.or(Settings::from_file(path)?),
            None => self.settings,
        })
    }
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Sweep(args) => {
            let settings = args.resolve()?;
            let job = settings.sim_job()?;
            eprintln!(
                "# ({}, {}) {} L={} crc={} quant={}",
                job.block_length,
                job.k,
                job.decoder,
                job.list_size,
                job.crc_len,
                job.quant.map_or("float".to_string(), |q| q.to_string())
            );
            let result = run_sweep_with(&job, |p| {
                eprintln!(
                    "Eb/N0 {:6.2} dB  frames {:>9}  frame errors {:>5}  FER {:.3e}  BER {:.3e}  ({:.1} s)",
                    p.ebn0_db, p.frames, p.frame_errors, p.fer, p.ber, p.wall_time_s
                );
            })?;
            match &settings.out {
                Some(path) => emit_csv(&result, path).with_context(|| format!("writing {}", path.display()))?,
                None => write_csv(&result, std::io::stdout().lock())?,
            }
        }
        Command::Report { args, json } => {
            let settings = args.resolve()?;
            let report = run_report(&settings.report_job()?)?;
            let text = report.to_json()?;
            if let Some(path) = &settings.out {
                std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            }
            let mut out = std::io::stdout().lock();
            if json {
                writeln!(out, "{text}")?;
            } else {
                writeln!(out, "{report}")?;
            }
        }
        Command::Tree(args) => {
            let job = args.resolve()?.report_job()?;
            println!("({}, {}) design Eb/N0 {} dB, {}", job.block_length, job.k, job.design_snr_db, job.construction);
            println!("{}", job.census()?);
        }
    }
    Ok(())
}
