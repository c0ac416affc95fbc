//! Flat key/value settings shared by the command line and JSON config files.
//!
//! Every flag has a config-file key of the same name with underscores
//! (`--list-size` is `list_size`). Flags override file values; anything left
//! unset falls back to the job defaults.

use std::path::{Path, PathBuf};

use clap::Args;
use polar_scl::decoders::DecoderKind;
use polar_scl::{Construction, QuantSpec};
use serde::Deserialize;

use crate::error::{config, Result};
use crate::report::ReportJob;
use crate::sweep::SimJob;

#[derive(Debug, Clone, Default, PartialEq, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    /// Block length and information length, `N:k`.
    #[arg(long)]
    pub code: Option<String>,
    /// Design Eb/N0 of the code construction, dB.
    #[arg(long)]
    pub design_snr: Option<f64>,
    /// `gaussian_approximation` (`ga`) or `bhattacharyya`.
    #[arg(long)]
    pub construction: Option<String>,
    /// `sc`, `scl`, `ca-scl` or `fast-ssc-list`.
    #[arg(long)]
    pub decoder: Option<String>,
    #[arg(long)]
    pub list_size: Option<usize>,
    /// CRC length in bits (0 or 8).
    #[arg(long)]
    pub crc: Option<usize>,
    /// Fixed-point format `Qi.Qc.Qf`, or `float`.
    #[arg(long)]
    pub quant: Option<String>,
    /// Eb/N0 points: `a:b:step`, a single value, or `inf`.
    #[arg(long)]
    pub snr: Option<String>,
    #[arg(long)]
    pub min_errors: Option<u64>,
    #[arg(long)]
    pub max_frames: Option<u64>,
    /// End the sweep after the first point with a FER below this value.
    #[arg(long)]
    pub stop_fer: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads (0: one per core).
    #[arg(long)]
    pub workers: Option<usize>,
    /// Output file (CSV for sweeps, JSON for reports).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Initiation interval in cycles; 1 selects deep pipelining.
    #[arg(long)]
    pub interval: Option<u64>,
    #[arg(long)]
    pub clock_mhz: Option<f64>,
}

impl Settings {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| config(format!("{}: {e}", path.display())))
    }

    /// Field-wise `self` if set, else `fallback`.
    pub fn or(self, fallback: Settings) -> Settings {
        Settings {
            code: self.code.or(fallback.code),
            design_snr: self.design_snr.or(fallback.design_snr),
            construction: self.construction.or(fallback.construction),
            decoder: self.decoder.or(fallback.decoder),
            list_size: self.list_size.or(fallback.list_size),
            crc: self.crc.or(fallback.crc),
            quant: self.quant.or(fallback.quant),
            snr: self.snr.or(fallback.snr),
            min_errors: self.min_errors.or(fallback.min_errors),
            max_frames: self.max_frames.or(fallback.max_frames),
            stop_fer: self.stop_fer.or(fallback.stop_fer),
            seed: self.seed.or(fallback.seed),
            workers: self.workers.or(fallback.workers),
            out: self.out.or(fallback.out),
            interval: self.interval.or(fallback.interval),
            clock_mhz: self.clock_mhz.or(fallback.clock_mhz),
        }
    }

    fn code_params(&self, default: (usize, usize)) -> Result<(usize, usize)> {
        self.code.as_deref().map_or(Ok(default), parse_code)
    }

    fn construction(&self, default: Construction) -> Result<Construction> {
        match &self.construction {
            None => Ok(default),
            Some(s) => s.parse().map_err(|e| config(format!("{e}"))),
        }
    }

    pub fn sim_job(&self) -> Result<SimJob> {
        let d = SimJob::default();
        let (block_length, k) = self.code_params((d.block_length, d.k))?;
        let decoder = match &self.decoder {
            None => d.decoder,
            Some(s) => s.parse::<DecoderKind>().map_err(|e| config(format!("{e}")))?,
        };
        let crc_len = self.crc.unwrap_or(if decoder == DecoderKind::CaScl { 8 } else { 0 });
        let job = SimJob {
            block_length,
            k,
            design_snr_db: self.design_snr.unwrap_or(d.design_snr_db),
            construction: self.construction(d.construction)?,
            crc_len,
            decoder,
            list_size: self.list_size.unwrap_or(d.list_size),
            quant: self.quant.as_deref().map_or(Ok(d.quant), parse_quant)?,
            snr_db: self.snr.as_deref().map_or(Ok(d.snr_db), parse_snr_list)?,
            min_errors: self.min_errors.unwrap_or(d.min_errors),
            max_frames: self.max_frames.unwrap_or(d.max_frames),
            stop_fer: self.stop_fer.or(d.stop_fer),
            seed: self.seed.unwrap_or(d.seed),
            workers: self.workers.unwrap_or(d.workers),
        };
        job.validate()?;
        Ok(job)
    }

    pub fn report_job(&self) -> Result<ReportJob> {
        let d = ReportJob::default();
        let (block_length, k) = self.code_params((d.block_length, d.k))?;
        let quant = match self.quant.as_deref().map(parse_quant).transpose()? {
            Some(Some(q)) => q,
            Some(None) => return Err(config("a pipeline report needs a fixed-point format")),
            None => d.quant,
        };
        let initiation_interval = self.interval.unwrap_or(d.initiation_interval);
        if initiation_interval == 0 {
            return Err(config("interval must be at least 1"));
        }
        Ok(ReportJob {
            block_length,
            k,
            design_snr_db: self.design_snr.unwrap_or(d.design_snr_db),
            construction: self.construction(d.construction)?,
            crc_len: self.crc.unwrap_or(d.crc_len),
            list_size: self.list_size.unwrap_or(d.list_size),
            initiation_interval,
            clock_hz: self.clock_mhz.map_or(d.clock_hz, |mhz| mhz * 1e6),
            quant,
            caps: d.caps,
        })
    }
}

/// Parses `N:k`.
pub fn parse_code(s: &str) -> Result<(usize, usize)> {
    let parsed = s.split_once(':').and_then(|(n, k)| Some((n.trim().parse().ok()?, k.trim().parse().ok()?)));
    parsed.ok_or_else(|| config(format!("code must be `N:k`, got `{s}`")))
}

/// Parses `Qi.Qc.Qf`; `float` or `none` selects floating point.
pub fn parse_quant(s: &str) -> Result<Option<QuantSpec>> {
    match s {
        "float" | "none" => Ok(None),
        _ => s.parse().map(Some).map_err(|e| config(format!("{e}"))),
    }
}

fn parse_db(s: &str) -> Result<f64> {
    match s.trim() {
        "inf" | "+inf" => Ok(f64::INFINITY),
        t => t.parse().map_err(|_| config(format!("invalid Eb/N0 value `{t}`"))),
    }
}

/// Parses `a:b:step` (inclusive of `b`), a single value, or `inf`.
pub fn parse_snr_list(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts[..] {
        [single] => Ok(vec![parse_db(single)?]),
        [a, b, step] => {
            let (a, b, step) = (parse_db(a)?, parse_db(b)?, parse_db(step)?);
            if !(a.is_finite() && b.is_finite() && step > 0.0 && step.is_finite() && b >= a) {
                return Err(config(format!("invalid SNR range `{s}`")));
            }
            let count = ((b - a) / step + 1e-9).floor() as usize + 1;
            // Round to 1e-9 dB so that 0.1 steps print as typed.
            Ok((0..count).map(|i| ((a + i as f64 * step) * 1e9).round() / 1e9).collect())
        }
        _ => Err(config(format!("SNR must be `a:b:step` or a single value, got `{s}`"))),
    }
}
