//! Monte Carlo frame/bit error rate sweeps.

use std::fs::File;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use polar_scl::channel::{awgn_add, bpsk_modulate, channel_llr, frame_rng, random_bits};
use polar_scl::decoders::{Decoder, DecoderKind};
use polar_scl::{Construction, DecoderConfig, NodeCaps, PolarCode, QuantSpec};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{config, Result};

/// Frames in the first batch handed to the worker pool; later batches double
/// up to [`MAX_BATCH`]. Batching never changes results because frames are
/// tallied in index order.
const FIRST_BATCH: u64 = 64;
const MAX_BATCH: u64 = 8192;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimJob {
    pub block_length: usize,
    pub k: usize,
    pub design_snr_db: f64,
    pub construction: Construction,
    /// CRC bits inside the `k` information bits.
    pub crc_len: usize,
    pub decoder: DecoderKind,
    pub list_size: usize,
    pub quant: Option<QuantSpec>,
    /// Eb/N0 points in dB; `+inf` simulates a noiseless channel.
    pub snr_db: Vec<f64>,
    pub min_errors: u64,
    pub max_frames: u64,
    /// Stop the sweep after the first point whose FER falls below this.
    pub stop_fer: Option<f64>,
    pub seed: u64,
    /// Worker threads; 0 uses one per core.
    pub workers: usize,
}

impl Default for SimJob {
    fn default() -> Self {
        Self {
            block_length: 512,
            k: 427,
            design_snr_db: 4.0,
            construction: Construction::default(),
            crc_len: 0,
            decoder: DecoderKind::FastSscList,
            list_size: 2,
            quant: None,
            snr_db: vec![4.0],
            min_errors: 100,
            max_frames: 10_000_000,
            stop_fer: None,
            seed: 1,
            workers: 0,
        }
    }
}

impl SimJob {
    pub fn validate(&self) -> Result<()> {
        if self.min_errors == 0 {
            return Err(config("min_errors must be at least 1"));
        }
        if self.max_frames == 0 {
            return Err(config("max_frames must be at least 1"));
        }
        if self.snr_db.is_empty() {
            return Err(config("the SNR list is empty"));
        }
        if let Some(s) = self.snr_db.iter().find(|s| s.is_nan()) {
            return Err(config(format!("invalid SNR point {s}")));
        }
        if self.decoder == DecoderKind::CaScl && self.crc_len == 0 {
            return Err(config("ca-scl needs a CRC (set crc to 8)"));
        }
        Ok(())
    }

    pub fn code(&self) -> Result<PolarCode> {
        Ok(PolarCode::new(self.block_length, self.k, self.crc_len, self.design_snr_db, self.construction)?)
    }

    pub fn decoder(&self) -> Result<Decoder> {
        let config = DecoderConfig {
            list_size: self.list_size,
            use_crc: self.decoder == DecoderKind::CaScl,
            quant: self.quant,
            caps: NodeCaps::default(),
        };
        Ok(Decoder::new(self.decoder, self.code()?, config)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub ebn0_db: f64,
    pub frames: u64,
    pub frame_errors: u64,
    pub bit_errors: u64,
    pub fer: f64,
    pub ber: f64,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    /// Payload bits per frame over which bit errors are counted.
    pub data_bits: usize,
    pub points: Vec<SweepPoint>,
}

/// One CSV row; the column order is fixed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub ebn0_db: f64,
    pub frames: u64,
    pub frame_errors: u64,
    pub bit_errors: u64,
    pub fer: f64,
    pub ber: f64,
}

impl From<&SweepPoint> for CsvRow {
    fn from(p: &SweepPoint) -> Self {
        Self {
            ebn0_db: p.ebn0_db,
            frames: p.frames,
            frame_errors: p.frame_errors,
            bit_errors: p.bit_errors,
            fer: p.fer,
            ber: p.ber,
        }
    }
}

pub const CSV_COLUMNS: [&str; 6] = ["ebn0_db", "frames", "frame_errors", "bit_errors", "fer", "ber"];

/// Transmits one random frame and returns the number of payload bit errors
/// after decoding.
fn simulate_frame(decoder: &Decoder, ebn0_db: f64, rate: f64, seed: u64, index: u64) -> Result<u64> {
    let code = decoder.code();
    let mut rng = frame_rng(seed, ebn0_db.to_bits(), index);
    let data = random_bits(code.data_len(), &mut rng);
    let codeword = code.encode_data(&data)?;
    let frame = awgn_add(&bpsk_modulate(&codeword), ebn0_db, rate, &mut rng);
    let decoded = code.extract_data(&decoder.decode(&channel_llr(&frame))?);
    Ok(decoded.iter().zip(&data).filter(|(a, b)| a != b).count() as u64)
}

pub fn run_sweep(job: &SimJob) -> Result<SweepResult> {
    run_sweep_with(job, |_| {})
}

/// Runs the sweep, calling `on_point` as each SNR point completes.
///
/// Frame `i` of a point draws its data and noise from a generator keyed by
/// `(seed, Eb/N0, i)` and frames are tallied in index order, so results do
/// not depend on the worker count.
pub fn run_sweep_with(job: &SimJob, mut on_point: impl FnMut(&SweepPoint)) -> Result<SweepResult> {
    job.validate()?;
    let decoder = job.decoder()?;
    let code = decoder.code();
    let data_bits = code.data_len();
    // Energy per payload bit: CRC bits count as redundancy.
    let rate = data_bits as f64 / code.len() as f64;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(job.workers).build()?;

    let mut points = Vec::with_capacity(job.snr_db.len());
    for &ebn0_db in &job.snr_db {
        let start = Instant::now();
        let (mut frames, mut frame_errors, mut bit_errors) = (0u64, 0u64, 0u64);
        let mut batch = FIRST_BATCH;
        'point: while frames < job.max_frames && frame_errors < job.min_errors {
            let end = (frames + batch).min(job.max_frames);
            let errors: Vec<u64> = pool.install(|| {
                (frames..end)
                    .into_par_iter()
                    .map(|i| simulate_frame(&decoder, ebn0_db, rate, job.seed, i))
                    .collect::<Result<_>>()
            })?;
            for e in errors {
                frames += 1;
                if e > 0 {
                    frame_errors += 1;
                    bit_errors += e;
                    if frame_errors >= job.min_errors {
                        break 'point;
                    }
                }
            }
            batch = (batch * 2).min(MAX_BATCH);
        }
        let point = SweepPoint {
            ebn0_db,
            frames,
            frame_errors,
            bit_errors,
            fer: frame_errors as f64 / frames as f64,
            ber: bit_errors as f64 / (frames as f64 * data_bits as f64),
            wall_time_s: start.elapsed().as_secs_f64(),
        };
        on_point(&point);
        let stop = job.stop_fer.is_some_and(|limit| point.fer < limit);
        points.push(point);
        if stop {
            break;
        }
    }
    Ok(SweepResult { data_bits, points })
}

/// Writes the sweep as CSV with the columns of [`CSV_COLUMNS`].
pub fn write_csv<W: Write>(result: &SweepResult, out: W) -> Result<()> {
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    writer.write_record(CSV_COLUMNS)?;
    for point in &result.points {
        writer.serialize(CsvRow::from(point))?;
    }
    writer.flush()?;
    Ok(())
}

pub fn emit_csv(result: &SweepResult, path: &Path) -> Result<()> {
    write_csv(result, File::create(path)?)
}

pub fn read_csv(path: &Path) -> Result<Vec<CsvRow>> {
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    if headers.iter().ne(CSV_COLUMNS) {
        return Err(config(format!("unexpected CSV columns {headers:?}")));
    }
    Ok(reader.deserialize().collect::<std::result::Result<_, _>>()?)
}

/// Eb/N0 at which the FER crosses `target`, interpolating linearly in
/// `log10(FER)` between the first bracketing pair of points. Points must be
/// sorted by Eb/N0.
pub fn fer_crossing(points: &[SweepPoint], target: f64) -> Option<f64> {
    points.windows(2).find_map(|w| {
        let (a, b) = (&w[0], &w[1]);
        if a.fer >= target && b.fer < target && b.fer > 0.0 {
            let t = (a.fer.log10() - target.log10()) / (a.fer.log10() - b.fer.log10());
            Some(a.ebn0_db + t * (b.ebn0_db - a.ebn0_db))
        } else {
            None
        }
    })
}

/// Two-proportion z statistic of `e1/n1 - e2/n2` with a pooled variance.
pub fn two_proportion_z(e1: u64, n1: u64, e2: u64, n2: u64) -> f64 {
    let (p1, p2) = (e1 as f64 / n1 as f64, e2 as f64 / n2 as f64);
    let pooled = (e1 + e2) as f64 / (n1 + n2) as f64;
    let se = (pooled * (1.0 - pooled) * (1.0 / n1 as f64 + 1.0 / n2 as f64)).sqrt();
    if se == 0.0 {
        0.0
    } else {
        (p1 - p2) / se
    }
}
