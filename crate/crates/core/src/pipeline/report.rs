//! Throughput, latency and area figures of a pipelined decoder.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::registers::register_estimate;
use super::schedule::{PipelineConfig, Schedule};
use crate::code::PolarCode;
use crate::error::{invalid, Result};
use crate::quantize::QuantSpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub block_length: usize,
    pub info_length: usize,
    pub list_size: usize,
    pub quant: QuantSpec,
    pub clock_hz: f64,
    pub initiation_interval: u64,
    pub latency_cycles: u64,
    pub latency_seconds: f64,
    pub coded_throughput_bps: f64,
    pub info_throughput_bps: f64,
    pub register_bits_estimate: u64,
    pub ops_count: usize,
}

/// `(latency in seconds, coded bit/s, information bit/s)`.
pub fn timing(
    latency_cycles: u64,
    block_length: usize,
    info_length: usize,
    config: &PipelineConfig,
) -> (f64, f64, f64) {
    let frames_per_second = config.clock_hz / config.interval() as f64;
    (
        latency_cycles as f64 / config.clock_hz,
        block_length as f64 * frames_per_second,
        info_length as f64 * frames_per_second,
    )
}

pub fn report(
    schedule: &Schedule,
    config: &PipelineConfig,
    code: &PolarCode,
    quant: QuantSpec,
) -> Result<PipelineReport> {
    config.validate()?;
    if schedule.block_length != code.len() {
        return Err(invalid(format!(
            "schedule is for length {}, code has length {}",
            schedule.block_length,
            code.len()
        )));
    }
    let latency_cycles = schedule.latency_cycles();
    let (latency_seconds, coded, info) = timing(latency_cycles, code.len(), code.k(), config);
    Ok(PipelineReport {
        block_length: code.len(),
        info_length: code.k(),
        list_size: schedule.list_size,
        quant,
        clock_hz: config.clock_hz,
        initiation_interval: config.interval(),
        latency_cycles,
        latency_seconds,
        coded_throughput_bps: coded,
        info_throughput_bps: info,
        register_bits_estimate: register_estimate(schedule, quant, config).total_bits,
        ops_count: schedule.ops.len(),
    })
}

impl PipelineReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

impl fmt::Display for PipelineReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = [
            ("Code", format!("({}, {})", self.block_length, self.info_length)),
            ("List size", self.list_size.to_string()),
            ("Quantization", self.quant.to_string()),
            ("Frequency [MHz]", format!("{:.0}", self.clock_hz / 1e6)),
            ("Initiation interval [cycles]", self.initiation_interval.to_string()),
            ("Latency [cycles]", self.latency_cycles.to_string()),
            ("Latency [us]", format!("{:.2}", self.latency_seconds * 1e6)),
            ("Coded throughput [Gbps]", format!("{:.2}", self.coded_throughput_bps / 1e9)),
            ("Info. throughput [Gbps]", format!("{:.2}", self.info_throughput_bps / 1e9)),
            ("Register bits (estimate)", self.register_bits_estimate.to_string()),
            ("Operations", self.ops_count.to_string()),
        ];
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let value_width = rows.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
        let rule = format!("+-{}-+-{}-+", "-".repeat(width), "-".repeat(value_width));
        writeln!(f, "{rule}")?;
        for (k, v) in rows {
            writeln!(f, "| {k:<width$} | {v:>value_width$} |")?;
        }
        write!(f, "{rule}")
    }
}
