use polar_scl::code::{build_decoder_tree, TreeCensus};
use polar_scl::pipeline::{report, unroll_schedule, PipelineConfig, PipelineReport, Schedule};
use polar_scl::{Construction, NodeCaps, PolarCode, QuantSpec};
use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJob {
    pub block_length: usize,
    pub k: usize,
    pub design_snr_db: f64,
    pub construction: Construction,
    pub crc_len: usize,
    pub list_size: usize,
    pub initiation_interval: u64,
    pub clock_hz: f64,
    pub quant: QuantSpec,
    pub caps: NodeCaps,
}

impl Default for ReportJob {
    fn default() -> Self {
        Self {
            block_length: 512,
            k: 427,
            design_snr_db: 4.0,
            construction: Construction::default(),
            crc_len: 0,
            list_size: 2,
            initiation_interval: 20,
            clock_hz: 468e6,
            quant: QuantSpec::DEFAULT,
            caps: NodeCaps::default(),
        }
    }
}

impl ReportJob {
    pub fn code(&self) -> Result<PolarCode> {
        Ok(PolarCode::new(self.block_length, self.k, self.crc_len, self.design_snr_db, self.construction)?)
    }

    pub fn pipeline_config(&self) -> PipelineConfig {
        PipelineConfig::with_interval(self.initiation_interval, self.clock_hz)
    }

    pub fn schedule(&self) -> Result<Schedule> {
        let tree = build_decoder_tree(&self.code()?, &self.caps);
        Ok(unroll_schedule(&tree, self.list_size, &self.pipeline_config())?)
    }

    pub fn census(&self) -> Result<TreeCensus> {
        Ok(build_decoder_tree(&self.code()?, &self.caps).census())
    }
}

/// Builds the decoder tree, unrolls it and reports throughput, latency and
/// register cost.
pub fn run_report(job: &ReportJob) -> Result<PipelineReport> {
    let config = job.pipeline_config();
    Ok(report(&job.schedule()?, &config, &job.code()?, job.quant)?)
}
