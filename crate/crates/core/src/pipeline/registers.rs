//! Register estimate of an unrolled schedule.

use serde::{Deserialize, Serialize};

use super::schedule::{OpKind, PipelineConfig, Schedule, ValueShape};
use crate::quantize::QuantSpec;

/// Cycles each operation's output must be held, counted from the cycle after
/// it is produced through the last cycle it is read. Zero for values nobody
/// reads and for the output, which leaves the pipeline.
pub fn lifetimes(schedule: &Schedule) -> Vec<u64> {
    let mut last_read = vec![None::<u64>; schedule.ops.len()];
    for op in &schedule.ops {
        for input in &op.inputs {
            let slot = &mut last_read[input.op];
            *slot = Some(slot.map_or(op.start_cycle, |c: u64| c.max(op.start_cycle)));
        }
    }
    schedule
        .ops
        .iter()
        .zip(last_read)
        .map(|(op, read)| match (read, &op.kind) {
            (_, OpKind::Output) | (None, _) => 0,
            (Some(read), _) => read + 1 - op.finish_cycle(),
        })
        .collect()
}

/// Register copies an operation needs so that consecutive frames, injected
/// every `interval` cycles, never overwrite a value still being read.
pub fn register_slots(lifetime: u64, interval: u64) -> u64 {
    lifetime.div_ceil(interval.max(1))
}

/// Width in bits of one copy of a value.
pub fn shape_bits(shape: &ValueShape, quant: QuantSpec) -> u64 {
    (shape.channel_llrs * quant.qc() as usize
        + shape.llrs * quant.qi() as usize
        + shape.bits
        + shape.metrics * quant.pm_bits() as usize) as u64
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegisterEstimate {
    pub total_bits: u64,
    /// Registered bits per operation, in schedule order.
    pub per_op: Vec<u64>,
    pub slots: Vec<u64>,
}

/// Total pipeline register bits for the given quantization and pipelining
/// mode.
pub fn register_estimate(schedule: &Schedule, quant: QuantSpec, config: &PipelineConfig) -> RegisterEstimate {
    let interval = config.interval();
    let slots: Vec<u64> = lifetimes(schedule).into_iter().map(|l| register_slots(l, interval)).collect();
    let per_op: Vec<u64> = schedule.ops.iter().zip(&slots).map(|(op, &s)| shape_bits(&op.output, quant) * s).collect();
    RegisterEstimate { total_bits: per_op.iter().sum(), per_op, slots }
}
