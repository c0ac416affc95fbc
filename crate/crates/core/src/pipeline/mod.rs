//! Unrolled, pipelined hardware model of the Fast-SSC-List decoder: schedule
//! compiler, register and throughput estimates, and a cycle-level simulator.

mod registers;
mod report;
mod schedule;
mod sim;

pub use registers::{lifetimes, register_estimate, register_slots, shape_bits, RegisterEstimate};
pub use report::{report, timing, PipelineReport};
pub use schedule::{
    unroll_schedule, BetaSource, CycleCosts, OpKind, Operand, PipelineConfig, PipelineMode, Schedule, ScheduleOp,
    ValueShape,
};
pub use sim::{injection_every, simulate_pipeline, PipelineOutput};
