//! Unrolled dataflow schedule of a Fast-SSC-List decoder.
//!
//! Every F, G, Combine, node decoder, sort and multiplexer instance of the
//! decoder becomes one [`ScheduleOp`], replicated per list lane, and is
//! placed as soon as its operands are ready.

use serde::{Deserialize, Serialize};

use crate::code::{NodeKind, TreeNode};
use crate::decoders::candidate_count;
use crate::error::{invalid, Result};

/// Lane `lane` of the output of operation `op`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Operand {
    pub op: usize,
    pub lane: usize,
}

impl Operand {
    fn new(op: usize, lane: usize) -> Self {
        Self { op, lane }
    }
}

/// Where a G block takes its partial sums from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BetaSource {
    /// Bits `start..start + half` of the path register operand.
    Path { start: usize },
    /// A Repetition outcome known ahead of the decision (all zeros or all
    /// ones), used when G is computed preemptively.
    Outcome { bit: u8 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum OpKind {
    /// Loads the channel LLRs. Lane 0: LLRs; lane 1: the empty initial path.
    Load,
    /// Inputs: `[alpha]`.
    F,
    /// Inputs: `[alpha, path]` or `[alpha]` for an [`BetaSource::Outcome`].
    G { beta: BetaSource },
    /// Inputs: `[alpha, path]`. Outputs one lane per candidate, or the new
    /// path directly when `fused` (a single candidate needs no sorting).
    NodeDecode { node: NodeKind, start: usize, len: usize, fused: bool },
    /// Inputs: `num_paths` paths, then one operand per candidate, then one
    /// preemptive G result per candidate when `carried`. Outputs the
    /// surviving paths; `parents[c]` is the path candidate `c` extends.
    Sort { num_paths: usize, parents: Vec<usize>, carried: bool },
    /// Inputs: `[sorted path, old LLR lanes...]`; picks the old lane named by
    /// the sorted path's source.
    Mux,
    /// Inputs: `[path]`; combines bits `start..start + len` in place.
    Combine { start: usize, len: usize },
    /// Inputs: every path; emits the ranked list.
    Output,
}

impl OpKind {
    pub fn name(&self) -> &'static str {
        match self {
            OpKind::Load => "load",
            OpKind::F => "f",
            OpKind::G { .. } => "g",
            OpKind::NodeDecode { node, .. } => match node {
                NodeKind::Rate0 => "rate0",
                NodeKind::Rate1 => "rate1",
                NodeKind::Repetition => "repetition",
                NodeKind::Spc => "spc",
            },
            OpKind::Sort { .. } => "sort",
            OpKind::Mux => "mux",
            OpKind::Combine { .. } => "combine",
            OpKind::Output => "output",
        }
    }
}

/// Storage produced by an operation, summed over its output lanes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueShape {
    pub channel_llrs: usize,
    pub llrs: usize,
    pub bits: usize,
    pub metrics: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleOp {
    pub id: usize,
    pub kind: OpKind,
    /// List lane served by the operation (0 for shared operations).
    pub lane: usize,
    /// LLR or bit lanes processed.
    pub width: usize,
    pub start_cycle: u64,
    pub duration_cycles: u64,
    pub inputs: Vec<Operand>,
    pub output: ValueShape,
}

impl ScheduleOp {
    pub fn finish_cycle(&self) -> u64 {
        self.start_cycle + self.duration_cycles
    }
}

/// Cycles taken by each block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCosts {
    pub load: u64,
    pub f: u64,
    pub g: u64,
    pub combine: u64,
    pub sort: u64,
    pub mux: u64,
    pub output: u64,
    pub rate0: u64,
    pub rate1: u64,
    pub repetition: u64,
    pub spc: u64,
}

impl Default for CycleCosts {
    /// One cycle per block, except the SPC decoder which is pipelined over two.
    fn default() -> Self {
        Self { load: 1, f: 1, g: 1, combine: 1, sort: 1, mux: 1, output: 1, rate0: 1, rate1: 1, repetition: 1, spc: 2 }
    }
}

impl CycleCosts {
    pub fn of(&self, kind: &OpKind) -> u64 {
        match kind {
            OpKind::Load => self.load,
            OpKind::F => self.f,
            OpKind::G { .. } => self.g,
            OpKind::NodeDecode { node, .. } => match node {
                NodeKind::Rate0 => self.rate0,
                NodeKind::Rate1 => self.rate1,
                NodeKind::Repetition => self.repetition,
                NodeKind::Spc => self.spc,
            },
            OpKind::Sort { .. } => self.sort,
            OpKind::Mux => self.mux,
            OpKind::Combine { .. } => self.combine,
            OpKind::Output => self.output,
        }
    }

    fn validate(&self) -> Result<()> {
        let all = [
            self.load,
            self.f,
            self.g,
            self.combine,
            self.sort,
            self.mux,
            self.output,
            self.rate0,
            self.rate1,
            self.repetition,
            self.spc,
        ];
        if all.contains(&0) {
            return Err(invalid("every block needs a cycle cost of at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PipelineMode {
    /// Registers at every cycle boundary; a frame enters every cycle.
    Deep,
    /// A frame enters every `initiation_interval` cycles and registers are
    /// shared by the values of consecutive frames.
    Partial,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub initiation_interval: u64,
    pub clock_hz: f64,
    pub costs: CycleCosts,
    pub mode: PipelineMode,
}

impl PipelineConfig {
    pub fn deep(clock_hz: f64) -> Self {
        Self { initiation_interval: 1, clock_hz, costs: CycleCosts::default(), mode: PipelineMode::Deep }
    }

    pub fn partial(initiation_interval: u64, clock_hz: f64) -> Self {
        Self { initiation_interval, clock_hz, costs: CycleCosts::default(), mode: PipelineMode::Partial }
    }

    /// Deep pipelining for `I = 1`, partial otherwise.
    pub fn with_interval(initiation_interval: u64, clock_hz: f64) -> Self {
        if initiation_interval == 1 {
            Self::deep(clock_hz)
        } else {
            Self::partial(initiation_interval, clock_hz)
        }
    }

    /// Cycles between frame injections.
    pub fn interval(&self) -> u64 {
        match self.mode {
            PipelineMode::Deep => 1,
            PipelineMode::Partial => self.initiation_interval,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.initiation_interval == 0 {
            return Err(invalid("initiation interval must be at least 1"));
        }
        if self.clock_hz.is_nan() || self.clock_hz <= 0.0 {
            return Err(invalid(format!("clock frequency must be positive, got {}", self.clock_hz)));
        }
        self.costs.validate()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub block_length: usize,
    pub list_size: usize,
    pub ops: Vec<ScheduleOp>,
}

impl Schedule {
    /// Cycle at which the output of a frame injected at cycle 0 is available.
    pub fn latency_cycles(&self) -> u64 {
        self.ops.iter().filter(|op| op.kind == OpKind::Output).map(ScheduleOp::finish_cycle).max().unwrap_or(0)
    }

    pub fn count(&self, name: &str) -> usize {
        self.ops.iter().filter(|op| op.kind.name() == name).count()
    }

    /// Checks the dataflow ordering: operands come from earlier operations
    /// that finish no later than the reader starts.
    pub fn validate(&self) -> Result<()> {
        for (i, op) in self.ops.iter().enumerate() {
            if op.id != i || op.duration_cycles == 0 {
                return Err(invalid(format!("malformed operation {i}")));
            }
            for input in &op.inputs {
                let Some(src) = self.ops.get(input.op).filter(|_| input.op < i) else {
                    return Err(invalid(format!("operation {i} reads from operation {} out of order", input.op)));
                };
                if src.finish_cycle() > op.start_cycle {
                    return Err(invalid(format!(
                        "operation {i} starts at {} before operand {} finishes at {}",
                        op.start_cycle,
                        input.op,
                        src.finish_cycle()
                    )));
                }
            }
        }
        Ok(())
    }
}

struct Compiler<'a> {
    costs: &'a CycleCosts,
    list_size: usize,
    ops: Vec<ScheduleOp>,
    /// Path registers of the current list lanes.
    paths: Vec<Operand>,
    /// Path register length in bits.
    path_bits: usize,
    /// LLR vectors of ancestors still waiting for their G step.
    pending: Vec<Vec<Operand>>,
}

impl Compiler<'_> {
    fn push(&mut self, kind: OpKind, lane: usize, width: usize, inputs: Vec<Operand>, output: ValueShape) -> usize {
        let id = self.ops.len();
        let start_cycle = inputs.iter().map(|i| self.ops[i.op].finish_cycle()).max().unwrap_or(0);
        let duration_cycles = self.costs.of(&kind);
        self.ops.push(ScheduleOp { id, kind, lane, width, start_cycle, duration_cycles, inputs, output });
        id
    }

    fn lane(store: &[Operand], j: usize) -> Operand {
        store[if store.len() == 1 { 0 } else { j }]
    }

    /// Node decoders on every lane followed by the L-best sort. `carried`
    /// holds one preemptive G result per candidate, or is empty.
    fn leaf(&mut self, kind: NodeKind, start: usize, len: usize, alpha: &[Operand], carried: Vec<Operand>) {
        let num_paths = self.paths.len();
        let per_path = candidate_count(kind, len, self.list_size);
        let total = num_paths * per_path;
        let new_bits = self.path_bits + len;
        if total == 1 {
            let inputs = vec![Self::lane(alpha, 0), self.paths[0]];
            let shape = ValueShape { bits: new_bits, metrics: 1, ..Default::default() };
            let op = self.push(OpKind::NodeDecode { node: kind, start, len, fused: true }, 0, len, inputs, shape);
            self.paths = vec![Operand::new(op, 0)];
            self.path_bits = new_bits;
            return;
        }
        let mut candidates = Vec::with_capacity(total);
        let mut parents = Vec::with_capacity(total);
        for p in 0..num_paths {
            let inputs = vec![Self::lane(alpha, p), self.paths[p]];
            let shape = ValueShape { bits: per_path * len, metrics: per_path, ..Default::default() };
            let op = self.push(OpKind::NodeDecode { node: kind, start, len, fused: false }, p, len, inputs, shape);
            for c in 0..per_path {
                candidates.push(Operand::new(op, c));
                parents.push(p);
            }
        }
        let survivors = total.min(self.list_size);
        let carried_llrs = if carried.is_empty() { 0 } else { self.ops[carried[0].op].width };
        let select_bits = usize::BITS as usize - (num_paths - 1).leading_zeros() as usize;
        let shape = ValueShape {
            llrs: survivors * carried_llrs,
            bits: survivors * (new_bits + select_bits),
            metrics: survivors,
            ..Default::default()
        };
        let kind = OpKind::Sort { num_paths, parents, carried: !carried.is_empty() };
        let mut inputs = self.paths.clone();
        inputs.extend(candidates);
        inputs.extend(carried);
        let sort = self.push(kind, 0, total, inputs, shape);
        self.paths = (0..survivors).map(|j| Operand::new(sort, j)).collect();
        self.path_bits = new_bits;

        // Re-index every multi-lane LLR vector still needed by a later G.
        for s in 0..self.pending.len() {
            let old = self.pending[s].clone();
            if old.len() == 1 {
                continue;
            }
            let width = self.ops[old[0].op].width;
            let lanes = (0..survivors)
                .map(|j| {
                    let mut inputs = vec![Operand::new(sort, j)];
                    inputs.extend(&old);
                    let shape = ValueShape { llrs: width, ..Default::default() };
                    Operand::new(self.push(OpKind::Mux, j, width, inputs, shape), 0)
                })
                .collect();
            self.pending[s] = lanes;
        }
    }

    fn node(&mut self, node: &TreeNode, start: usize, alpha: Vec<Operand>) {
        match node {
            TreeNode::Leaf { kind, len } => self.leaf(*kind, start, *len, &alpha, Vec::new()),
            TreeNode::Branch { len, left, right } => {
                let half = len / 2;
                let shape = ValueShape { llrs: half, ..Default::default() };
                let left_alpha: Vec<Operand> = alpha
                    .iter()
                    .enumerate()
                    .map(|(j, &a)| Operand::new(self.push(OpKind::F, j, half, vec![a], shape), 0))
                    .collect();
                let preemptive = matches!(**left, TreeNode::Leaf { kind: NodeKind::Repetition, .. })
                    && self.paths.len() * 2 <= self.list_size;
                let right_alpha = if preemptive {
                    // Both Repetition outcomes survive the sort, so G runs on
                    // each outcome before the decision is known.
                    let mut carried = Vec::with_capacity(2 * self.paths.len());
                    for p in 0..self.paths.len() {
                        for bit in 0..2u8 {
                            let kind = OpKind::G { beta: BetaSource::Outcome { bit } };
                            let op = self.push(kind, p, half, vec![Self::lane(&alpha, p)], shape);
                            carried.push(Operand::new(op, 0));
                        }
                    }
                    self.leaf(NodeKind::Repetition, start, half, &left_alpha, carried);
                    self.paths.clone()
                } else {
                    self.pending.push(alpha);
                    self.node(left, start, left_alpha);
                    let alpha = self.pending.pop().expect("pushed above");
                    (0..self.paths.len())
                        .map(|j| {
                            let kind = OpKind::G { beta: BetaSource::Path { start } };
                            let inputs = vec![Self::lane(&alpha, j), self.paths[j]];
                            Operand::new(self.push(kind, j, half, inputs, shape), 0)
                        })
                        .collect()
                };
                self.node(right, start + half, right_alpha);
                let shape = ValueShape { bits: self.path_bits, metrics: 1, ..Default::default() };
                self.paths = (0..self.paths.len())
                    .map(|j| {
                        let kind = OpKind::Combine { start, len: *len };
                        Operand::new(self.push(kind, j, *len, vec![self.paths[j]], shape), 0)
                    })
                    .collect();
            }
        }
    }
}

/// Compiles `tree` into an as-soon-as-possible unrolled schedule for list
/// size `list_size`.
pub fn unroll_schedule(tree: &TreeNode, list_size: usize, config: &PipelineConfig) -> Result<Schedule> {
    config.validate()?;
    if list_size == 0 {
        return Err(invalid("list size must be at least 1"));
    }
    let block_length = tree.len();
    let mut compiler = Compiler {
        costs: &config.costs,
        list_size,
        ops: Vec::new(),
        paths: Vec::new(),
        path_bits: 0,
        pending: Vec::new(),
    };
    let shape = ValueShape { channel_llrs: block_length, metrics: 1, ..Default::default() };
    let load = compiler.push(OpKind::Load, 0, block_length, Vec::new(), shape);
    compiler.paths = vec![Operand::new(load, 1)];
    compiler.node(tree, 0, vec![Operand::new(load, 0)]);
    let inputs = compiler.paths.clone();
    compiler.push(OpKind::Output, 0, block_length, inputs, ValueShape::default());
    Ok(Schedule { block_length, list_size, ops: compiler.ops })
}
