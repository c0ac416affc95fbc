//! Cycle-level simulation of the unrolled pipeline.
//!
//! Every operation output lives in a small ring of registers, one copy per
//! slot as counted by the register estimate. Frame `f` uses slot
//! `f mod slots`; results are written at the end of the operation's last
//! cycle and reads check that the register still holds the reader's frame.

use std::collections::BTreeMap;
use std::rc::Rc;

use super::registers::{lifetimes, register_slots};
use super::schedule::{BetaSource, OpKind, PipelineConfig, Schedule};
use crate::code::combine_in_place;
use crate::decoders::{decode_node, sort_select, Arith, ListEntry};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone)]
enum Value<L, M> {
    Llrs(Vec<L>),
    Path { bits: Vec<u8>, pm: M, source: usize, carried: Option<Vec<L>> },
    Candidate { beta: Vec<u8>, pm: M },
}

impl<L, M: Copy> Value<L, M> {
    fn llrs(&self) -> &[L] {
        match self {
            Value::Llrs(v) => v,
            Value::Path { carried: Some(v), .. } => v,
            _ => panic!("operand holds no LLRs"),
        }
    }

    fn path(&self) -> (&[u8], M, usize) {
        match self {
            Value::Path { bits, pm, source, .. } => (bits, *pm, *source),
            _ => panic!("operand is not a path"),
        }
    }

    fn candidate(&self) -> (&[u8], M) {
        match self {
            Value::Candidate { beta, pm } => (beta, *pm),
            _ => panic!("operand is not a candidate"),
        }
    }
}

type Lanes<L, M> = Rc<Vec<Value<L, M>>>;
/// A register slot: the frame that wrote it and the value.
type Tagged<A> = (usize, Lanes<<A as Arith>::Llr, <A as Arith>::Metric>);
/// A write in flight: op, frame and value.
type Write<A> = (usize, usize, Lanes<<A as Arith>::Llr, <A as Arith>::Metric>);

/// A decoded frame leaving the pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOutput<M> {
    pub frame: usize,
    pub injected_at: u64,
    /// Cycle at the end of which the list is available.
    pub emitted_at: u64,
    pub list: Vec<ListEntry<M>>,
}

/// Injection cycles `0, interval, 2 interval, ...` for `frames` frames.
pub fn injection_every(frames: usize, interval: u64) -> Vec<u64> {
    (0..frames as u64).map(|f| f * interval).collect()
}

fn execute<A: Arith>(
    arith: &A,
    list_size: usize,
    kind: &OpKind,
    inputs: &[&Value<A::Llr, A::Metric>],
    channel: &[A::Llr],
) -> Vec<Value<A::Llr, A::Metric>> {
    match kind {
        OpKind::Load => vec![
            Value::Llrs(channel.to_vec()),
            Value::Path { bits: Vec::new(), pm: arith.zero_metric(), source: 0, carried: None },
        ],
        OpKind::F => {
            let a = inputs[0].llrs();
            let half = a.len() / 2;
            vec![Value::Llrs((0..half).map(|i| arith.f(a[i], a[i + half])).collect())]
        }
        OpKind::G { beta } => {
            let a = inputs[0].llrs();
            let half = a.len() / 2;
            let out = match *beta {
                BetaSource::Path { start } => {
                    let bits = &inputs[1].path().0[start..start + half];
                    (0..half).map(|i| arith.g(a[i], a[i + half], bits[i])).collect()
                }
                BetaSource::Outcome { bit } => (0..half).map(|i| arith.g(a[i], a[i + half], bit)).collect(),
            };
            vec![Value::Llrs(out)]
        }
        OpKind::NodeDecode { node, fused, .. } => {
            let alpha = inputs[0].llrs();
            let (bits, pm, _) = inputs[1].path();
            let candidates = decode_node(arith, *node, alpha, pm, list_size);
            if *fused {
                let cand = &candidates[0];
                let mut pms = [cand.pm];
                arith.normalize(&mut pms);
                let mut bits = bits.to_vec();
                bits.extend(&cand.beta);
                vec![Value::Path { bits, pm: pms[0], source: 0, carried: None }]
            } else {
                candidates.into_iter().map(|c| Value::Candidate { beta: c.beta, pm: c.pm }).collect()
            }
        }
        OpKind::Sort { num_paths, parents, carried } => {
            let total = parents.len();
            let candidates = &inputs[*num_paths..num_paths + total];
            let pms: Vec<A::Metric> = candidates.iter().map(|c| c.candidate().1).collect();
            let keep = sort_select(&pms, list_size);
            let mut kept_pms: Vec<A::Metric> = keep.iter().map(|&c| pms[c]).collect();
            arith.normalize(&mut kept_pms);
            keep.iter()
                .zip(kept_pms)
                .map(|(&c, pm)| {
                    let parent = parents[c];
                    let mut bits = inputs[parent].path().0.to_vec();
                    bits.extend(candidates[c].candidate().0);
                    let carried = carried.then(|| inputs[num_paths + total + c].llrs().to_vec());
                    Value::Path { bits, pm, source: parent, carried }
                })
                .collect()
        }
        OpKind::Mux => {
            let source = inputs[0].path().2;
            vec![Value::Llrs(inputs[1 + source].llrs().to_vec())]
        }
        OpKind::Combine { start, len } => {
            let (bits, pm, source) = inputs[0].path();
            let mut bits = bits.to_vec();
            combine_in_place(&mut bits[*start..start + len]);
            vec![Value::Path { bits, pm, source, carried: None }]
        }
        OpKind::Output => Vec::new(),
    }
}

/// Runs `frames` through the pipeline, frame `f` entering at cycle
/// `injections[f]`. Injections closer together than the configured interval
/// violate the pipeline's contract.
pub fn simulate_pipeline<A: Arith>(
    schedule: &Schedule,
    arith: &A,
    frames: &[Vec<A::Llr>],
    injections: &[u64],
    config: &PipelineConfig,
) -> Result<Vec<PipelineOutput<A::Metric>>> {
    config.validate()?;
    schedule.validate()?;
    if frames.len() != injections.len() {
        return Err(invalid(format!("{} frames but {} injection cycles", frames.len(), injections.len())));
    }
    let interval = config.interval();
    for w in injections.windows(2) {
        if w[1] < w[0] + interval {
            return Err(Error::ContractViolation(format!(
                "frames injected at cycles {} and {} are closer than the initiation interval {interval}",
                w[0], w[1]
            )));
        }
    }
    if let Some(f) = frames.iter().position(|f| f.len() != schedule.block_length) {
        return Err(invalid(format!("frame {f} has {} LLRs, expected {}", frames[f].len(), schedule.block_length)));
    }
    let Some(latency) = schedule.ops.last().filter(|op| op.kind == OpKind::Output).map(|op| op.finish_cycle()) else {
        return Err(invalid("schedule has no output operation"));
    };

    let slots: Vec<usize> =
        lifetimes(schedule).into_iter().map(|l| register_slots(l, interval).max(1) as usize).collect();
    let mut registers: Vec<Vec<Option<Tagged<A>>>> = slots.iter().map(|&s| vec![None; s]).collect();
    let mut by_start: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for op in &schedule.ops {
        by_start.entry(op.start_cycle).or_default().push(op.id);
    }
    let mut pending: BTreeMap<u64, Vec<Write<A>>> = BTreeMap::new();
    let mut outputs = Vec::with_capacity(frames.len());

    let end = injections.last().map_or(0, |&t| t + latency);
    let mut first_active = 0;
    for cycle in 0..end {
        while first_active < frames.len() && injections[first_active] + latency <= cycle {
            first_active += 1;
        }
        for frame in first_active..frames.len() {
            let t0 = injections[frame];
            if t0 > cycle {
                break;
            }
            let Some(ops) = by_start.get(&(cycle - t0)) else { continue };
            for &id in ops {
                let op = &schedule.ops[id];
                let mut values = Vec::with_capacity(op.inputs.len());
                for input in &op.inputs {
                    let slot = frame % slots[input.op];
                    match &registers[input.op][slot] {
                        Some((tag, lanes)) if *tag == frame => values.push(&lanes[input.lane]),
                        _ => {
                            return Err(Error::ContractViolation(format!(
                            "frame {frame}: operation {id} at cycle {cycle} found register of operation {} overwritten",
                            input.op
                        )))
                        }
                    }
                }
                if op.kind == OpKind::Output {
                    let list = values
                        .iter()
                        .map(|v| {
                            let (bits, pm, _) = v.path();
                            ListEntry { codeword: bits.to_vec(), pm }
                        })
                        .collect();
                    outputs.push(PipelineOutput {
                        frame,
                        injected_at: t0,
                        emitted_at: cycle + op.duration_cycles,
                        list,
                    });
                    continue;
                }
                let result = execute(arith, schedule.list_size, &op.kind, &values, &frames[frame]);
                let done = cycle + op.duration_cycles - 1;
                pending.entry(done).or_default().push((id, frame, Rc::new(result)));
            }
        }
        if let Some(writes) = pending.remove(&cycle) {
            for (id, frame, lanes) in writes {
                registers[id][frame % slots[id]] = Some((frame, lanes));
            }
        }
    }
    outputs.sort_by_key(|o| o.frame);
    Ok(outputs)
}
