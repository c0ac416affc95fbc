use std::fmt::Debug;

use crate::quantize::{self, QuantSpec};

/// Number system of a decoder: how LLRs and path metrics are stored and
/// combined.
///
/// All decoders are generic over this trait so the floating-point and the
/// bit-accurate fixed-point models share one implementation.
pub trait Arith: Clone + Send + Sync + 'static {
    type Llr: Copy + Debug + PartialEq + Send + Sync + 'static;
    type Metric: Copy + Debug + PartialOrd + Send + Sync + 'static;

    /// Converts a real channel LLR to the internal representation.
    fn channel_llr(&self, llr: f64) -> Self::Llr;

    /// Min-sum check-node update: `sign(a) sign(b) min(|a|, |b|)`.
    fn f(&self, a: Self::Llr, b: Self::Llr) -> Self::Llr;

    /// Variable-node update: `b + (1 - 2u) a`.
    fn g(&self, a: Self::Llr, b: Self::Llr, u: u8) -> Self::Llr;

    /// Hard decision: 1 iff the LLR is negative.
    fn hard(&self, a: Self::Llr) -> u8;

    /// `|a|` as a path-metric increment.
    fn magnitude(&self, a: Self::Llr) -> Self::Metric;

    fn zero_metric(&self) -> Self::Metric;

    fn add_metric(&self, pm: Self::Metric, inc: Self::Metric) -> Self::Metric;

    /// Post-sort metric normalization; a no-op in floating point.
    fn normalize(&self, pms: &mut [Self::Metric]);

    fn metric_to_f64(&self, pm: Self::Metric) -> f64;

    fn llr_to_f64(&self, a: Self::Llr) -> f64;

    /// Penalty of deciding `bit` against `a`: `|a|` on disagreement, else 0.
    fn penalty(&self, a: Self::Llr, bit: u8) -> Self::Metric {
        if self.hard(a) == bit {
            self.zero_metric()
        } else {
            self.magnitude(a)
        }
    }
}

/// IEEE double precision LLRs and metrics.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FloatArith;

impl Arith for FloatArith {
    type Llr = f64;
    type Metric = f64;

    fn channel_llr(&self, llr: f64) -> f64 {
        llr
    }

    fn f(&self, a: f64, b: f64) -> f64 {
        let m = a.abs().min(b.abs());
        if (a < 0.0) != (b < 0.0) {
            -m
        } else {
            m
        }
    }

    fn g(&self, a: f64, b: f64, u: u8) -> f64 {
        if u == 0 {
            b + a
        } else {
            b - a
        }
    }

    fn hard(&self, a: f64) -> u8 {
        u8::from(a < 0.0)
    }

    fn magnitude(&self, a: f64) -> f64 {
        a.abs()
    }

    fn zero_metric(&self) -> f64 {
        0.0
    }

    fn add_metric(&self, pm: f64, inc: f64) -> f64 {
        pm + inc
    }

    fn normalize(&self, _pms: &mut [f64]) {}

    fn metric_to_f64(&self, pm: f64) -> f64 {
        pm
    }

    fn llr_to_f64(&self, a: f64) -> f64 {
        a
    }
}

/// Two's-complement fixed point per a [`QuantSpec`]: channel LLRs on `Qc`
/// bits, internal LLRs on `Qi` bits, path metrics on `Qi + 1` bits, every
/// operation saturated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixedArith {
    spec: QuantSpec,
}

impl FixedArith {
    pub fn new(spec: QuantSpec) -> Self {
        Self { spec }
    }

    pub fn spec(&self) -> QuantSpec {
        self.spec
    }
}

impl Arith for FixedArith {
    type Llr = i32;
    type Metric = i32;

    fn channel_llr(&self, llr: f64) -> i32 {
        quantize::quantize_llr(llr, self.spec.qc(), self.spec.qf()).raw
    }

    fn f(&self, a: i32, b: i32) -> i32 {
        let m = i64::from(a.abs().min(b.abs()));
        let v = if (a < 0) != (b < 0) { -m } else { m };
        quantize::saturate(v, self.spec.qi())
    }

    fn g(&self, a: i32, b: i32, u: u8) -> i32 {
        let v = if u == 0 { i64::from(b) + i64::from(a) } else { i64::from(b) - i64::from(a) };
        quantize::saturate(v, self.spec.qi())
    }

    fn hard(&self, a: i32) -> u8 {
        u8::from(a < 0)
    }

    fn magnitude(&self, a: i32) -> i32 {
        quantize::saturate(i64::from(a).abs(), self.spec.pm_bits())
    }

    fn zero_metric(&self) -> i32 {
        0
    }

    fn add_metric(&self, pm: i32, inc: i32) -> i32 {
        quantize::saturate(i64::from(pm) + i64::from(inc), self.spec.pm_bits())
    }

    fn normalize(&self, pms: &mut [i32]) {
        quantize::normalize_raw(pms);
    }

    fn metric_to_f64(&self, pm: i32) -> f64 {
        f64::from(pm) / f64::from(1u32 << self.spec.qf())
    }

    fn llr_to_f64(&self, a: i32) -> f64 {
        f64::from(a) / f64::from(1u32 << self.spec.qf())
    }
}
