//! Two's-complement fixed-point arithmetic for the `Qi.Qc.Qf` format.
//!
//! `Qc` bits hold a channel LLR, `Qi` bits an internal LLR, and both share
//! `Qf` fractional bits. Path metrics use `Qi + 1` bits. Channel values are
//! rounded half away from zero; every internal operation is exact integer
//! arithmetic saturated to its width.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct QuantSpec {
    qi: u8,
    qc: u8,
    qf: u8,
}

impl QuantSpec {
    /// The 6.5.0 format with 7-bit path metrics.
    pub const DEFAULT: QuantSpec = QuantSpec { qi: 6, qc: 5, qf: 0 };

    pub fn new(qi: u8, qc: u8, qf: u8) -> Result<Self> {
        if qc > qi || qf >= qc || qc < 2 || qi > 30 {
            return Err(invalid(format!("quantization {qi}.{qc}.{qf} needs 2 <= Qc <= Qi <= 30 and Qf < Qc")));
        }
        Ok(Self { qi, qc, qf })
    }

    /// Bits of an internal LLR.
    pub fn qi(&self) -> u8 {
        self.qi
    }

    /// Bits of a channel LLR.
    pub fn qc(&self) -> u8 {
        self.qc
    }

    /// Fractional bits.
    pub fn qf(&self) -> u8 {
        self.qf
    }

    /// Bits of a path metric.
    pub fn pm_bits(&self) -> u8 {
        self.qi + 1
    }
}

impl Default for QuantSpec {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl fmt::Display for QuantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}.{}", self.qi, self.qc, self.qf)
    }
}

impl FromStr for QuantSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split('.').collect();
        let [qi, qc, qf] = parts.as_slice() else {
            return Err(Error::QuantSpec(s.to_string()));
        };
        let parse = |p: &str| p.parse::<u8>().map_err(|_| Error::QuantSpec(s.to_string()));
        QuantSpec::new(parse(qi)?, parse(qc)?, parse(qf)?)
    }
}

impl TryFrom<String> for QuantSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<QuantSpec> for String {
    fn from(q: QuantSpec) -> String {
        q.to_string()
    }
}

/// A two's-complement value of `width` bits with `frac` fractional bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FixedVal {
    pub raw: i32,
    pub width: u8,
    pub frac: u8,
}

impl FixedVal {
    pub fn value(&self) -> f64 {
        f64::from(self.raw) / f64::from(1u32 << self.frac)
    }
}

pub fn max_raw(width: u8) -> i64 {
    (1i64 << (width - 1)) - 1
}

pub fn min_raw(width: u8) -> i64 {
    -(1i64 << (width - 1))
}

/// Clamps `v` into the range of a `width`-bit two's-complement integer.
pub fn saturate(v: i64, width: u8) -> i32 {
    v.clamp(min_raw(width), max_raw(width)) as i32
}

/// `round(x · 2^qf)` (half away from zero), saturated to `width` bits.
pub fn quantize_llr(x: f64, width: u8, qf: u8) -> FixedVal {
    assert!(width >= 2, "fixed-point width must be at least 2 bits");
    let scaled = (x * f64::from(1u32 << qf)).round();
    let raw = if scaled.is_nan() { 0 } else { scaled.clamp(min_raw(width) as f64, max_raw(width) as f64) as i32 };
    FixedVal { raw, width, frac: qf }
}

pub fn sat_add(a: FixedVal, b: FixedVal, width: u8) -> FixedVal {
    debug_assert_eq!(a.frac, b.frac, "fractional bits differ");
    FixedVal { raw: saturate(i64::from(a.raw) + i64::from(b.raw), width), width, frac: a.frac }
}

pub fn sat_sub(a: FixedVal, b: FixedVal, width: u8) -> FixedVal {
    debug_assert_eq!(a.frac, b.frac, "fractional bits differ");
    FixedVal { raw: saturate(i64::from(a.raw) - i64::from(b.raw), width), width, frac: a.frac }
}

/// Subtracts the smallest metric from every metric.
pub fn normalize_raw(pms: &mut [i32]) {
    if let Some(&min) = pms.iter().min() {
        for pm in pms {
            *pm -= min;
        }
    }
}

/// Subtracts the smallest metric from every metric, so the minimum becomes 0.
pub fn normalize_path_metrics(pms: &[FixedVal]) -> Vec<FixedVal> {
    let mut raw: Vec<i32> = pms.iter().map(|p| p.raw).collect();
    normalize_raw(&mut raw);
    pms.iter().zip(raw).map(|(p, raw)| FixedVal { raw, ..*p }).collect()
}
