//! SC, SCL, CA-SCL and Fast-SSC-List decoders.
//!
//! LLRs are positive for bit 0. A path metric is the accumulated penalty of
//! decisions that disagree with the sign of their LLR, so lower is better.

mod arith;
mod fast;
mod nodes;
mod sc;
mod scl;
mod sort;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use arith::{Arith, FixedArith, FloatArith};
pub use fast::{fast_ssc_list_decode, DecodingPath};
pub use nodes::{
    candidate_count, decode_node, decode_paths, decode_rate0, decode_rate1, decode_repetition, decode_spc,
    rate1_flip_positions, Candidate, CandidateSet, NodeCandidate, SPC_FLIP_POSITIONS,
};
pub use sc::{sc_decode, sc_decode_codeword};
pub use scl::scl_decode;
pub use sort::sort_select;

use crate::code::{build_decoder_tree, NodeCaps, PolarCode, TreeNode};
use crate::error::{invalid, Result};
use crate::quantize::QuantSpec;

/// A decoded candidate codeword and its path metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ListEntry<M> {
    pub codeword: Vec<u8>,
    pub pm: M,
}

/// CRC-aided selection: the lowest-metric candidate whose CRC checks, or the
/// lowest-metric candidate if none does. `candidates` must be sorted.
pub fn ca_scl_select<'a, M>(candidates: &'a [ListEntry<M>], code: &PolarCode) -> Result<&'a ListEntry<M>> {
    let first = candidates.first().ok_or_else(|| invalid("no candidates to select from"))?;
    Ok(candidates.iter().find(|c| code.crc_ok(&c.codeword)).unwrap_or(first))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecoderKind {
    Sc,
    Scl,
    CaScl,
    FastSscList,
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecoderKind::Sc => "sc",
            DecoderKind::Scl => "scl",
            DecoderKind::CaScl => "ca-scl",
            DecoderKind::FastSscList => "fast-ssc-list",
        })
    }
}

impl FromStr for DecoderKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sc" => Ok(DecoderKind::Sc),
            "scl" => Ok(DecoderKind::Scl),
            "ca-scl" => Ok(DecoderKind::CaScl),
            "fast-ssc-list" | "fast" => Ok(DecoderKind::FastSscList),
            other => Err(invalid(format!("unknown decoder `{other}` (expected sc, scl, ca-scl or fast-ssc-list)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecoderConfig {
    pub list_size: usize,
    /// Select among the final list with the code's CRC.
    pub use_crc: bool,
    /// Fixed-point format; `None` decodes in floating point.
    pub quant: Option<QuantSpec>,
    pub caps: NodeCaps,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        Self { list_size: 2, use_crc: false, quant: None, caps: NodeCaps::default() }
    }
}

/// A decoder bound to one code, dispatching on kind and number system.
#[derive(Debug, Clone)]
pub struct Decoder {
    kind: DecoderKind,
    config: DecoderConfig,
    code: PolarCode,
    tree: TreeNode,
}

impl Decoder {
    pub fn new(kind: DecoderKind, code: PolarCode, mut config: DecoderConfig) -> Result<Self> {
        if config.list_size == 0 {
            return Err(invalid("list size must be at least 1"));
        }
        if kind == DecoderKind::CaScl {
            config.use_crc = true;
        }
        if config.use_crc && code.crc().is_none() {
            return Err(invalid(format!("{kind} decoding needs a code with a CRC")));
        }
        let tree = build_decoder_tree(&code, &config.caps);
        Ok(Self { kind, config, code, tree })
    }

    pub fn code(&self) -> &PolarCode {
        &self.code
    }

    pub fn tree(&self) -> &TreeNode {
        &self.tree
    }

    pub fn kind(&self) -> DecoderKind {
        self.kind
    }

    pub fn config(&self) -> &DecoderConfig {
        &self.config
    }

    /// Decodes real channel LLRs and returns the selected codeword.
    pub fn decode(&self, channel_llrs: &[f64]) -> Result<Vec<u8>> {
        match self.config.quant {
            None => self.decode_with(&FloatArith, channel_llrs),
            Some(spec) => self.decode_with(&FixedArith::new(spec), channel_llrs),
        }
    }

    fn decode_with<A: Arith>(&self, arith: &A, channel_llrs: &[f64]) -> Result<Vec<u8>> {
        let llrs: Vec<A::Llr> = channel_llrs.iter().map(|&x| arith.channel_llr(x)).collect();
        let list_size = self.config.list_size;
        let list = match self.kind {
            DecoderKind::Sc => return sc_decode_codeword(arith, &llrs, &self.code),
            DecoderKind::Scl | DecoderKind::CaScl => scl_decode(arith, &llrs, &self.code, list_size)?,
            DecoderKind::FastSscList => fast_ssc_list_decode(arith, &self.tree, &self.code, &llrs, list_size)?,
        };
        let chosen = if self.config.use_crc {
            ca_scl_select(&list, &self.code)?
        } else {
            list.first().ok_or_else(|| invalid("decoder produced an empty list"))?
        };
        Ok(chosen.codeword.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::Construction;

    fn entry(codeword: Vec<u8>, pm: f64) -> ListEntry<f64> {
        ListEntry { codeword, pm }
    }

    #[test]
    fn crc_selection_rules() {
        let code = PolarCode::new(32, 16, 8, 2.0, Construction::default()).unwrap();
        let good = code.encode_data(&[1, 0, 1, 1, 0, 0, 1, 0]).unwrap();
        let mut bad = good.clone();
        bad[code.info_positions()[0]] ^= 1;
        let mut bad2 = good.clone();
        bad2[code.info_positions()[3]] ^= 1;

        let single = [entry(good.clone(), 0.0)];
        assert_eq!(ca_scl_select(&single, &code).unwrap().codeword, good);
        let second = [entry(bad.clone(), 0.0), entry(good.clone(), 1.0)];
        assert_eq!(ca_scl_select(&second, &code).unwrap().codeword, good);
        let none = [entry(bad.clone(), 0.0), entry(bad2, 1.0)];
        assert_eq!(ca_scl_select(&none, &code).unwrap().codeword, bad);
        assert!(ca_scl_select::<f64>(&[], &code).is_err());
    }

    #[test]
    fn decoder_kind_parsing() {
        for kind in [DecoderKind::Sc, DecoderKind::Scl, DecoderKind::CaScl, DecoderKind::FastSscList] {
            assert_eq!(kind.to_string().parse::<DecoderKind>().unwrap(), kind);
        }
        assert!("ldpc".parse::<DecoderKind>().is_err());
    }

    #[test]
    fn ca_scl_requires_crc() {
        let code = PolarCode::new(32, 16, 0, 2.0, Construction::default()).unwrap();
        assert!(Decoder::new(DecoderKind::CaScl, code.clone(), DecoderConfig::default()).is_err());
        assert!(Decoder::new(DecoderKind::Scl, code, DecoderConfig { list_size: 0, ..Default::default() }).is_err());
    }
}
