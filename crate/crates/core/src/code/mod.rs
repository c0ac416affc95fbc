//! Polar code construction, encoding, CRC and decoder-tree derivation.

mod construction;
mod crc;
mod transform;
mod tree;

use serde::{Deserialize, Serialize};

pub use construction::{
    bhattacharyya_log_params, construct_frozen_set, construct_frozen_set_erasure, gaussian_approximation_means,
    Construction,
};
pub use crc::{crc_append, crc_check, Crc};
pub(crate) use transform::combine_in_place;
pub use transform::{combine, polar_transform, transform_in_place};
pub use tree::{build_decoder_tree, build_tree_from_mask, NodeCaps, NodeKind, TreeCensus, TreeNode};

use crate::error::{invalid, Result};

/// An `(N, k)` polar code: block length, frozen set and optional CRC.
///
/// `k` counts every unfrozen position, including the CRC bits which occupy
/// the last `crc_len` unfrozen positions.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarCode {
    frozen: Vec<bool>,
    info_positions: Vec<usize>,
    crc: Option<Crc>,
    design_snr_db: f64,
    method: Construction,
}

impl PolarCode {
    /// Constructs the frozen set for `(len, k)` and wraps it.
    pub fn new(len: usize, k: usize, crc_len: usize, design_snr_db: f64, method: Construction) -> Result<Self> {
        let frozen = construct_frozen_set(len, k, design_snr_db, method)?;
        Self::from_frozen(frozen, crc_len, design_snr_db, method)
    }

    /// Wraps an explicit frozen mask (true = frozen).
    pub fn from_frozen(frozen: Vec<bool>, crc_len: usize, design_snr_db: f64, method: Construction) -> Result<Self> {
        if !frozen.len().is_power_of_two() {
            return Err(invalid(format!("block length {} is not a power of two", frozen.len())));
        }
        let info_positions: Vec<usize> = frozen.iter().enumerate().filter(|(_, &f)| !f).map(|(i, _)| i).collect();
        let crc = match crc_len {
            0 => None,
            len => Some(Crc::for_len(len)?),
        };
        if crc_len > 0 && crc_len >= info_positions.len() {
            return Err(invalid(format!("CRC length {crc_len} must be smaller than k = {}", info_positions.len())));
        }
        Ok(Self { frozen, info_positions, crc, design_snr_db, method })
    }

    /// Block length `N`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.frozen.len()
    }

    pub fn log_len(&self) -> u32 {
        self.len().trailing_zeros()
    }

    /// Number of unfrozen positions (data plus CRC).
    pub fn k(&self) -> usize {
        self.info_positions.len()
    }

    pub fn crc(&self) -> Option<Crc> {
        self.crc
    }

    pub fn crc_len(&self) -> usize {
        self.crc.map_or(0, |c| c.len())
    }

    /// Number of payload bits, i.e. `k` minus the CRC.
    pub fn data_len(&self) -> usize {
        self.k() - self.crc_len()
    }

    pub fn frozen(&self) -> &[bool] {
        &self.frozen
    }

    pub fn is_frozen(&self, i: usize) -> bool {
        self.frozen[i]
    }

    pub fn info_positions(&self) -> &[usize] {
        &self.info_positions
    }

    pub fn design_snr_db(&self) -> f64 {
        self.design_snr_db
    }

    pub fn method(&self) -> Construction {
        self.method
    }

    pub fn rate(&self) -> f64 {
        self.k() as f64 / self.len() as f64
    }

    /// Systematic encoding: `info` lands verbatim on the unfrozen positions.
    ///
    /// Encodes, clears the frozen positions and encodes again.
    pub fn encode_systematic(&self, info: &[u8]) -> Result<Vec<u8>> {
        if info.len() != self.k() {
            return Err(invalid(format!("information word has {} bits, code expects k = {}", info.len(), self.k())));
        }
        let mut word = vec![0u8; self.len()];
        for (&pos, &bit) in self.info_positions.iter().zip(info) {
            word[pos] = bit;
        }
        transform_in_place(&mut word);
        for (bit, &frozen) in word.iter_mut().zip(&self.frozen) {
            if frozen {
                *bit = 0;
            }
        }
        transform_in_place(&mut word);
        Ok(word)
    }

    /// Appends the configured CRC to `data` and encodes systematically.
    pub fn encode_data(&self, data: &[u8]) -> Result<Vec<u8>> {
        if data.len() != self.data_len() {
            return Err(invalid(format!("payload has {} bits, code expects {}", data.len(), self.data_len())));
        }
        match self.crc {
            Some(crc) => self.encode_systematic(&crc.append(data)),
            None => self.encode_systematic(data),
        }
    }

    /// Systematic readout: the bits of `codeword` at the unfrozen positions.
    pub fn extract_info(&self, codeword: &[u8]) -> Vec<u8> {
        self.info_positions.iter().map(|&i| codeword[i]).collect()
    }

    /// Payload bits of `codeword`, excluding the CRC.
    pub fn extract_data(&self, codeword: &[u8]) -> Vec<u8> {
        self.info_positions[..self.data_len()].iter().map(|&i| codeword[i]).collect()
    }

    /// Whether the CRC embedded in `codeword` checks. True without a CRC.
    pub fn crc_ok(&self, codeword: &[u8]) -> bool {
        match self.crc {
            Some(crc) => crc.check(&self.extract_info(codeword)),
            None => true,
        }
    }

    pub fn to_mask_file(&self) -> FrozenMaskFile {
        FrozenMaskFile {
            block_length: self.len(),
            k: self.k(),
            design_snr_db: self.design_snr_db,
            method: self.method,
            frozen_positions: self.frozen.iter().enumerate().filter(|(_, &f)| f).map(|(i, _)| i).collect(),
        }
    }

    pub fn from_mask_file(file: &FrozenMaskFile, crc_len: usize) -> Result<Self> {
        let mut frozen = vec![false; file.block_length];
        for &pos in &file.frozen_positions {
            if pos >= file.block_length {
                return Err(invalid(format!("frozen position {pos} out of range")));
            }
            frozen[pos] = true;
        }
        let code = Self::from_frozen(frozen, crc_len, file.design_snr_db, file.method)?;
        if code.k() != file.k {
            return Err(invalid(format!(
                "mask file declares k = {} but freezes {} of {} positions",
                file.k,
                file.frozen_positions.len(),
                file.block_length
            )));
        }
        Ok(code)
    }
}

/// JSON form of a frozen mask, used for golden fixtures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrozenMaskFile {
    #[serde(rename = "N")]
    pub block_length: usize,
    pub k: usize,
    pub design_snr_db: f64,
    pub method: Construction,
    pub frozen_positions: Vec<usize>,
}
