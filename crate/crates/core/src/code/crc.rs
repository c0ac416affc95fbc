use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// A bitwise, non-reflected CRC with zero initial value and no final XOR.
///
/// `poly` holds the generator without its leading `x^width` term, so CRC-8
/// with generator `x^8 + x^2 + x + 1` is `Crc { width: 8, poly: 0x07 }`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crc {
    pub width: u8,
    pub poly: u32,
}

impl Crc {
    pub const CRC8: Crc = Crc { width: 8, poly: 0x07 };

    /// The default generator for a CRC of `len` bits.
    pub fn for_len(len: usize) -> Result<Crc> {
        let (width, poly) = match len {
            8 => (8, 0x07),
            16 => (16, 0x1021),
            24 => (24, 0x86_4CFB),
            32 => (32, 0x04C1_1DB7),
            _ => return Err(invalid(format!("no CRC generator configured for {len} bits"))),
        };
        Ok(Crc { width, poly })
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.width as usize
    }

    /// Remainder of `bits · x^width` modulo the generator, MSB first.
    pub fn remainder(&self, bits: &[u8]) -> Vec<u8> {
        let width = u32::from(self.width);
        let mask = if width == 32 { u32::MAX } else { (1u32 << width) - 1 };
        let top = 1u32 << (width - 1);
        let mut reg = 0u32;
        for &bit in bits {
            let feedback = (reg & top != 0) ^ (bit != 0);
            reg = (reg << 1) & mask;
            if feedback {
                reg ^= self.poly;
            }
        }
        (0..width).rev().map(|i| ((reg >> i) & 1) as u8).collect()
    }

    pub fn append(&self, bits: &[u8]) -> Vec<u8> {
        let mut out = bits.to_vec();
        out.extend(self.remainder(bits));
        out
    }

    /// True iff the trailing `width` bits are the CRC of the leading ones.
    pub fn check(&self, word: &[u8]) -> bool {
        word.len() >= self.len() && self.remainder(word).iter().all(|&b| b == 0)
    }
}

/// Appends a `crc_len`-bit CRC (0 = none) using the default generator.
pub fn crc_append(info: &[u8], crc_len: usize) -> Result<Vec<u8>> {
    if crc_len == 0 {
        return Ok(info.to_vec());
    }
    Ok(Crc::for_len(crc_len)?.append(info))
}

/// Checks a word produced by [`crc_append`]. Always true for `crc_len = 0`.
pub fn crc_check(word: &[u8], crc_len: usize) -> Result<bool> {
    if crc_len == 0 {
        return Ok(true);
    }
    Ok(Crc::for_len(crc_len)?.check(word))
}
