//! Polar codes with successive-cancellation (SC), SC list (SCL), CRC-aided SCL
//! and Fast-SSC-List decoding.
//!
//! The crate is organised bottom-up:
//!
//! * [`code`]: frozen-set construction, the polar transform, systematic
//!   encoding, CRC and the Fast-SSC decoder tree.
//! * [`channel`]: BPSK over AWGN with per-frame deterministic seeding.
//! * [`quantize`]: the `Qi.Qc.Qf` two's-complement fixed-point contract.
//! * [`decoders`]: SC, bit-by-bit SCL, CA-SCL selection and Fast-SSC-List,
//!   generic over floating or fixed-point arithmetic.
//! * [`pipeline`]: compiles a decoder tree into an unrolled, pipelined
//!   schedule, reports its timing and simulates it cycle by cycle.

pub mod channel;
pub mod code;
pub mod decoders;
mod error;
pub mod pipeline;
pub mod quantize;

pub use code::{Construction, FrozenMaskFile, NodeCaps, NodeKind, PolarCode, TreeNode};
pub use decoders::{Arith, DecoderConfig, FixedArith, FloatArith, ListEntry};
pub use error::{Error, Result};
pub use quantize::{FixedVal, QuantSpec};
