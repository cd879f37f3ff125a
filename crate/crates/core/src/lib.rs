//! Single-indel correcting quaternary codes with bounded synthesis time.
//!
//! Words are over the alphabet `{1, 2, 3, 4}` (A, C, G, T). A strand is
//! synthesized by scanning the cycle `1234 1234 ...` and appending one symbol
//! whenever the scan matches; the synthesis time `S(x)` is the number of
//! cycles needed. The crate counts and enumerates words with `S(x) <= T`,
//! builds Varshamov-Tenengolts style codes inside that set, and ships three
//! binary encoders along with channel and rate tooling.

pub mod channel;
pub mod counting;
pub mod encoders;
mod error;
pub mod ranking;
pub mod rates;
pub mod vt;
pub mod word;

pub use encoders::{
    plan_block_params, BlockCodec, BlockPlan, Codec, DirectCodec, DirectPlan, SpecialCodec,
};
pub use error::{Error, Result};
pub use word::{Bits, Word};
