//! Binary-to-DNA encoders whose codewords survive one indel and respect a
//! synthesis-time budget.

mod block;
mod direct;
mod special;

pub(crate) use block::plan_with_counts;
pub use block::{plan_block_params, BlockCodec, BlockPlan};
pub use direct::{DirectCodec, DirectPlan};
pub use special::SpecialCodec;

use crate::error::Result;
use crate::vt::SystematicCode;
use crate::word::{phi, phi_inverse, Bits, Word};

/// An encoder/decoder pair over fixed-length binary messages.
pub trait Codec: Send + Sync {
    /// Codeword length.
    fn length(&self) -> usize;

    fn message_bits(&self) -> usize;

    /// Upper bound on the synthesis time of every codeword.
    fn synthesis_bound(&self) -> u64;

    fn encode(&self, msg: &Bits) -> Result<Word>;

    /// Accepts any word within one indel of a codeword.
    fn decode(&self, received: &Word) -> Result<Bits>;
}

/// The systematic code, fed two bits per data symbol.
impl Codec for SystematicCode {
    fn length(&self) -> usize {
        self.n()
    }

    fn message_bits(&self) -> usize {
        2 * self.data_len()
    }

    fn synthesis_bound(&self) -> u64 {
        4 * self.n() as u64
    }

    fn encode(&self, msg: &Bits) -> Result<Word> {
        SystematicCode::encode(self, &phi_inverse(msg)?)
    }

    fn decode(&self, received: &Word) -> Result<Bits> {
        Ok(phi(&SystematicCode::decode(self, received)?))
    }
}

fn check_message(msg: &Bits, bits: usize) -> Result<()> {
    if msg.len() != bits {
        return Err(crate::Error::Parameter(format!(
            "message has {} bits, expected {bits}",
            msg.len()
        )));
    }
    Ok(())
}
