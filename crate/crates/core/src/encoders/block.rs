use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use super::{check_message, Codec};
use crate::counting::WordCounts;
use crate::error::{Error, Result};
use crate::ranking::{rank_word, unrank_word};
use crate::vt::SystematicCode;
use crate::word::{ceil_log4, floor_log2, pow2, Bits, Word};

/// Parameters of the block encoder: the systematic payload of length
/// `n - ceil(log4 n) - 3` is split into `ell` blocks of length `k`, each an
/// unranked element of `W(k, block_budget)` carrying `block_bits` bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlockPlan {
    pub n: usize,
    pub t: i64,
    pub ell: usize,
    pub k: usize,
    /// Synthesis slack reserved for block joins and the redundancy suffix.
    pub epsilon: i64,
    pub block_budget: i64,
    pub block_bits: usize,
}

fn payload_len(n: usize) -> Result<usize> {
    n.checked_sub(ceil_log4(n) + 3)
        .filter(|&p| p >= 1)
        .ok_or_else(|| Error::Parameter(format!("length {n} leaves no room for data")))
}

impl BlockPlan {
    pub fn new(n: usize, t: i64, ell: usize) -> Result<Self> {
        let payload = payload_len(n)?;
        if ell == 0 || payload % ell != 0 {
            return Err(Error::Parameter(format!(
                "block count {ell} does not divide the payload length {payload}"
            )));
        }
        Self::with_counts(n, t, ell, &WordCounts::new(payload / ell))
    }

    /// Like [`BlockPlan::new`] but reads block counts from a shared table.
    pub fn with_counts(n: usize, t: i64, ell: usize, counts: &WordCounts) -> Result<Self> {
        let payload = payload_len(n)?;
        if ell == 0 || payload % ell != 0 {
            return Err(Error::Parameter(format!(
                "block count {ell} does not divide the payload length {payload}"
            )));
        }
        let k = payload / ell;
        let epsilon = 4 * (ceil_log4(n) + ell + 3) as i64;
        let block_budget = (t - epsilon).div_euclid(ell as i64);
        if block_budget < k as i64 {
            return Err(Error::Infeasible(format!(
                "per-block budget {block_budget} is below the block length {k} \
                 (n={n}, T={t}, ell={ell})"
            )));
        }
        let block_bits = floor_log2(counts.get(k, block_budget)).unwrap_or(0) as usize;
        Ok(BlockPlan {
            n,
            t,
            ell,
            k,
            epsilon,
            block_budget,
            block_bits,
        })
    }

    pub fn payload_bits(&self) -> usize {
        self.ell * self.block_bits
    }

    pub fn rate(&self) -> f64 {
        self.payload_bits() as f64 / self.t as f64
    }
}

/// Sweeps every block count dividing the payload and keeps the plan carrying
/// the most bits; ties go to fewer blocks.
pub fn plan_block_params(n: usize, t: i64) -> Result<BlockPlan> {
    let payload = payload_len(n)?;
    plan_with_counts(n, t, &WordCounts::new(payload))
}

pub(crate) fn plan_with_counts(n: usize, t: i64, counts: &WordCounts) -> Result<BlockPlan> {
    let payload = payload_len(n)?;
    let mut best: Option<BlockPlan> = None;
    for ell in (1..=payload).filter(|ell| payload % ell == 0) {
        let Ok(plan) = BlockPlan::with_counts(n, t, ell, counts) else {
            continue;
        };
        if best.is_none_or(|b| plan.payload_bits() > b.payload_bits()) {
            best = Some(plan);
        }
    }
    best.filter(|p| p.payload_bits() > 0)
        .ok_or_else(|| Error::Infeasible(format!("no block plan carries data at n={n}, T={t}")))
}

/// Block encoder: per-block unranking into `W(k, block_budget)` followed by
/// the systematic indel code.
#[derive(Debug, Clone)]
pub struct BlockCodec {
    plan: BlockPlan,
    counts: WordCounts,
    systematic: SystematicCode,
}

impl BlockCodec {
    pub fn new(plan: BlockPlan) -> Result<Self> {
        let systematic = SystematicCode::new(plan.n)?;
        if plan.ell * plan.k != systematic.data_len() {
            return Err(Error::Parameter(
                "block plan does not fill the payload".into(),
            ));
        }
        Ok(BlockCodec {
            plan,
            counts: WordCounts::new(plan.k),
            systematic,
        })
    }

    pub fn plan(&self) -> &BlockPlan {
        &self.plan
    }
}

impl Codec for BlockCodec {
    fn length(&self) -> usize {
        self.plan.n
    }

    fn message_bits(&self) -> usize {
        self.plan.payload_bits()
    }

    fn synthesis_bound(&self) -> u64 {
        self.plan.t as u64
    }

    fn encode(&self, msg: &Bits) -> Result<Word> {
        check_message(msg, self.message_bits())?;
        let m = self.plan.block_bits;
        let mut payload = Word::empty();
        for blk in 0..self.plan.ell {
            let j = msg.slice(blk * m..(blk + 1) * m).to_biguint() + BigUint::one();
            let y = unrank_word(&self.counts, &j, self.plan.k, self.plan.block_budget)?;
            payload = payload.concat(&y);
        }
        self.systematic.encode(&payload)
    }

    fn decode(&self, received: &Word) -> Result<Bits> {
        let payload = self.systematic.decode(received)?;
        let (k, m) = (self.plan.k, self.plan.block_bits);
        let limit = pow2(m);
        let mut out = Bits::zeros(0);
        for blk in 0..self.plan.ell {
            let y = payload.slice(blk * k..(blk + 1) * k);
            let j = rank_word(&self.counts, &y, self.plan.block_budget)
                .map_err(|e| Error::DecodeFailure(e.to_string()))?
                - BigUint::one();
            if j >= limit {
                return Err(Error::DecodeFailure(format!(
                    "block {blk} has rank {j} beyond the {m}-bit message space"
                )));
            }
            out.extend(&Bits::from_biguint(&j, m)?);
        }
        Ok(out)
    }
}
