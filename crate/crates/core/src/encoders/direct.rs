use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use super::{check_message, Codec};
use crate::counting::{best_vt_params, count_vt, SliceCounts};
use crate::error::{Error, Result};
use crate::ranking::{rank_slice, unrank_slice, LastSymbol};
use crate::vt::{decode_indel, VtParams};
use crate::word::{floor_log2, pow2, Bits, Word};

/// Parameters of the direct encoder: messages are ranks inside one slice
/// `VT_n(a, b, T)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectPlan {
    pub n: usize,
    pub t: i64,
    pub a: usize,
    pub b: u8,
    #[serde(serialize_with = "as_decimal")]
    pub size: BigUint,
    pub message_bits: usize,
}

fn as_decimal<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl DirectPlan {
    /// Uses the largest slice unless `residues` pins `(a, b)`.
    pub fn new(n: usize, t: i64, residues: Option<(usize, u8)>) -> Result<Self> {
        if n == 0 || t <= n as i64 || t > 4 * n as i64 {
            return Err(Error::Parameter(format!(
                "synthesis budget {t} must satisfy {n} < T <= {}",
                4 * n
            )));
        }
        let (a, b, size) = match residues {
            Some((a, b)) => (a, b, count_vt(n, t, a, b)?),
            None => best_vt_params(n, t)?,
        };
        let message_bits = floor_log2(&size).ok_or_else(|| {
            Error::Infeasible(format!("VT_{n}({a},{b}) has no word with S <= {t}"))
        })? as usize;
        Ok(DirectPlan {
            n,
            t,
            a,
            b,
            size,
            message_bits,
        })
    }

    pub fn rate(&self) -> f64 {
        self.message_bits as f64 / self.t as f64
    }
}

/// Direct encoder: unranks the message inside the slice and decodes with the
/// VT decoder followed by ranking. Holds the full slice table, which is
/// `O(n^3 T)` big integers.
#[derive(Debug, Clone)]
pub struct DirectCodec {
    plan: DirectPlan,
    params: VtParams,
    table: SliceCounts,
}

impl DirectCodec {
    pub fn new(plan: DirectPlan) -> Result<Self> {
        let params = VtParams::new(plan.n, plan.a, plan.b)?;
        let table = SliceCounts::new(plan.n, plan.t.max(0) as usize)?;
        Ok(DirectCodec {
            plan,
            params,
            table,
        })
    }

    pub fn plan(&self) -> &DirectPlan {
        &self.plan
    }
}

impl Codec for DirectCodec {
    fn length(&self) -> usize {
        self.plan.n
    }

    fn message_bits(&self) -> usize {
        self.plan.message_bits
    }

    fn synthesis_bound(&self) -> u64 {
        self.plan.t as u64
    }

    fn encode(&self, msg: &Bits) -> Result<Word> {
        check_message(msg, self.message_bits())?;
        let p = &self.plan;
        let j = msg.to_biguint() + BigUint::one();
        unrank_slice(&self.table, &j, p.n, p.t, p.a, p.b, LastSymbol::Any)
    }

    fn decode(&self, received: &Word) -> Result<Bits> {
        let p = &self.plan;
        let c = if received.len() == p.n {
            received.clone()
        } else {
            decode_indel(received, &self.params)?
        };
        let j = rank_slice(&self.table, &c, p.t, p.a, p.b, LastSymbol::Any)
            .map_err(|e| Error::DecodeFailure(e.to_string()))?
            - BigUint::one();
        if j >= pow2(p.message_bits) {
            return Err(Error::DecodeFailure(format!(
                "rank {j} lies beyond the {}-bit message space",
                p.message_bits
            )));
        }
        Bits::from_biguint(&j, p.message_bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::count_a;
    use crate::word::{aux_syndrome, indel_ball, synthesis_time};
    use std::collections::HashSet;

    fn message(v: usize, bits: usize) -> Bits {
        Bits::new((0..bits).map(|i| v >> (bits - 1 - i) & 1 == 1).collect())
    }

    #[test]
    fn exhaustive_n8_t20() {
        let plan = DirectPlan::new(8, 20, None).unwrap();
        let codec = DirectCodec::new(plan.clone()).unwrap();
        let bits = codec.message_bits();
        let mut seen = HashSet::new();
        for v in 0..1usize << bits {
            let msg = message(v, bits);
            let c = codec.encode(&msg).unwrap();
            assert!(synthesis_time(&c) <= 20);
            assert_eq!(aux_syndrome(c.symbols()) % 8, plan.a as u64);
            assert_eq!(c.sum_mod4(), plan.b);
            assert!(seen.insert(c.clone()));
            for y in indel_ball(&c) {
                assert_eq!(codec.decode(&y).unwrap(), msg, "{c} -> {y}");
            }
        }
    }

    #[test]
    fn zero_message_is_first_rank() {
        let codec = DirectCodec::new(DirectPlan::new(8, 20, None).unwrap()).unwrap();
        let p = codec.plan();
        let first = unrank_slice(
            &codec.table,
            &BigUint::one(),
            8,
            20,
            p.a,
            p.b,
            LastSymbol::Any,
        )
        .unwrap();
        assert_eq!(
            codec.encode(&Bits::zeros(codec.message_bits())).unwrap(),
            first
        );
    }

    #[test]
    fn redundancy_within_bound() {
        for n in 3..=10usize {
            for t in n as i64 + 1..=4 * n as i64 {
                let plan = DirectPlan::new(n, t, None).unwrap();
                let quotient = count_a(n, t) / BigUint::from(4 * n);
                let Some(floor) = floor_log2(&quotient) else {
                    continue;
                };
                assert!(plan.message_bits as u64 >= floor, "n={n} T={t}");
            }
        }
    }

    #[test]
    fn pinned_residues_and_errors() {
        let plan = DirectPlan::new(6, 14, Some((2, 3))).unwrap();
        assert_eq!((plan.a, plan.b), (2, 3));
        assert_eq!(plan.size, count_vt(6, 14, 2, 3).unwrap());
        assert!(DirectPlan::new(6, 6, None).is_err());
        assert!(DirectPlan::new(6, 25, None).is_err());
        assert!(DirectPlan::new(6, 14, Some((6, 1))).is_err());
    }
}
