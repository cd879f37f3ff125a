use super::{check_message, Codec};
use crate::error::{Error, Result};
use crate::vt::{decode_indel, syndrome_value, SystematicCode, VtParams};
use crate::word::{
    differential, differential_inverse, phi, phi_inverse, smod4, within_one_indel, Bits, Word,
};

/// Linear-time encoder for budgets `T >= 2.5 n`.
///
/// The message's differential word gets a trailing flag step and is
/// complemented (`d -> 5 - d`) when its norm exceeds `2.5 (m + 1)`; the
/// complement flips the flag from 1 to 4. The resulting word `u` is encoded
/// by the systematic code of length `n - 1`, and the redundancy suffix gets
/// the same treatment in the differential domain with its own flag as the
/// final symbol. Both halves then cost at most 2.5 cycles per symbol.
///
/// Layout of a codeword `c` (1-based, `m` = message length in symbols):
///
/// ```text
/// c[1..m+1]    u, systematic
/// c[m+2..n]    D^{-1} of the (possibly complemented) differential suffix
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpecialCodec {
    n: usize,
    m: usize,
    inner: SystematicCode,
}

fn complement_if_heavy(d: &mut [u8]) {
    let norm: u64 = d.iter().map(|&v| v as u64).sum();
    if 2 * norm > 5 * d.len() as u64 {
        for v in d.iter_mut() {
            *v = 5 - *v;
        }
    }
}

impl SpecialCodec {
    pub fn new(n: usize) -> Result<Self> {
        let inner = SystematicCode::new(n.saturating_sub(1))
            .map_err(|_| Error::Parameter(format!("length {n} is too short for this encoder")))?;
        let m = inner
            .data_len()
            .checked_sub(1)
            .filter(|&m| m >= 1)
            .ok_or_else(|| Error::Parameter(format!("length {n} is too short for this encoder")))?;
        Ok(SpecialCodec { n, m, inner })
    }

    /// Message length in quaternary symbols.
    pub fn symbols(&self) -> usize {
        self.m
    }

    fn data_to_message(&self, u: &[u8]) -> Option<Bits> {
        let mut d = differential(&Word::from_raw(u.to_vec())).into_symbols();
        match d.pop()? {
            1 => {}
            4 => d.iter_mut().for_each(|v| *v = 5 - *v),
            _ => return None,
        }
        Some(phi(&differential_inverse(&Word::from_raw(d))))
    }

    /// Rebuilds the data-part syndromes from the codeword tail `c[m+2..n]`.
    fn tail_params(&self, tail: &[u8]) -> Option<VtParams> {
        let len = tail.len();
        let flipped = match smod4(tail[len - 1] as i64 - tail[len - 2] as i64) {
            1 => false,
            4 => true,
            _ => return None,
        };
        // The first tail symbol sits 2 (or, complemented, 3) above the last
        // data symbol, while the guard sits 2 above it.
        let mut z = Vec::with_capacity(len - 1);
        z.push(smod4(tail[0] as i64 - i64::from(flipped)));
        for i in 1..len - 1 {
            let mut d = smod4(tail[i] as i64 - tail[i - 1] as i64);
            if flipped {
                d = 5 - d;
            }
            z.push(smod4(z[i - 1] as i64 + d as i64));
        }
        if z[0] != z[1] {
            return None;
        }
        let a = syndrome_value(&z[3..]);
        if a >= self.inner.n() as u64 {
            return None;
        }
        VtParams::with_modulus(self.m + 1, self.inner.n(), a as usize, z[2]).ok()
    }

    /// Data words consistent with `r`, before verification.
    fn candidates(&self, r: &[u8]) -> Vec<Vec<u8>> {
        let (n, m) = (self.n, self.m);
        let mut out = vec![r[..m + 1].to_vec()];
        // Indel among the first m + 1 (deletion) or m + 2 (insertion) symbols.
        let split = if r.len() + 1 == n {
            Some((m, &r[m..]))
        } else if r.len() == n + 1 {
            Some((m + 2, &r[m + 2..]))
        } else {
            None
        };
        if let Some((data_len, tail)) = split {
            if let Some(params) = self.tail_params(tail) {
                if let Ok(u) = decode_indel(&Word::from_raw(r[..data_len].to_vec()), &params) {
                    out.push(u.into_symbols());
                }
            }
        }
        out
    }
}

impl Codec for SpecialCodec {
    fn length(&self) -> usize {
        self.n
    }

    fn message_bits(&self) -> usize {
        2 * self.m
    }

    fn synthesis_bound(&self) -> u64 {
        5 * self.n as u64 / 2
    }

    fn encode(&self, msg: &Bits) -> Result<Word> {
        check_message(msg, self.message_bits())?;
        let y = phi_inverse(msg)?;
        let mut head = differential(&y).into_symbols();
        head.push(1);
        complement_if_heavy(&mut head);
        let z = self
            .inner
            .encode(&differential_inverse(&Word::from_raw(head)))?;

        let mut steps = differential(&z).into_symbols();
        steps.push(1);
        complement_if_heavy(&mut steps[self.m + 1..]);
        Ok(differential_inverse(&Word::from_raw(steps)))
    }

    fn decode(&self, received: &Word) -> Result<Bits> {
        let r = received.symbols();
        if r.len() + 1 < self.n || r.len() > self.n + 1 {
            return Err(Error::Malformed(format!(
                "received length {} is not within one of {}",
                r.len(),
                self.n
            )));
        }
        for u in self.candidates(r) {
            let Some(msg) = self.data_to_message(&u) else {
                continue;
            };
            let c = self.encode(&msg)?;
            if within_one_indel(c.symbols(), r) {
                return Ok(msg);
            }
        }
        Err(Error::DecodeFailure(format!(
            "{received} is not within one indel of any codeword"
        )))
    }
}
