//! Quaternary words, binary messages and the elementary transforms between
//! them.
//!
//! Symbols live in `{1,2,3,4}` and all modular arithmetic on symbols goes
//! through [`smod4`], which maps any integer into that shifted range. The
//! alternating supersequence scanned by the synthesizer is `1234 1234 ...`,
//! so the number of cycles a strand needs is the L1 norm of its
//! differential word.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shifted modulo: the unique value in `{1,2,3,4}` congruent to `v` mod 4.
#[inline]
pub fn smod4(v: i64) -> u8 {
    ((v - 1).rem_euclid(4) + 1) as u8
}

/// Smallest `w` with `4^w >= n`.
pub fn ceil_log4(n: usize) -> usize {
    let mut w = 0;
    let mut p: u128 = 1;
    while p < n as u128 {
        p *= 4;
        w += 1;
    }
    w
}

/// A word over the alphabet `{1,2,3,4}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(symbols: Vec<u8>) -> Result<Self> {
        if let Some(pos) = symbols.iter().position(|s| !(1..=4).contains(s)) {
            return Err(Error::Malformed(format!(
                "symbol {} at position {} is outside 1..=4",
                symbols[pos],
                pos + 1
            )));
        }
        Ok(Word(symbols))
    }

    /// Caller guarantees every symbol is in `1..=4`.
    pub(crate) fn from_raw(symbols: Vec<u8>) -> Self {
        debug_assert!(symbols.iter().all(|s| (1..=4).contains(s)));
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.0
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    /// L1 norm, the plain sum of the symbols.
    pub fn norm(&self) -> u64 {
        self.0.iter().map(|&s| s as u64).sum()
    }

    /// Symbol sum reduced with [`smod4`].
    pub fn sum_mod4(&self) -> u8 {
        smod4(self.norm() as i64)
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Parses a DNA string, mapping `A,C,G,T` to `1,2,3,4`.
    pub fn from_dna(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(i, ch)| match ch {
                'A' => Ok(1),
                'C' => Ok(2),
                'G' => Ok(3),
                'T' => Ok(4),
                other => Err(Error::Malformed(format!(
                    "character {other:?} at position {} is not one of A, C, G, T",
                    i + 1
                ))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Word)
    }

    pub fn to_dna(&self) -> String {
        self.0
            .iter()
            .map(|&s| b"ACGT"[(s - 1) as usize] as char)
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::Malformed(format!("{c:?} is not a digit")))
            })
            .collect::<Result<Vec<u8>>>()?;
        Word::new(symbols)
    }
}

impl TryFrom<String> for Word {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

/// An ordered binary message. Numeric interpretation is MSB-first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Bits(Vec<bool>);

impl Bits {
    pub fn new(bits: Vec<bool>) -> Self {
        Bits(bits)
    }

    pub fn zeros(len: usize) -> Self {
        Bits(vec![false; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Bits {
        Bits(self.0[range].to_vec())
    }

    pub fn extend(&mut self, other: &Bits) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn to_biguint(&self) -> BigUint {
        let mut v = BigUint::zero();
        for &b in &self.0 {
            v <<= 1u32;
            if b {
                v += 1u32;
            }
        }
        v
    }

    /// MSB-first `len`-bit representation of `value`.
    pub fn from_biguint(value: &BigUint, len: usize) -> Result<Self> {
        if value.bits() > len as u64 {
            return Err(Error::Parameter(format!(
                "value {value} does not fit in {len} bits"
            )));
        }
        Ok(Bits(
            (0..len).map(|i| value.bit((len - 1 - i) as u64)).collect(),
        ))
    }

    /// The first `len` bits of `bytes`, MSB-first within each byte.
    pub fn from_bytes(bytes: &[u8], len: usize) -> Result<Self> {
        if len > bytes.len() * 8 {
            return Err(Error::Malformed(format!(
                "{len} bits requested from {} bytes",
                bytes.len()
            )));
        }
        Ok(Bits(
            (0..len)
                .map(|i| bytes[i / 8] & (0x80 >> (i % 8)) != 0)
                .collect(),
        ))
    }

    /// Packs MSB-first; the final byte is zero padded.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.0.len().div_ceil(8)];
        for (i, &b) in self.0.iter().enumerate() {
            if b {
                out[i / 8] |= 0x80 >> (i % 8);
            }
        }
        out
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Bits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Malformed(format!("{other:?} is not a bit"))),
            })
            .collect::<Result<Vec<bool>>>()
            .map(Bits)
    }
}

impl TryFrom<String> for Bits {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Bits> for String {
    fn from(b: Bits) -> String {
        b.to_string()
    }
}

/// `D(x) = (x1, x2 - x1, ..., xn - x(n-1))`, each entry reduced with [`smod4`].
pub fn differential(x: &Word) -> Word {
    let mut prev = 0i64;
    Word::from_raw(
        x.symbols()
            .iter()
            .map(|&s| {
                let d = smod4(s as i64 - prev);
                prev = s as i64;
                d
            })
            .collect(),
    )
}

/// Inverse of [`differential`]: running sums under [`smod4`].
pub fn differential_inverse(d: &Word) -> Word {
    let mut acc = 0i64;
    Word::from_raw(
        d.symbols()
            .iter()
            .map(|&s| {
                acc = smod4(acc + s as i64) as i64;
                acc as u8
            })
            .collect(),
    )
}

/// Number of cycles of the alternating supersequence needed to synthesize `x`.
/// The empty word takes zero cycles.
pub fn synthesis_time(x: &Word) -> u64 {
    differential(x).norm()
}

/// Two bits per symbol: `1 -> 00, 2 -> 01, 3 -> 10, 4 -> 11`.
pub fn phi(x: &Word) -> Bits {
    Bits(
        x.symbols()
            .iter()
            .flat_map(|&s| {
                let v = s - 1;
                [v & 2 != 0, v & 1 != 0]
            })
            .collect(),
    )
}

pub fn phi_inverse(b: &Bits) -> Result<Word> {
    if b.len() % 2 != 0 {
        return Err(Error::Malformed(format!(
            "bit string of odd length {} has no quaternary image",
            b.len()
        )));
    }
    Ok(Word::from_raw(
        b.as_slice()
            .chunks(2)
            .map(|p| 1 + 2 * p[0] as u8 + p[1] as u8)
            .collect(),
    ))
}

/// Ascent indicator: bit `i` is set iff `x(i+1) >= x(i)`.
pub fn auxiliary(x: &Word) -> Result<Bits> {
    if x.is_empty() {
        return Err(Error::Malformed(
            "auxiliary sequence of the empty word".into(),
        ));
    }
    Ok(Bits(x.symbols().windows(2).map(|w| w[1] >= w[0]).collect()))
}

/// `sum(i * b_i)` with 1-based positions, unreduced.
pub fn vt_syndrome(b: &Bits) -> u64 {
    b.as_slice()
        .iter()
        .enumerate()
        .filter(|(_, &bit)| bit)
        .map(|(i, _)| i as u64 + 1)
        .sum()
}

/// VT syndrome of the auxiliary sequence, with the empty word mapped to 0.
pub fn aux_syndrome(x: &[u8]) -> u64 {
    x.windows(2)
        .enumerate()
        .filter(|(_, w)| w[1] >= w[0])
        .map(|(i, _)| i as u64 + 1)
        .sum()
}

/// All words reachable from `x` by at most one deletion or one insertion.
pub fn indel_ball(x: &Word) -> BTreeSet<Word> {
    let s = x.symbols();
    let mut ball = BTreeSet::new();
    ball.insert(x.clone());
    for p in 0..s.len() {
        let mut v = Vec::with_capacity(s.len() - 1);
        v.extend_from_slice(&s[..p]);
        v.extend_from_slice(&s[p + 1..]);
        ball.insert(Word::from_raw(v));
    }
    for p in 0..=s.len() {
        for e in 1..=4u8 {
            let mut v = Vec::with_capacity(s.len() + 1);
            v.extend_from_slice(&s[..p]);
            v.push(e);
            v.extend_from_slice(&s[p..]);
            ball.insert(Word::from_raw(v));
        }
    }
    ball
}

/// True iff `y` lies in the indel ball of `x`. Linear time.
pub fn within_one_indel(x: &[u8], y: &[u8]) -> bool {
    fn one_deletion(long: &[u8], short: &[u8]) -> bool {
        let split = long.iter().zip(short).take_while(|(a, b)| a == b).count();
        long[split + 1..] == short[split..]
    }
    match x.len() as isize - y.len() as isize {
        0 => x == y,
        1 => one_deletion(x, y),
        -1 => one_deletion(y, x),
        _ => false,
    }
}

/// `2^k <= value` for the largest such `k`; `None` for zero.
pub fn floor_log2(value: &BigUint) -> Option<u64> {
    if value.is_zero() {
        None
    } else {
        Some(value.bits() - 1)
    }
}

/// Float approximation of `log2(value)`, accurate to double precision.
pub fn log2_big(value: &BigUint) -> f64 {
    if value.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = value.bits();
    if bits <= 64 {
        let v: u64 = value.iter_u64_digits().next().unwrap_or(0);
        return (v as f64).log2();
    }
    let shift = bits - 64;
    let top: BigUint = value >> shift;
    let v: u64 = top.iter_u64_digits().next().unwrap_or(0);
    (v as f64).log2() + shift as f64
}

pub(crate) fn pow2(k: usize) -> BigUint {
    BigUint::one() << k
}
