//! Quaternary Varshamov-Tenengolts codes.
//!
//! `VT_n(a, b)` holds the length-`n` words whose auxiliary sequence has VT
//! syndrome `a` (mod the code modulus) and whose symbol sum is `b` (mod 4).
//! Any modulus `>= n` keeps the indel balls of distinct codewords disjoint,
//! which the systematic code relies on: its data part of length `m` is
//! protected with modulus `n > m`.

use crate::error::{Error, Result};
use crate::word::{aux_syndrome, ceil_log4, smod4, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VtParams {
    pub n: usize,
    pub modulus: usize,
    pub a: usize,
    pub b: u8,
}

impl VtParams {
    pub fn new(n: usize, a: usize, b: u8) -> Result<Self> {
        Self::with_modulus(n, n, a, b)
    }

    pub fn with_modulus(n: usize, modulus: usize, a: usize, b: u8) -> Result<Self> {
        if modulus == 0 || modulus < n {
            return Err(Error::Parameter(format!(
                "modulus {modulus} must be positive and at least the length {n}"
            )));
        }
        if a >= modulus || !(1..=4).contains(&b) {
            return Err(Error::Parameter(format!(
                "residues (a={a}, b={b}) invalid for modulus {modulus}"
            )));
        }
        Ok(VtParams { n, modulus, a, b })
    }

    pub fn contains(&self, x: &Word) -> bool {
        x.len() == self.n
            && (aux_syndrome(x.symbols()) % self.modulus as u64) as usize == self.a
            && x.sum_mod4() == self.b
    }
}

/// Prefix tables over the ascent bits `u_j = [y(j+1) >= y(j)]`:
/// `weighted[k] = sum_{j<k} (j+1) u_j` and `ones[k] = sum_{j<k} u_j`.
struct AscentPrefix {
    weighted: Vec<u64>,
    ones: Vec<u64>,
}

impl AscentPrefix {
    fn new(y: &[u8]) -> Self {
        let bits = y.len().saturating_sub(1);
        let mut weighted = Vec::with_capacity(bits + 1);
        let mut ones = Vec::with_capacity(bits + 1);
        weighted.push(0);
        ones.push(0);
        for j in 0..bits {
            let u = u64::from(y[j + 1] >= y[j]);
            weighted.push(weighted[j] + (j as u64 + 1) * u);
            ones.push(ones[j] + u);
        }
        AscentPrefix { weighted, ones }
    }

    fn w(&self, k: usize) -> u64 {
        self.weighted[k.min(self.weighted.len() - 1)]
    }

    fn c(&self, k: usize) -> u64 {
        self.ones[k.min(self.ones.len() - 1)]
    }

    fn bits(&self) -> usize {
        self.weighted.len() - 1
    }
}

/// Syndrome of `y` with position `p` removed.
fn syndrome_after_deletion(y: &[u8], pre: &AscentPrefix, p: usize) -> u64 {
    let len = y.len();
    let bits = pre.bits();
    let mut s = if p >= 1 { pre.w(p - 1) } else { 0 };
    if p >= 1 && p + 1 < len {
        s += p as u64 * u64::from(y[p + 1] >= y[p - 1]);
    }
    if p + 1 < bits {
        s += (pre.w(bits) - pre.w(p + 1)) - (pre.c(bits) - pre.c(p + 1));
    }
    s
}

/// Syndrome of `y` with symbol `e` inserted before position `p`.
fn syndrome_after_insertion(y: &[u8], pre: &AscentPrefix, p: usize, e: u8) -> u64 {
    let len = y.len();
    let bits = pre.bits();
    let mut s = if p >= 1 { pre.w(p - 1) } else { 0 };
    if p >= 1 {
        s += p as u64 * u64::from(e >= y[p - 1]);
    }
    if p < len {
        s += (p as u64 + 1) * u64::from(y[p] >= e);
    }
    if p < bits {
        s += (pre.w(bits) - pre.w(p)) + (pre.c(bits) - pre.c(p));
    }
    s
}

/// Recovers the codeword of `VT_n(a, b)` whose indel ball contains `y`.
///
/// Every word one insertion (or deletion) away from `y` is screened with
/// prefix sums, so each candidate costs O(1) and the whole search O(n).
/// Only one representative per distinct word is screened.
pub fn decode_indel(y: &Word, params: &VtParams) -> Result<Word> {
    let n = params.n;
    let s = y.symbols();
    let modulus = params.modulus as u64;
    let a = params.a as u64;
    let total = y.norm() as i64;

    let mut found: Option<Word> = None;
    let mut accept = |candidate: Word| -> Result<()> {
        match &found {
            Some(prev) if *prev != candidate => Err(Error::DecodeFailure(format!(
                "received word {y} is ambiguous between {prev} and {candidate}"
            ))),
            _ => {
                found = Some(candidate);
                Ok(())
            }
        }
    };

    if s.len() == n {
        if params.contains(y) {
            return Ok(y.clone());
        }
    } else if s.len() + 1 == n {
        let e = smod4(params.b as i64 - total);
        let pre = AscentPrefix::new(s);
        for p in 0..=s.len() {
            if p > 0 && s[p - 1] == e {
                continue;
            }
            if syndrome_after_insertion(s, &pre, p, e) % modulus == a {
                let mut v = Vec::with_capacity(n);
                v.extend_from_slice(&s[..p]);
                v.push(e);
                v.extend_from_slice(&s[p..]);
                accept(Word::from_raw(v))?;
            }
        }
    } else if s.len() == n + 1 {
        let e = smod4(total - params.b as i64);
        let pre = AscentPrefix::new(s);
        for p in 0..s.len() {
            if s[p] != e || (p > 0 && s[p - 1] == e) {
                continue;
            }
            if syndrome_after_deletion(s, &pre, p) % modulus == a {
                let mut v = Vec::with_capacity(n);
                v.extend_from_slice(&s[..p]);
                v.extend_from_slice(&s[p + 1..]);
                accept(Word::from_raw(v))?;
            }
        }
    } else {
        return Err(Error::Malformed(format!(
            "received length {} is not within one of {n}",
            s.len()
        )));
    }

    found.ok_or_else(|| {
        Error::DecodeFailure(format!(
            "no word of VT_{n}({}, {}) is within one indel of {y}",
            params.a, params.b
        ))
    })
}

/// Layout of the systematic single-indel correcting code of length `n`:
///
/// ```text
/// c[1..m]        data
/// c[m+1], c[m+2] guard pair, both equal to c[m] + 2
/// c[m+3]         data symbol sum
/// c[m+4..n]      VT syndrome of the data, mod n, in base 4
/// ```
///
/// Syndrome digits are written most significant first with digit `d`
/// stored as symbol `d + 1`, in a fixed width of `ceil(log4 n)` symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SystematicCode {
    n: usize,
    m: usize,
    width: usize,
}

impl SystematicCode {
    pub fn new(n: usize) -> Result<Self> {
        let width = ceil_log4(n);
        let m = n
            .checked_sub(width + 3)
            .filter(|&m| m >= 1)
            .ok_or_else(|| Error::Parameter(format!("length {n} leaves no room for data")))?;
        Ok(SystematicCode { n, m, width })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn data_len(&self) -> usize {
        self.m
    }

    pub fn syndrome_width(&self) -> usize {
        self.width
    }

    pub fn encode(&self, x: &Word) -> Result<Word> {
        if x.len() != self.m {
            return Err(Error::Parameter(format!(
                "data length {} does not match {} for n = {}",
                x.len(),
                self.m,
                self.n
            )));
        }
        let mut c = Vec::with_capacity(self.n);
        c.extend_from_slice(x.symbols());
        let guard = smod4(c[self.m - 1] as i64 + 2);
        c.push(guard);
        c.push(guard);
        c.push(x.sum_mod4());
        let syndrome = aux_syndrome(x.symbols()) % self.n as u64;
        c.extend(syndrome_digits(syndrome, self.width));
        Ok(Word::from_raw(c))
    }

    pub fn decode(&self, y: &Word) -> Result<Word> {
        let (n, m) = (self.n, self.m);
        let s = y.symbols();
        if s.len() == n {
            return Ok(y.slice(0..m));
        }
        if s.len() == n + 1 {
            // Equal guards at m+1, m+2 mean the insertion landed after the data.
            if s[m] == s[m + 1] {
                return Ok(y.slice(0..m));
            }
            let params = self.data_params(s[m + 3], &s[m + 4..])?;
            return decode_indel(&y.slice(0..m + 1), &params);
        }
        if s.len() + 1 == n {
            // A deletion in the data shifts the guard pair onto positions m, m+1.
            if s[m - 1] != s[m] {
                return Ok(y.slice(0..m));
            }
            let params = self.data_params(s[m + 1], &s[m + 2..])?;
            return decode_indel(&y.slice(0..m - 1), &params);
        }
        Err(Error::Malformed(format!(
            "received length {} is not within one of {n}",
            s.len()
        )))
    }

    fn data_params(&self, sum: u8, digits: &[u8]) -> Result<VtParams> {
        let a = syndrome_value(digits);
        if a >= self.n as u64 {
            return Err(Error::DecodeFailure(format!(
                "syndrome field {a} exceeds the modulus {}",
                self.n
            )));
        }
        VtParams::with_modulus(self.m, self.n, a as usize, sum)
    }
}

pub(crate) fn syndrome_digits(value: u64, width: usize) -> impl Iterator<Item = u8> {
    (0..width)
        .rev()
        .map(move |i| ((value >> (2 * i)) & 3) as u8 + 1)
}

pub(crate) fn syndrome_value(digits: &[u8]) -> u64 {
    digits.iter().fold(0, |acc, &d| acc * 4 + (d as u64 - 1))
}

/// Systematic encoding of `x` into length `n`.
pub fn enc_h(x: &Word, n: usize) -> Result<Word> {
    SystematicCode::new(n)?.encode(x)
}

pub fn dec_h(y: &Word, n: usize) -> Result<Word> {
    SystematicCode::new(n)?.decode(y)
}
