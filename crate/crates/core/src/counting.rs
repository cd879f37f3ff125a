//! Exact counts of synthesis-constrained words.
//!
//! [`WordCounts`] tabulates `A(len, t)`, the number of length-`len` words with
//! synthesis time at most `t`, through the last-step recursion
//! `A(len, t) = sum_{k=1..4} A(len-1, t-k)` with `A(0, t) = 1` for `t >= 0`.
//!
//! [`SliceCounts`] refines this by the VT syndrome of the auxiliary sequence
//! (mod `n`), the symbol sum (mod 4) and the final symbol. Budgets above `4 len`
//! are equivalent to `4 len`, so every table clamps there.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::word::smod4;

pub(crate) static ZERO: BigUint = BigUint::ZERO;

/// `A(len, t)` for every `len <= max_len` and `0 <= t <= 4 len`.
#[derive(Debug, Clone)]
pub struct WordCounts {
    rows: Vec<Vec<BigUint>>,
}

impl WordCounts {
    pub fn new(max_len: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max_len + 1);
        rows.push(vec![BigUint::one()]);
        for len in 1..=max_len {
            let prev = &rows[len - 1];
            let cap = 4 * len;
            let row = (0..=cap)
                .map(|t| {
                    (1..=4usize)
                        .filter(|&k| k <= t)
                        .map(|k| &prev[(t - k).min(4 * (len - 1))])
                        .sum()
                })
                .collect();
            rows.push(row);
        }
        WordCounts { rows }
    }

    pub fn max_len(&self) -> usize {
        self.rows.len() - 1
    }

    /// `A(len, t)`; negative budgets count nothing.
    pub fn get(&self, len: usize, t: i64) -> &BigUint {
        assert!(len <= self.max_len(), "length {len} beyond table");
        if t < 0 {
            return &ZERO;
        }
        let row = &self.rows[len];
        &row[(t as usize).min(row.len() - 1)]
    }
}

/// `A(n, T)`, the size of the largest `(n, T)`-synthesis code.
pub fn count_a(n: usize, t: i64) -> BigUint {
    WordCounts::new(n).get(n, t).clone()
}

/// Coefficients of `z^0 .. z^t_max` in `(z + z^2 + z^3 + z^4)^n / (1 - z)`,
/// obtained by plain polynomial multiplication.
pub fn gf_coefficients(n: usize, t_max: usize) -> Vec<BigUint> {
    let mut poly = vec![BigUint::zero(); t_max + 1];
    poly[0] = BigUint::one();
    for _ in 0..n {
        let mut next = vec![BigUint::zero(); t_max + 1];
        for (deg, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for step in 1..=4 {
                if deg + step <= t_max {
                    next[deg + step] += c;
                }
            }
        }
        poly = next;
    }
    let mut acc = BigUint::zero();
    poly.into_iter()
        .map(|c| {
            acc += c;
            acc.clone()
        })
        .collect()
}

/// Checks the generating function against the recursion for all `T <= t_max`.
pub fn gf_check(n: usize, t_max: usize) -> bool {
    let counts = WordCounts::new(n);
    gf_coefficients(n, t_max)
        .iter()
        .enumerate()
        .all(|(t, c)| c == counts.get(n, t as i64))
}

/// Index of a `W_n(len, budget, a, b, last)` slice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SliceKey {
    pub len: usize,
    pub budget: i64,
    /// VT syndrome residue mod `n`.
    pub a: usize,
    /// Symbol sum residue in `1..=4`.
    pub b: u8,
    /// Final symbol.
    pub last: u8,
}

/// The prefix slice a word of `key` reduces to when its final symbol is
/// dropped and the new final symbol is `prev`.
pub(crate) fn predecessor(n: usize, key: &SliceKey, prev: u8) -> SliceKey {
    let step = smod4(key.last as i64 - prev as i64) as i64;
    let ascent = if key.last >= prev { key.len - 1 } else { 0 };
    SliceKey {
        len: key.len - 1,
        budget: key.budget - step,
        a: (key.a + n - ascent % n) % n,
        b: smod4(key.b as i64 - key.last as i64),
        last: prev,
    }
}

#[derive(Debug, Clone)]
struct Layer {
    t_cap: usize,
    cells: Vec<BigUint>,
}

impl Layer {
    fn zeroed(n: usize, t_cap: usize) -> Self {
        Layer {
            t_cap,
            cells: vec![BigUint::zero(); (t_cap + 1) * n * 16],
        }
    }

    #[inline]
    fn index(n: usize, t: usize, a: usize, b: u8, last: u8) -> usize {
        ((t * n + a) * 4 + (b - 1) as usize) * 4 + (last - 1) as usize
    }

    fn get(&self, n: usize, t: i64, a: usize, b: u8, last: u8) -> &BigUint {
        if t < 0 {
            return &ZERO;
        }
        let t = (t as usize).min(self.t_cap);
        &self.cells[Self::index(n, t, a, b, last)]
    }
}

fn first_layer(n: usize, t_max: usize) -> Layer {
    let mut layer = Layer::zeroed(n, t_max.min(4));
    for t in 0..=layer.t_cap {
        for last in 1..=4u8 {
            if last as usize <= t {
                layer.cells[Layer::index(n, t, 0, last, last)] = BigUint::one();
            }
        }
    }
    layer
}

fn next_layer(n: usize, len: usize, t_max: usize, prev: &Layer) -> Layer {
    let mut layer = Layer::zeroed(n, t_max.min(4 * len));
    for t in 0..=layer.t_cap {
        for a in 0..n {
            for b in 1..=4u8 {
                for last in 1..=4u8 {
                    let key = SliceKey {
                        len,
                        budget: t as i64,
                        a,
                        b,
                        last,
                    };
                    let mut total = BigUint::zero();
                    for prev_sym in 1..=4u8 {
                        let p = predecessor(n, &key, prev_sym);
                        total += prev.get(n, p.budget, p.a, p.b, p.last);
                    }
                    layer.cells[Layer::index(n, t, a, b, last)] = total;
                }
            }
        }
    }
    layer
}

/// Full table of `|W_n(len, t, a, b, last)|` for `1 <= len <= n` and
/// `t <= t_max`, kept in memory to serve rank and unrank queries.
#[derive(Debug, Clone)]
pub struct SliceCounts {
    n: usize,
    t_max: usize,
    layers: Vec<Layer>,
}

impl SliceCounts {
    pub fn new(n: usize, t_max: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("slice tables need n >= 1".into()));
        }
        let t_max = t_max.min(4 * n);
        let mut layers = Vec::with_capacity(n);
        layers.push(first_layer(n, t_max));
        for len in 2..=n {
            let layer = next_layer(n, len, t_max, &layers[len - 2]);
            layers.push(layer);
        }
        Ok(SliceCounts { n, t_max, layers })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t_max(&self) -> usize {
        self.t_max
    }

    pub fn get(&self, key: &SliceKey) -> &BigUint {
        if key.len == 0 || key.len > self.n {
            return &ZERO;
        }
        self.layers[key.len - 1].get(self.n, key.budget, key.a, key.b, key.last)
    }

    /// Size of the union over the final symbol.
    pub fn wildcard(&self, len: usize, budget: i64, a: usize, b: u8) -> BigUint {
        (1..=4u8)
            .map(|last| {
                self.get(&SliceKey {
                    len,
                    budget,
                    a,
                    b,
                    last,
                })
            })
            .sum()
    }
}

/// `|W_n(len, T, a, b, last)|`.
pub fn count_slice(key: &SliceKey, n: usize) -> Result<BigUint> {
    validate_residues(n, key.a, key.b)?;
    if !(1..=4).contains(&key.last) {
        return Err(Error::Parameter(format!(
            "final symbol {} outside 1..=4",
            key.last
        )));
    }
    if key.len == 0 || key.len > n {
        return Err(Error::Parameter(format!(
            "length {} outside 1..={n}",
            key.len
        )));
    }
    if key.budget < 0 {
        return Ok(BigUint::zero());
    }
    let t_max = (key.budget as usize).min(4 * key.len);
    let mut layer = first_layer(n, t_max);
    for len in 2..=key.len {
        layer = next_layer(n, len, t_max, &layer);
    }
    Ok(layer.get(n, key.budget, key.a, key.b, key.last).clone())
}

fn validate_residues(n: usize, a: usize, b: u8) -> Result<()> {
    if n == 0 {
        return Err(Error::Parameter("n must be positive".into()));
    }
    if a >= n {
        return Err(Error::Parameter(format!("a = {a} must lie in 0..{n}")));
    }
    if !(1..=4).contains(&b) {
        return Err(Error::Parameter(format!("b = {b} must lie in 1..=4")));
    }
    Ok(())
}

/// `|VT_n(a, b, T)|` for every `(a, b)`, built with two rolling layers.
#[derive(Debug, Clone)]
pub struct VtCounts {
    n: usize,
    t: i64,
    grid: Vec<BigUint>,
}

impl VtCounts {
    pub fn new(n: usize, t: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("n must be positive".into()));
        }
        let mut grid = vec![BigUint::zero(); n * 4];
        if t >= 0 {
            let t_max = (t as usize).min(4 * n);
            let mut layer = first_layer(n, t_max);
            for len in 2..=n {
                layer = next_layer(n, len, t_max, &layer);
            }
            for a in 0..n {
                for b in 1..=4u8 {
                    grid[a * 4 + (b - 1) as usize] =
                        (1..=4u8).map(|last| layer.get(n, t, a, b, last)).sum();
                }
            }
        }
        Ok(VtCounts { n, t, grid })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn budget(&self) -> i64 {
        self.t
    }

    pub fn get(&self, a: usize, b: u8) -> &BigUint {
        &self.grid[a * 4 + (b - 1) as usize]
    }

    pub fn total(&self) -> BigUint {
        self.grid.iter().sum()
    }

    /// Largest class; ties go to the smallest `a`, then the smallest `b`.
    pub fn best(&self) -> (usize, u8, BigUint) {
        let mut best = (0, 1, self.get(0, 1).clone());
        for a in 0..self.n {
            for b in 1..=4u8 {
                let c = self.get(a, b);
                if *c > best.2 {
                    best = (a, b, c.clone());
                }
            }
        }
        best
    }
}

/// `|VT_n(a, b, T)|`.
pub fn count_vt(n: usize, t: i64, a: usize, b: u8) -> Result<BigUint> {
    validate_residues(n, a, b)?;
    Ok(VtCounts::new(n, t)?.get(a, b).clone())
}

/// The `(a, b)` maximizing `|VT_n(a, b, T)|`, for `n < T <= 4n`.
pub fn best_vt_params(n: usize, t: i64) -> Result<(usize, u8, BigUint)> {
    if n == 0 || t <= n as i64 || t > 4 * n as i64 {
        return Err(Error::Parameter(format!(
            "synthesis budget {t} must satisfy {n} < T <= {}",
            4 * n
        )));
    }
    Ok(VtCounts::new(n, t)?.best())
}
