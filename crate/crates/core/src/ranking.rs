//! Rank and unrank for `W(n, T)` and for the VT slices `W_n(len, T, a, b, last)`.
//!
//! Both orders unfold the counting recursions. In `W(n, T)` the words whose
//! final differential step is `k` form a contiguous block, blocks ordered by
//! increasing `k`, and each block is ordered recursively by its prefix. In a
//! slice the blocks are keyed by the second-to-last symbol instead. Ranks are
//! 1-based.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::counting::{predecessor, SliceCounts, SliceKey, WordCounts};
use crate::error::{Error, Result};
use crate::word::{aux_syndrome, differential, differential_inverse, synthesis_time, Word};

/// Final-symbol selector for slice queries; `Any` ranks over the union of the
/// four slices, ordered by final symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LastSymbol {
    Fixed(u8),
    Any,
}

fn check_rank(j: &BigUint, size: &BigUint) -> Result<()> {
    if j.is_zero() || j > size {
        return Err(Error::RankOutOfRange {
            rank: j.clone(),
            size: size.clone(),
        });
    }
    Ok(())
}

/// The `j`-th word of `W(n, T)`.
pub fn unrank_word(counts: &WordCounts, j: &BigUint, n: usize, t: i64) -> Result<Word> {
    if n > counts.max_len() {
        return Err(Error::Parameter(format!(
            "length {n} exceeds the count table"
        )));
    }
    check_rank(j, counts.get(n, t))?;
    let mut j = j.clone();
    let mut t = t;
    let mut steps = vec![0u8; n];
    for len in (1..=n).rev() {
        let mut k = 1u8;
        loop {
            let block = counts.get(len - 1, t - k as i64);
            if j <= *block {
                break;
            }
            j -= block;
            k += 1;
            debug_assert!(k <= 4);
        }
        steps[len - 1] = k;
        t -= k as i64;
    }
    Ok(differential_inverse(&Word::from_raw(steps)))
}

/// Position of `x` in `W(|x|, T)`.
pub fn rank_word(counts: &WordCounts, x: &Word, t: i64) -> Result<BigUint> {
    let n = x.len();
    if n > counts.max_len() {
        return Err(Error::Parameter(format!(
            "length {n} exceeds the count table"
        )));
    }
    if synthesis_time(x) as i64 > t {
        return Err(Error::NotMember {
            word: x.to_string(),
            set: format!("W({n},{t})"),
        });
    }
    let steps = differential(x);
    let mut rank = BigUint::one();
    let mut t = t;
    for len in (1..=n).rev() {
        let k = steps.symbols()[len - 1];
        for i in 1..k {
            rank += counts.get(len - 1, t - i as i64);
        }
        t -= k as i64;
    }
    Ok(rank)
}

fn check_slice_query(table: &SliceCounts, len: usize, t: i64, a: usize, b: u8) -> Result<()> {
    let n = table.n();
    if len == 0 || len > n {
        return Err(Error::Parameter(format!("length {len} outside 1..={n}")));
    }
    if a >= n || !(1..=4).contains(&b) {
        return Err(Error::Parameter(format!(
            "residues (a={a}, b={b}) invalid for n={n}"
        )));
    }
    if t > table.t_max() as i64 && table.t_max() < 4 * len {
        return Err(Error::Parameter(format!(
            "budget {t} exceeds the table built for T <= {}",
            table.t_max()
        )));
    }
    Ok(())
}

/// The `j`-th element of `W_n(len, T, a, b, last)`.
pub fn unrank_slice(
    table: &SliceCounts,
    j: &BigUint,
    len: usize,
    t: i64,
    a: usize,
    b: u8,
    last: LastSymbol,
) -> Result<Word> {
    check_slice_query(table, len, t, a, b)?;
    let n = table.n();
    let mut j = j.clone();
    let mut key = match last {
        LastSymbol::Fixed(s) => {
            if !(1..=4).contains(&s) {
                return Err(Error::Parameter(format!("final symbol {s} outside 1..=4")));
            }
            let key = SliceKey {
                len,
                budget: t,
                a,
                b,
                last: s,
            };
            check_rank(&j, table.get(&key))?;
            key
        }
        LastSymbol::Any => {
            check_rank(&j, &table.wildcard(len, t, a, b))?;
            let mut s = 1u8;
            loop {
                let key = SliceKey {
                    len,
                    budget: t,
                    a,
                    b,
                    last: s,
                };
                let block = table.get(&key);
                if j <= *block {
                    break key;
                }
                j -= block;
                s += 1;
            }
        }
    };

    let mut out = vec![0u8; len];
    while key.len > 1 {
        out[key.len - 1] = key.last;
        let mut prev = 1u8;
        let next = loop {
            let p = predecessor(n, &key, prev);
            let block = table.get(&p);
            if j <= *block {
                break p;
            }
            j -= block;
            prev += 1;
            debug_assert!(prev <= 4);
        };
        key = next;
    }
    debug_assert!(j.is_one() && key.a == 0 && key.b == key.last);
    out[0] = key.last;
    Ok(Word::from_raw(out))
}

/// Position of `x` in `W_n(|x|, T, a, b, last)`.
pub fn rank_slice(
    table: &SliceCounts,
    x: &Word,
    t: i64,
    a: usize,
    b: u8,
    last: LastSymbol,
) -> Result<BigUint> {
    let len = x.len();
    check_slice_query(table, len, t, a, b)?;
    let n = table.n();
    let s = x.symbols();
    let member = synthesis_time(x) as i64 <= t
        && (aux_syndrome(s) % n as u64) as usize == a
        && x.sum_mod4() == b
        && match last {
            LastSymbol::Fixed(v) => s[len - 1] == v,
            LastSymbol::Any => true,
        };
    if !member {
        return Err(Error::NotMember {
            word: x.to_string(),
            set: format!("W_{n}({len},{t},{a},{b},{last:?})"),
        });
    }

    let mut rank = BigUint::one();
    let mut key = SliceKey {
        len,
        budget: t,
        a,
        b,
        last: s[len - 1],
    };
    if last == LastSymbol::Any {
        for v in 1..key.last {
            rank += table.get(&SliceKey { last: v, ..key });
        }
    }
    while key.len > 1 {
        let prev = s[key.len - 2];
        for v in 1..prev {
            rank += table.get(&predecessor(n, &key, v));
        }
        key = predecessor(n, &key, prev);
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn unrank_word_examples() {
        let counts = WordCounts::new(6);
        assert_eq!(unrank_word(&counts, &big(1), 3, 6).unwrap(), w("123"));
        assert_eq!(unrank_word(&counts, &big(20), 3, 6).unwrap(), w("122"));
        assert_eq!(unrank_word(&counts, &big(11), 3, 6).unwrap(), w("124"));
        for t in 1..=7 {
            for j in 1..=t.min(4) {
                assert_eq!(
                    unrank_word(&counts, &big(j as u64), 1, t).unwrap(),
                    Word::from_raw(vec![j as u8])
                );
            }
        }
        assert!(matches!(
            unrank_word(&counts, &big(21), 3, 6),
            Err(Error::RankOutOfRange { .. })
        ));
        assert!(unrank_word(&counts, &big(0), 3, 6).is_err());
    }

    #[test]
    fn rank_word_examples() {
        let counts = WordCounts::new(6);
        assert_eq!(rank_word(&counts, &w("41"), 5).unwrap(), big(4));
        assert_eq!(rank_word(&counts, &w("11"), 5).unwrap(), big(10));
        assert!(matches!(
            rank_word(&counts, &w("44"), 5),
            Err(Error::NotMember { .. })
        ));
    }

    #[test]
    fn word_round_trip_and_blocks() {
        let counts = WordCounts::new(6);
        for n in 1..=6 {
            for t in 0..=4 * n as i64 + 1 {
                let size = counts.get(n, t).clone();
                let mut seen = BTreeSet::new();
                let mut last_step = 0u8;
                let mut j = BigUint::one();
                while j <= size {
                    let x = unrank_word(&counts, &j, n, t).unwrap();
                    assert!(synthesis_time(&x) as i64 <= t);
                    assert_eq!(rank_word(&counts, &x, t).unwrap(), j);
                    let step = *differential(&x).symbols().last().unwrap();
                    assert!(step >= last_step, "blocks out of order");
                    last_step = step;
                    assert!(seen.insert(x));
                    j += 1u32;
                }
            }
        }
    }

    #[test]
    fn singleton_slice() {
        let table = SliceCounts::new(4, 4).unwrap();
        let x = unrank_slice(&table, &big(1), 1, 4, 0, 3, LastSymbol::Fixed(3)).unwrap();
        assert_eq!(x, w("3"));
        assert_eq!(
            rank_slice(&table, &x, 4, 0, 3, LastSymbol::Fixed(3)).unwrap(),
            big(1)
        );
        assert!(unrank_slice(&table, &big(1), 1, 4, 1, 3, LastSymbol::Fixed(3)).is_err());
    }

    #[test]
    fn rank_slice_rejects_non_members() {
        let table = SliceCounts::new(4, 16).unwrap();
        let x = w("1234");
        let a = (aux_syndrome(x.symbols()) % 4) as usize;
        let b = x.sum_mod4();
        assert!(rank_slice(&table, &x, 16, a, b, LastSymbol::Any).is_ok());
        assert!(rank_slice(&table, &x, 16, (a + 1) % 4, b, LastSymbol::Any).is_err());
        assert!(rank_slice(&table, &x, 16, a, b, LastSymbol::Fixed(3)).is_err());
        assert!(rank_slice(&table, &x, 3, a, b, LastSymbol::Any).is_err());
    }
}
