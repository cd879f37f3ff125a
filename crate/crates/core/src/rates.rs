//! Information rates (message bits per synthesis cycle) of the encoders and
//! of the unconstrained-code capacity `log2 A(n, T) / T`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::Serialize;

use crate::counting::WordCounts;
use crate::encoders::{plan_with_counts, BlockPlan, Codec, SpecialCodec};
use crate::error::{Error, Result};
use crate::word::{floor_log2, log2_big};

/// A budget ratio `T / n`, kept exact so that `T = floor(gamma n)` has no
/// rounding error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gamma {
    num: u64,
    den: u64,
}

impl Gamma {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Parameter("gamma has a zero denominator".into()));
        }
        let g = num.gcd(&den);
        let gamma = Gamma {
            num: num / g,
            den: den / g,
        };
        if gamma.num <= gamma.den || gamma.num > 4 * gamma.den {
            return Err(Error::Parameter(format!(
                "gamma = {gamma} must satisfy 1 < gamma <= 4"
            )));
        }
        Ok(gamma)
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// `floor(gamma n)`.
    pub fn budget(&self, n: usize) -> i64 {
        (self.num as u128 * n as u128 / self.den as u128) as i64
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// The nine ratios of the reference n = 127 table.
    pub fn reference_rows() -> Vec<Gamma> {
        [11, 15, 19, 23, 27, 31, 35, 39, 40]
            .iter()
            .map(|&t| Gamma::new(t, 10).expect("valid ratio"))
            .collect()
    }

    /// `1.05, 1.10, ..., 4.00`.
    pub fn capacity_grid() -> Vec<Gamma> {
        (21..=80)
            .map(|k| Gamma::new(k, 20).expect("valid ratio"))
            .collect()
    }
}

/// Accepts decimals (`2.3`) and fractions (`23/10`).
impl FromStr for Gamma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parameter(format!("cannot parse gamma from {s:?}"));
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let num = n.trim().parse().map_err(|_| bad())?;
            let den = d.trim().parse().map_err(|_| bad())?;
            return Gamma::new(num, den);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if int.is_empty() && frac.is_empty()
            || frac.len() > 9
            || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let frac: u64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        Gamma::new(int.checked_mul(den).ok_or_else(bad)? + frac, den)
    }
}

impl fmt::Display for Gamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut den = self.den;
        let mut digits = 0;
        for p in [2u64, 5] {
            while den % p == 0 {
                den /= p;
            }
        }
        if den != 1 {
            return write!(f, "{}/{}", self.num, self.den);
        }
        while 10u64.pow(digits) % self.den != 0 {
            digits += 1;
        }
        let scaled = self.num * (10u64.pow(digits) / self.den);
        let int = scaled / 10u64.pow(digits);
        if digits == 0 {
            write!(f, "{int}")
        } else {
            let frac = scaled % 10u64.pow(digits);
            write!(f, "{int}.{frac:0width$}", width = digits as usize)
        }
    }
}

impl Serialize for Gamma {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `bits / cycles`, exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rate {
    pub bits: u64,
    pub cycles: u64,
}

impl Rate {
    pub fn value(&self) -> f64 {
        self.bits as f64 / self.cycles as f64
    }
}

impl Serialize for Rate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let g = self.bits.gcd(&self.cycles).max(1);
        let mut st = s.serialize_struct("Rate", 3)?;
        st.serialize_field("value", &self.value())?;
        st.serialize_field("num", &(self.bits / g).to_string())?;
        st.serialize_field("den", &(self.cycles / g).to_string())?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RateRow {
    pub gamma: Gamma,
    #[serde(rename = "T")]
    pub t: i64,
    /// Block encoder with the requested block count; zero when infeasible.
    pub rate_a: Rate,
    pub ell: usize,
    /// Block encoder with the best block count.
    pub rate_a_best: Rate,
    pub ell_best: Option<usize>,
    /// Only defined for `T >= 2.5 n`.
    pub rate_b: Option<Rate>,
    pub rate_c: Rate,
}

/// Default block count for the block-encoder column.
pub const DEFAULT_BLOCKS: usize = 6;

/// `floor(log2(A(n, T) / 4n))`, the bits guaranteed for the direct encoder
/// by the pigeonhole bound over the `4n` VT slices.
pub fn direct_bits_bound(counts: &WordCounts, n: usize, t: i64) -> u64 {
    let quotient = counts.get(n, t) / BigUint::from(4 * n);
    floor_log2(&quotient).unwrap_or(0)
}

pub fn rate_table(n: usize, gammas: &[Gamma], ell: usize) -> Result<Vec<RateRow>> {
    if n < 8 {
        return Err(Error::Parameter(format!(
            "rate tables need n >= 8, got {n}"
        )));
    }
    let counts = WordCounts::new(n);
    let special = SpecialCodec::new(n)?;
    gammas
        .iter()
        .map(|&gamma| {
            let t = gamma.budget(n);
            let cycles = t as u64;
            let rate = |bits: usize| Rate {
                bits: bits as u64,
                cycles,
            };
            let fixed = match BlockPlan::with_counts(n, t, ell, &counts) {
                Ok(p) => p.payload_bits(),
                Err(Error::Infeasible(_)) => 0,
                Err(e) => return Err(e),
            };
            let best = plan_with_counts(n, t, &counts).ok();
            Ok(RateRow {
                gamma,
                t,
                rate_a: rate(fixed),
                ell,
                rate_a_best: rate(best.map_or(0, |p| p.payload_bits())),
                ell_best: best.map(|p| p.ell),
                rate_b: (2 * t >= 5 * n as i64).then(|| rate(special.message_bits())),
                rate_c: Rate {
                    bits: direct_bits_bound(&counts, n, t),
                    cycles,
                },
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CapacityPoint {
    pub gamma: Gamma,
    #[serde(rename = "T")]
    pub t: i64,
    pub rate: f64,
}

/// `log2 A(n, floor(gamma n)) / floor(gamma n)` over the grid.
pub fn capacity_curve(n: usize, gammas: &[Gamma]) -> Vec<CapacityPoint> {
    let counts = WordCounts::new(n);
    gammas
        .iter()
        .map(|&gamma| {
            let t = gamma.budget(n);
            CapacityPoint {
                gamma,
                t,
                rate: log2_big(counts.get(n, t)) / t as f64,
            }
        })
        .collect()
}

/// True when the sequence rises (weakly) to one peak and then falls (weakly).
pub fn is_unimodal(values: &[f64]) -> bool {
    let mut falling = false;
    for w in values.windows(2) {
        if w[1] < w[0] {
            falling = true;
        } else if w[1] > w[0] && falling {
            return false;
        }
    }
    true
}

pub fn rates_csv(rows: &[RateRow]) -> String {
    let mut out = String::from("gamma,T,rate_A,rate_B,rate_C,ell,rate_A_best,ell_best\n");
    for r in rows {
        let b = r
            .rate_b
            .map(|b| format!("{:.3}", b.value()))
            .unwrap_or_default();
        let ell_best = r.ell_best.map(|e| e.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{:.3},{},{:.3},{},{:.3},{}\n",
            r.gamma,
            r.t,
            r.rate_a.value(),
            b,
            r.rate_c.value(),
            r.ell,
            r.rate_a_best.value(),
            ell_best
        ));
    }
    out
}

pub fn capacity_csv(points: &[CapacityPoint]) -> String {
    let mut out = String::from("gamma,capacity\n");
    for p in points {
        out.push_str(&format!("{},{:.6}\n", p.gamma, p.rate));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Gamma {
        s.parse().unwrap()
    }

    #[test]
    fn gamma_parsing() {
        assert_eq!(g("2.3"), Gamma::new(23, 10).unwrap());
        assert_eq!(g("23/10"), g("2.30"));
        assert_eq!(g("4"), Gamma::new(4, 1).unwrap());
        assert_eq!(g("1.5"), g("3/2"));
        for bad in [
            "1", "1.0", "4.01", "0.5", "abc", "", ".", "2..3", "-2", "3/0",
        ] {
            assert!(bad.parse::<Gamma>().is_err(), "{bad}");
        }
    }

    #[test]
    fn gamma_display_and_budget() {
        for s in ["1.1", "2.3", "4", "1.05", "3.5"] {
            assert_eq!(g(s).to_string(), s);
        }
        assert_eq!(g("4/3").to_string(), "4/3");
        assert_eq!(g("2.3").budget(127), 292);
        assert_eq!(g("1.1").budget(127), 139);
        assert_eq!(g("2.7").budget(127), 342);
        assert_eq!(g("4").budget(127), 508);
    }

    #[test]
    fn capacity_anchors() {
        let pts = capacity_curve(127, &[g("2"), g("4")]);
        assert_eq!(pts[1].rate, 0.5);
        assert!((0.90..=0.96).contains(&pts[0].rate), "{}", pts[0].rate);
        for n in [8, 20, 33] {
            assert_eq!(capacity_curve(n, &[g("4")])[0].rate, 0.5);
        }
    }

    #[test]
    fn unimodality() {
        assert!(is_unimodal(&[0.1, 0.3, 0.3, 0.2, 0.1]));
        assert!(is_unimodal(&[0.5, 0.4]));
        assert!(!is_unimodal(&[0.1, 0.3, 0.2, 0.25]));
    }

    #[test]
    fn special_column_only_above_two_and_a_half() {
        let rows = rate_table(127, &[g("2.3"), g("2.5"), g("2.7")], DEFAULT_BLOCKS).unwrap();
        assert!(rows[0].rate_b.is_none());
        assert!(rows[1].rate_b.is_none()); // floor(2.5 * 127) = 317 < 317.5
        let b = rows[2].rate_b.unwrap();
        assert_eq!((b.bits, b.cycles), (236, 342));
    }

    #[test]
    fn csv_and_json_shapes() {
        let rows = rate_table(20, &[g("3")], 2).unwrap();
        let csv = rates_csv(&rows);
        assert_eq!(csv.lines().count(), 2);
        assert!(csv.lines().nth(1).unwrap().starts_with("3,60,"));
        let json = serde_json::to_value(&rows).unwrap();
        assert_eq!(json[0]["gamma"], "3");
        assert_eq!(json[0]["T"], 60);
        assert!(json[0]["rate_c"]["num"].is_string());
        assert!(rate_table(7, &[g("3")], 1).is_err());
    }
}
