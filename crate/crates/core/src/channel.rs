//! Radius-one indel channel, the synthesis scheduler, and the exhaustive
//! ball-sweep harness used to check encoders.

use std::io::Write;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::encoders::Codec;
use crate::error::{Error, Result};
use crate::word::{indel_ball, smod4, synthesis_time, Bits, Word};

/// At most one deletion or one insertion per transmission.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    pub p_del: f64,
    pub p_ins: f64,
    pub seed: u64,
}

impl ChannelSpec {
    pub fn new(p_del: f64, p_ins: f64, seed: u64) -> Result<Self> {
        let valid = |p: f64| p.is_finite() && (0.0..=1.0).contains(&p);
        if !valid(p_del) || !valid(p_ins) || p_del + p_ins > 1.0 {
            return Err(Error::Parameter(format!(
                "indel probabilities ({p_del}, {p_ins}) must be nonnegative with sum <= 1"
            )));
        }
        Ok(ChannelSpec { p_del, p_ins, seed })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Event {
    Clean,
    /// 0-based position of the deleted symbol.
    Deletion(usize),
    /// The received word has `symbol` at 0-based `position`.
    Insertion {
        position: usize,
        symbol: u8,
    },
}

impl Event {
    pub fn apply(&self, x: &Word) -> Word {
        let mut s = x.symbols().to_vec();
        match *self {
            Event::Clean => {}
            Event::Deletion(p) => {
                s.remove(p);
            }
            Event::Insertion { position, symbol } => s.insert(position, symbol),
        }
        Word::from_raw(s)
    }
}

/// A seeded channel; successive transmissions draw fresh events.
#[derive(Debug, Clone)]
pub struct IndelChannel {
    spec: ChannelSpec,
    rng: ChaCha8Rng,
}

impl IndelChannel {
    pub fn new(spec: ChannelSpec) -> Self {
        IndelChannel {
            spec,
            rng: ChaCha8Rng::seed_from_u64(spec.seed),
        }
    }

    pub fn sample_event(&mut self, len: usize) -> Event {
        let u: f64 = self.rng.random();
        if u < self.spec.p_del && len > 0 {
            Event::Deletion(self.rng.random_range(0..len))
        } else if u >= self.spec.p_del && u < self.spec.p_del + self.spec.p_ins {
            Event::Insertion {
                position: self.rng.random_range(0..=len),
                symbol: self.rng.random_range(1..=4),
            }
        } else {
            Event::Clean
        }
    }

    pub fn transmit(&mut self, x: &Word) -> Word {
        let y = self.sample_event(x.len()).apply(x);
        debug_assert!(crate::word::within_one_indel(x.symbols(), y.symbols()));
        y
    }
}

/// One transmission through a fresh channel seeded by `spec.seed`.
pub fn transmit(x: &Word, spec: &ChannelSpec) -> Word {
    IndelChannel::new(*spec).transmit(x)
}

/// Cycles of the scan `1234 1234 ...` (1-based) at which each symbol of a
/// strand is appended, under the earliest-match embedding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SynthesisSchedule {
    pub cycles: Vec<u64>,
}

impl SynthesisSchedule {
    /// Total cycles consumed; zero for the empty strand.
    pub fn last(&self) -> u64 {
        self.cycles.last().copied().unwrap_or(0)
    }
}

pub fn schedule(x: &Word) -> SynthesisSchedule {
    let mut cycle = 0u64;
    let mut cycles = Vec::with_capacity(x.len());
    for &s in x.symbols() {
        cycle += 1;
        while smod4(cycle as i64) != s {
            cycle += 1;
        }
        cycles.push(cycle);
    }
    SynthesisSchedule { cycles }
}

/// Machine cycles to synthesize all strands in parallel.
pub fn batch_cycles(strands: &[Word]) -> Result<u64> {
    strands
        .iter()
        .map(synthesis_time)
        .max()
        .ok_or_else(|| Error::Parameter("batch has no strands".into()))
}

#[derive(Debug, Clone)]
pub enum MessageSource {
    /// Every message; refused above 24 bits.
    Exhaustive,
    /// `count` uniform messages; message `i` is drawn from stream `i` of `seed`.
    Random {
        count: usize,
        seed: u64,
    },
    Explicit(Vec<Bits>),
}

pub const EXHAUSTIVE_LIMIT_BITS: usize = 24;

impl MessageSource {
    fn len(&self, bits: usize) -> Result<usize> {
        match self {
            MessageSource::Exhaustive if bits > EXHAUSTIVE_LIMIT_BITS => Err(Error::Parameter(
                format!("exhaustive sweep over {bits}-bit messages is too large"),
            )),
            MessageSource::Exhaustive => Ok(1 << bits),
            MessageSource::Random { count, .. } => Ok(*count),
            MessageSource::Explicit(v) => Ok(v.len()),
        }
    }

    fn message(&self, index: usize, bits: usize) -> Bits {
        match self {
            MessageSource::Exhaustive => Bits::new(
                (0..bits)
                    .map(|i| index >> (bits - 1 - i) & 1 == 1)
                    .collect(),
            ),
            MessageSource::Random { seed, .. } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                rng.set_stream(index as u64);
                Bits::new((0..bits).map(|_| rng.random_bool(0.5)).collect())
            }
            MessageSource::Explicit(v) => v[index].clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub message_index: usize,
    pub message: String,
    pub codeword: String,
    /// Empty for encoder-side failures.
    pub received: String,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub messages_tested: usize,
    pub balls_tested: usize,
    pub max_synthesis_time: u64,
    pub synthesis_bound: u64,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.max_synthesis_time <= self.synthesis_bound
    }

    /// One JSON object per failure.
    pub fn write_failures<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for f in &self.failures {
            serde_json::to_writer(&mut out, f)?;
            writeln!(out)?;
        }
        Ok(())
    }
}

struct Outcome {
    balls: usize,
    synthesis: u64,
    failures: Vec<Failure>,
}

fn check_message(codec: &dyn Codec, index: usize, msg: &Bits) -> Outcome {
    let failure = |codeword: &str, received: &str, got: String| Failure {
        message_index: index,
        message: msg.to_string(),
        codeword: codeword.to_string(),
        received: received.to_string(),
        expected: msg.to_string(),
        got,
    };
    let c = match codec.encode(msg) {
        Ok(c) => c,
        Err(e) => {
            return Outcome {
                balls: 0,
                synthesis: 0,
                failures: vec![failure("", "", format!("encode error: {e}"))],
            }
        }
    };
    let synthesis = synthesis_time(&c);
    let mut failures = Vec::new();
    let code = c.to_string();
    if synthesis > codec.synthesis_bound() {
        failures.push(failure(&code, "", format!("synthesis time {synthesis}")));
    }
    let ball = indel_ball(&c);
    for y in &ball {
        match codec.decode(y) {
            Ok(got) if got == *msg => {}
            Ok(got) => failures.push(failure(&code, &y.to_string(), got.to_string())),
            Err(e) => failures.push(failure(&code, &y.to_string(), format!("decode error: {e}"))),
        }
    }
    Outcome {
        balls: ball.len(),
        synthesis,
        failures,
    }
}

/// Encodes every message from `source` and decodes every word in the indel
/// ball of each codeword. Messages are checked in parallel; the report does
/// not depend on the thread count.
pub fn verify_encoder(codec: &dyn Codec, source: &MessageSource) -> Result<Report> {
    let bits = codec.message_bits();
    let count = source.len(bits)?;
    let outcomes: Vec<Outcome> = (0..count)
        .into_par_iter()
        .map(|i| check_message(codec, i, &source.message(i, bits)))
        .collect();
    let mut report = Report {
        messages_tested: count,
        balls_tested: 0,
        max_synthesis_time: 0,
        synthesis_bound: codec.synthesis_bound(),
        failures: Vec::new(),
    };
    for o in outcomes {
        report.balls_tested += o.balls;
        report.max_synthesis_time = report.max_synthesis_time.max(o.synthesis);
        report.failures.extend(o.failures);
    }
    Ok(report)
}
