use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use vtsynth::channel::{schedule, verify_encoder, MessageSource};
use vtsynth::rates::{
    capacity_csv, capacity_curve, is_unimodal, rate_table, rates_csv, Gamma, DEFAULT_BLOCKS,
};
use vtsynth::vt::SystematicCode;
use vtsynth::{
    plan_block_params, Bits, BlockCodec, BlockPlan, Codec, DirectCodec, DirectPlan, Error,
    SpecialCodec, Word,
};

#[derive(Parser)]
#[command(
    name = "vtsynth",
    version,
    about = "Indel-correcting DNA codes with bounded synthesis time"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a payload file into one DNA strand.
    Encode(CodecArgs),
    /// Decode a DNA strand carrying at most one indel.
    Decode(CodecArgs),
    /// Information-rate table of the three encoders.
    Rates(TableArgs),
    /// Capacity curve log2 A(n, T) / T.
    Capacity(TableArgs),
    /// Encode messages and decode every single-indel corruption.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// Systematic code without a synthesis constraint.
    H,
    /// Block encoder.
    A,
    /// Linear-time encoder for T >= 2.5n.
    B,
    /// Direct encoder over one VT slice.
    C,
}

#[derive(Args, Clone)]
struct CodeParams {
    #[arg(long, value_enum, ignore_case = true)]
    family: Family,
    #[arg(long)]
    n: usize,
    /// Synthesis budget in cycles.
    #[arg(long = "T", conflicts_with = "gamma")]
    t: Option<i64>,
    /// Budget ratio; sets T = floor(gamma n).
    #[arg(long)]
    gamma: Option<Gamma>,
    /// Block count for family A (default: best).
    #[arg(long)]
    ell: Option<usize>,
    /// VT syndrome residue for family C (requires --b).
    #[arg(long, requires = "b")]
    a: Option<usize>,
    /// Symbol-sum residue for family C (requires --a).
    #[arg(long, requires = "a")]
    b: Option<u8>,
}

#[derive(Args)]
struct CodecArgs {
    #[command(flatten)]
    code: CodeParams,
    #[arg(long = "in")]
    input: PathBuf,
    /// Output file (default: standard output).
    #[arg(long = "out")]
    output: Option<PathBuf>,
    /// Payload length in bits; overrides the `.bits` sidecar.
    #[arg(long)]
    bits: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, default_value_t = 127)]
    n: usize,
    /// Comma-separated ratios (default: the reference grid).
    #[arg(long, value_delimiter = ',')]
    gamma: Vec<Gamma>,
    /// Block count for the block-encoder column.
    #[arg(long, default_value_t = DEFAULT_BLOCKS)]
    ell: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long = "out")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    code: CodeParams,
    /// Number of random messages (default: all messages).
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Where to write failures, one JSON object per line.
    #[arg(long)]
    report: Option<PathBuf>,
}

/// Exit status 2 for bad input, 1 for failures at run time.
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parameter(_) | Error::Infeasible(_) | Error::Malformed(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

fn budget(p: &CodeParams) -> Option<i64> {
    p.t.or_else(|| p.gamma.map(|g| g.budget(p.n)))
}

fn build_codec(p: &CodeParams) -> Result<Box<dyn Codec>, Failure> {
    let t = budget(p);
    let need_t = || t.ok_or_else(|| Failure::Usage("this family needs --T or --gamma".into()));
    Ok(match p.family {
        Family::H => Box::new(SystematicCode::new(p.n)?),
        Family::A => {
            let t = need_t()?;
            let plan = match p.ell {
                Some(ell) => BlockPlan::new(p.n, t, ell)?,
                None => plan_block_params(p.n, t)?,
            };
            Box::new(BlockCodec::new(plan)?)
        }
        Family::B => {
            if let Some(t) = t {
                if 2 * t < 5 * p.n as i64 {
                    return Err(Failure::Usage(format!(
                        "family B requires T >= 2.5n = {} (got T = {t})",
                        2.5 * p.n as f64
                    )));
                }
            }
            Box::new(SpecialCodec::new(p.n)?)
        }
        Family::C => {
            let t = need_t()?;
            let residues = p.a.zip(p.b);
            Box::new(DirectCodec::new(DirectPlan::new(p.n, t, residues)?)?)
        }
    })
}

fn sidecar(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".bits");
    PathBuf::from(s)
}

fn read_sidecar(path: &Path) -> Result<Option<usize>, Failure> {
    let side = sidecar(path);
    if !side.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(&side).map_err(|e| io_err(&side, e))?;
    text.trim()
        .strip_prefix("bits=")
        .and_then(|v| v.parse().ok())
        .map(Some)
        .ok_or_else(|| Failure::Usage(format!("{}: expected a line bits=<L>", side.display())))
}

fn write_output(path: Option<&Path>, data: &[u8], bits: Option<usize>) -> CmdResult {
    match path {
        Some(p) => {
            fs::write(p, data).map_err(|e| io_err(p, e))?;
            if let Some(bits) = bits {
                let side = sidecar(p);
                fs::write(&side, format!("bits={bits}\n")).map_err(|e| io_err(&side, e))?;
            }
        }
        None => std::io::stdout()
            .write_all(data)
            .map_err(|e| Failure::Runtime(e.to_string()))?,
    }
    Ok(())
}

fn encode(args: &CodecArgs) -> CmdResult {
    let codec = build_codec(&args.code)?;
    let bytes = fs::read(&args.input).map_err(|e| io_err(&args.input, e))?;
    let len = match args.bits {
        Some(b) => b,
        None => read_sidecar(&args.input)?.unwrap_or(8 * bytes.len()),
    };
    let capacity = codec.message_bits();
    if len > capacity {
        return Err(Failure::Usage(format!(
            "payload of {len} bits exceeds the {capacity}-bit capacity of one strand"
        )));
    }
    let mut msg = Bits::from_bytes(&bytes, len)?;
    msg.extend(&Bits::zeros(capacity - len));
    let c = codec.encode(&msg)?;
    let s = schedule(&c).last();
    let t = budget(&args.code).unwrap_or(codec.synthesis_bound() as i64);
    eprintln!(
        "payload_bits={len} capacity_bits={capacity} n={} T={t} S={s} rate={:.3}",
        c.len(),
        capacity as f64 / t as f64
    );
    write_output(
        args.output.as_deref(),
        format!("{}\n", c.to_dna()).as_bytes(),
        Some(len),
    )
}

fn decode(args: &CodecArgs) -> CmdResult {
    let codec = build_codec(&args.code)?;
    let text = fs::read_to_string(&args.input).map_err(|e| io_err(&args.input, e))?;
    let y = Word::from_dna(text.trim_end_matches(['\n', '\r']))?;
    let msg = codec.decode(&y)?;
    let len = match args.bits {
        Some(b) => b,
        None => read_sidecar(&args.input)?.unwrap_or(msg.len()),
    };
    if len > msg.len() {
        return Err(Failure::Usage(format!(
            "requested {len} bits but a strand carries {}",
            msg.len()
        )));
    }
    let payload = msg.slice(0..len);
    eprintln!("payload_bits={len} received_len={}", y.len());
    write_output(args.output.as_deref(), &payload.to_bytes(), Some(len))
}

fn gammas_or(list: &[Gamma], default: Vec<Gamma>) -> Vec<Gamma> {
    if list.is_empty() {
        default
    } else {
        list.to_vec()
    }
}

fn rates(args: &TableArgs) -> CmdResult {
    let rows = rate_table(
        args.n,
        &gammas_or(&args.gamma, Gamma::reference_rows()),
        args.ell,
    )?;
    let text = match args.format {
        Format::Csv => rates_csv(&rows),
        Format::Json => json(&rows)?,
    };
    write_output(args.output.as_deref(), text.as_bytes(), None)
}

fn capacity(args: &TableArgs) -> CmdResult {
    if args.n == 0 {
        return Err(Failure::Usage("n must be positive".into()));
    }
    let points = capacity_curve(args.n, &gammas_or(&args.gamma, Gamma::capacity_grid()));
    let rates: Vec<f64> = points.iter().map(|p| p.rate).collect();
    if !is_unimodal(&rates) {
        eprintln!("note: capacity curve is not unimodal on this grid");
    }
    let text = match args.format {
        Format::Csv => capacity_csv(&points),
        Format::Json => json(&points)?,
    };
    write_output(args.output.as_deref(), text.as_bytes(), None)
}

fn json<T: serde::Serialize>(v: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| Failure::Runtime(e.to_string()))
}

fn verify(args: &VerifyArgs) -> CmdResult {
    let codec = build_codec(&args.code)?;
    let source = match args.budget {
        Some(count) => MessageSource::Random {
            count,
            seed: args.seed,
        },
        None => MessageSource::Exhaustive,
    };
    let report = verify_encoder(codec.as_ref(), &source)?;
    println!(
        "messages={} balls={} failures={} max_S={} bound={}",
        report.messages_tested,
        report.balls_tested,
        report.failures.len(),
        report.max_synthesis_time,
        report.synthesis_bound
    );
    if let Some(path) = &args.report {
        let file = fs::File::create(path).map_err(|e| io_err(path, e))?;
        report
            .write_failures(std::io::BufWriter::new(file))
            .map_err(|e| io_err(path, e))?;
    }
    if report.passed() {
        Ok(())
    } else {
        let at = args
            .report
            .as_ref()
            .map(|p| format!("; failures written to {}", p.display()))
            .unwrap_or_default();
        Err(Failure::Runtime(format!("verification failed{at}")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Encode(a) => encode(a),
        Command::Decode(a) => decode(a),
        Command::Rates(a) => rates(a),
        Command::Capacity(a) => capacity(a),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
