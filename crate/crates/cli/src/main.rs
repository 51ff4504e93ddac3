//! Command-line harness: encode and decode word files, print bound reports,
//! emit the difference-coefficient and rate tables, run the exhaustive
//! verifier, and drive the seeded channel simulator.
//!
//! File formats:
//! - words and messages: one line of space-separated integers; codecs with
//!   an extra message read/write it as a second line;
//! - defect patterns: JSON `{"positions": [...], "levels": [...]}` (levels
//!   are minima for the partially-stuck codecs, maxima for `umc-c1`);
//! - matrices: a header line `q rows cols`, then one line per row.
//!
//! Exit codes: 0 on success, 2 on usage errors, 3 when verification finds
//! failures, 1 on anything else.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use psmc_core::bounds::{self, BoundReport};
use psmc_core::codes::{CodeRegistry, LinearCode};
use psmc_core::linalg::MatrixOverField;
use psmc_core::oracle::{self, CodecSpec};
use psmc_core::psmc::{
    c1_decode, c1_encode, c1b_decode, c1b_encode, c2_decode, c2_encode, c3_decode, c3_encode,
    gen1_decode, gen1_encode,
};
use psmc_core::sim::{simulate, SimCodec, SimConfig};
use psmc_core::smc::PsaPattern;
use psmc_core::umc::{umc_c1_decode, umc_c1_encode};
use psmc_core::CellWord;

#[derive(Parser)]
#[command(name = "psmc", about = "Masking codes for partially-stuck-at multi-level cells")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print redundancy bounds for one defect instance as JSON.
    Bounds(BoundsArgs),
    /// Encode a message file against a defect pattern.
    Encode(CodecArgs),
    /// Decode a stored word file.
    Decode(CodecArgs),
    /// Exhaustively verify a codec at small parameters.
    Verify(VerifyArgs),
    /// CSV of the difference coefficient over its (q, s) grid.
    TableDelta,
    /// CSV of capacity, rate, and the best achievable rate over a p grid.
    Rates(RatesArgs),
    /// Monte Carlo run over the random-defect channel.
    Simulate(SimArgs),
    /// Exact maximum message count by exhaustive search (tiny instances).
    MaxM(MaxMArgs),
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: u32,
    /// Number of defect cells (levels default to --s each).
    #[arg(long, default_value_t = 0)]
    u: usize,
    /// Uniform defect level.
    #[arg(long, default_value_t = 1)]
    s: u32,
    /// Explicit comma-separated level profile; overrides --u/--s.
    #[arg(long)]
    levels: Option<String>,
    /// Code registry manifest consulted for the stuck-at upper bound.
    #[arg(long)]
    registry: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Codec {
    C1,
    C1b,
    Gen1,
    C2,
    C3,
    Smc,
    UmcC1,
}

#[derive(Args)]
struct CodecArgs {
    #[arg(long, value_enum)]
    construction: Codec,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    /// Inner code: hamming:Q:R[:SHORTEN], mds:Q:N:D, or matrix:PATH:D.
    #[arg(long)]
    code: Option<String>,
    /// Message file (encode).
    #[arg(long)]
    message_file: Option<PathBuf>,
    /// Defect pattern file (encode).
    #[arg(long)]
    pattern_file: Option<PathBuf>,
    /// Stored word file (decode).
    #[arg(long)]
    word_file: Option<PathBuf>,
    /// Defect count the encoder saw (c1b decode).
    #[arg(long)]
    u: Option<usize>,
    /// Level sum the encoder saw (gen1 decode).
    #[arg(long)]
    s_sum: Option<u32>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    construction: Codec,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    code: Option<String>,
    #[arg(long)]
    u_max: usize,
    /// Uniform level for the matrix codec sweep.
    #[arg(long, default_value_t = 1)]
    s: u32,
}

#[derive(Args)]
struct RatesArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    s: u32,
    /// Number of evenly spaced p values in [0, 1].
    #[arg(long, default_value_t = 101)]
    p_grid: usize,
}

#[derive(Args)]
struct SimArgs {
    #[arg(long, value_enum)]
    construction: Codec,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    code: Option<String>,
    #[arg(long, default_value_t = 1)]
    s: u32,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    trials: u64,
    #[arg(long)]
    seed: u64,
}

#[derive(Args)]
struct MaxMArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    u: usize,
    #[arg(long, default_value_t = 1)]
    s: u32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

/// Print a line to stdout, exiting quietly when the reader hung up.
fn out(line: std::fmt::Arguments<'_>) {
    let mut stdout = io::stdout().lock();
    if writeln!(stdout, "{line}").is_err() {
        std::process::exit(0);
    }
}

macro_rules! outln {
    ($($arg:tt)*) => { out(format_args!($($arg)*)) };
}

fn usage(msg: &str) -> Box<dyn std::error::Error> {
    // reported by the caller with exit code 2
    Box::<dyn std::error::Error>::from(format!("usage: {msg}"))
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.cmd {
        Cmd::Bounds(args) => {
            let levels = match &args.levels {
                Some(text) => parse_levels(text)?,
                None => vec![args.s; args.u],
            };
            let registry = match &args.registry {
                Some(path) => Some(CodeRegistry::load_manifest(path)?),
                None => None,
            };
            let report = BoundReport::compute(args.n, args.q, &levels, registry.as_ref())?;
            outln!("{}", serde_json::to_string_pretty(&report)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Encode(args) => match encode(&args) {
            Ok(()) => Ok(ExitCode::SUCCESS),
            Err(UsageOr::Usage(m)) => {
                eprintln!("{}", usage(&m));
                Ok(ExitCode::from(2))
            }
            Err(UsageOr::Other(e)) => Err(e),
        },
        Cmd::Decode(args) => match decode(&args) {
            Ok(()) => Ok(ExitCode::SUCCESS),
            Err(UsageOr::Usage(m)) => {
                eprintln!("{}", usage(&m));
                Ok(ExitCode::from(2))
            }
            Err(UsageOr::Other(e)) => Err(e),
        },
        Cmd::Verify(args) => {
            let spec = build_codec_spec(&args)?;
            let report = oracle::verify_exhaustive(&spec, args.u_max)?;
            outln!("{}", serde_json::to_string_pretty(&report)?);
            if report.passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(3))
            }
        }
        Cmd::TableDelta => {
            outln!("q,s,delta");
            for (q, s) in bounds::delta_table_grid() {
                outln!("{q},{s},{:.6}", bounds::delta(q, s));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Rates(args) => {
            if args.p_grid < 2 {
                eprintln!("{}", usage("--p-grid must be at least 2"));
                return Ok(ExitCode::from(2));
            }
            let threshold = bounds::threshold_p(args.q, args.s);
            outln!("p,capacity,rate,r_max,threshold");
            for i in 0..args.p_grid {
                let p = i as f64 / (args.p_grid - 1) as f64;
                outln!(
                    "{p:.6},{:.6},{:.6},{:.6},{threshold:.6}",
                    bounds::capacity(args.q, p, args.s),
                    bounds::rate_r(args.q, p, args.s),
                    bounds::r_max(args.q, p, args.s),
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Simulate(args) => {
            let codec = match args.construction {
                Codec::C1 => SimCodec::C1 {
                    q: args.q.ok_or_else(|| usage("simulate c1 needs --q"))?,
                    n: args.n.ok_or_else(|| usage("simulate c1 needs --n"))?,
                },
                Codec::C2 => SimCodec::C2 {
                    code: load_code(args.code.as_deref().ok_or_else(|| usage("--code"))?)?,
                    s: args.s,
                },
                Codec::C3 => SimCodec::C3 {
                    q: args.q.ok_or_else(|| usage("simulate c3 needs --q"))?,
                    bincode: load_code(args.code.as_deref().ok_or_else(|| usage("--code"))?)?,
                },
                _ => {
                    eprintln!("{}", usage("simulate supports c1, c2, c3"));
                    return Ok(ExitCode::from(2));
                }
            };
            let report =
                simulate(&SimConfig { codec, p: args.p, trials: args.trials, seed: args.seed })?;
            outln!("{}", serde_json::to_string_pretty(&report)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::MaxM(args) => {
            let max_m = oracle::max_m_exhaustive(args.n, args.q, args.u, args.s)?;
            let bound = oracle::partition_bound_m(args.n, args.q, args.u, args.s);
            let value = serde_json::json!({
                "schema": 1,
                "n": args.n,
                "q": args.q,
                "u": args.u,
                "s": args.s,
                "max_m": max_m,
                "partition_bound": bound,
            });
            outln!("{}", serde_json::to_string_pretty(&value)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

enum UsageOr {
    Usage(String),
    Other(Box<dyn std::error::Error>),
}

impl<E: Into<Box<dyn std::error::Error>>> From<E> for UsageOr {
    fn from(e: E) -> Self {
        UsageOr::Other(e.into())
    }
}

fn encode(args: &CodecArgs) -> Result<(), UsageOr> {
    let message_file = args
        .message_file
        .as_ref()
        .ok_or_else(|| UsageOr::Usage("encode needs --message-file".into()))?;
    let pattern_file = args
        .pattern_file
        .as_ref()
        .ok_or_else(|| UsageOr::Usage("encode needs --pattern-file".into()))?;
    let lines = read_word_lines(message_file)?;
    let m = lines
        .first()
        .ok_or_else(|| UsageOr::Usage("message file is empty".into()))?
        .clone();
    let pattern = read_pattern(pattern_file)?;

    let word = match args.construction {
        Codec::C1 => {
            let (q, n) = qn(args)?;
            lines_expected(&lines, 1)?;
            c1_encode(q, n, &m, &pattern)?
        }
        Codec::C1b => {
            let (q, n) = qn(args)?;
            let mp = extra_scalar(&lines)?;
            c1b_encode(q, n, &m, mp, &pattern)?
        }
        Codec::Gen1 => {
            let (q, n) = qn(args)?;
            let mp = extra_scalar(&lines)?;
            gen1_encode(q, n, &m, mp, &pattern)?
        }
        Codec::C2 => {
            let code = code_arg(args)?;
            lines_expected(&lines, 1)?;
            c2_encode(&code, &m, &pattern)?
        }
        Codec::C3 => {
            let q = args.q.ok_or_else(|| UsageOr::Usage("c3 needs --q".into()))?;
            let code = code_arg(args)?;
            let mp = lines.get(1).cloned().unwrap_or_default();
            c3_encode(q, &code, &m, &mp, &pattern)?
        }
        Codec::Smc => {
            let code = code_arg(args)?;
            lines_expected(&lines, 1)?;
            psmc_core::smc::smc_encode(&code, &m, &pattern)?
        }
        Codec::UmcC1 => {
            let (q, n) = qn(args)?;
            lines_expected(&lines, 1)?;
            umc_c1_encode(q, n, &m, &pattern)?
        }
    };
    emit(args.output.as_deref(), &format_words(&[word]))?;
    Ok(())
}

fn decode(args: &CodecArgs) -> Result<(), UsageOr> {
    let word_file = args
        .word_file
        .as_ref()
        .ok_or_else(|| UsageOr::Usage("decode needs --word-file".into()))?;
    let lines = read_word_lines(word_file)?;
    lines_expected(&lines, 1)?;
    let y = lines[0].clone();

    let out = match args.construction {
        Codec::C1 => {
            let (q, n) = qn(args)?;
            shape(&y, n)?;
            vec![c1_decode(q, n, &y)]
        }
        Codec::C1b => {
            let (q, n) = qn(args)?;
            shape(&y, n)?;
            let u = args
                .u
                .ok_or_else(|| UsageOr::Usage("c1b decode needs --u".into()))?;
            let (m, mp) = c1b_decode(q, n, u, &y);
            vec![m, vec![mp]]
        }
        Codec::Gen1 => {
            let (q, n) = qn(args)?;
            shape(&y, n)?;
            let s_sum = args
                .s_sum
                .ok_or_else(|| UsageOr::Usage("gen1 decode needs --s-sum".into()))?;
            let (m, mp) = gen1_decode(q, n, s_sum, &y);
            vec![m, vec![mp]]
        }
        Codec::C2 => {
            let code = code_arg(args)?;
            shape(&y, code.n())?;
            vec![c2_decode(&code, &y)]
        }
        Codec::C3 => {
            let q = args.q.ok_or_else(|| UsageOr::Usage("c3 needs --q".into()))?;
            let code = code_arg(args)?;
            shape(&y, code.n() + 1)?;
            let (m, mp) = c3_decode(q, &code, &y);
            vec![m, mp]
        }
        Codec::Smc => {
            let code = code_arg(args)?;
            shape(&y, code.n())?;
            vec![psmc_core::smc::smc_decode(&code, &y)]
        }
        Codec::UmcC1 => {
            let (q, n) = qn(args)?;
            shape(&y, n)?;
            vec![umc_c1_decode(q, n, &y)]
        }
    };
    emit(args.output.as_deref(), &format_words(&out))?;
    Ok(())
}

fn qn(args: &CodecArgs) -> Result<(u32, usize), UsageOr> {
    let q = args.q.ok_or_else(|| UsageOr::Usage("this construction needs --q".into()))?;
    let n = args.n.ok_or_else(|| UsageOr::Usage("this construction needs --n".into()))?;
    Ok((q, n))
}

fn code_arg(args: &CodecArgs) -> Result<LinearCode, UsageOr> {
    let spec = args
        .code
        .as_deref()
        .ok_or_else(|| UsageOr::Usage("this construction needs --code".into()))?;
    Ok(load_code(spec)?)
}

fn extra_scalar(lines: &[CellWord]) -> Result<u32, UsageOr> {
    let second = lines
        .get(1)
        .ok_or_else(|| UsageOr::Usage("message file needs the extra symbol on line 2".into()))?;
    if second.len() != 1 {
        return Err(UsageOr::Usage("line 2 must hold a single integer".into()));
    }
    Ok(second[0])
}

fn lines_expected(lines: &[CellWord], n: usize) -> Result<(), UsageOr> {
    if lines.len() != n {
        return Err(UsageOr::Usage(format!("expected {n} line(s), found {}", lines.len())));
    }
    Ok(())
}

fn shape(word: &[u32], n: usize) -> Result<(), UsageOr> {
    if word.len() != n {
        return Err(UsageOr::Usage(format!("word length {} does not match n = {n}", word.len())));
    }
    Ok(())
}

fn build_codec_spec(args: &VerifyArgs) -> Result<CodecSpec, Box<dyn std::error::Error>> {
    Ok(match args.construction {
        Codec::C1 => CodecSpec::C1 {
            q: args.q.ok_or_else(|| usage("verify c1 needs --q"))?,
            n: args.n.ok_or_else(|| usage("verify c1 needs --n"))?,
        },
        Codec::C1b => CodecSpec::C1b {
            q: args.q.ok_or_else(|| usage("verify c1b needs --q"))?,
            n: args.n.ok_or_else(|| usage("verify c1b needs --n"))?,
        },
        Codec::Gen1 => CodecSpec::Gen1 {
            q: args.q.ok_or_else(|| usage("verify gen1 needs --q"))?,
            n: args.n.ok_or_else(|| usage("verify gen1 needs --n"))?,
        },
        Codec::C2 => CodecSpec::C2 {
            code: load_code(args.code.as_deref().ok_or_else(|| usage("--code"))?)?,
            s: args.s,
        },
        Codec::C3 => CodecSpec::C3 {
            q: args.q.ok_or_else(|| usage("verify c3 needs --q"))?,
            bincode: load_code(args.code.as_deref().ok_or_else(|| usage("--code"))?)?,
        },
        Codec::Smc => CodecSpec::Smc {
            code: load_code(args.code.as_deref().ok_or_else(|| usage("--code"))?)?,
        },
        Codec::UmcC1 => CodecSpec::UmcC1 {
            q: args.q.ok_or_else(|| usage("verify umc-c1 needs --q"))?,
            n: args.n.ok_or_else(|| usage("verify umc-c1 needs --n"))?,
        },
    })
}

/// hamming:Q:R[:SHORTEN], mds:Q:N:D, or matrix:PATH:D (claimed distance).
fn load_code(spec: &str) -> Result<LinearCode, Box<dyn std::error::Error>> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["hamming", q, r] => Ok(LinearCode::hamming(q.parse()?, r.parse()?)?),
        ["hamming", q, r, count] => {
            Ok(LinearCode::hamming(q.parse()?, r.parse()?)?.shorten(count.parse()?)?)
        }
        ["mds", q, n, d] => Ok(LinearCode::mds(q.parse()?, n.parse()?, d.parse()?)?),
        ["matrix", path, d] => {
            let text = fs::read_to_string(path)?;
            let h = MatrixOverField::parse_text(&text)?;
            Ok(LinearCode::from_matrix(h, d.parse()?, false)?)
        }
        _ => Err(usage("--code expects hamming:Q:R[:SHORTEN], mds:Q:N:D, or matrix:PATH:D")),
    }
}

fn parse_levels(text: &str) -> Result<Vec<u32>, Box<dyn std::error::Error>> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<u32>().map_err(|e| e.into()))
        .collect()
}

fn read_word_lines(path: &Path) -> Result<Vec<CellWord>, Box<dyn std::error::Error>> {
    let text = fs::read_to_string(path)?;
    let mut out = Vec::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            continue;
        }
        let word: Result<CellWord, _> =
            line.split_whitespace().map(|t| t.parse::<u32>()).collect();
        out.push(word.map_err(|e| format!("bad symbol in {}: {e}", path.display()))?);
    }
    Ok(out)
}

fn read_pattern(path: &Path) -> Result<PsaPattern, Box<dyn std::error::Error>> {
    let text = fs::read_to_string(path)?;
    let raw: PsaPattern = serde_json::from_str(&text)?;
    // re-validate: serde bypasses the sortedness checks
    Ok(PsaPattern::new(raw.positions().to_vec(), raw.levels().to_vec())?)
}

fn format_words(words: &[CellWord]) -> String {
    let mut s = String::new();
    for w in words {
        let line: Vec<String> = w.iter().map(|v| v.to_string()).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    s
}

fn emit(path: Option<&Path>, content: &str) -> Result<(), Box<dyn std::error::Error>> {
    match path {
        Some(p) => fs::write(p, content)?,
        None => {
            let mut stdout = io::stdout().lock();
            let _ = stdout.write_all(content.as_bytes());
        }
    }
    Ok(())
}
