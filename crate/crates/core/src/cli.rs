//! Command-line front end.
//!
//! The secure channel is a pad file handed over out of band; the public
//! channel is standard output. Text messages become bits through their 8-bit
//! byte codes, most significant bit first.
//!
//! Exit codes: 0 on success, 2 for usage errors, 3 for bad or corrupt data.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{self, TrialConfig};
use crate::bitcore::{deserialize_pad, serialize_pad, BitString, RandomSource};
use crate::codec;
use crate::error::Error;
use crate::facts;
use crate::otp;
use crate::private_object::{self, otp_object};
use crate::reduction::{self, GeneratedPad, ReductionParams};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DATA: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "otp-lab", version, about = "One-time pad protocol laboratory")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a fresh random pad.
    Keygen {
        #[arg(long)]
        bits: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write a length-reduced pad for messages of a fixed length.
    ReduceKeygen {
        #[arg(long)]
        message_bits: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Encrypt a message with a pad file and print the ciphertext bits.
    Encrypt(CipherArgs),
    /// Decrypt ciphertext bits with a pad file.
    Decrypt {
        #[command(flatten)]
        cipher: CipherArgs,
        /// Print the plaintext as text instead of bits.
        #[arg(long)]
        text_out: bool,
    },
    /// Compress a pad using the known message length.
    PadCompress {
        #[arg(long)]
        message_length: Option<usize>,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Restore a compressed pad to the message length.
    PadDecompress {
        #[arg(long)]
        message_length: usize,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Emit one statement line per message bit about a pad object.
    PoEncode {
        #[arg(long)]
        pad: PathBuf,
        #[command(flatten)]
        message: MessageArgs,
    },
    /// Verify statement lines against a pad object and print the bits.
    PoDecode {
        #[arg(long)]
        pad: PathBuf,
        /// Statement file; standard input when omitted.
        #[arg(long)]
        statements: Option<PathBuf>,
    },
    /// Emit one pq-string per message bit.
    FactsEncode {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        size_bound: usize,
        #[command(flatten)]
        message: MessageArgs,
    },
    /// Read pq-strings (one per line) and print the bits they carry.
    FactsDecode {
        /// Reject strings longer than this.
        #[arg(long)]
        size_bound: Option<usize>,
        /// Input file; standard input when omitted.
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Run a verification and print its report.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct MessageArgs {
    /// Message as a string of '0'/'1'.
    #[arg(long = "in")]
    bits: Option<String>,
    /// Message as text, 8 bits per byte.
    #[arg(long)]
    text: Option<String>,
}

#[derive(Debug, Args)]
struct CipherArgs {
    #[arg(long)]
    pad: PathBuf,
    #[command(flatten)]
    message: MessageArgs,
    /// Treat the pad file as a length-reduced pad.
    #[arg(long, requires_all = ["message_bits", "k"])]
    reduced: bool,
    #[arg(long)]
    message_bits: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AnalysisKind {
    Exact,
    Eve,
    Distinguish,
    Reduction,
    Census,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    kind: AnalysisKind,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// A failure with its exit code and one-line diagnostic.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::InvalidParams { .. }
            | Error::InvalidConfig(_)
            | Error::SizeBoundTooSmall { .. }
            | Error::ZeroLengthPad => EXIT_USAGE,
            _ => EXIT_DATA,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

fn io_error(path: &Path, err: io::Error) -> CliError {
    CliError {
        code: EXIT_DATA,
        message: format!("{}: {err}", path.display()),
    }
}

fn read_pad(path: &Path) -> Result<BitString, CliError> {
    let bytes = fs::read(path).map_err(|e| io_error(path, e))?;
    deserialize_pad(&bytes).map_err(|e| CliError {
        code: EXIT_DATA,
        message: format!("{}: {e}", path.display()),
    })
}

fn write_pad(path: &Path, pad: &BitString) -> Result<(), CliError> {
    fs::write(path, serialize_pad(pad)).map_err(|e| io_error(path, e))
}

fn read_input(path: Option<&Path>, stdin: &mut dyn Read) -> Result<String, CliError> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| io_error(p, e)),
        None => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| io_error(Path::new("<stdin>"), e))?;
            Ok(s)
        }
    }
}

impl MessageArgs {
    fn to_bits(&self) -> Result<BitString, CliError> {
        match (&self.bits, &self.text) {
            (Some(bits), _) => Ok(bits.trim().parse()?),
            (None, Some(text)) => Ok(BitString::from_bytes(text.as_bytes())),
            (None, None) => unreachable!("clap requires one message source"),
        }
    }
}

impl CipherArgs {
    fn apply(&self) -> Result<BitString, CliError> {
        let input = self.message.to_bits()?;
        let pad = read_pad(&self.pad)?;
        if self.reduced {
            let params = ReductionParams::new(
                self.message_bits.expect("required by clap"),
                self.k.expect("required by clap"),
            )?;
            let pad = GeneratedPad::from_transmitted(pad, &params)?;
            Ok(reduction::encrypt_reduced(&input, &pad, &params)?)
        } else {
            Ok(otp::encrypt(&input, &pad)?)
        }
    }
}

fn analyze(args: &AnalyzeArgs) -> Result<String, CliError> {
    let default_n = match args.kind {
        AnalysisKind::Exact => 4,
        AnalysisKind::Distinguish => 8,
        AnalysisKind::Census => 10,
        AnalysisKind::Eve | AnalysisKind::Reduction => 12,
    };
    let n = args.n.unwrap_or(default_n);
    if let AnalysisKind::Census = args.kind {
        return census_report(n);
    }
    let params = ReductionParams::new(n, args.k)?;
    let out = match args.kind {
        AnalysisKind::Exact => analysis::exhaustive_secrecy_check(&params)?.to_string(),
        AnalysisKind::Eve => {
            analysis::eve_guess_rate(&TrialConfig::new(params, args.trials, args.seed)?).to_string()
        }
        AnalysisKind::Distinguish => {
            analysis::distinguisher_test(&TrialConfig::new(params, args.trials, args.seed)?)?
                .to_string()
        }
        AnalysisKind::Reduction => {
            analysis::reduction_stats(&TrialConfig::new(params, args.trials, args.seed)?)
                .to_string()
        }
        AnalysisKind::Census => unreachable!(),
    };
    Ok(out + "\n")
}

fn census_report(n: usize) -> Result<String, CliError> {
    let census = codec::codec_census(n)?;
    let mut out = format!("pad codec census n={n}\n");
    let mut kv = String::from("\nmode=exact\n");
    let mut mean_num = 0u64;
    for (&saved, &count) in &census {
        let _ = writeln!(out, "  saved {saved:>2} bits: {count} pads");
        let _ = writeln!(kv, "saved_{saved}={count}");
        mean_num += saved as u64 * count;
    }
    let mean = num_rational::Ratio::new(mean_num, 1u64 << n);
    let _ = writeln!(out, "mean saving {mean} bits");
    let _ = writeln!(kv, "n={n}");
    let _ = writeln!(kv, "mean_saved={mean}");
    Ok(out + &kv)
}

fn execute(cli: Cli, stdin: &mut dyn Read) -> Result<String, CliError> {
    match cli.command {
        Command::Keygen { bits, seed, out } => {
            let pad = otp::keygen(&mut RandomSource::new(seed), bits)?;
            write_pad(&out, pad.bits())?;
            Ok(String::new())
        }
        Command::ReduceKeygen {
            message_bits,
            k,
            seed,
            out,
        } => {
            let params = ReductionParams::new(message_bits, k)?;
            let pad = reduction::generate_reduced_pad(&params, &mut RandomSource::new(seed));
            write_pad(&out, pad.bits())?;
            Ok(format!("original_length={}\n", pad.original_length()))
        }
        Command::Encrypt(args) => Ok(format!("{}\n", args.apply()?)),
        Command::Decrypt { cipher, text_out } => {
            let plain = cipher.apply()?;
            if text_out {
                let bytes = plain.to_bytes().ok_or(CliError {
                    code: EXIT_DATA,
                    message: format!("plaintext of {} bits is not whole bytes", plain.len()),
                })?;
                Ok(format!("{}\n", String::from_utf8_lossy(&bytes)))
            } else {
                Ok(format!("{plain}\n"))
            }
        }
        Command::PadCompress {
            message_length,
            input,
            out,
        } => {
            let pad = read_pad(&input)?;
            if let Some(n) = message_length {
                if pad.len() != n {
                    return Err(Error::LengthMismatch {
                        left: pad.len(),
                        right: n,
                    }
                    .into());
                }
            }
            write_pad(&out, &codec::compress_pad(&pad)?)?;
            Ok(String::new())
        }
        Command::PadDecompress {
            message_length,
            input,
            out,
        } => {
            let pad = codec::decompress_pad(&read_pad(&input)?, message_length)?;
            write_pad(&out, &pad)?;
            Ok(String::new())
        }
        Command::PoEncode { pad, message } => {
            let obj = otp_object(read_pad(&pad)?)?;
            let stmts = private_object::encode_statements(&message.to_bits()?, &obj)?;
            Ok(private_object::format_statements(&stmts))
        }
        Command::PoDecode { pad, statements } => {
            let obj = otp_object(read_pad(&pad)?)?;
            let text = read_input(statements.as_deref(), stdin)?;
            let stmts = private_object::parse_statements(&text)?;
            Ok(format!(
                "{}\n",
                private_object::verify_statements(&stmts, &obj)?
            ))
        }
        Command::FactsEncode {
            seed,
            size_bound,
            message,
        } => {
            let mut src = RandomSource::new(seed);
            let mut out = String::new();
            for bit in message.to_bits()?.iter() {
                out.push_str(&facts::encode_bit(bit, &mut src, size_bound)?);
                out.push('\n');
            }
            Ok(out)
        }
        Command::FactsDecode { size_bound, input } => {
            let text = read_input(input.as_deref(), stdin)?;
            let mut bits = Vec::new();
            for (i, line) in text.lines().enumerate() {
                if let Some(bound) = size_bound {
                    if line.len() > bound {
                        return Err(CliError {
                            code: EXIT_DATA,
                            message: format!(
                                "line {}: string longer than size bound {bound}",
                                i + 1
                            ),
                        });
                    }
                }
                bits.push(facts::decode_string(line).map_err(|e| CliError {
                    code: EXIT_DATA,
                    message: format!("line {}: {e}", i + 1),
                })?);
            }
            Ok(format!("{}\n", BitString::from_bools(bits)))
        }
        Command::Analyze(args) => analyze(&args),
    }
}

/// Parses `args` and runs the command, returning what it would print.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Result<String, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError {
        code: if e.use_stderr() { EXIT_USAGE } else { 0 },
        message: e.to_string(),
    })?;
    execute(cli, stdin)
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match run(args, &mut io::stdin().lock()) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return EXIT_DATA;
            }
            0
        }
        Err(err) if err.code == 0 => {
            print!("{}", err.message);
            0
        }
        Err(err) => {
            let msg = err.message.trim_end();
            if err.code == EXIT_USAGE && msg.contains('\n') {
                eprintln!("{msg}");
            } else {
                eprintln!("otp-lab: {msg}");
            }
            err.code
        }
    }
}
