//! Command line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 I/O error, 3 format or corruption
//! error, 4 benchmark verification failure.

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::analysis::Pmf;
use crate::codec::{self, SymbolSequence};
use crate::error::{Error, Result};
use crate::file_format;
use crate::harness::{
    mean_bits_per_symbol, parse_schemes, run_benchmark, write_csv, AnalysisReport, BenchmarkConfig,
    DistributionSpec, BIMODAL_ALPHABET, DEFAULT_TRIALS,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_FORMAT: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "typerun",
    version,
    about = "Type-vector + run-length coding of symbol sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SymbolFormat {
    /// Whitespace-separated decimal integers
    Text,
    /// Little-endian unsigned 16-bit integers
    U16le,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DistKind {
    Geometric,
    Bimodal,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compress a symbol file into a TRLC file
    Encode {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long)]
        alphabet_size: u32,
        #[arg(long, value_enum, default_value = "text")]
        input_format: SymbolFormat,
    },
    /// Restore a symbol file from a TRLC file
    Decode {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        output_format: SymbolFormat,
    },
    /// Run the Monte Carlo benchmark and write a CSV
    Bench {
        #[arg(long, value_enum, default_value = "geometric")]
        dist: DistKind,
        /// Geometric parameter
        #[arg(long, default_value_t = 0.33)]
        p: f64,
        /// Alphabet size (default 50 for geometric, 51 for bimodal)
        #[arg(long = "L")]
        alphabet_size: Option<u32>,
        /// Comma-separated sequence lengths
        #[arg(long, value_delimiter = ',', required = true)]
        n_values: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated: proposed, huffman, golomb:M, elias, entropy, bound
        #[arg(long, default_value = "proposed,huffman,golomb:2,elias,entropy,bound")]
        schemes: String,
        /// Count the Huffman codebook in total_bits
        #[arg(long)]
        include_side_info: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print entropy, gap, bound and per-level parameters of a source
    Analyze {
        #[arg(long, value_enum, conflicts_with = "pmf")]
        dist: Option<DistKind>,
        #[arg(long, default_value_t = 0.33)]
        p: f64,
        #[arg(long = "L")]
        alphabet_size: Option<u32>,
        /// File of whitespace-separated nonnegative weights, normalized on load
        #[arg(long)]
        pmf: Option<PathBuf>,
    },
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io(_) => EXIT_IO,
        Error::Csv(e) if matches!(e.kind(), csv::ErrorKind::Io(_)) => EXIT_IO,
        Error::Config(_) => EXIT_USAGE,
        Error::Verification(_) => EXIT_VERIFICATION,
        _ => EXIT_FORMAT,
    }
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the process exit code.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let stdout = io::stdout();
    match run(cli.command, &mut stdout.lock()) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("typerun: {e}");
            exit_code(&e)
        }
    }
}

fn run(cmd: Command, out: &mut impl Write) -> Result<()> {
    match cmd {
        Command::Encode {
            input,
            output,
            alphabet_size,
            input_format,
        } => {
            if alphabet_size == 0 {
                return Err(Error::Config("--alphabet-size must be at least 1".into()));
            }
            let symbols = read_symbols(&input, input_format)?;
            let x = SymbolSequence::new(symbols, alphabet_size)
                .map_err(|e| Error::Format(e.to_string()))?;
            let (bits, report) = codec::encode_with_report(&x);
            fs::write(&output, file_format::wrap(&bits))?;
            let n = x.len();
            writeln!(out, "N={n} L={alphabet_size}")?;
            writeln!(
                out,
                "total_bits={} (header {}, payload {})",
                report.total_bits(),
                report.header_bits,
                report.payload_bits
            )?;
            if n > 0 {
                writeln!(
                    out,
                    "bits_per_symbol={:.6}",
                    report.total_bits() as f64 / n as f64
                )?;
            }
        }
        Command::Decode {
            input,
            output,
            output_format,
        } => {
            let bytes = fs::read(&input)?;
            let x = file_format::decode_file(&bytes)?;
            write_symbols(&output, x.symbols(), output_format)?;
            writeln!(out, "N={} L={}", x.len(), x.alphabet_size())?;
        }
        Command::Bench {
            dist,
            p,
            alphabet_size,
            n_values,
            trials,
            seed,
            schemes,
            include_side_info,
            out: path,
        } => {
            let mut cfg = BenchmarkConfig::new(distribution(dist, p, alphabet_size), n_values);
            cfg.trials = trials;
            cfg.seed = seed;
            cfg.schemes = parse_schemes(&schemes)?;
            cfg.huffman_side_info = include_side_info;
            let records = run_benchmark(&cfg)?;
            write_csv(&records, BufWriter::new(fs::File::create(&path)?))?;
            writeln!(out, "{} rows -> {}", records.len(), path.display())?;
            for &scheme in &cfg.schemes {
                for &n in &cfg.n_values {
                    if let Some(mean) = mean_bits_per_symbol(&records, scheme, n) {
                        writeln!(out, "{scheme:>10} N={n:<9} mean bits/symbol {mean:.5}")?;
                    }
                }
            }
        }
        Command::Analyze {
            dist,
            p,
            alphabet_size,
            pmf,
        } => {
            let f = match (pmf, dist) {
                (Some(path), _) => read_pmf(&path)?,
                (None, Some(kind)) => distribution(kind, p, alphabet_size).pmf()?,
                (None, None) => {
                    return Err(Error::Config("analyze needs --dist or --pmf".into()));
                }
            };
            write!(out, "{}", AnalysisReport::from_pmf(&f)?)?;
        }
    }
    Ok(())
}

fn distribution(kind: DistKind, p: f64, alphabet_size: Option<u32>) -> DistributionSpec {
    match kind {
        DistKind::Geometric => DistributionSpec::geometric(p, alphabet_size.unwrap_or(50)),
        DistKind::Bimodal => DistributionSpec::Bimodal {
            alphabet_size: alphabet_size.unwrap_or(BIMODAL_ALPHABET),
        },
    }
}

fn read_symbols(path: &Path, format: SymbolFormat) -> Result<Vec<u32>> {
    let bytes = fs::read(path)?;
    match format {
        SymbolFormat::Text => {
            let text = std::str::from_utf8(&bytes)
                .map_err(|e| Error::Format(format!("input is not UTF-8: {e}")))?;
            text.split_ascii_whitespace()
                .map(|tok| {
                    tok.parse::<u32>()
                        .map_err(|e| Error::Format(format!("bad symbol {tok:?}: {e}")))
                })
                .collect()
        }
        SymbolFormat::U16le => {
            if bytes.len() % 2 != 0 {
                return Err(Error::Format(format!(
                    "u16le input has odd length {}",
                    bytes.len()
                )));
            }
            Ok(bytes
                .chunks_exact(2)
                .map(|c| u32::from(u16::from_le_bytes([c[0], c[1]])))
                .collect())
        }
    }
}

fn write_symbols(path: &Path, symbols: &[u32], format: SymbolFormat) -> Result<()> {
    let mut w = BufWriter::new(fs::File::create(path)?);
    match format {
        SymbolFormat::Text => {
            for s in symbols {
                writeln!(w, "{s}")?;
            }
        }
        SymbolFormat::U16le => {
            for &s in symbols {
                let v = u16::try_from(s)
                    .map_err(|_| Error::Format(format!("symbol {s} does not fit in u16")))?;
                w.write_all(&v.to_le_bytes())?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

fn read_pmf(path: &Path) -> Result<Pmf> {
    let text = fs::read_to_string(path)?;
    let weights = text
        .split_ascii_whitespace()
        .map(|tok| {
            tok.parse::<f64>()
                .map_err(|e| Error::Format(format!("bad weight {tok:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Pmf::from_weights(&weights)
}
