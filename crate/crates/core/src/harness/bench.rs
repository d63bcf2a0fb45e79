//! Monte Carlo benchmark runner and CSV output.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{entropy, total_bound};
use crate::baselines::{Huffman, SequenceCodec, SymbolwiseElias, SymbolwiseGolomb};
use crate::codec::{self, SymbolSequence};
use crate::codes::GolombParam;
use crate::error::{Error, Result};

use super::dist::{sample, DistributionSpec};

pub const DEFAULT_TRIALS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Proposed,
    Huffman,
    SymbolwiseGolomb(GolombParam),
    SymbolwiseElias,
    /// `H(f)` of the true PMF; no coding.
    EntropyBound,
    /// `H(f) + C(f)` of the true PMF; no coding.
    AnalyticBound,
}

impl Scheme {
    fn is_codec(self) -> bool {
        !matches!(self, Scheme::EntropyBound | Scheme::AnalyticBound)
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Scheme::Proposed => "proposed".to_owned(),
            Scheme::Huffman => "huffman".to_owned(),
            Scheme::SymbolwiseGolomb(m) => format!("golomb:{m}"),
            Scheme::SymbolwiseElias => "elias".to_owned(),
            Scheme::EntropyBound => "entropy".to_owned(),
            Scheme::AnalyticBound => "bound".to_owned(),
        };
        f.pad(&name)
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Ok(match s {
            "proposed" => Scheme::Proposed,
            "huffman" => Scheme::Huffman,
            "elias" => Scheme::SymbolwiseElias,
            "entropy" => Scheme::EntropyBound,
            "bound" => Scheme::AnalyticBound,
            _ => {
                let m = s
                    .strip_prefix("golomb:")
                    .and_then(|m| m.parse::<u64>().ok())
                    .ok_or_else(|| Error::Config(format!("unknown scheme {s:?}")))?;
                Scheme::SymbolwiseGolomb(
                    GolombParam::new(m).map_err(|e| Error::Config(e.to_string()))?,
                )
            }
        })
    }
}

/// Parses a comma-separated scheme list such as `proposed,huffman,golomb:2`.
pub fn parse_schemes(list: &str) -> Result<Vec<Scheme>> {
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect()
}

#[derive(Debug, Clone)]
pub struct BenchmarkConfig {
    pub distribution: DistributionSpec,
    pub n_values: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub schemes: Vec<Scheme>,
    /// Count the Huffman codebook in `total_bits`. Off by default; the
    /// codebook size is always reported in `side_info_bits`.
    pub huffman_side_info: bool,
}

impl BenchmarkConfig {
    pub fn new(distribution: DistributionSpec, n_values: Vec<usize>) -> Self {
        Self {
            distribution,
            n_values,
            trials: DEFAULT_TRIALS,
            seed: 0,
            schemes: vec![
                Scheme::Proposed,
                Scheme::Huffman,
                Scheme::SymbolwiseGolomb(GolombParam::new(2).expect("nonzero")),
                Scheme::SymbolwiseElias,
                Scheme::EntropyBound,
                Scheme::AnalyticBound,
            ],
            huffman_side_info: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.n_values.is_empty() {
            return Err(Error::Config("no sequence lengths given".into()));
        }
        if self.schemes.is_empty() {
            return Err(Error::Config("no schemes selected".into()));
        }
        Ok(())
    }
}

/// One CSV row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchmarkRecord {
    pub scheme: String,
    pub dist: String,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "L")]
    pub l: u32,
    pub trial: usize,
    pub seed: u64,
    /// Integral for codec rows; `N * bound` for the bound rows.
    pub total_bits: f64,
    pub bits_per_symbol: f64,
    pub side_info_bits: u64,
    pub entropy: f64,
    pub analytic_bound: f64,
    pub wall_time_ns: u64,
}

pub const CSV_HEADER: &str = "scheme,dist,N,L,trial,seed,total_bits,bits_per_symbol,side_info_bits,entropy,analytic_bound,wall_time_ns";

struct Measured {
    total_bits: u64,
    side_info_bits: u64,
    wall_time_ns: u64,
}

fn verify(scheme: Scheme, x: &SymbolSequence, y: &SymbolSequence) -> Result<()> {
    if x != y {
        return Err(Error::Verification(format!(
            "{scheme} failed to reproduce a {}-symbol input",
            x.len()
        )));
    }
    Ok(())
}

fn run_codec(scheme: Scheme, x: &SymbolSequence, huffman_side_info: bool) -> Result<Measured> {
    let start = Instant::now();
    let measured = match scheme {
        Scheme::Proposed => {
            let (bits, report) = codec::encode_with_report(x);
            let y = codec::decode(&bits)?;
            verify(scheme, x, &y)?;
            Measured {
                total_bits: report.total_bits(),
                side_info_bits: report.header_bits,
                wall_time_ns: 0,
            }
        }
        _ => {
            let codec: Box<dyn SequenceCodec> = match scheme {
                Scheme::Huffman => Box::new(Huffman),
                Scheme::SymbolwiseGolomb(m) => Box::new(SymbolwiseGolomb::new(m)),
                Scheme::SymbolwiseElias => Box::new(SymbolwiseElias),
                _ => unreachable!("bound schemes are not codecs"),
            };
            let r = codec.encode(x)?;
            let y = codec.decode(&r.bits, x.alphabet_size(), x.len())?;
            verify(scheme, x, &y)?;
            let total_bits = if scheme == Scheme::Huffman && !huffman_side_info {
                r.payload_bits()
            } else {
                r.total_bits
            };
            Measured {
                total_bits,
                side_info_bits: r.side_info_bits,
                wall_time_ns: 0,
            }
        }
    };
    Ok(Measured {
        wall_time_ns: start.elapsed().as_nanos() as u64,
        ..measured
    })
}

/// Samples, encodes and verifies every `(N, trial, scheme)` combination.
///
/// Trial `i` uses seed `seed + i`. Trials run in parallel; records come back
/// ordered by scheme (in config order), then `N` (in config order), then trial.
pub fn run_benchmark(cfg: &BenchmarkConfig) -> Result<Vec<BenchmarkRecord>> {
    cfg.validate()?;
    let pmf = cfg.distribution.pmf()?;
    let h = entropy(&pmf);
    let bound = total_bound(&pmf);
    let label = cfg.distribution.label().to_owned();
    let l = cfg.distribution.alphabet_size();

    let jobs: Vec<(usize, usize)> = (0..cfg.n_values.len())
        .flat_map(|ni| (0..cfg.trials).map(move |trial| (ni, trial)))
        .collect();

    let per_job: Vec<Vec<(usize, usize, usize, BenchmarkRecord)>> = jobs
        .par_iter()
        .map(|&(ni, trial)| {
            let n = cfg.n_values[ni];
            let seed = cfg.seed.wrapping_add(trial as u64);
            let x = sample(&cfg.distribution, n, seed)?;
            cfg.schemes
                .iter()
                .enumerate()
                .map(|(si, &scheme)| {
                    let (total_bits, side_info_bits, wall_time_ns) = if scheme.is_codec() {
                        let m = run_codec(scheme, &x, cfg.huffman_side_info)?;
                        (m.total_bits as f64, m.side_info_bits, m.wall_time_ns)
                    } else {
                        let rate = if scheme == Scheme::EntropyBound {
                            h
                        } else {
                            bound
                        };
                        (rate * n as f64, 0, 0)
                    };
                    let bits_per_symbol = if n > 0 { total_bits / n as f64 } else { 0.0 };
                    let record = BenchmarkRecord {
                        scheme: scheme.to_string(),
                        dist: label.clone(),
                        n,
                        l,
                        trial,
                        seed,
                        total_bits,
                        bits_per_symbol,
                        side_info_bits,
                        entropy: h,
                        analytic_bound: bound,
                        wall_time_ns,
                    };
                    Ok((si, ni, trial, record))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let mut rows: Vec<_> = per_job.into_iter().flatten().collect();
    rows.sort_by_key(|&(si, ni, trial, _)| (si, ni, trial));
    Ok(rows.into_iter().map(|(_, _, _, r)| r).collect())
}

pub fn write_csv<W: Write>(records: &[BenchmarkRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if records.is_empty() {
        w.write_record(CSV_HEADER.split(','))?;
    }
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Mean bits per symbol of `scheme` at length `n`, if any rows match.
pub fn mean_bits_per_symbol(records: &[BenchmarkRecord], scheme: Scheme, n: usize) -> Option<f64> {
    let name = scheme.to_string();
    let (sum, count) = records
        .iter()
        .filter(|r| r.scheme == name && r.n == n)
        .fold((0.0, 0usize), |(s, c), r| (s + r.bits_per_symbol, c + 1));
    (count > 0).then(|| sum / count as f64)
}
