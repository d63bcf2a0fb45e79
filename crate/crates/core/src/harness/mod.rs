//! Benchmark harness: source distributions, the Monte Carlo runner, CSV
//! output and the analysis table printed by the `analyze` subcommand.

mod bench;
mod dist;
mod report;

pub use bench::{
    mean_bits_per_symbol, parse_schemes, run_benchmark, write_csv, BenchmarkConfig,
    BenchmarkRecord, Scheme, CSV_HEADER, DEFAULT_TRIALS,
};
pub use dist::{
    binomial_pmf, sample, DistributionSpec, Sampler, BIMODAL_ALPHABET, BIMODAL_P, BIMODAL_SHIFT,
    BIMODAL_TRIALS,
};
pub use report::{AnalysisReport, LevelRow};
