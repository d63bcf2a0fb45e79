//! Source distributions and the seeded sampler.
//!
//! Sampling uses ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `SeedableRng::seed_from_u64`, which is specified bit-for-bit and
//! platform-independent, so a `(distribution, N, seed)` triple always yields the same
//! sequence. Each draw takes one `f64` uniform in `[0, 1)` and maps it through
//! the inverse CDF of the explicit PMF table.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::Pmf;
use crate::codec::{Symbol, SymbolSequence};
use crate::error::{Error, Result};

/// Binomial base of the bimodal source.
pub const BIMODAL_TRIALS: u32 = 50;
pub const BIMODAL_P: f64 = 0.33;
pub const BIMODAL_SHIFT: u32 = 20;
/// Default bimodal alphabet: support truncated to `[0, 50]`.
pub const BIMODAL_ALPHABET: u32 = 51;

#[derive(Debug, Clone, PartialEq)]
pub enum DistributionSpec {
    /// `f_l ∝ (1-p)^l p` on `[0, L)`, renormalized after truncation.
    Geometric {
        p: f64,
        alphabet_size: u32,
    },
    /// Equal-weight mixture of binomial(50, 0.33) and the same PMF shifted by
    /// 20, truncated to `[0, L)` and renormalized.
    Bimodal {
        alphabet_size: u32,
    },
    Custom {
        label: String,
        pmf: Pmf,
    },
}

impl DistributionSpec {
    pub fn geometric(p: f64, alphabet_size: u32) -> Self {
        DistributionSpec::Geometric { p, alphabet_size }
    }

    pub fn bimodal() -> Self {
        DistributionSpec::Bimodal {
            alphabet_size: BIMODAL_ALPHABET,
        }
    }

    pub fn label(&self) -> &str {
        match self {
            DistributionSpec::Geometric { .. } => "geometric",
            DistributionSpec::Bimodal { .. } => "bimodal",
            DistributionSpec::Custom { label, .. } => label,
        }
    }

    pub fn alphabet_size(&self) -> u32 {
        match self {
            DistributionSpec::Geometric { alphabet_size, .. }
            | DistributionSpec::Bimodal { alphabet_size } => *alphabet_size,
            DistributionSpec::Custom { pmf, .. } => pmf.len() as u32,
        }
    }

    pub fn pmf(&self) -> Result<Pmf> {
        match *self {
            DistributionSpec::Geometric { p, alphabet_size } => {
                if !(p > 0.0 && p <= 1.0) {
                    return Err(Error::Config(format!("geometric p = {p} not in (0, 1]")));
                }
                check_alphabet(alphabet_size)?;
                let weights: Vec<f64> = (0..alphabet_size)
                    .map(|l| (1.0 - p).powi(l as i32) * p)
                    .collect();
                Pmf::from_weights(&weights)
            }
            DistributionSpec::Bimodal { alphabet_size } => {
                check_alphabet(alphabet_size)?;
                let base = binomial_pmf(BIMODAL_TRIALS, BIMODAL_P);
                let at = |k: i64| -> f64 {
                    usize::try_from(k)
                        .ok()
                        .and_then(|k| base.get(k))
                        .copied()
                        .unwrap_or(0.0)
                };
                let weights: Vec<f64> = (0..i64::from(alphabet_size))
                    .map(|k| 0.5 * at(k) + 0.5 * at(k - i64::from(BIMODAL_SHIFT)))
                    .collect();
                Pmf::from_weights(&weights)
            }
            DistributionSpec::Custom { ref pmf, .. } => {
                check_alphabet(pmf.len() as u32)?;
                Ok(pmf.clone())
            }
        }
    }
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistributionSpec::Geometric { p, alphabet_size } => {
                write!(f, "geometric(p={p}, L={alphabet_size})")
            }
            DistributionSpec::Bimodal { alphabet_size } => write!(f, "bimodal(L={alphabet_size})"),
            DistributionSpec::Custom { label, pmf } => write!(f, "{label}(L={})", pmf.len()),
        }
    }
}

fn check_alphabet(l: u32) -> Result<()> {
    if l == 0 {
        return Err(Error::Config("alphabet size must be at least 1".into()));
    }
    Ok(())
}

/// `P(K = k)` for `K ~ binomial(n, p)`, `k = 0..=n`.
pub fn binomial_pmf(n: u32, p: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n as usize + 1);
    // Multiplicative recurrence from k = 0; fine for the small n used here.
    let mut v = (1.0 - p).powi(n as i32);
    for k in 0..=n {
        out.push(v);
        v *= f64::from(n - k) / f64::from(k + 1) * p / (1.0 - p);
    }
    out
}

/// Inverse-CDF table over an explicit PMF.
#[derive(Debug, Clone)]
pub struct Sampler {
    cdf: Vec<f64>,
    last_positive: usize,
}

impl Sampler {
    pub fn new(pmf: &Pmf) -> Self {
        let mut acc = 0.0;
        let cdf = pmf
            .probs()
            .iter()
            .map(|&p| {
                acc += p;
                acc
            })
            .collect();
        let last_positive = pmf.probs().iter().rposition(|&p| p > 0.0).unwrap_or(0);
        Self { cdf, last_positive }
    }

    /// Maps `u` in `[0, 1)` to the first symbol whose CDF exceeds it.
    pub fn symbol_for(&self, u: f64) -> Symbol {
        let idx = self.cdf.partition_point(|&c| c <= u);
        idx.min(self.last_positive) as Symbol
    }

    pub fn draw<R: Rng>(&self, rng: &mut R) -> Symbol {
        self.symbol_for(rng.random::<f64>())
    }
}

/// `n` i.i.d. draws from `dist`, deterministic in `(dist, n, seed)`.
pub fn sample(dist: &DistributionSpec, n: usize, seed: u64) -> Result<SymbolSequence> {
    let pmf = dist.pmf()?;
    let sampler = Sampler::new(&pmf);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let symbols = (0..n).map(|_| sampler.draw(&mut rng)).collect();
    SymbolSequence::new(symbols, dist.alphabet_size())
}
