use std::fmt;

use crate::analysis::{
    entropy, gap_c, golomb_cost_g, optimal_golomb_param, theorem1_level_bound, total_bound, Pmf,
};
use crate::codes::GolombParam;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct LevelRow {
    pub rank: usize,
    pub symbol: usize,
    pub prob: f64,
    /// `None` when the level has zero probability.
    pub param: Option<GolombParam>,
    pub cost_at_param: Option<f64>,
    pub level_bound: f64,
}

/// Closed-form summary of a PMF: entropy, gap, total bound and the per-level
/// parameters and bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub entropy: f64,
    pub gap: f64,
    pub total_bound: f64,
    pub levels: Vec<LevelRow>,
}

impl AnalysisReport {
    pub fn from_pmf(f: &Pmf) -> Result<Self> {
        let probs = f.probs();
        let mut order: Vec<usize> = (0..probs.len()).collect();
        order.sort_by(|&a, &b| probs[b].total_cmp(&probs[a]));
        let mut levels = Vec::with_capacity(probs.len().saturating_sub(1));
        for (rank, &symbol) in order.iter().enumerate().skip(1) {
            let prob = probs[symbol];
            let param = (prob > 0.0)
                .then(|| optimal_golomb_param(f, rank))
                .transpose()?;
            let cost_at_param = param.map(|m| golomb_cost_g(f, rank, m)).transpose()?;
            levels.push(LevelRow {
                rank,
                symbol,
                prob,
                param,
                cost_at_param,
                level_bound: theorem1_level_bound(f, rank)?,
            });
        }
        Ok(Self {
            entropy: entropy(f),
            gap: gap_c(f),
            total_bound: total_bound(f),
            levels,
        })
    }
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "entropy H(f)      {:.6} bits/symbol", self.entropy)?;
        writeln!(f, "gap C(f)          {:.6} bits/symbol", self.gap)?;
        writeln!(f, "bound H(f)+C(f)   {:.6} bits/symbol", self.total_bound)?;
        writeln!(f)?;
        writeln!(
            f,
            "{:>5} {:>7} {:>12} {:>8} {:>12} {:>12}",
            "rank", "symbol", "prob", "M", "g(M)", "level_bound"
        )?;
        for row in &self.levels {
            let m = row.param.map_or("-".to_owned(), |m| m.to_string());
            let g = row
                .cost_at_param
                .map_or("-".to_owned(), |g| format!("{g:.6}"));
            writeln!(
                f,
                "{:>5} {:>7} {:>12.6e} {:>8} {:>12} {:>12.6}",
                row.rank, row.symbol, row.prob, m, g, row.level_bound
            )?;
        }
        Ok(())
    }
}
