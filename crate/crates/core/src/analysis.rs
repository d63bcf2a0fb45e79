//! Closed-form rate quantities for the type + run-length scheme.
//!
//! Level-indexed functions take a PMF in natural symbol order and sort it
//! descending internally; level `l` then refers to the `l`-th most probable
//! symbol, matching the rank order the codec uses.

use crate::codec::{extract_runs, golomb_param_from_ratio, RankOrder, SymbolSequence, TypeVector};
use crate::codes::{golomb_len, GolombParam};
use crate::error::{Error, Result};

/// Additive constant of the per-level code length bound.
pub const LEVEL_BOUND_CONSTANT: f64 = 2.914;

/// Tolerance on `sum(probs) == 1`.
pub const PMF_SUM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    probs: Vec<f64>,
}

impl Pmf {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Config("PMF needs at least one symbol".into()));
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::Config(format!("invalid probability {p}")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > PMF_SUM_TOLERANCE {
            return Err(Error::Config(format!("probabilities sum to {sum}, not 1")));
        }
        Ok(Self { probs })
    }

    /// Normalizes nonnegative weights into a PMF.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::Config(format!("invalid weight {w}")));
        }
        let sum: f64 = weights.iter().sum();
        if sum <= 0.0 {
            return Err(Error::Config("weights sum to zero".into()));
        }
        Self::new(weights.iter().map(|w| w / sum).collect()).or_else(|_| {
            // Renormalize once more to absorb rounding in the first division.
            let probs: Vec<f64> = weights.iter().map(|w| w / sum).collect();
            let s: f64 = probs.iter().sum();
            Self::new(probs.iter().map(|p| p / s).collect())
        })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Probabilities sorted descending (stable on ties).
    pub fn sorted_desc(&self) -> Vec<f64> {
        let mut order: Vec<usize> = (0..self.probs.len()).collect();
        order.sort_by(|&a, &b| self.probs[b].total_cmp(&self.probs[a]));
        order.into_iter().map(|i| self.probs[i]).collect()
    }
}

pub fn entropy(f: &Pmf) -> f64 {
    -f.probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.log2())
        .sum::<f64>()
}

pub fn empirical_pmf(t: &TypeVector) -> Result<Pmf> {
    if t.total() == 0 {
        return Err(Error::EmptyInput("type vector with N = 0"));
    }
    let n = t.total() as f64;
    Ok(Pmf {
        probs: t.counts().iter().map(|&c| c as f64 / n).collect(),
    })
}

/// Mass of ranks `0` and `upto+1..`, i.e. `1 - sum_{m=1}^{upto} f_m`,
/// summed directly so it stays nonnegative.
fn residual(sorted: &[f64], upto: usize) -> f64 {
    sorted[0] + sorted[upto + 1..].iter().sum::<f64>()
}

fn check_level(f: &Pmf, level: usize) -> Result<()> {
    if level == 0 || level >= f.len() {
        return Err(Error::Range(format!(
            "level {level} outside 1..{}",
            f.len()
        )));
    }
    Ok(())
}

/// Asymptotic bits per symbol of level `level` under parameter `m`:
/// `(1 - sum_{m=1}^{l} f_m) / M + f_l (log2 M + 2)`.
pub fn golomb_cost_g(f: &Pmf, level: usize, m: GolombParam) -> Result<f64> {
    check_level(f, level)?;
    let sorted = f.sorted_desc();
    let mv = m.get() as f64;
    Ok(residual(&sorted, level) / mv + sorted[level] * (mv.log2() + 2.0))
}

/// `max(1, round(ln2 * (1 - sum_{m=1}^{l} f_m) / f_l))`.
pub fn optimal_golomb_param(f: &Pmf, level: usize) -> Result<GolombParam> {
    check_level(f, level)?;
    let sorted = f.sorted_desc();
    let fl = sorted[level];
    if fl == 0.0 {
        return Err(Error::UndefinedLevel(level));
    }
    Ok(golomb_param_from_ratio(
        std::f64::consts::LN_2 * residual(&sorted, level) / fl,
    ))
}

fn level_bound_sorted(sorted: &[f64], level: usize) -> f64 {
    let fl = sorted[level];
    if fl == 0.0 {
        return 0.0;
    }
    fl * ((residual(sorted, level - 1) / fl).log2() + LEVEL_BOUND_CONSTANT)
}

/// Per-level code length bound `f_l (log2((1 - sum_{m<l} f_m) / f_l) + 2.914)`.
/// Levels with zero probability contribute 0.
pub fn theorem1_level_bound(f: &Pmf, level: usize) -> Result<f64> {
    check_level(f, level)?;
    Ok(level_bound_sorted(&f.sorted_desc(), level))
}

/// Sum of the per-level bounds over levels `1..L`.
pub fn level_bounds_sum(f: &Pmf) -> f64 {
    let sorted = f.sorted_desc();
    (1..sorted.len())
        .map(|l| level_bound_sorted(&sorted, l))
        .sum()
}

/// Gap between the asymptotic rate bound and the entropy:
/// `2.914 (1 - f_0) + f_0 log2 f_0 + sum_{l>=1} f_l log2(1 - sum_{m<l} f_m)`.
pub fn gap_c(f: &Pmf) -> f64 {
    let sorted = f.sorted_desc();
    let f0 = sorted[0];
    let head = LEVEL_BOUND_CONSTANT * (1.0 - f0) + if f0 > 0.0 { f0 * f0.log2() } else { 0.0 };
    let tail: f64 = (1..sorted.len())
        .filter(|&l| sorted[l] > 0.0)
        .map(|l| sorted[l] * residual(&sorted, l - 1).log2())
        .sum();
    head + tail
}

/// `H(f) + C(f)`.
pub fn total_bound(f: &Pmf) -> f64 {
    entropy(f) + gap_c(f)
}

/// Type header cost per symbol, `(L/N)(log2(N/L) + 1)`, with the vanishing
/// correction term dropped.
pub fn type_overhead_bound(n: u64, l: u64) -> Result<f64> {
    if l == 0 || n < l {
        return Err(Error::Range(format!(
            "need N >= L >= 1, got N = {n}, L = {l}"
        )));
    }
    let ratio = l as f64 / n as f64;
    Ok(ratio * ((n as f64 / l as f64).log2() + 1.0))
}

/// Exhaustive search for the Golomb parameter minimizing the payload of rank
/// `rank`, over `M` in `1..=search_cap`. Ties resolve to the smallest `M`.
///
/// `search_cap` defaults to four times the type-derived parameter plus 8.
pub fn brute_force_best_m(
    x: &SymbolSequence,
    t: &TypeVector,
    sigma: &RankOrder,
    rank: usize,
    search_cap: Option<u64>,
) -> Result<(GolombParam, u64)> {
    let chosen = crate::codec::choose_golomb_param(t, sigma, rank)?;
    let cap = search_cap.unwrap_or(4 * chosen.get() + 8).max(1);
    let runs = extract_runs(x, t, sigma);
    let level = runs.level(rank);
    let mut best = (GolombParam::ONE, u64::MAX);
    for mv in 1..=cap {
        let m = GolombParam::new(mv)?;
        let bits: u64 = level.iter().map(|&r| golomb_len(r, m)).sum();
        if bits < best.1 {
            best = (m, bits);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{compute_type, rank_order};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn pmf(p: &[f64]) -> Pmf {
        Pmf::new(p.to_vec()).unwrap()
    }

    fn m(v: u64) -> GolombParam {
        GolombParam::new(v).unwrap()
    }

    #[test]
    fn pmf_validation() {
        assert!(Pmf::new(vec![0.5, 0.6]).is_err());
        assert!(Pmf::new(vec![-0.1, 1.1]).is_err());
        assert!(Pmf::new(vec![]).is_err());
        let f = Pmf::from_weights(&[1.0, 3.0]).unwrap();
        assert_eq!(f.probs(), &[0.25, 0.75]);
        assert!(Pmf::from_weights(&[0.0, 0.0]).is_err());
        assert_eq!(pmf(&[0.2, 0.5, 0.3]).sorted_desc(), vec![0.5, 0.3, 0.2]);
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(entropy(&pmf(&[0.5, 0.5])), 1.0);
        assert_eq!(entropy(&pmf(&[1.0, 0.0])), 0.0);
        assert!(close(entropy(&pmf(&[0.9, 0.1])), 0.4690, 1e-4));
    }

    #[test]
    fn empirical_examples() {
        let t = |c: &[u64]| TypeVector::from_counts(c.to_vec()).unwrap();
        assert_eq!(empirical_pmf(&t(&[3, 1])).unwrap().probs(), &[0.75, 0.25]);
        assert_eq!(empirical_pmf(&t(&[4, 0])).unwrap().probs(), &[1.0, 0.0]);
        assert_eq!(
            empirical_pmf(&t(&[1, 1, 2])).unwrap().probs(),
            &[0.25, 0.25, 0.5]
        );
        assert!(matches!(
            empirical_pmf(&t(&[0, 0])),
            Err(Error::EmptyInput(_))
        ));
    }

    #[test]
    fn golomb_cost_examples() {
        let f = pmf(&[0.6, 0.4]);
        assert!(close(golomb_cost_g(&f, 1, m(1)).unwrap(), 1.4, 1e-12));
        assert!(close(golomb_cost_g(&f, 1, m(2)).unwrap(), 1.5, 1e-12));
        let f = pmf(&[0.7, 0.3, 0.0]);
        assert!(close(golomb_cost_g(&f, 2, m(1)).unwrap(), 0.7, 1e-12));
        assert!(golomb_cost_g(&f, 0, m(1)).is_err());
        assert!(golomb_cost_g(&f, 3, m(1)).is_err());
    }

    #[test]
    fn optimal_param_examples() {
        assert_eq!(optimal_golomb_param(&pmf(&[0.6, 0.4]), 1).unwrap().get(), 1);
        assert_eq!(
            optimal_golomb_param(&pmf(&[0.5, 0.3, 0.2]), 1)
                .unwrap()
                .get(),
            2
        );
        // Natural order does not matter.
        assert_eq!(
            optimal_golomb_param(&pmf(&[0.2, 0.5, 0.3]), 1)
                .unwrap()
                .get(),
            2
        );
        // Last level, nothing left but rank 0 mass that is tiny.
        assert_eq!(optimal_golomb_param(&pmf(&[0.5, 0.5]), 1).unwrap().get(), 1);
        assert!(matches!(
            optimal_golomb_param(&pmf(&[1.0, 0.0]), 1),
            Err(Error::UndefinedLevel(1))
        ));
    }

    #[test]
    fn level_bound_examples() {
        let b = theorem1_level_bound(&pmf(&[0.6, 0.4]), 1).unwrap();
        assert!(close(b, 0.4 * ((1.0f64 / 0.4).log2() + 2.914), 1e-12));
        assert!(close(b, 1.6944, 1e-4));
        assert!(close(
            theorem1_level_bound(&pmf(&[0.5, 0.5]), 1).unwrap(),
            1.957,
            1e-12
        ));
        assert_eq!(theorem1_level_bound(&pmf(&[1.0, 0.0]), 1).unwrap(), 0.0);
    }

    #[test]
    fn gap_examples() {
        assert_eq!(gap_c(&pmf(&[1.0])), 0.0);
        assert_eq!(total_bound(&pmf(&[1.0])), 0.0);
        let expected = 2.914 * 0.1 + 0.9 * 0.9f64.log2();
        assert!(close(gap_c(&pmf(&[0.9, 0.1])), expected, 1e-12));
        assert!(close(gap_c(&pmf(&[0.9, 0.1])), 0.1546, 1e-4));
        assert!(close(total_bound(&pmf(&[0.5, 0.5])), 1.957, 1e-12));
    }

    #[test]
    fn overhead_examples() {
        assert_eq!(type_overhead_bound(7, 7).unwrap(), 1.0);
        assert!(close(
            type_overhead_bound(1024, 1).unwrap(),
            11.0 / 1024.0,
            1e-15
        ));
        assert!(close(
            type_overhead_bound(100_000, 50).unwrap(),
            0.00598,
            1e-5
        ));
        assert!(type_overhead_bound(3, 4).is_err());
        assert!(type_overhead_bound(3, 0).is_err());
    }

    #[test]
    fn brute_force_examples() {
        // All runs zero: symbol 1 occupies a prefix.
        let x = SymbolSequence::new(vec![1, 1, 1, 0, 0, 0, 0], 2).unwrap();
        let t = compute_type(&x);
        let s = rank_order(&t);
        let (best, bits) = brute_force_best_m(&x, &t, &s, 1, None).unwrap();
        assert_eq!((best.get(), bits), (1, 3));

        // Runs [2, 1]: enumerate M in 1..=8 by hand.
        let x = SymbolSequence::new(vec![0, 0, 1, 0, 1, 0, 0, 0], 2).unwrap();
        let t = compute_type(&x);
        let s = rank_order(&t);
        let oracle = (1..=8u64)
            .map(|mv| (golomb_len(2, m(mv)) + golomb_len(1, m(mv)), mv))
            .min()
            .unwrap();
        let (best, bits) = brute_force_best_m(&x, &t, &s, 1, Some(8)).unwrap();
        assert_eq!((bits, best.get()), oracle);
        // M = 1 and M = 2 both spend 5 bits; the smaller M wins.
        assert_eq!(oracle, (5, 1));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn random_pmf() -> impl Strategy<Value = Pmf> {
            proptest::collection::vec(0.0f64..1.0, 1..40)
                .prop_filter_map("zero mass", |w| Pmf::from_weights(&w).ok())
        }

        proptest! {
            #[test]
            fn total_bound_is_sum_of_level_bounds(f in random_pmf()) {
                prop_assert!((total_bound(&f) - level_bounds_sum(&f)).abs() <= 1e-9);
            }

            #[test]
            fn level_bound_dominates_cost_at_optimum(f in random_pmf()) {
                let sorted = f.sorted_desc();
                for (l, &fl) in sorted.iter().enumerate().skip(1) {
                    if fl == 0.0 {
                        continue;
                    }
                    let mopt = optimal_golomb_param(&f, l).unwrap();
                    let g = golomb_cost_g(&f, l, mopt).unwrap();
                    prop_assert!(g <= theorem1_level_bound(&f, l).unwrap() + 1e-12);
                }
            }
        }
    }
}
