//! The type-vector + shrinking-support run-length codec.
//!
//! A sequence is described by its type (per-symbol counts) and, for every
//! symbol except the most frequent one, the positions where it occurs. Symbols
//! are visited in descending count order; each level only looks at positions
//! not yet claimed by an earlier level, and stores the zero-run lengths between
//! its occurrences with a Golomb code whose parameter is derived from the type.
//! The most frequent symbol fills whatever positions remain.
//!
//! Container layout (MSB-first, see [`crate::bitio`]):
//!
//! 1. `omega(L)`
//! 2. `omega(t_0 + 1) .. omega(t_{L-1} + 1)` in natural symbol order
//! 3. for each rank `j = 1..L-1` with `t_{sigma[j]} > 0`: `t_{sigma[j]}`
//!    Golomb codewords under `M_j`
//! 4. zero padding to a byte boundary

use crate::bitio::BitBuffer;
use crate::codes::{
    decode_elias_omega, decode_golomb, encode_elias_omega, encode_golomb, GolombParam,
};
use crate::error::{Error, Result};

pub type Symbol = u32;

/// Input sequence over the alphabet `{0, .., L-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolSequence {
    symbols: Vec<Symbol>,
    alphabet_size: u32,
}

impl SymbolSequence {
    /// Largest supported sequence length; positions are tracked as `u32`.
    pub const MAX_LEN: usize = u32::MAX as usize;

    pub fn new(symbols: Vec<Symbol>, alphabet_size: u32) -> Result<Self> {
        if alphabet_size == 0 {
            return Err(Error::Range("alphabet size must be at least 1".into()));
        }
        if symbols.len() > Self::MAX_LEN {
            return Err(Error::Range(format!(
                "sequence of {} symbols exceeds the supported maximum {}",
                symbols.len(),
                Self::MAX_LEN
            )));
        }
        if let Some((pos, &s)) = symbols
            .iter()
            .enumerate()
            .find(|(_, &s)| s >= alphabet_size)
        {
            return Err(Error::Range(format!(
                "symbol {s} at position {pos} is outside alphabet of size {alphabet_size}"
            )));
        }
        Ok(Self {
            symbols,
            alphabet_size,
        })
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.symbols
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// Per-symbol occurrence counts in natural symbol order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TypeVector {
    counts: Vec<u64>,
    total: u64,
}

impl TypeVector {
    pub fn from_counts(counts: Vec<u64>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::Range("type vector needs at least one symbol".into()));
        }
        let total = counts
            .iter()
            .try_fold(0u64, |acc, &c| acc.checked_add(c))
            .ok_or_else(|| Error::Range("type vector total overflows u64".into()))?;
        Ok(Self { counts, total })
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, symbol: Symbol) -> u64 {
        self.counts[symbol as usize]
    }

    /// `N`, the sequence length.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn alphabet_size(&self) -> usize {
        self.counts.len()
    }
}

/// Symbols sorted by descending count, ties by ascending symbol index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankOrder {
    sigma: Vec<Symbol>,
}

impl RankOrder {
    pub fn symbols(&self) -> &[Symbol] {
        &self.sigma
    }

    /// Symbol at rank `j` (rank 0 is the most frequent).
    pub fn at(&self, rank: usize) -> Symbol {
        self.sigma[rank]
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    /// Inverse permutation: `ranks()[symbol]` is the rank of `symbol`.
    pub fn ranks(&self) -> Vec<u32> {
        let mut inv = vec![0u32; self.sigma.len()];
        for (rank, &s) in self.sigma.iter().enumerate() {
            inv[s as usize] = rank as u32;
        }
        inv
    }
}

/// Encoded zero-run lengths for ranks `1..L`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EncodedRunLists {
    levels: Vec<Vec<u64>>,
}

impl EncodedRunLists {
    /// Runs stored for rank `j`, `1 <= j < L`.
    pub fn level(&self, rank: usize) -> &[u64] {
        assert!(rank >= 1, "rank 0 has no run list");
        &self.levels[rank - 1]
    }

    /// Number of levels, `L - 1`.
    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    /// `(rank, runs)` pairs for ranks `1..L`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &[u64])> + '_ {
        self.levels
            .iter()
            .enumerate()
            .map(|(i, runs)| (i + 1, runs.as_slice()))
    }
}

pub fn compute_type(x: &SymbolSequence) -> TypeVector {
    let mut counts = vec![0u64; x.alphabet_size as usize];
    for &s in &x.symbols {
        counts[s as usize] += 1;
    }
    let total = x.symbols.len() as u64;
    TypeVector { counts, total }
}

pub fn rank_order(t: &TypeVector) -> RankOrder {
    let mut sigma: Vec<Symbol> = (0..t.counts.len() as u32).collect();
    // Stable sort keeps ascending index order among equal counts.
    sigma.sort_by_key(|&s| std::cmp::Reverse(t.counts[s as usize]));
    RankOrder { sigma }
}

/// `M = max(1, round_half_up(ln2 * zeros / ones))`, evaluated in `f64`.
///
/// `zeros` is `|I_j| - t_j`, the number of positions at level `j` that do not
/// hold the level's symbol; `ones` is `t_j`.
pub(crate) fn golomb_param_from_counts(zeros: u64, ones: u64) -> GolombParam {
    debug_assert!(ones > 0);
    golomb_param_from_ratio(std::f64::consts::LN_2 * zeros as f64 / ones as f64)
}

/// Rounds half up and clamps to `M >= 1`.
pub(crate) fn golomb_param_from_ratio(raw: f64) -> GolombParam {
    let rounded = (raw + 0.5).floor();
    // `as` saturates for values beyond u64::MAX.
    GolombParam::new((rounded as u64).max(1)).expect("clamped to >= 1")
}

/// Golomb parameter of rank `j` (`1 <= j < L`), computed from the type alone.
pub fn choose_golomb_param(t: &TypeVector, sigma: &RankOrder, rank: usize) -> Result<GolombParam> {
    if rank == 0 || rank >= sigma.len() {
        return Err(Error::Range(format!(
            "rank {rank} outside 1..{}",
            sigma.len()
        )));
    }
    let ones = t.count(sigma.at(rank));
    if ones == 0 {
        return Err(Error::UndefinedLevel(rank));
    }
    let removed: u64 = (1..=rank).map(|i| t.count(sigma.at(i))).sum();
    Ok(golomb_param_from_counts(t.total - removed, ones))
}

fn check_consistent(x: &SymbolSequence, t: &TypeVector, sigma: &RankOrder) {
    assert_eq!(
        t.counts.len(),
        x.alphabet_size as usize,
        "type/alphabet mismatch"
    );
    assert_eq!(sigma.len(), t.counts.len(), "rank order/type mismatch");
    assert_eq!(
        t.total,
        x.len() as u64,
        "type total differs from sequence length"
    );
}

/// Zero-run lengths per level over the shrinking index sets.
///
/// Level `j` scans the positions not claimed by ranks `1..j`, records the run
/// of non-`sigma[j]` positions before each occurrence of `sigma[j]`, and drops
/// the trailing run.
pub fn extract_runs(x: &SymbolSequence, t: &TypeVector, sigma: &RankOrder) -> EncodedRunLists {
    check_consistent(x, t, sigma);
    let num_levels = sigma.len() - 1;
    let mut levels = vec![Vec::new(); num_levels];
    if num_levels == 0 {
        return EncodedRunLists { levels };
    }
    let rank_of = sigma.ranks();
    // Ranks of the symbols at the positions of the current index set, in order.
    let mut current: Vec<u32> = x.symbols.iter().map(|&s| rank_of[s as usize]).collect();

    for (j, runs) in (1..=num_levels).zip(levels.iter_mut()) {
        let ones = t.count(sigma.at(j));
        if ones == 0 {
            // Counts are sorted, so every later level is empty as well.
            break;
        }
        runs.reserve_exact(ones as usize);
        let level = j as u32;
        let mut run = 0u64;
        let mut kept = 0usize;
        for i in 0..current.len() {
            let r = current[i];
            if r == level {
                runs.push(run);
                run = 0;
            } else {
                run += 1;
                current[kept] = r;
                kept += 1;
            }
        }
        current.truncate(kept);
        debug_assert_eq!(runs.len() as u64, ones);
    }
    EncodedRunLists { levels }
}

/// Per-level accounting produced alongside an encode or decode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelStats {
    pub rank: usize,
    pub symbol: Symbol,
    /// `t_{sigma[j]}`
    pub count: u64,
    /// `|I_j|`
    pub index_set_len: u64,
    /// `None` for empty levels, which emit nothing.
    pub param: Option<GolombParam>,
    pub payload_bits: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodecReport {
    pub alphabet_size: u32,
    pub len: u64,
    /// Bits of `omega(L)` plus the type codes.
    pub header_bits: u64,
    pub payload_bits: u64,
    pub levels: Vec<LevelStats>,
}

impl CodecReport {
    /// Header plus payload, excluding byte padding.
    pub fn total_bits(&self) -> u64 {
        self.header_bits + self.payload_bits
    }
}

fn level_skeleton(t: &TypeVector, sigma: &RankOrder) -> Vec<LevelStats> {
    let mut stats = Vec::with_capacity(sigma.len().saturating_sub(1));
    let mut index_set_len = t.total;
    for rank in 1..sigma.len() {
        let symbol = sigma.at(rank);
        let count = t.count(symbol);
        let param = (count > 0).then(|| golomb_param_from_counts(index_set_len - count, count));
        stats.push(LevelStats {
            rank,
            symbol,
            count,
            index_set_len,
            param,
            payload_bits: 0,
        });
        index_set_len -= count;
    }
    stats
}

fn write_header(buf: &mut BitBuffer, t: &TypeVector) {
    encode_elias_omega(buf, t.counts.len() as u64).expect("alphabet size >= 1");
    for &c in &t.counts {
        // Counts fit in u32 range, so c + 1 cannot overflow.
        encode_elias_omega(buf, c + 1).expect("shifted count is positive");
    }
}

pub fn encode(x: &SymbolSequence) -> BitBuffer {
    encode_with_report(x).0
}

/// Encodes `x` and reports the per-level parameters and bit counts.
pub fn encode_with_report(x: &SymbolSequence) -> (BitBuffer, CodecReport) {
    let t = compute_type(x);
    let sigma = rank_order(&t);
    let runs = extract_runs(x, &t, &sigma);

    let mut buf = BitBuffer::with_capacity_bits(x.len() * 2 + 64);
    write_header(&mut buf, &t);
    let header_bits = buf.bit_len() as u64;

    let mut levels = level_skeleton(&t, &sigma);
    for (stats, (_, level_runs)) in levels.iter_mut().zip(runs.iter()) {
        let Some(m) = stats.param else { break };
        let start = buf.bit_len();
        for &r in level_runs {
            encode_golomb(&mut buf, r, m);
        }
        stats.payload_bits = (buf.bit_len() - start) as u64;
    }
    let payload_bits = buf.bit_len() as u64 - header_bits;
    let report = CodecReport {
        alphabet_size: x.alphabet_size,
        len: x.len() as u64,
        header_bits,
        payload_bits,
        levels,
    };
    (buf, report)
}

pub fn decode(buf: &BitBuffer) -> Result<SymbolSequence> {
    decode_with_report(buf).map(|(x, _)| x)
}

/// Decodes a container, reporting the parameters the decoder derived.
pub fn decode_with_report(buf: &BitBuffer) -> Result<(SymbolSequence, CodecReport)> {
    let mut cur = buf.cursor();

    let alphabet = decode_elias_omega(&mut cur)?;
    // Every type code takes at least one bit.
    if alphabet > u64::from(u32::MAX) || alphabet > cur.remaining() as u64 {
        return Err(Error::Corrupt(format!(
            "alphabet size {alphabet} is impossible for a {}-bit stream",
            buf.bit_len()
        )));
    }
    let mut counts = Vec::with_capacity(alphabet as usize);
    for _ in 0..alphabet {
        counts.push(decode_elias_omega(&mut cur)? - 1);
    }
    let t = TypeVector::from_counts(counts).map_err(|e| Error::Corrupt(e.to_string()))?;
    if t.total > SymbolSequence::MAX_LEN as u64 {
        return Err(Error::Corrupt(format!(
            "sequence length {} exceeds the supported maximum",
            t.total
        )));
    }
    let header_bits = cur.position() as u64;
    let sigma = rank_order(&t);
    let mut levels = level_skeleton(&t, &sigma);

    // Each payload codeword takes at least one bit.
    let coded: u64 = levels.iter().map(|l| l.count).sum();
    if coded > cur.remaining() as u64 {
        return Err(Error::Truncated(format!(
            "type promises {coded} run codewords but only {} bits remain",
            cur.remaining()
        )));
    }

    let n = t.total as usize;
    let base = sigma.at(0);
    let mut symbols = vec![base; n];
    let mut positions: Vec<u32> = (0..n as u32).collect();

    for stats in levels.iter_mut() {
        let Some(m) = stats.param else { break };
        let start = cur.position();
        let symbol = stats.symbol;
        let set_len = positions.len() as u64;
        debug_assert_eq!(set_len, stats.index_set_len);
        let mut offset = 0u64;
        for k in 0..stats.count {
            let run = decode_golomb(&mut cur, m)?;
            let at = offset
                .checked_add(run)
                .filter(|&p| p < set_len)
                .ok_or_else(|| {
                    Error::Corrupt(format!(
                        "rank {} occurrence {k} lands past the {set_len}-position index set",
                        stats.rank
                    ))
                })?;
            symbols[positions[at as usize] as usize] = symbol;
            offset = at + 1;
        }
        positions.retain(|&p| symbols[p as usize] == base);
        stats.payload_bits = (cur.position() - start) as u64;
    }

    let payload_bits = cur.position() as u64 - header_bits;
    let trailing = cur.remaining();
    if trailing >= 8 || (trailing > 0 && cur.read_uint(trailing as u32)? != 0) {
        return Err(Error::Format(format!(
            "{trailing} unexpected bits after the payload"
        )));
    }

    let x = SymbolSequence {
        symbols,
        alphabet_size: alphabet as u32,
    };
    let report = CodecReport {
        alphabet_size: x.alphabet_size,
        len: t.total,
        header_bits,
        payload_bits,
        levels,
    };
    Ok((x, report))
}
