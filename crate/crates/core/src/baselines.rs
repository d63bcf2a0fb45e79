//! Comparison codecs: canonical Huffman, symbol-wise Golomb and symbol-wise
//! Elias omega.
//!
//! These are benchmark baselines rather than file formats. Decoders are told
//! the sequence length `N` and the alphabet size instead of reading framing.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::bitio::{BitBuffer, BitCursor};
use crate::codec::{compute_type, Symbol, SymbolSequence, TypeVector};
use crate::codes::{
    decode_elias_omega, decode_golomb, elias_omega_len, encode_elias_omega, encode_golomb,
    GolombParam,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceCodecResult {
    pub bits: BitBuffer,
    pub total_bits: u64,
    /// Leading bits of `bits` holding side information (e.g. a codebook).
    pub side_info_bits: u64,
}

impl SequenceCodecResult {
    fn new(bits: BitBuffer, side_info_bits: u64) -> Self {
        let total_bits = bits.bit_len() as u64;
        debug_assert!(side_info_bits <= total_bits);
        Self {
            bits,
            total_bits,
            side_info_bits,
        }
    }

    pub fn payload_bits(&self) -> u64 {
        self.total_bits - self.side_info_bits
    }
}

/// Shared interface of the baseline codecs.
pub trait SequenceCodec {
    fn name(&self) -> String;

    fn encode(&self, x: &SymbolSequence) -> Result<SequenceCodecResult>;

    /// Decodes `n` symbols over an alphabet of `alphabet_size`.
    fn decode(&self, bits: &BitBuffer, alphabet_size: u32, n: usize) -> Result<SymbolSequence>;
}

/// Canonical Huffman code: per-symbol lengths plus the derived codewords.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HuffmanCodebook {
    /// Code length per symbol; 0 for symbols without a codeword.
    lengths: Vec<u32>,
    codes: Vec<u64>,
    /// Symbols in canonical order (by length, then symbol index).
    sorted: Vec<Symbol>,
    /// Number of codewords of each length, indexed by length.
    per_length: Vec<u64>,
}

impl HuffmanCodebook {
    /// Builds the canonical codebook from explicit code lengths.
    pub fn from_lengths(lengths: Vec<u32>) -> Result<Self> {
        let max_len = lengths.iter().copied().max().unwrap_or(0);
        if max_len == 0 {
            return Err(Error::EmptyInput("codebook has no codewords"));
        }
        if max_len > 64 {
            return Err(Error::Range(format!("code length {max_len} exceeds 64")));
        }
        let mut sorted: Vec<Symbol> = (0..lengths.len() as u32)
            .filter(|&s| lengths[s as usize] > 0)
            .collect();
        sorted.sort_by_key(|&s| (lengths[s as usize], s));

        let mut per_length = vec![0u64; max_len as usize + 1];
        for &s in &sorted {
            per_length[lengths[s as usize] as usize] += 1;
        }
        let kraft: u128 = (1..=max_len as usize)
            .map(|len| u128::from(per_length[len]) << (max_len as usize - len))
            .sum();
        if kraft > 1u128 << max_len {
            return Err(Error::Range(
                "code lengths violate the Kraft inequality".into(),
            ));
        }

        let mut codes = vec![0u64; lengths.len()];
        let mut code = 0u64;
        let mut prev_len = lengths[sorted[0] as usize];
        for &s in &sorted {
            let len = lengths[s as usize];
            code <<= len - prev_len;
            codes[s as usize] = code;
            code = code.wrapping_add(1);
            prev_len = len;
        }
        Ok(Self {
            lengths,
            codes,
            sorted,
            per_length,
        })
    }

    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    pub fn codeword(&self, symbol: Symbol) -> Option<(u64, u32)> {
        let len = *self.lengths.get(symbol as usize)?;
        (len > 0).then(|| (self.codes[symbol as usize], len))
    }

    /// `sum 2^-len` over symbols with codewords, as an exact fraction
    /// `numerator / 2^max_len`.
    pub fn kraft_sum(&self) -> (u128, u32) {
        let max_len = (self.per_length.len() - 1) as u32;
        let num = (1..self.per_length.len())
            .map(|len| u128::from(self.per_length[len]) << (max_len as usize - len))
            .sum();
        (num, max_len)
    }

    /// Side information: `omega(L)` then `omega(len + 1)` per symbol.
    pub fn write_header(&self, buf: &mut BitBuffer) {
        encode_elias_omega(buf, self.lengths.len() as u64).expect("nonempty codebook");
        for &len in &self.lengths {
            encode_elias_omega(buf, u64::from(len) + 1).expect("positive");
        }
    }

    pub fn header_bits(&self) -> u64 {
        elias_omega_len(self.lengths.len() as u64)
            + self
                .lengths
                .iter()
                .map(|&len| elias_omega_len(u64::from(len) + 1))
                .sum::<u64>()
    }

    pub fn read_header(cur: &mut BitCursor<'_>) -> Result<Self> {
        let l = decode_elias_omega(cur)?;
        if l > cur.remaining() as u64 {
            return Err(Error::Corrupt(format!("codebook claims {l} symbols")));
        }
        let mut lengths = Vec::with_capacity(l as usize);
        for _ in 0..l {
            let len = decode_elias_omega(cur)? - 1;
            lengths.push(u32::try_from(len).map_err(|_| Error::Corrupt("code length".into()))?);
        }
        Self::from_lengths(lengths).map_err(|e| Error::Corrupt(e.to_string()))
    }

    fn decode_symbol(&self, cur: &mut BitCursor<'_>) -> Result<Symbol> {
        let mut code = 0u64;
        let mut first = 0u64;
        let mut index = 0u64;
        for len in 1..self.per_length.len() {
            let bit = cur
                .read_bit()
                .map_err(|e| Error::truncated("Huffman codeword", e))?;
            code |= u64::from(bit);
            let count = self.per_length[len];
            if code.wrapping_sub(first) < count {
                return Ok(self.sorted[(index + code - first) as usize]);
            }
            index += count;
            first = (first + count) << 1;
            code <<= 1;
        }
        Err(Error::Corrupt(
            "bit pattern is not a Huffman codeword".into(),
        ))
    }
}

/// Code lengths from repeatedly merging the two lightest subtrees.
///
/// Ties pop the smaller total count first, then the subtree containing the
/// smaller symbol index. A single occurring symbol gets length 1.
pub fn huffman_build(t: &TypeVector) -> Result<HuffmanCodebook> {
    let counts = t.counts();
    let mut lengths = vec![0u32; counts.len()];
    // Each node: (weight, min symbol, node id).
    let mut heap = BinaryHeap::new();
    // parent[id] for every node; leaves first.
    let mut parent: Vec<usize> = Vec::new();
    let mut leaf_of: Vec<(Symbol, usize)> = Vec::new();
    for (s, &c) in counts.iter().enumerate() {
        if c > 0 {
            let id = parent.len();
            parent.push(usize::MAX);
            leaf_of.push((s as Symbol, id));
            heap.push(Reverse((c, s as Symbol, id)));
        }
    }
    match leaf_of.len() {
        0 => return Err(Error::EmptyInput("all counts are zero")),
        1 => {
            lengths[leaf_of[0].0 as usize] = 1;
            return HuffmanCodebook::from_lengths(lengths);
        }
        _ => {}
    }
    while heap.len() > 1 {
        let Reverse((w1, m1, a)) = heap.pop().expect("len > 1");
        let Reverse((w2, m2, b)) = heap.pop().expect("len > 1");
        let id = parent.len();
        parent.push(usize::MAX);
        parent[a] = id;
        parent[b] = id;
        heap.push(Reverse((w1 + w2, m1.min(m2), id)));
    }
    // Parents are created after their children, so depths resolve top-down.
    let mut depth = vec![0u32; parent.len()];
    for id in (0..parent.len()).rev() {
        if parent[id] != usize::MAX {
            depth[id] = depth[parent[id]] + 1;
        }
    }
    for &(s, id) in &leaf_of {
        lengths[s as usize] = depth[id];
    }
    HuffmanCodebook::from_lengths(lengths)
}

/// Concatenated codewords of `x` (payload only).
pub fn huffman_encode(x: &SymbolSequence, book: &HuffmanCodebook) -> Result<SequenceCodecResult> {
    let mut buf = BitBuffer::new();
    huffman_write(&mut buf, x, book)?;
    Ok(SequenceCodecResult::new(buf, 0))
}

fn huffman_write(buf: &mut BitBuffer, x: &SymbolSequence, book: &HuffmanCodebook) -> Result<()> {
    for &s in x.symbols() {
        let (code, len) = book.codeword(s).ok_or(Error::Coverage(s))?;
        buf.write_uint(code, len)?;
    }
    Ok(())
}

pub fn huffman_decode(
    bits: &BitBuffer,
    book: &HuffmanCodebook,
    n: usize,
) -> Result<SymbolSequence> {
    let mut cur = bits.cursor();
    let symbols = (0..n)
        .map(|_| book.decode_symbol(&mut cur))
        .collect::<Result<Vec<_>>>()?;
    SymbolSequence::new(symbols, book.lengths.len() as u32)
}

/// Huffman with the codebook stored in front of the payload.
#[derive(Debug, Clone, Copy, Default)]
pub struct Huffman;

impl SequenceCodec for Huffman {
    fn name(&self) -> String {
        "huffman".into()
    }

    fn encode(&self, x: &SymbolSequence) -> Result<SequenceCodecResult> {
        let mut buf = BitBuffer::new();
        if x.is_empty() {
            return Ok(SequenceCodecResult::new(buf, 0));
        }
        let book = huffman_build(&compute_type(x))?;
        book.write_header(&mut buf);
        let side = buf.bit_len() as u64;
        huffman_write(&mut buf, x, &book)?;
        Ok(SequenceCodecResult::new(buf, side))
    }

    fn decode(&self, bits: &BitBuffer, alphabet_size: u32, n: usize) -> Result<SymbolSequence> {
        if n == 0 {
            return SymbolSequence::new(Vec::new(), alphabet_size);
        }
        let mut cur = bits.cursor();
        let book = HuffmanCodebook::read_header(&mut cur)?;
        if book.lengths.len() != alphabet_size as usize {
            return Err(Error::Corrupt(format!(
                "codebook covers {} symbols, expected {alphabet_size}",
                book.lengths.len()
            )));
        }
        let symbols = (0..n)
            .map(|_| book.decode_symbol(&mut cur))
            .collect::<Result<Vec<_>>>()?;
        SymbolSequence::new(symbols, alphabet_size)
    }
}

/// Every symbol written directly as a Golomb codeword with a fixed `M`.
#[derive(Debug, Clone, Copy)]
pub struct SymbolwiseGolomb {
    pub param: GolombParam,
}

impl SymbolwiseGolomb {
    pub fn new(param: GolombParam) -> Self {
        Self { param }
    }
}

impl SequenceCodec for SymbolwiseGolomb {
    fn name(&self) -> String {
        format!("golomb{}", self.param)
    }

    fn encode(&self, x: &SymbolSequence) -> Result<SequenceCodecResult> {
        let mut buf = BitBuffer::new();
        for &s in x.symbols() {
            encode_golomb(&mut buf, u64::from(s), self.param);
        }
        Ok(SequenceCodecResult::new(buf, 0))
    }

    fn decode(&self, bits: &BitBuffer, alphabet_size: u32, n: usize) -> Result<SymbolSequence> {
        let mut cur = bits.cursor();
        let symbols = (0..n)
            .map(|_| {
                let v = decode_golomb(&mut cur, self.param)?;
                u32::try_from(v).map_err(|_| Error::Corrupt(format!("symbol {v} too large")))
            })
            .collect::<Result<Vec<_>>>()?;
        SymbolSequence::new(symbols, alphabet_size)
    }
}

/// Every symbol `s` written as `omega(s + 1)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct SymbolwiseElias;

impl SequenceCodec for SymbolwiseElias {
    fn name(&self) -> String {
        "elias".into()
    }

    fn encode(&self, x: &SymbolSequence) -> Result<SequenceCodecResult> {
        let mut buf = BitBuffer::new();
        for &s in x.symbols() {
            encode_elias_omega(&mut buf, u64::from(s) + 1)?;
        }
        Ok(SequenceCodecResult::new(buf, 0))
    }

    fn decode(&self, bits: &BitBuffer, alphabet_size: u32, n: usize) -> Result<SymbolSequence> {
        let mut cur = bits.cursor();
        let symbols = (0..n)
            .map(|_| {
                let v = decode_elias_omega(&mut cur)? - 1;
                u32::try_from(v).map_err(|_| Error::Corrupt(format!("symbol {v} too large")))
            })
            .collect::<Result<Vec<_>>>()?;
        SymbolSequence::new(symbols, alphabet_size)
    }
}
