//! Primitive integer codes: unary, truncated binary, Golomb and Elias omega.
//!
//! Conventions fixed here (encoder and decoder must agree on them):
//! unary writes `q` one-bits followed by a terminating zero-bit, and the
//! Golomb remainder is `r mod M` written with the truncated binary code.

use std::fmt;
use std::num::NonZeroU64;

use crate::bitio::{BitBuffer, BitCursor};
use crate::error::{Error, Result};

/// Golomb divisor `M >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GolombParam(NonZeroU64);

impl GolombParam {
    pub const ONE: GolombParam = GolombParam(NonZeroU64::MIN);

    pub fn new(m: u64) -> Result<Self> {
        NonZeroU64::new(m)
            .map(GolombParam)
            .ok_or_else(|| Error::Range("Golomb parameter must be >= 1".into()))
    }

    pub fn get(self) -> u64 {
        self.0.get()
    }
}

impl fmt::Display for GolombParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `ceil(log2 m)` for `m >= 1`.
fn ceil_log2(m: u64) -> u32 {
    if m <= 1 {
        0
    } else {
        64 - (m - 1).leading_zeros()
    }
}

/// Width `b` and threshold `k = 2^b - M` of the truncated binary code.
fn tb_shape(m: u64) -> (u32, u64) {
    let b = ceil_log2(m);
    let k = ((1u128 << b) - u128::from(m)) as u64;
    (b, k)
}

pub fn encode_unary(buf: &mut BitBuffer, q: u64) {
    buf.write_repeated(true, q);
    buf.write_bit(false);
}

pub fn decode_unary(cur: &mut BitCursor<'_>) -> Result<u64> {
    cur.read_ones_until_zero()
        .map_err(|e| Error::truncated("unary codeword", e))
}

pub fn unary_len(q: u64) -> u64 {
    q + 1
}

/// Minimal prefix code for `v` in `[0, M)`: values below `k = 2^b - M` take
/// `b - 1` bits, the rest take `b` bits (as `v + k`). `M = 1` emits nothing.
pub fn encode_truncated_binary(buf: &mut BitBuffer, v: u64, m: GolombParam) -> Result<()> {
    let m = m.get();
    if v >= m {
        return Err(Error::Range(format!(
            "truncated binary value {v} not below M = {m}"
        )));
    }
    if m == 1 {
        return Ok(());
    }
    let (b, k) = tb_shape(m);
    if v < k {
        buf.write_uint(v, b - 1)?;
    } else {
        // v + k < 2^b <= 2^64, so the sum fits.
        buf.write_uint(v + k, b)?;
    }
    Ok(())
}

pub fn decode_truncated_binary(cur: &mut BitCursor<'_>, m: GolombParam) -> Result<u64> {
    let m = m.get();
    if m == 1 {
        return Ok(0);
    }
    let (b, k) = tb_shape(m);
    let trunc = |e| Error::truncated("truncated binary codeword", e);
    let head = cur.read_uint(b - 1).map_err(trunc)?;
    if head < k {
        return Ok(head);
    }
    let bit = cur.read_bit().map_err(trunc)?;
    let full = (u128::from(head) << 1) | u128::from(bit);
    Ok((full - u128::from(k)) as u64)
}

pub fn truncated_binary_len(v: u64, m: GolombParam) -> u64 {
    let m = m.get();
    if m == 1 {
        return 0;
    }
    let (b, k) = tb_shape(m);
    u64::from(if v < k { b - 1 } else { b })
}

pub fn encode_golomb(buf: &mut BitBuffer, r: u64, m: GolombParam) {
    let q = r / m.get();
    encode_unary(buf, q);
    encode_truncated_binary(buf, r % m.get(), m).expect("remainder is below M");
}

pub fn decode_golomb(cur: &mut BitCursor<'_>, m: GolombParam) -> Result<u64> {
    let q = decode_unary(cur)?;
    let rem = decode_truncated_binary(cur, m)?;
    q.checked_mul(m.get())
        .and_then(|v| v.checked_add(rem))
        .ok_or_else(|| Error::Corrupt(format!("Golomb value overflows u64 (q = {q}, M = {m})")))
}

/// `floor(r/M) + 1 + len_tb(r mod M, M)`.
pub fn golomb_len(r: u64, m: GolombParam) -> u64 {
    unary_len(r / m.get()) + truncated_binary_len(r % m.get(), m)
}

/// Elias omega code for `v >= 1`.
pub fn encode_elias_omega(buf: &mut BitBuffer, v: u64) -> Result<()> {
    if v == 0 {
        return Err(Error::Range(
            "Elias omega codes positive integers only".into(),
        ));
    }
    // Groups are produced last-to-first, so collect them before writing.
    let mut groups: [(u64, u32); 8] = [(0, 0); 8];
    let mut count = 0;
    let mut n = v;
    while n > 1 {
        let width = 64 - n.leading_zeros();
        groups[count] = (n, width);
        count += 1;
        n = u64::from(width - 1);
    }
    for &(value, width) in groups[..count].iter().rev() {
        buf.write_uint(value, width)?;
    }
    buf.write_bit(false);
    Ok(())
}

pub fn decode_elias_omega(cur: &mut BitCursor<'_>) -> Result<u64> {
    let trunc = |e| Error::truncated("Elias omega codeword", e);
    let mut n = 1u64;
    loop {
        if !cur.read_bit().map_err(trunc)? {
            return Ok(n);
        }
        if n > 63 {
            return Err(Error::Corrupt(format!(
                "Elias omega group of {} bits exceeds 64",
                n + 1
            )));
        }
        let low = cur.read_uint(n as u32).map_err(trunc)?;
        n = (1u64 << n) | low;
    }
}

pub fn elias_omega_len(v: u64) -> u64 {
    assert!(v >= 1, "Elias omega length of zero");
    let mut len = 1;
    let mut n = v;
    while n > 1 {
        let width = 64 - n.leading_zeros();
        len += u64::from(width);
        n = u64::from(width - 1);
    }
    len
}
