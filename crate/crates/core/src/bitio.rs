//! Bit-granular buffers.
//!
//! Bits are stored MSB-first: bit 0 of the stream is the most significant bit
//! of byte 0. Unused low bits of the final byte are always zero, so
//! [`BitBuffer::as_bytes`] can be written to disk as-is.

use std::fmt;

/// Raised when a read asks for more bits than remain in the buffer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("bit stream underrun: requested {requested} bits, {remaining} remaining")]
pub struct Underrun {
    pub requested: usize,
    pub remaining: usize,
}

/// Raised by [`BitBuffer::write_uint`] when `value` does not fit in `width` bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("value {value} does not fit in {width} bits")]
pub struct WidthOverflow {
    pub value: u64,
    pub width: u32,
}

/// Append-only bit sequence over a byte vector.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitBuffer {
    bytes: Vec<u8>,
    bit_len: usize,
}

impl BitBuffer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity_bits(bits: usize) -> Self {
        Self {
            bytes: Vec::with_capacity(bits.div_ceil(8)),
            bit_len: 0,
        }
    }

    /// Wraps whole bytes; every bit of every byte counts as valid.
    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        let bit_len = bytes.len() * 8;
        Self { bytes, bit_len }
    }

    /// Wraps `bytes` with an explicit bit length. Returns `None` if
    /// `bit_len` is inconsistent with the byte count or padding bits are set.
    pub fn from_parts(bytes: Vec<u8>, bit_len: usize) -> Option<Self> {
        if bit_len > bytes.len() * 8 || bytes.len() != bit_len.div_ceil(8) {
            return None;
        }
        let used = bit_len % 8;
        if used != 0 && bytes[bytes.len() - 1] & (0xFF >> used) != 0 {
            return None;
        }
        Some(Self { bytes, bit_len })
    }

    pub fn bit_len(&self) -> usize {
        self.bit_len
    }

    pub fn is_empty(&self) -> bool {
        self.bit_len == 0
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }

    pub fn cursor(&self) -> BitCursor<'_> {
        BitCursor::new(self)
    }

    pub fn write_bit(&mut self, bit: bool) {
        let used = self.bit_len % 8;
        if used == 0 {
            self.bytes.push(0);
        }
        if bit {
            let last = self.bytes.len() - 1;
            self.bytes[last] |= 0x80 >> used;
        }
        self.bit_len += 1;
    }

    /// Appends the low `width` bits of `value`, most significant first.
    pub fn write_uint(&mut self, value: u64, width: u32) -> Result<(), WidthOverflow> {
        if width > 64 || (width < 64 && value >> width != 0) {
            return Err(WidthOverflow { value, width });
        }
        self.push_bits(value, width);
        Ok(())
    }

    /// Appends `count` copies of `bit`.
    pub fn write_repeated(&mut self, bit: bool, mut count: u64) {
        let word = if bit { u64::MAX } else { 0 };
        while count > 0 {
            let chunk = count.min(64) as u32;
            self.push_bits(word >> (64 - chunk), chunk);
            count -= u64::from(chunk);
        }
    }

    /// Appends every valid bit of `other`.
    pub fn append(&mut self, other: &BitBuffer) {
        let mut cur = other.cursor();
        while cur.remaining() >= 64 {
            let v = cur.read_uint(64).expect("bounded by remaining");
            self.push_bits(v, 64);
        }
        let rest = cur.remaining() as u32;
        let v = cur.read_uint(rest).expect("bounded by remaining");
        self.push_bits(v, rest);
    }

    // Caller guarantees width <= 64 and value < 2^width.
    fn push_bits(&mut self, value: u64, width: u32) {
        let mut left = width;
        while left > 0 {
            let used = (self.bit_len % 8) as u32;
            if used == 0 {
                self.bytes.push(0);
            }
            let free = 8 - used;
            let take = free.min(left);
            let chunk = ((value >> (left - take)) & ((1u64 << take) - 1)) as u8;
            let last = self.bytes.len() - 1;
            self.bytes[last] |= chunk << (free - take);
            self.bit_len += take as usize;
            left -= take;
        }
    }
}

impl fmt::Debug for BitBuffer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitBuffer({} bits: ", self.bit_len)?;
        let mut cur = self.cursor();
        for i in 0..self.bit_len.min(128) {
            if i > 0 && i % 8 == 0 {
                f.write_str("_")?;
            }
            let b = cur.read_bit().expect("bounded by bit_len");
            f.write_str(if b { "1" } else { "0" })?;
        }
        if self.bit_len > 128 {
            f.write_str("...")?;
        }
        f.write_str(")")
    }
}

/// Read position over a [`BitBuffer`].
#[derive(Debug, Clone)]
pub struct BitCursor<'a> {
    bytes: &'a [u8],
    bit_len: usize,
    pos: usize,
}

impl<'a> BitCursor<'a> {
    pub fn new(buf: &'a BitBuffer) -> Self {
        Self {
            bytes: &buf.bytes,
            bit_len: buf.bit_len,
            pos: 0,
        }
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn remaining(&self) -> usize {
        self.bit_len - self.pos
    }

    pub fn read_bit(&mut self) -> Result<bool, Underrun> {
        if self.pos >= self.bit_len {
            return Err(Underrun {
                requested: 1,
                remaining: 0,
            });
        }
        let bit = self.bytes[self.pos / 8] & (0x80 >> (self.pos % 8)) != 0;
        self.pos += 1;
        Ok(bit)
    }

    /// Reads `width` bits (at most 64) as a big-endian unsigned integer.
    pub fn read_uint(&mut self, width: u32) -> Result<u64, Underrun> {
        assert!(width <= 64, "read_uint width {width} exceeds 64");
        let width_bits = width as usize;
        if width_bits > self.remaining() {
            return Err(Underrun {
                requested: width_bits,
                remaining: self.remaining(),
            });
        }
        let mut value = 0u64;
        let mut left = width;
        while left > 0 {
            let used = (self.pos % 8) as u32;
            let avail = 8 - used;
            let take = avail.min(left);
            let byte = u64::from(self.bytes[self.pos / 8]);
            let chunk = (byte >> (avail - take)) & ((1u64 << take) - 1);
            value = (value << take) | chunk;
            self.pos += take as usize;
            left -= take;
        }
        Ok(value)
    }

    /// Counts one-bits up to and including the next zero-bit, returning the
    /// number of ones. The terminating zero is consumed.
    pub fn read_ones_until_zero(&mut self) -> Result<u64, Underrun> {
        let mut ones = 0u64;
        loop {
            if self.pos >= self.bit_len {
                return Err(Underrun {
                    requested: 1,
                    remaining: 0,
                });
            }
            let used = self.pos % 8;
            let avail = (8 - used).min(self.bit_len - self.pos);
            // Left-align the unread bits of the current byte.
            let byte = self.bytes[self.pos / 8] << used;
            let run = (byte.leading_ones() as usize).min(avail);
            ones += run as u64;
            self.pos += run;
            if run < avail {
                self.pos += 1;
                return Ok(ones);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits_of(buf: &BitBuffer) -> String {
        let mut cur = buf.cursor();
        (0..buf.bit_len())
            .map(|_| if cur.read_bit().unwrap() { '1' } else { '0' })
            .collect()
    }

    #[test]
    fn single_bit_is_msb() {
        let mut buf = BitBuffer::new();
        buf.write_bit(true);
        assert_eq!(buf.bit_len(), 1);
        assert_eq!(buf.as_bytes(), &[0b1000_0000]);
    }

    #[test]
    fn full_byte_and_spill() {
        let mut buf = BitBuffer::new();
        for _ in 0..8 {
            buf.write_bit(true);
        }
        assert_eq!(buf.as_bytes(), &[0xFF]);
        assert_eq!(buf.bit_len(), 8);
        buf.write_bit(true);
        assert_eq!(buf.as_bytes(), &[0xFF, 0x80]);
        assert_eq!(buf.bit_len(), 9);
    }

    #[test]
    fn write_uint_examples() {
        let mut buf = BitBuffer::new();
        buf.write_uint(5, 3).unwrap();
        assert_eq!(bits_of(&buf), "101");
        buf.write_uint(0, 0).unwrap();
        assert_eq!(buf.bit_len(), 3);
        buf.write_uint(6, 4).unwrap();
        assert_eq!(bits_of(&buf), "1010110");
    }

    #[test]
    fn write_uint_range_error() {
        let mut buf = BitBuffer::new();
        assert_eq!(
            buf.write_uint(8, 3),
            Err(WidthOverflow { value: 8, width: 3 })
        );
        assert_eq!(
            buf.write_uint(1, 0),
            Err(WidthOverflow { value: 1, width: 0 })
        );
        assert!(buf.is_empty());
        buf.write_uint(u64::MAX, 64).unwrap();
        assert_eq!(buf.cursor().read_uint(64).unwrap(), u64::MAX);
    }

    #[test]
    fn read_back_and_underrun() {
        let mut buf = BitBuffer::new();
        buf.write_uint(5, 3).unwrap();
        let mut cur = buf.cursor();
        assert_eq!(cur.read_uint(3).unwrap(), 5);
        assert_eq!(cur.position(), 3);
        assert_eq!(
            cur.read_bit(),
            Err(Underrun {
                requested: 1,
                remaining: 0
            })
        );
        // Padding bits are not readable.
        assert_eq!(cur.remaining(), 0);
    }

    #[test]
    fn fifo_order() {
        let mut buf = BitBuffer::new();
        buf.write_bit(true);
        buf.write_bit(false);
        buf.write_bit(true);
        let mut cur = buf.cursor();
        assert!(cur.read_bit().unwrap());
        assert!(!cur.read_bit().unwrap());
        assert!(cur.read_bit().unwrap());
    }

    #[test]
    fn read_uint_underrun_does_not_advance() {
        let mut buf = BitBuffer::new();
        buf.write_uint(3, 2).unwrap();
        let mut cur = buf.cursor();
        assert!(cur.read_uint(3).is_err());
        assert_eq!(cur.position(), 0);
        assert_eq!(cur.read_uint(2).unwrap(), 3);
    }

    #[test]
    fn repeated_and_unary_scan() {
        let mut buf = BitBuffer::new();
        buf.write_repeated(true, 150);
        buf.write_bit(false);
        buf.write_repeated(true, 3);
        buf.write_bit(false);
        buf.write_repeated(true, 2);
        let mut cur = buf.cursor();
        assert_eq!(cur.read_ones_until_zero().unwrap(), 150);
        assert_eq!(cur.read_ones_until_zero().unwrap(), 3);
        assert!(cur.read_ones_until_zero().is_err());
    }

    #[test]
    fn from_parts_rejects_dirty_padding() {
        assert!(BitBuffer::from_parts(vec![0b1010_0000], 3).is_some());
        assert!(BitBuffer::from_parts(vec![0b1010_0001], 3).is_none());
        assert!(BitBuffer::from_parts(vec![0, 0], 3).is_none());
        assert!(BitBuffer::from_parts(vec![], 0).is_some());
    }

    #[test]
    fn append_concatenates() {
        let mut a = BitBuffer::new();
        a.write_uint(0b101, 3).unwrap();
        let mut b = BitBuffer::new();
        b.write_repeated(true, 70);
        b.write_uint(0b01, 2).unwrap();
        a.append(&b);
        assert_eq!(a.bit_len(), 75);
        let s = bits_of(&a);
        assert_eq!(&s[..3], "101");
        assert_eq!(&s[73..], "01");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn field() -> impl Strategy<Value = (u64, u32)> {
            (0u32..=64).prop_flat_map(|w| {
                let max = if w == 64 {
                    u64::MAX
                } else {
                    (1u64 << w).wrapping_sub(1)
                };
                (0..=max, Just(w))
            })
        }

        proptest! {
            #[test]
            fn write_then_read_reproduces(fields in proptest::collection::vec(field(), 0..64)) {
                let mut buf = BitBuffer::new();
                for &(v, w) in &fields {
                    buf.write_uint(v, w).unwrap();
                }
                let total: usize = fields.iter().map(|&(_, w)| w as usize).sum();
                prop_assert_eq!(buf.bit_len(), total);
                prop_assert_eq!(buf.as_bytes().len(), total.div_ceil(8));
                if !total.is_multiple_of(8) {
                    let last = *buf.as_bytes().last().unwrap();
                    prop_assert_eq!(last & (0xFF >> (total % 8)), 0);
                }
                let mut cur = buf.cursor();
                for &(v, w) in &fields {
                    prop_assert_eq!(cur.read_uint(w).unwrap(), v);
                }
                prop_assert_eq!(cur.remaining(), 0);
            }
        }
    }
}
