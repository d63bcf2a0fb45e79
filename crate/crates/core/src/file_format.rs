//! On-disk wrapper: 4-byte magic `TRLC`, 1-byte version, then the codec
//! container bytes.

use crate::bitio::BitBuffer;
use crate::codec::{self, SymbolSequence};
use crate::error::{Error, Result};

pub const MAGIC: [u8; 4] = *b"TRLC";
pub const VERSION: u8 = 0x01;
pub const HEADER_LEN: usize = MAGIC.len() + 1;

pub fn wrap(container: &BitBuffer) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + container.as_bytes().len());
    out.extend_from_slice(&MAGIC);
    out.push(VERSION);
    out.extend_from_slice(container.as_bytes());
    out
}

/// Strips and checks the wrapper, returning the container bits.
pub fn unwrap(bytes: &[u8]) -> Result<BitBuffer> {
    if bytes.len() < HEADER_LEN {
        return Err(Error::Format(format!(
            "{} bytes is too short for a TRLC file",
            bytes.len()
        )));
    }
    if bytes[..4] != MAGIC {
        return Err(Error::Format(format!("bad magic {:02x?}", &bytes[..4])));
    }
    if bytes[4] != VERSION {
        return Err(Error::Format(format!(
            "unsupported version {:#04x}",
            bytes[4]
        )));
    }
    Ok(BitBuffer::from_bytes(bytes[HEADER_LEN..].to_vec()))
}

pub fn encode_file(x: &SymbolSequence) -> Vec<u8> {
    wrap(&codec::encode(x))
}

pub fn decode_file(bytes: &[u8]) -> Result<SymbolSequence> {
    codec::decode(&unwrap(bytes)?)
}
