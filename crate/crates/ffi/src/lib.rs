//! C ABI for the `typerun` codec.
//!
//! Every fallible function returns a [`TrlStatus`] and writes its result
//! through an out-pointer. Results are opaque handles owned by the caller and
//! released with the matching `*_free` function. After a non-`TRL_OK` status,
//! [`trl_last_error_message`] describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use typerun::analysis::{entropy, total_bound, Pmf};
use typerun::{file_format, BitBuffer, Error, SymbolSequence};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrlStatus {
    TrlOk = 0,
    /// A required pointer argument was null.
    TrlNullPointer = 1,
    /// An argument was outside its valid domain.
    TrlInvalidArgument = 2,
    /// Bad magic, version or trailing bits.
    TrlFormat = 3,
    /// The stream ended early.
    TrlTruncated = 4,
    /// Decoded fields are inconsistent.
    TrlCorrupt = 5,
    /// Internal failure; the call had no effect.
    TrlInternal = 6,
}

/// Encoded bytes plus the number of meaningful bits.
pub struct TrlBuffer {
    bytes: Vec<u8>,
    bit_len: usize,
}

/// A decoded symbol sequence.
pub struct TrlSymbols {
    symbols: Vec<u32>,
    alphabet_size: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<Vec<u8>>) {
    let mut bytes = msg.into();
    bytes.retain(|&b| b != 0);
    let msg = CString::new(bytes).expect("interior nuls removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn status_of(err: &Error) -> TrlStatus {
    match err {
        Error::Truncated(_) | Error::Underrun(_) => TrlStatus::TrlTruncated,
        Error::Corrupt(_) => TrlStatus::TrlCorrupt,
        Error::Format(_) => TrlStatus::TrlFormat,
        Error::Range(_) | Error::Config(_) | Error::EmptyInput(_) => TrlStatus::TrlInvalidArgument,
        _ => TrlStatus::TrlInternal,
    }
}

fn fail(status: TrlStatus, msg: impl Into<Vec<u8>>) -> TrlStatus {
    set_last_error(msg);
    status
}

fn guard(f: impl FnOnce() -> Result<(), (TrlStatus, String)>) -> TrlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TrlStatus::TrlOk,
        Ok(Err((status, msg))) => fail(status, msg),
        Err(_) => fail(TrlStatus::TrlInternal, "panic inside typerun"),
    }
}

fn from_error(e: Error) -> (TrlStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (TrlStatus, String) {
    (TrlStatus::TrlNullPointer, format!("{what} is null"))
}

/// Views `(ptr, len)` as a slice, allowing a null pointer when `len == 0`.
unsafe fn input_slice<'a, T>(
    ptr: *const T,
    len: usize,
    what: &str,
) -> Result<&'a [T], (TrlStatus, String)> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(ptr, len))
}

unsafe fn encode_impl(
    symbols: *const u32,
    len: usize,
    alphabet_size: u32,
    wrapped: bool,
    out: *mut *mut TrlBuffer,
) -> TrlStatus {
    if out.is_null() {
        return fail(TrlStatus::TrlNullPointer, "out is null");
    }
    *out = ptr::null_mut();
    guard(|| {
        let symbols = input_slice(symbols, len, "symbols")?;
        let x = SymbolSequence::new(symbols.to_vec(), alphabet_size).map_err(from_error)?;
        let bits = typerun::encode(&x);
        let buffer = if wrapped {
            let bytes = file_format::wrap(&bits);
            let bit_len = bytes.len() * 8;
            TrlBuffer { bytes, bit_len }
        } else {
            let bit_len = bits.bit_len();
            TrlBuffer {
                bytes: bits.into_bytes(),
                bit_len,
            }
        };
        *out = Box::into_raw(Box::new(buffer));
        Ok(())
    })
}

unsafe fn decode_impl(
    bytes: *const u8,
    len: usize,
    wrapped: bool,
    out: *mut *mut TrlSymbols,
) -> TrlStatus {
    if out.is_null() {
        return fail(TrlStatus::TrlNullPointer, "out is null");
    }
    *out = ptr::null_mut();
    guard(|| {
        let bytes = input_slice(bytes, len, "bytes")?;
        let x = if wrapped {
            file_format::decode_file(bytes)
        } else {
            typerun::decode(&BitBuffer::from_bytes(bytes.to_vec()))
        }
        .map_err(from_error)?;
        let alphabet_size = x.alphabet_size();
        *out = Box::into_raw(Box::new(TrlSymbols {
            symbols: x.into_symbols(),
            alphabet_size,
        }));
        Ok(())
    })
}

/// Encodes `len` symbols, each below `alphabet_size`, into a bare container.
///
/// # Safety
///
/// `symbols` must point to `len` readable `uint32_t` values (it may be null
/// when `len` is 0). `out` must be a valid pointer; it receives a handle to
/// free with [`trl_buffer_free`], or null on failure.
#[no_mangle]
pub unsafe extern "C" fn trl_encode(
    symbols: *const u32,
    len: usize,
    alphabet_size: u32,
    out: *mut *mut TrlBuffer,
) -> TrlStatus {
    encode_impl(symbols, len, alphabet_size, false, out)
}

/// Like [`trl_encode`], but prefixes the `TRLC` file header.
///
/// # Safety
///
/// Same contract as [`trl_encode`].
#[no_mangle]
pub unsafe extern "C" fn trl_encode_file(
    symbols: *const u32,
    len: usize,
    alphabet_size: u32,
    out: *mut *mut TrlBuffer,
) -> TrlStatus {
    encode_impl(symbols, len, alphabet_size, true, out)
}

/// Decodes a bare container produced by [`trl_encode`].
///
/// # Safety
///
/// `bytes` must point to `len` readable bytes (null allowed when `len` is 0).
/// `out` must be a valid pointer; it receives a handle to free with
/// [`trl_symbols_free`], or null on failure.
#[no_mangle]
pub unsafe extern "C" fn trl_decode(
    bytes: *const u8,
    len: usize,
    out: *mut *mut TrlSymbols,
) -> TrlStatus {
    decode_impl(bytes, len, false, out)
}

/// Decodes a `TRLC` file produced by [`trl_encode_file`].
///
/// # Safety
///
/// Same contract as [`trl_decode`].
#[no_mangle]
pub unsafe extern "C" fn trl_decode_file(
    bytes: *const u8,
    len: usize,
    out: *mut *mut TrlSymbols,
) -> TrlStatus {
    decode_impl(bytes, len, true, out)
}

/// # Safety
///
/// `buf` must be null or a live handle from [`trl_encode`] or [`trl_encode_file`].
#[no_mangle]
pub unsafe extern "C" fn trl_buffer_data(buf: *const TrlBuffer) -> *const u8 {
    buf.as_ref().map_or(ptr::null(), |b| b.bytes.as_ptr())
}

/// Length in bytes, including padding.
///
/// # Safety
///
/// `buf` must be null or a live buffer handle.
#[no_mangle]
pub unsafe extern "C" fn trl_buffer_len(buf: *const TrlBuffer) -> usize {
    buf.as_ref().map_or(0, |b| b.bytes.len())
}

/// Length in bits, excluding padding.
///
/// # Safety
///
/// `buf` must be null or a live buffer handle.
#[no_mangle]
pub unsafe extern "C" fn trl_buffer_bit_len(buf: *const TrlBuffer) -> usize {
    buf.as_ref().map_or(0, |b| b.bit_len)
}

/// # Safety
///
/// `buf` must be null or a live buffer handle, which is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn trl_buffer_free(buf: *mut TrlBuffer) {
    if !buf.is_null() {
        drop(Box::from_raw(buf));
    }
}

/// # Safety
///
/// `syms` must be null or a live handle from [`trl_decode`] or [`trl_decode_file`].
#[no_mangle]
pub unsafe extern "C" fn trl_symbols_data(syms: *const TrlSymbols) -> *const u32 {
    syms.as_ref().map_or(ptr::null(), |s| s.symbols.as_ptr())
}

/// # Safety
///
/// `syms` must be null or a live symbols handle.
#[no_mangle]
pub unsafe extern "C" fn trl_symbols_len(syms: *const TrlSymbols) -> usize {
    syms.as_ref().map_or(0, |s| s.symbols.len())
}

/// # Safety
///
/// `syms` must be null or a live symbols handle.
#[no_mangle]
pub unsafe extern "C" fn trl_symbols_alphabet_size(syms: *const TrlSymbols) -> u32 {
    syms.as_ref().map_or(0, |s| s.alphabet_size)
}

/// # Safety
///
/// `syms` must be null or a live symbols handle, which is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn trl_symbols_free(syms: *mut TrlSymbols) {
    if !syms.is_null() {
        drop(Box::from_raw(syms));
    }
}

unsafe fn pmf_stat(
    probs: *const f64,
    len: usize,
    out: *mut f64,
    stat: fn(&Pmf) -> f64,
) -> TrlStatus {
    if out.is_null() {
        return fail(TrlStatus::TrlNullPointer, "out is null");
    }
    guard(|| {
        let probs = input_slice(probs, len, "probs")?;
        let f = Pmf::new(probs.to_vec()).map_err(from_error)?;
        *out = stat(&f);
        Ok(())
    })
}

/// Shannon entropy in bits of a probability vector summing to 1.
///
/// # Safety
///
/// `probs` must point to `len` readable doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trl_entropy(probs: *const f64, len: usize, out: *mut f64) -> TrlStatus {
    pmf_stat(probs, len, out, entropy)
}

/// Asymptotic bits-per-symbol bound of the codec for a source distribution.
///
/// # Safety
///
/// `probs` must point to `len` readable doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn trl_total_bound(
    probs: *const f64,
    len: usize,
    out: *mut f64,
) -> TrlStatus {
    pmf_stat(probs, len, out, total_bound)
}

/// Message for the most recent failure on this thread, or null if none.
/// The string stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn trl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
