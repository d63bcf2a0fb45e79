use std::ffi::CStr;
use std::path::Path;
use std::process::Command;
use std::ptr;
use std::slice;

use typerun_ffi::*;

fn encode(symbols: &[u32], l: u32, wrapped: bool) -> Vec<u8> {
    let mut buf = ptr::null_mut();
    let status = unsafe {
        if wrapped {
            trl_encode_file(symbols.as_ptr(), symbols.len(), l, &mut buf)
        } else {
            trl_encode(symbols.as_ptr(), symbols.len(), l, &mut buf)
        }
    };
    assert_eq!(status, TrlStatus::TrlOk);
    let bytes =
        unsafe { slice::from_raw_parts(trl_buffer_data(buf), trl_buffer_len(buf)).to_vec() };
    unsafe { trl_buffer_free(buf) };
    bytes
}

fn decode(bytes: &[u8], wrapped: bool) -> Result<(Vec<u32>, u32), TrlStatus> {
    let mut syms = ptr::null_mut();
    let status = unsafe {
        if wrapped {
            trl_decode_file(bytes.as_ptr(), bytes.len(), &mut syms)
        } else {
            trl_decode(bytes.as_ptr(), bytes.len(), &mut syms)
        }
    };
    if status != TrlStatus::TrlOk {
        assert!(syms.is_null());
        return Err(status);
    }
    let out = unsafe {
        let data = trl_symbols_data(syms);
        let v = if trl_symbols_len(syms) == 0 {
            Vec::new()
        } else {
            slice::from_raw_parts(data, trl_symbols_len(syms)).to_vec()
        };
        (v, trl_symbols_alphabet_size(syms))
    };
    unsafe { trl_symbols_free(syms) };
    Ok(out)
}

fn last_error() -> String {
    let p = trl_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn bare_round_trip_matches_core() {
    let x = [1u32, 0, 0, 1, 0];
    let bytes = encode(&x, 2, false);
    let core = typerun::encode(&typerun::SymbolSequence::new(x.to_vec(), 2).unwrap());
    assert_eq!(bytes, core.as_bytes());
    assert_eq!(decode(&bytes, false), Ok((x.to_vec(), 2)));
}

#[test]
fn bit_length_excludes_padding() {
    let mut buf = ptr::null_mut();
    let x = [1u32, 0, 0, 1, 0];
    unsafe {
        assert_eq!(
            trl_encode(x.as_ptr(), x.len(), 2, &mut buf),
            TrlStatus::TrlOk
        );
        assert_eq!(trl_buffer_bit_len(buf), 16);
        assert_eq!(trl_buffer_len(buf), 2);
        trl_buffer_free(buf);
    }
}

#[test]
fn file_round_trip_has_magic() {
    let x: Vec<u32> = (0..1000).map(|i| (i * i) % 7).collect();
    let bytes = encode(&x, 7, true);
    assert_eq!(&bytes[..5], b"TRLC\x01");
    assert_eq!(decode(&bytes, true), Ok((x, 7)));
}

#[test]
fn empty_sequence_accepts_null_pointer() {
    let mut buf = ptr::null_mut();
    let status = unsafe { trl_encode(ptr::null(), 0, 3, &mut buf) };
    assert_eq!(status, TrlStatus::TrlOk);
    let bytes =
        unsafe { slice::from_raw_parts(trl_buffer_data(buf), trl_buffer_len(buf)).to_vec() };
    unsafe { trl_buffer_free(buf) };
    assert_eq!(decode(&bytes, false), Ok((vec![], 3)));
}

#[test]
fn argument_errors() {
    let mut buf = ptr::null_mut();
    unsafe {
        assert_eq!(
            trl_encode(ptr::null(), 4, 3, &mut buf),
            TrlStatus::TrlNullPointer
        );
        assert!(buf.is_null());
        assert!(last_error().contains("symbols"));
        assert_eq!(
            trl_encode([5u32].as_ptr(), 1, 3, &mut buf),
            TrlStatus::TrlInvalidArgument
        );
        assert_eq!(
            trl_encode([0u32].as_ptr(), 1, 0, &mut buf),
            TrlStatus::TrlInvalidArgument
        );
        assert_eq!(
            trl_encode([0u32].as_ptr(), 1, 1, ptr::null_mut()),
            TrlStatus::TrlNullPointer
        );
    }
}

#[test]
fn decode_errors() {
    assert_eq!(decode(b"XRLC\x01\x40", true), Err(TrlStatus::TrlFormat));
    assert!(last_error().contains("magic"));
    assert_eq!(decode(b"", false), Err(TrlStatus::TrlTruncated));
    let mut bytes = encode(&[0, 1, 2, 2, 1, 0, 0, 0], 3, false);
    bytes.truncate(bytes.len() - 1);
    assert!(decode(&bytes, false).is_err());
}

#[test]
fn null_handles_are_tolerated() {
    unsafe {
        assert!(trl_buffer_data(ptr::null()).is_null());
        assert_eq!(trl_buffer_len(ptr::null()), 0);
        assert_eq!(trl_symbols_len(ptr::null()), 0);
        trl_buffer_free(ptr::null_mut());
        trl_symbols_free(ptr::null_mut());
    }
}

#[test]
fn analysis_functions() {
    let f = [0.5, 0.25, 0.25];
    let mut h = 0.0;
    let mut b = 0.0;
    unsafe {
        assert_eq!(trl_entropy(f.as_ptr(), f.len(), &mut h), TrlStatus::TrlOk);
        assert_eq!(
            trl_total_bound(f.as_ptr(), f.len(), &mut b),
            TrlStatus::TrlOk
        );
        assert_eq!(
            trl_entropy([0.5, 0.6].as_ptr(), 2, &mut h),
            TrlStatus::TrlInvalidArgument
        );
    }
    assert!((h - 1.5).abs() < 1e-12);
    assert!(b >= h);
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/typerun.h");
    assert!(header.exists());
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(&header)
        .status()
    else {
        eprintln!("no C compiler found, skipping");
        return;
    };
    assert!(status.success());
}
