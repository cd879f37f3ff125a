//! C ABI for `vtsynth`.
//!
//! Codecs are opaque heap handles created by one of the `vts_codec_*_new`
//! functions and released with `vts_codec_free`. Messages cross the boundary
//! as one byte per bit (0 or 1) and words as one byte per symbol (1..=4).
//! Every fallible call returns a `VtsStatus`; outputs are written only on
//! `VTS_STATUS_OK`.

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

use vtsynth::counting::{count_a, count_vt};
use vtsynth::vt::SystematicCode;
use vtsynth::word::synthesis_time;
use vtsynth::{
    plan_block_params, Bits, BlockCodec, BlockPlan, Codec, DirectCodec, DirectPlan, Error,
    SpecialCodec, Word,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VtsStatus {
    Ok = 0,
    NullPointer = 1,
    Parameter = 2,
    Infeasible = 3,
    Malformed = 4,
    DecodeFailure = 5,
    RankOutOfRange = 6,
    NotMember = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

impl From<&Error> for VtsStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parameter(_) => VtsStatus::Parameter,
            Error::Infeasible(_) => VtsStatus::Infeasible,
            Error::Malformed(_) => VtsStatus::Malformed,
            Error::DecodeFailure(_) => VtsStatus::DecodeFailure,
            Error::RankOutOfRange { .. } => VtsStatus::RankOutOfRange,
            Error::NotMember { .. } => VtsStatus::NotMember,
        }
    }
}

/// Opaque codec handle.
pub struct VtsCodec {
    inner: Box<dyn Codec>,
}

fn guard(f: impl FnOnce() -> Result<(), VtsStatus>) -> VtsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => VtsStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => VtsStatus::Panic,
    }
}

fn lift<T>(r: vtsynth::Result<T>) -> Result<T, VtsStatus> {
    r.map_err(|e| VtsStatus::from(&e))
}

unsafe fn input<'a>(ptr: *const u8, len: usize) -> Result<&'a [u8], VtsStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(VtsStatus::NullPointer);
    }
    Ok(slice::from_raw_parts(ptr, len))
}

unsafe fn output(
    data: &[u8],
    out: *mut u8,
    cap: usize,
    out_len: *mut usize,
) -> Result<(), VtsStatus> {
    if out_len.is_null() || (out.is_null() && cap > 0) {
        return Err(VtsStatus::NullPointer);
    }
    *out_len = data.len();
    if data.len() > cap {
        return Err(VtsStatus::BufferTooSmall);
    }
    if !data.is_empty() {
        std::ptr::copy_nonoverlapping(data.as_ptr(), out, data.len());
    }
    Ok(())
}

unsafe fn publish(codec: Box<dyn Codec>, out: *mut *mut VtsCodec) -> Result<(), VtsStatus> {
    if out.is_null() {
        return Err(VtsStatus::NullPointer);
    }
    *out = Box::into_raw(Box::new(VtsCodec { inner: codec }));
    Ok(())
}

unsafe fn handle<'a>(codec: *const VtsCodec) -> Result<&'a VtsCodec, VtsStatus> {
    codec.as_ref().ok_or(VtsStatus::NullPointer)
}

/// Systematic single-indel code of length `n` (no synthesis constraint).
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn vts_codec_systematic_new(n: usize, out: *mut *mut VtsCodec) -> VtsStatus {
    guard(|| publish(Box::new(lift(SystematicCode::new(n))?), out))
}

/// Block encoder; `ell == 0` picks the block count carrying the most bits.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn vts_codec_block_new(
    n: usize,
    t: i64,
    ell: usize,
    out: *mut *mut VtsCodec,
) -> VtsStatus {
    guard(|| {
        let plan = if ell == 0 {
            plan_block_params(n, t)
        } else {
            BlockPlan::new(n, t, ell)
        };
        publish(Box::new(lift(BlockCodec::new(lift(plan)?))?), out)
    })
}

/// Linear-time encoder with synthesis time at most `2.5 n`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn vts_codec_special_new(n: usize, out: *mut *mut VtsCodec) -> VtsStatus {
    guard(|| publish(Box::new(lift(SpecialCodec::new(n))?), out))
}

/// Direct encoder over one VT slice. With `pin_residues` false the largest
/// slice is chosen and `a`, `b` are ignored.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn vts_codec_direct_new(
    n: usize,
    t: i64,
    pin_residues: bool,
    a: usize,
    b: u8,
    out: *mut *mut VtsCodec,
) -> VtsStatus {
    guard(|| {
        let plan = lift(DirectPlan::new(n, t, pin_residues.then_some((a, b))))?;
        publish(Box::new(lift(DirectCodec::new(plan))?), out)
    })
}

/// # Safety
/// `codec` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vts_codec_free(codec: *mut VtsCodec) {
    if !codec.is_null() {
        drop(Box::from_raw(codec));
    }
}

/// Codeword length, or 0 for a null handle.
///
/// # Safety
/// `codec` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vts_codec_length(codec: *const VtsCodec) -> usize {
    codec.as_ref().map_or(0, |c| c.inner.length())
}

/// Message length in bits, or 0 for a null handle.
///
/// # Safety
/// `codec` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vts_codec_message_bits(codec: *const VtsCodec) -> usize {
    codec.as_ref().map_or(0, |c| c.inner.message_bits())
}

/// Guaranteed upper bound on the synthesis time of every codeword.
///
/// # Safety
/// `codec` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vts_codec_synthesis_bound(codec: *const VtsCodec) -> u64 {
    codec.as_ref().map_or(0, |c| c.inner.synthesis_bound())
}

/// Encodes `bits_len` bits into `out_symbols`. `*out_len` receives the
/// codeword length, also when the buffer is too small.
///
/// # Safety
/// Pointers must be valid for the stated lengths; `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vts_encode(
    codec: *const VtsCodec,
    bits: *const u8,
    bits_len: usize,
    out_symbols: *mut u8,
    out_cap: usize,
    out_len: *mut usize,
) -> VtsStatus {
    guard(|| {
        let codec = handle(codec)?;
        let raw = input(bits, bits_len)?;
        if raw.iter().any(|&b| b > 1) {
            return Err(VtsStatus::Malformed);
        }
        let msg = Bits::new(raw.iter().map(|&b| b == 1).collect());
        let c = lift(codec.inner.encode(&msg))?;
        output(c.symbols(), out_symbols, out_cap, out_len)
    })
}

/// Decodes a received word of length `n - 1`, `n` or `n + 1`.
///
/// # Safety
/// Pointers must be valid for the stated lengths; `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vts_decode(
    codec: *const VtsCodec,
    symbols: *const u8,
    len: usize,
    out_bits: *mut u8,
    out_cap: usize,
    out_len: *mut usize,
) -> VtsStatus {
    guard(|| {
        let codec = handle(codec)?;
        let y = lift(Word::new(input(symbols, len)?.to_vec()))?;
        let msg = lift(codec.inner.decode(&y))?;
        let raw: Vec<u8> = msg.as_slice().iter().map(|&b| b as u8).collect();
        output(&raw, out_bits, out_cap, out_len)
    })
}

/// Synthesis time of a word.
///
/// # Safety
/// `symbols` must be valid for `len` bytes and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn vts_synthesis_time(
    symbols: *const u8,
    len: usize,
    out: *mut u64,
) -> VtsStatus {
    guard(|| {
        let w = lift(Word::new(input(symbols, len)?.to_vec()))?;
        *out.as_mut().ok_or(VtsStatus::NullPointer)? = synthesis_time(&w);
        Ok(())
    })
}

/// `A(n, T)` as a NUL-terminated decimal string. `*out_len` receives the
/// length without the terminator.
///
/// # Safety
/// `buf` must be valid for `cap` bytes; `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vts_count_words(
    n: usize,
    t: i64,
    buf: *mut c_char,
    cap: usize,
    out_len: *mut usize,
) -> VtsStatus {
    guard(|| write_decimal(&count_a(n, t).to_string(), buf, cap, out_len))
}

/// `|VT_n(a, b)|` restricted to synthesis time at most `T`, as a decimal
/// string.
///
/// # Safety
/// `buf` must be valid for `cap` bytes; `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vts_count_vt(
    n: usize,
    t: i64,
    a: usize,
    b: u8,
    buf: *mut c_char,
    cap: usize,
    out_len: *mut usize,
) -> VtsStatus {
    guard(|| write_decimal(&lift(count_vt(n, t, a, b))?.to_string(), buf, cap, out_len))
}

unsafe fn write_decimal(
    s: &str,
    buf: *mut c_char,
    cap: usize,
    out_len: *mut usize,
) -> Result<(), VtsStatus> {
    if out_len.is_null() || buf.is_null() {
        return Err(VtsStatus::NullPointer);
    }
    *out_len = s.len();
    if s.len() + 1 > cap {
        return Err(VtsStatus::BufferTooSmall);
    }
    std::ptr::copy_nonoverlapping(s.as_ptr(), buf as *mut u8, s.len());
    *buf.add(s.len()) = 0;
    Ok(())
}

/// Static description of a status code; unknown codes get a generic text.
#[no_mangle]
pub extern "C" fn vts_status_message(status: i32) -> *const c_char {
    let s: &'static [u8] = match status {
        0 => b"ok\0",
        1 => b"null pointer\0",
        2 => b"invalid parameter\0",
        3 => b"infeasible parameters\0",
        4 => b"malformed input\0",
        5 => b"decoding failed\0",
        6 => b"rank out of range\0",
        7 => b"word outside the target set\0",
        8 => b"output buffer too small\0",
        9 => b"internal panic\0",
        _ => b"unknown status\0",
    };
    s.as_ptr() as *const c_char
}
