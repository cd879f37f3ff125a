use std::ffi::{c_char, CStr};
use std::ptr;

use vtsynth_ffi::*;

fn new_codec(f: impl FnOnce(*mut *mut VtsCodec) -> VtsStatus) -> *mut VtsCodec {
    let mut h = ptr::null_mut();
    assert_eq!(f(&mut h), VtsStatus::Ok);
    assert!(!h.is_null());
    h
}

unsafe fn encode(h: *const VtsCodec, bits: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; vts_codec_length(h)];
    let mut len = 0;
    assert_eq!(
        vts_encode(
            h,
            bits.as_ptr(),
            bits.len(),
            out.as_mut_ptr(),
            out.len(),
            &mut len
        ),
        VtsStatus::Ok
    );
    out.truncate(len);
    out
}

unsafe fn decode(h: *const VtsCodec, word: &[u8]) -> Result<Vec<u8>, VtsStatus> {
    let mut out = vec![0u8; vts_codec_message_bits(h)];
    let mut len = 0;
    match vts_decode(
        h,
        word.as_ptr(),
        word.len(),
        out.as_mut_ptr(),
        out.len(),
        &mut len,
    ) {
        VtsStatus::Ok => Ok(out[..len].to_vec()),
        s => Err(s),
    }
}

fn pattern(len: usize, seed: usize) -> Vec<u8> {
    (0..len)
        .map(|i| ((i * 7 + seed * 13) % 5 % 2) as u8)
        .collect()
}

#[test]
fn every_family_round_trips_through_indels() {
    unsafe {
        let handles = [
            new_codec(|o| vts_codec_systematic_new(12, o)),
            new_codec(|o| vts_codec_block_new(32, 96, 0, o)),
            new_codec(|o| vts_codec_special_new(20, o)),
            new_codec(|o| vts_codec_direct_new(8, 20, false, 0, 0, o)),
        ];
        for &h in &handles {
            let bits = vts_codec_message_bits(h);
            assert!(bits > 0);
            for seed in 0..5 {
                let msg = pattern(bits, seed);
                let c = encode(h, &msg);
                let mut s = 0;
                assert_eq!(
                    vts_synthesis_time(c.as_ptr(), c.len(), &mut s),
                    VtsStatus::Ok
                );
                assert!(s <= vts_codec_synthesis_bound(h));
                assert_eq!(decode(h, &c).unwrap(), msg);
                for p in 0..c.len() {
                    let mut y = c.clone();
                    y.remove(p);
                    assert_eq!(decode(h, &y).unwrap(), msg);
                    for sym in 1..=4 {
                        let mut y = c.clone();
                        y.insert(p, sym);
                        assert_eq!(decode(h, &y).unwrap(), msg);
                    }
                }
            }
            vts_codec_free(h);
        }
        vts_codec_free(ptr::null_mut());
    }
}

#[test]
fn status_codes() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(
            vts_codec_block_new(127, 139, 6, &mut h),
            VtsStatus::Infeasible
        );
        assert_eq!(
            vts_codec_block_new(127, 508, 7, &mut h),
            VtsStatus::Parameter
        );
        assert_eq!(
            vts_codec_direct_new(8, 40, false, 0, 0, &mut h),
            VtsStatus::Parameter
        );
        assert_eq!(
            vts_codec_special_new(20, ptr::null_mut()),
            VtsStatus::NullPointer
        );
        assert!(h.is_null());

        let h = new_codec(|o| vts_codec_special_new(20, o));
        let msg = pattern(vts_codec_message_bits(h), 1);
        let mut small = [0u8; 4];
        let mut len = 0;
        assert_eq!(
            vts_encode(
                h,
                msg.as_ptr(),
                msg.len(),
                small.as_mut_ptr(),
                small.len(),
                &mut len
            ),
            VtsStatus::BufferTooSmall
        );
        assert_eq!(len, 20);
        assert_eq!(
            vts_encode(h, msg.as_ptr(), 3, small.as_mut_ptr(), 4, &mut len),
            VtsStatus::Parameter
        );
        let two = vec![2u8; msg.len()];
        assert_eq!(
            vts_encode(h, two.as_ptr(), two.len(), small.as_mut_ptr(), 4, &mut len),
            VtsStatus::Malformed
        );
        assert_eq!(decode(h, &[1; 16]), Err(VtsStatus::Malformed));
        assert_eq!(decode(h, &[5; 20]), Err(VtsStatus::Malformed));
        assert_eq!(vts_codec_length(ptr::null()), 0);
        vts_codec_free(h);

        let msg = CStr::from_ptr(vts_status_message(VtsStatus::DecodeFailure as i32));
        assert_eq!(msg.to_str().unwrap(), "decoding failed");
        assert_eq!(
            CStr::from_ptr(vts_status_message(42)).to_str().unwrap(),
            "unknown status"
        );
    }
}

#[test]
fn counts_as_decimal_strings() {
    unsafe {
        let mut buf = [0 as c_char; 128];
        let mut len = 0;
        assert_eq!(
            vts_count_words(3, 6, buf.as_mut_ptr(), buf.len(), &mut len),
            VtsStatus::Ok
        );
        assert_eq!(CStr::from_ptr(buf.as_ptr()).to_str().unwrap(), "20");
        assert_eq!(
            vts_count_words(127, 508, buf.as_mut_ptr(), buf.len(), &mut len),
            VtsStatus::Ok
        );
        let big = CStr::from_ptr(buf.as_ptr()).to_str().unwrap();
        assert_eq!(big.len(), len);
        assert_eq!(big, num_pow4(127));
        assert_eq!(
            vts_count_words(127, 508, buf.as_mut_ptr(), 10, &mut len),
            VtsStatus::BufferTooSmall
        );
        assert_eq!(
            vts_count_vt(6, 14, 6, 1, buf.as_mut_ptr(), buf.len(), &mut len),
            VtsStatus::Parameter
        );
        assert_eq!(
            vts_count_vt(4, 16, 0, 1, buf.as_mut_ptr(), buf.len(), &mut len),
            VtsStatus::Ok
        );
    }
}

/// 4^k in decimal by schoolbook doubling.
fn num_pow4(k: usize) -> String {
    let mut digits = vec![1u8];
    for _ in 0..2 * k {
        let mut carry = 0;
        for d in digits.iter_mut() {
            let v = *d * 2 + carry;
            *d = v % 10;
            carry = v / 10;
        }
        if carry > 0 {
            digits.push(carry);
        }
    }
    digits.iter().rev().map(|d| (b'0' + d) as char).collect()
}
