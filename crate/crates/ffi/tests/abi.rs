use std::ffi::{CStr, CString};
use std::ptr;

use hychroma_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(hc_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn parity_handle_lifecycle() {
    let mut cert = ptr::null_mut();
    unsafe {
        assert_eq!(hc_construct_parity(3, 3, &mut cert), HcStatus::Ok);
        assert_eq!(hc_certificate_n(cert), 3);
        assert_eq!(hc_certificate_d(cert), 3);
        assert_eq!(hc_certificate_colors(cert), 2);
        assert_eq!(hc_certificate_mode(cert), HcMode::Exact);
        let mut c = 9;
        assert_eq!(hc_certificate_get_color(cert, 7, &mut c), HcStatus::Ok);
        assert_eq!(c, 1);
        assert_eq!(hc_certificate_get_color(cert, 8, &mut c), HcStatus::InvalidArgument);
        assert_eq!(hc_verify(cert, HcStrategy::Auto, false, ptr::null_mut()), HcStatus::Ok);
        hc_certificate_free(cert);
    }
}

#[test]
fn mutation_reports_pair() {
    let mut cert = ptr::null_mut();
    unsafe {
        assert_eq!(hc_construct_forbidden_greedy(8, 2, &mut cert), HcStatus::Ok);
        assert_eq!(hc_certificate_colors(cert), 8);
        let mut c0 = 0;
        hc_certificate_get_color(cert, 0b11, &mut c0);
        assert_eq!(hc_certificate_set_color(cert, 0, c0), HcStatus::Ok);
        let mut ce = HcCounterexample { kind: HcViolationKind::None, u: 0, v: 0, distance: 0 };
        assert_eq!(hc_verify(cert, HcStrategy::Pairwise, false, &mut ce), HcStatus::Violation);
        assert_eq!(ce.kind, HcViolationKind::Pair);
        assert_eq!(ce.distance, 2);
        assert_eq!((ce.u ^ ce.v).count_ones(), 2);
        assert!(last_error().contains("distance 2"), "{}", last_error());
        hc_certificate_free(cert);
    }
}

#[test]
fn text_round_trip() {
    let mut cert = ptr::null_mut();
    let mut back = ptr::null_mut();
    let mut s = ptr::null_mut();
    unsafe {
        hc_construct_parity(4, 1, &mut cert);
        assert_eq!(hc_certificate_to_string(cert, &mut s), HcStatus::Ok);
        let text = CStr::from_ptr(s).to_str().unwrap().to_owned();
        assert!(text.starts_with("hychroma-coloring v1 n=4 d=1 mode=exact colors=2"));
        assert_eq!(hc_certificate_parse(s, &mut back), HcStatus::Ok);
        assert_eq!(hc_certificate_colors(back), 2);
        hc_string_free(s);
        hc_certificate_free(cert);
        hc_certificate_free(back);

        let bad = CString::new("hychroma-coloring v1 n=2 d=1 mode=atmost colors=2\nprovenance: x\n0\n").unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(hc_certificate_parse(bad.as_ptr(), &mut out), HcStatus::ParseError);
        assert!(out.is_null());
        assert!(last_error().contains("line"));
    }
}

#[test]
fn errors_and_nulls() {
    let mut cert = ptr::null_mut();
    unsafe {
        assert_eq!(hc_construct_parity(4, 2, &mut cert), HcStatus::InvalidArgument);
        assert_eq!(hc_construct_preparata(4, false, &mut cert), HcStatus::InvalidArgument);
        assert_eq!(hc_construct_parity(3, 3, ptr::null_mut()), HcStatus::NullPointer);
        assert_eq!(hc_verify(ptr::null(), HcStrategy::Auto, false, ptr::null_mut()), HcStatus::NullPointer);
        assert_eq!(hc_construct_forbidden_greedy(30, 2, &mut cert), HcStatus::GuardExceeded);
        assert!(cert.is_null());
        hc_certificate_free(ptr::null_mut());
        hc_string_free(ptr::null_mut());
    }
}

#[test]
fn bound_values() {
    let mut e = 0;
    unsafe {
        assert_eq!(hc_greedy_upper_log2(13, 4, &mut e), HcStatus::Ok);
        assert_eq!(e, 8);
        assert_eq!(hc_direct_sum_upper_log2(28, 6, &mut e), HcStatus::Ok);
        assert_eq!(e, 11);
        assert_eq!(hc_direct_sum_upper_log2(12, 4, &mut e), HcStatus::InvalidArgument);
        assert!(last_error().contains("k(9,5)"));
        let mut s = ptr::null_mut();
        assert_eq!(hc_kdp_upper(13, 4, &mut s), HcStatus::Ok);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "2657205");
        hc_string_free(s);
    }
}

#[test]
fn z4_helpers() {
    let v = [0u8, 1, 2, 3];
    let (mut bits, mut w) = (0u64, 0u32);
    unsafe {
        assert_eq!(hc_gray_map(v.as_ptr(), v.len(), &mut bits), HcStatus::Ok);
        assert_eq!(hc_lee_weight(v.as_ptr(), v.len(), &mut w), HcStatus::Ok);
        let bad = [4u8];
        assert_eq!(hc_lee_weight(bad.as_ptr(), 1, &mut w), HcStatus::InvalidArgument);
    }
    assert_eq!(bits.count_ones(), 4);
    assert_eq!(w, 4);
}

#[test]
fn preparata_punctured_through_abi() {
    let mut cert = ptr::null_mut();
    unsafe {
        assert_eq!(hc_construct_preparata(3, true, &mut cert), HcStatus::Ok);
        assert_eq!(hc_certificate_n(cert), 15);
        assert_eq!(hc_certificate_d(cert), 4);
        assert_eq!(hc_certificate_colors(cert), 128);
        assert_eq!(hc_verify(cert, HcStrategy::Auto, false, ptr::null_mut()), HcStatus::Ok);
        hc_certificate_free(cert);
    }
}
