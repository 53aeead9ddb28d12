//! Smoke tests of the C ABI, exercised from Rust through the same extern
//! "C" surface a foreign caller would use.

use ahoch_ffi::*;
use std::ffi::{CStr, CString};
use std::ptr;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(p: *mut libc::c_char) -> String {
    assert!(!p.is_null());
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    ahoch_string_free(p);
    s
}

#[test]
fn series_through_the_abi() {
    unsafe {
        let mut alg: *mut AhochAlgebra = ptr::null_mut();
        let status = ahoch_algebra_new(0, cstr("x^2").as_ptr(), &mut alg);
        assert_eq!(status, AhochStatus::Ok);
        assert!(!alg.is_null());

        let mut out: *mut libc::c_char = ptr::null_mut();
        let status = ahoch_series_json(alg, &mut out);
        assert_eq!(status, AhochStatus::Ok);
        let json = take_string(out);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["record"], "series");
        assert_eq!(v["length"], 1);
        assert_eq!(v["factors"][0]["mu"], "2");

        ahoch_algebra_free(alg);
    }
}

#[test]
fn factored_constructor_and_charp() {
    unsafe {
        let mut alg: *mut AhochAlgebra = ptr::null_mut();
        let status = ahoch_algebra_new_factored(3, cstr("x^2").as_ptr(), &mut alg);
        assert_eq!(status, AhochStatus::Ok);

        let mut out: *mut libc::c_char = ptr::null_mut();
        let status = ahoch_charp_json(alg, &mut out);
        assert_eq!(status, AhochStatus::Ok);
        let json = take_string(out);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["record"], "charp");
        assert_eq!(v["free"], false);
        assert_eq!(v["complement_generator"], "(x^4)*y^2");

        ahoch_algebra_free(alg);
    }
}

#[test]
fn bracket_and_errors() {
    unsafe {
        let mut alg: *mut AhochAlgebra = ptr::null_mut();
        assert_eq!(
            ahoch_algebra_new(0, cstr("x^2").as_ptr(), &mut alg),
            AhochStatus::Ok
        );

        let mut out: *mut libc::c_char = ptr::null_mut();
        let status = ahoch_bracket_json(
            alg,
            cstr("ad:g=1,n=1").as_ptr(),
            cstr("yh^3").as_ptr(),
            &mut out,
        );
        assert_eq!(status, AhochStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(v["agree"], true);

        // malformed derivation spec: parse error + retrievable message
        let mut out: *mut libc::c_char = ptr::null_mut();
        let status = ahoch_bracket_json(alg, cstr("bogus").as_ptr(), cstr("yh").as_ptr(), &mut out);
        assert_eq!(status, AhochStatus::ParseError);
        let msg = take_string(ahoch_last_error_message());
        assert!(msg.contains("derivation"), "{msg}");

        ahoch_algebra_free(alg);
    }
}

#[test]
fn constructor_validates_input() {
    unsafe {
        let mut alg: *mut AhochAlgebra = ptr::null_mut();
        // characteristic must be 0 or prime
        assert_eq!(
            ahoch_algebra_new(6, cstr("x").as_ptr(), &mut alg),
            AhochStatus::ParseError
        );
        // syntax error in h
        assert_eq!(
            ahoch_algebra_new(0, cstr("x^^2").as_ptr(), &mut alg),
            AhochStatus::ParseError
        );
        // h = 0 is a domain error
        assert_eq!(
            ahoch_algebra_new(0, cstr("0").as_ptr(), &mut alg),
            AhochStatus::DomainError
        );
        // null arguments are caught
        assert_eq!(
            ahoch_algebra_new(0, ptr::null(), &mut alg),
            AhochStatus::NullArgument
        );
        let mut out: *mut libc::c_char = ptr::null_mut();
        assert_eq!(
            ahoch_report_json(ptr::null(), &mut out),
            AhochStatus::NullArgument
        );
    }
}

#[test]
fn verify_suite_through_the_abi() {
    unsafe {
        let mut out: *mut libc::c_char = ptr::null_mut();
        let status = ahoch_verify_json(cstr("chain").as_ptr(), 3, 4, 3, 2, &mut out);
        assert_eq!(status, AhochStatus::Ok);
        let report = take_string(out);
        let last = report.lines().last().unwrap();
        let v: serde_json::Value = serde_json::from_str(last).unwrap();
        assert_eq!(v["record"], "verify-summary");
        assert_eq!(v["passed"], true);

        // unknown suite name
        let mut out: *mut libc::c_char = ptr::null_mut();
        let status = ahoch_verify_json(cstr("nope").as_ptr(), 0, 1, 2, 2, &mut out);
        assert_eq!(status, AhochStatus::ParseError);
    }
}
