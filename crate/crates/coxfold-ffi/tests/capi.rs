//! Exercises the C entry points exactly as a foreign caller would: raw
//! pointers in, status codes and owned strings out.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use coxfold_ffi::*;

fn last_error() -> String {
    let mut buf = vec![0i8; 256];
    let n = unsafe { cox_last_error(buf.as_mut_ptr() as *mut c_char, buf.len()) };
    let bytes: Vec<u8> = buf[..n.min(255)].iter().map(|&b| b as u8).collect();
    String::from_utf8_lossy(&bytes).into_owned()
}

fn pair(token: &str) -> *mut CoxPair {
    let token = CString::new(token).unwrap();
    let mut handle: *mut CoxPair = ptr::null_mut();
    let status = unsafe { cox_pair_from_token(token.as_ptr(), &mut handle) };
    assert_eq!(status, CoxStatus::Ok, "{}", last_error());
    assert!(!handle.is_null());
    handle
}

fn take_string(ptr: *mut c_char) -> String {
    assert!(!ptr.is_null());
    let s = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string();
    unsafe { cox_string_free(ptr) };
    s
}

#[test]
fn check_summary_for_each_verdict_kind() {
    for (token, kind) in [
        ("E6:g", CoxVerdictKind::Holds),
        ("tD4:rot4", CoxVerdictKind::Fails),
        ("tE6:g", CoxVerdictKind::CertifiedAffine),
        ("Dinf[5]:g", CoxVerdictKind::VerifiedToDepth),
    ] {
        let p = pair(token);
        let mut verdict = CoxVerdict {
            kind: CoxVerdictKind::Holds,
            depth: 0,
            truncation_capped: false,
        };
        let status = unsafe { cox_check(p, 12, 16, &mut verdict) };
        assert_eq!(status, CoxStatus::Ok, "{token}: {}", last_error());
        assert_eq!(verdict.kind, kind, "{token}");
        if token.starts_with("Dinf") {
            assert!(verdict.truncation_capped);
        }
        unsafe { cox_pair_free(p) };
    }
}

#[test]
fn json_reports_round_trip() {
    let p = pair("tD4:g1g2");
    let mut out: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { cox_check_json(p, 12, 16, &mut out) }, CoxStatus::Ok);
    let verdict: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(verdict["status"], "certified-affine");

    let mut out: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { cox_fold_json(p, &mut out) }, CoxStatus::Ok);
    let fold: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(fold["folded_graph"]["name"], "tG2");

    let mut out: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { cox_classify_json(p, &mut out) }, CoxStatus::Ok);
    let classify: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(classify["case"], "vii");

    let mut out: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { cox_roots_json(p, 12, &mut out) }, CoxStatus::Ok);
    let roots: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(roots["complete"], false);
    unsafe { cox_pair_free(p) };
}

#[test]
fn spec_documents_parse_through_the_abi() {
    let spec = CString::new(
        "vertices 1..3\nedge 1-2\nedge 2-3\nsymmetry f: (1 3)\ngroup: f\n",
    )
    .unwrap();
    let mut handle: *mut CoxPair = ptr::null_mut();
    assert_eq!(
        unsafe { cox_pair_from_spec(spec.as_ptr(), &mut handle) },
        CoxStatus::Ok
    );
    let mut verdict = CoxVerdict {
        kind: CoxVerdictKind::Fails,
        depth: 0,
        truncation_capped: false,
    };
    assert_eq!(
        unsafe { cox_check(handle, 12, 16, &mut verdict) },
        CoxStatus::Ok
    );
    assert_eq!(verdict.kind, CoxVerdictKind::Holds);
    unsafe { cox_pair_free(handle) };
}

#[test]
fn error_paths_set_codes_and_messages() {
    // unknown token
    let token = CString::new("Z99").unwrap();
    let mut handle: *mut CoxPair = ptr::null_mut();
    assert_eq!(
        unsafe { cox_pair_from_token(token.as_ptr(), &mut handle) },
        CoxStatus::UnknownToken
    );
    assert!(last_error().contains("Z99"));
    // parse error with position info
    let spec = CString::new("vertices 1..2\nedge 1-9\n").unwrap();
    assert_eq!(
        unsafe { cox_pair_from_spec(spec.as_ptr(), &mut handle) },
        CoxStatus::ParseError
    );
    assert!(last_error().contains("line"));
    // null arguments
    assert_eq!(
        unsafe { cox_pair_from_token(ptr::null(), &mut handle) },
        CoxStatus::NullArgument
    );
    let mut verdict = CoxVerdict {
        kind: CoxVerdictKind::Holds,
        depth: 0,
        truncation_capped: false,
    };
    assert_eq!(
        unsafe { cox_check(ptr::null(), 12, 16, &mut verdict) },
        CoxStatus::NullArgument
    );
    // freeing null is a no-op
    unsafe {
        cox_pair_free(ptr::null_mut());
        cox_string_free(ptr::null_mut());
    }
}

#[test]
fn generated_header_declares_the_surface() {
    let header = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/include/coxfold.h"
    ))
    .expect("header generated at build time");
    for symbol in [
        "cox_pair_from_token",
        "cox_pair_from_spec",
        "cox_pair_free",
        "cox_check",
        "cox_check_json",
        "cox_fold_json",
        "cox_roots_json",
        "cox_classify_json",
        "cox_string_free",
        "cox_last_error",
        "CoxStatus",
        "CoxVerdict",
    ] {
        assert!(header.contains(symbol), "header missing {symbol}");
    }
}
