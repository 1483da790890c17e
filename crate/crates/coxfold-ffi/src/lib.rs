//! C ABI over the coxfold engine.
//!
//! A pair (graph, symmetry group) lives behind the opaque `CoxPair`
//! handle. All analysis entry points return a `CoxStatus` code and write
//! their result through out-pointers; JSON reports come back as
//! NUL-terminated strings owned by the caller and released with
//! `cox_string_free`. The last error message of the calling thread is
//! available through `cox_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use coxfold::catalog;
use coxfold::folding::fold;
use coxfold::form::FormMatrix;
use coxfold::graph::{parse::parse_document, CoxeterGraph, SymmetryGroup};
use coxfold::report;
use coxfold::roots::enumerate_positive_roots;
use coxfold::verify::{decide, Budget, VerdictStatus};

/// Status codes of every C entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoxStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    UnknownToken = 4,
    Unsupported = 5,
    BudgetExhausted = 6,
    Internal = 7,
}

/// Verdict kinds as plain C values.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoxVerdictKind {
    Holds = 0,
    Fails = 1,
    VerifiedToDepth = 2,
    CertifiedAffine = 3,
}

/// Verdict summary: kind, the verified depth when applicable, and whether
/// the graph is a truncation of an infinite family.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CoxVerdict {
    pub kind: CoxVerdictKind,
    pub depth: u32,
    pub truncation_capped: bool,
}

/// Opaque pair handle: a Coxeter graph with a symmetry group.
pub struct CoxPair {
    graph: Arc<CoxeterGraph>,
    group: SymmetryGroup,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn read_c_str<'a>(ptr: *const c_char) -> Result<&'a str, CoxStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(CoxStatus::NullArgument);
    }
    unsafe { CStr::from_ptr(ptr) }.to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        CoxStatus::InvalidUtf8
    })
}

fn write_string(out: *mut *mut c_char, text: String) -> CoxStatus {
    if out.is_null() {
        set_error("null output pointer");
        return CoxStatus::NullArgument;
    }
    match CString::new(text) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            CoxStatus::Ok
        }
        Err(_) => {
            set_error("report contained an interior NUL byte");
            CoxStatus::Internal
        }
    }
}

fn guard<F: FnOnce() -> CoxStatus>(f: F) -> CoxStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            CoxStatus::Internal
        }
    }
}

fn budget(depth: u32, orbit_depth: u32) -> Budget {
    Budget {
        root_depth: depth,
        orbit_depth,
        ..Budget::default()
    }
}

/// Build a pair from a catalog token such as `E6:g` or `tD4:rot4`.
///
/// # Safety
/// `token` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cox_pair_from_token(
    token: *const c_char,
    out: *mut *mut CoxPair,
) -> CoxStatus {
    guard(|| {
        let token = match read_c_str(token) {
            Ok(t) => t,
            Err(s) => return s,
        };
        if out.is_null() {
            set_error("null output pointer");
            return CoxStatus::NullArgument;
        }
        match catalog::pair_from_token(token) {
            Ok((graph, group)) => {
                let handle = Box::new(CoxPair { graph, group });
                unsafe { *out = Box::into_raw(handle) };
                CoxStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                CoxStatus::UnknownToken
            }
        }
    })
}

/// Build a pair from a graph-spec document (the same format the CLI
/// accepts from files).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cox_pair_from_spec(
    text: *const c_char,
    out: *mut *mut CoxPair,
) -> CoxStatus {
    guard(|| {
        let text = match read_c_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        if out.is_null() {
            set_error("null output pointer");
            return CoxStatus::NullArgument;
        }
        let parsed = match parse_document(text) {
            Ok(p) => p,
            Err(e) => {
                set_error(e.to_string());
                return CoxStatus::ParseError;
            }
        };
        let group = match parsed.group(1_000_000) {
            Ok(g) => g,
            Err(e) => {
                set_error(e.to_string());
                return CoxStatus::ParseError;
            }
        };
        let handle = Box::new(CoxPair {
            graph: parsed.graph,
            group,
        });
        unsafe { *out = Box::into_raw(handle) };
        CoxStatus::Ok
    })
}

/// Release a pair handle.
///
/// # Safety
/// `pair` must come from a cox_pair_* constructor and not be used after.
#[no_mangle]
pub unsafe extern "C" fn cox_pair_free(pair: *mut CoxPair) {
    if !pair.is_null() {
        drop(unsafe { Box::from_raw(pair) });
    }
}

fn with_pair<'a>(pair: *const CoxPair) -> Result<&'a CoxPair, CoxStatus> {
    if pair.is_null() {
        set_error("null pair handle");
        return Err(CoxStatus::NullArgument);
    }
    Ok(unsafe { &*pair })
}

fn map_verify_error(e: coxfold::verify::VerifyError) -> CoxStatus {
    use coxfold::roots::RootError;
    use coxfold::verify::VerifyError;
    set_error(e.to_string());
    match e {
        VerifyError::Root(RootError::Budget(_)) => CoxStatus::BudgetExhausted,
        VerifyError::Form(_) => CoxStatus::Unsupported,
        _ => CoxStatus::Internal,
    }
}

/// Decide the basis property; writes the verdict summary.
///
/// # Safety
/// `pair` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cox_check(
    pair: *const CoxPair,
    depth: u32,
    orbit_depth: u32,
    out: *mut CoxVerdict,
) -> CoxStatus {
    guard(|| {
        let pair = match with_pair(pair) {
            Ok(p) => p,
            Err(s) => return s,
        };
        if out.is_null() {
            set_error("null output pointer");
            return CoxStatus::NullArgument;
        }
        match decide(&pair.graph, &pair.group, &budget(depth, orbit_depth)) {
            Ok(verdict) => {
                let (kind, d) = match verdict.status {
                    VerdictStatus::Holds => (CoxVerdictKind::Holds, 0),
                    VerdictStatus::Fails => (CoxVerdictKind::Fails, 0),
                    VerdictStatus::VerifiedToDepth(d) => (CoxVerdictKind::VerifiedToDepth, d),
                    VerdictStatus::CertifiedAffine => (CoxVerdictKind::CertifiedAffine, 0),
                };
                unsafe {
                    *out = CoxVerdict {
                        kind,
                        depth: d,
                        truncation_capped: verdict.truncation_capped,
                    }
                };
                CoxStatus::Ok
            }
            Err(e) => map_verify_error(e),
        }
    })
}

/// Decide the basis property and return the full verdict report as JSON.
///
/// # Safety
/// `pair` must be a live handle and `out` a valid pointer; the returned
/// string is freed with `cox_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cox_check_json(
    pair: *const CoxPair,
    depth: u32,
    orbit_depth: u32,
    out: *mut *mut c_char,
) -> CoxStatus {
    guard(|| {
        let pair = match with_pair(pair) {
            Ok(p) => p,
            Err(s) => return s,
        };
        match decide(&pair.graph, &pair.group, &budget(depth, orbit_depth)) {
            Ok(verdict) => {
                let rep = report::verdict_report(&verdict);
                match serde_json::to_string_pretty(&rep) {
                    Ok(json) => write_string(out, json),
                    Err(e) => {
                        set_error(e.to_string());
                        CoxStatus::Internal
                    }
                }
            }
            Err(e) => map_verify_error(e),
        }
    })
}

/// Fold the pair and return the folded-system report as JSON.
///
/// # Safety
/// `pair` must be a live handle and `out` a valid pointer; the returned
/// string is freed with `cox_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cox_fold_json(
    pair: *const CoxPair,
    out: *mut *mut c_char,
) -> CoxStatus {
    guard(|| {
        let pair = match with_pair(pair) {
            Ok(p) => p,
            Err(s) => return s,
        };
        match fold(&pair.graph, &pair.group, 1000) {
            Ok(folded) => {
                let rep = report::fold_report(&folded);
                match serde_json::to_string_pretty(&rep) {
                    Ok(json) => write_string(out, json),
                    Err(e) => {
                        set_error(e.to_string());
                        CoxStatus::Internal
                    }
                }
            }
            Err(e) => {
                set_error(e.to_string());
                CoxStatus::Unsupported
            }
        }
    })
}

/// Enumerate positive roots to the given depth; JSON report.
///
/// # Safety
/// `pair` must be a live handle and `out` a valid pointer; the returned
/// string is freed with `cox_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cox_roots_json(
    pair: *const CoxPair,
    depth: u32,
    out: *mut *mut c_char,
) -> CoxStatus {
    guard(|| {
        let pair = match with_pair(pair) {
            Ok(p) => p,
            Err(s) => return s,
        };
        let form = match FormMatrix::new(Arc::clone(&pair.graph)) {
            Ok(f) => f,
            Err(e) => {
                set_error(e.to_string());
                return CoxStatus::Unsupported;
            }
        };
        match enumerate_positive_roots(&form, depth, Default::default()) {
            Ok(set) => {
                let rep = report::rootset_report(&set);
                match serde_json::to_string_pretty(&rep) {
                    Ok(json) => write_string(out, json),
                    Err(e) => {
                        set_error(e.to_string());
                        CoxStatus::Internal
                    }
                }
            }
            Err(e) => {
                set_error(e.to_string());
                CoxStatus::BudgetExhausted
            }
        }
    })
}

/// Classify the pair against the catalog patterns; JSON report.
///
/// # Safety
/// `pair` must be a live handle and `out` a valid pointer; the returned
/// string is freed with `cox_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cox_classify_json(
    pair: *const CoxPair,
    out: *mut *mut c_char,
) -> CoxStatus {
    guard(|| {
        let pair = match with_pair(pair) {
            Ok(p) => p,
            Err(s) => return s,
        };
        match catalog::classify_pair(&pair.graph, &pair.group) {
            Ok(verdict) => {
                let rep = report::classify_report(&verdict);
                match serde_json::to_string_pretty(&rep) {
                    Ok(json) => write_string(out, json),
                    Err(e) => {
                        set_error(e.to_string());
                        CoxStatus::Internal
                    }
                }
            }
            Err(e) => {
                set_error(e.to_string());
                CoxStatus::Unsupported
            }
        }
    })
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must come from a cox_*_json call and not be used after.
#[no_mangle]
pub unsafe extern "C" fn cox_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Copy the calling thread's last error message into `buf` (including a
/// trailing NUL when it fits). Returns the full message length.
///
/// # Safety
/// `buf` must point to `len` writable bytes, or be null to query the length.
#[no_mangle]
pub unsafe extern "C" fn cox_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            unsafe {
                std::ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
                *buf.add(n) = 0;
            }
        }
        bytes.len()
    })
}
