//! C interface to `lct-core`.
//!
//! Ideals live behind an opaque [`LctIdeal`] handle. Every fallible call
//! returns an [`LctStatus`]; on anything other than `LCT_STATUS_OK` the
//! thread's last error message is available through
//! [`lct_last_error_message`]. Strings handed out by the library are owned by
//! the caller and must be released with [`lct_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lct_core::report::{build_report, build_verify_report, Method};
use lct_core::{evaluate, global_lct, parse_ideal, GeneralBinomialIdeal, IntVector, LctError};

/// Parsed ideal.
pub struct LctIdeal {
    inner: GeneralBinomialIdeal,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LctStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    OracleMismatch = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LctMethod {
    Rays = 0,
    Resolution = 1,
    HowaldStar = 2,
}

impl From<LctMethod> for Method {
    fn from(m: LctMethod) -> Self {
        match m {
            LctMethod::Rays => Method::Rays,
            LctMethod::Resolution => Method::Resolution,
            LctMethod::HowaldStar => Method::HowaldStar,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let text = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn fail(status: LctStatus, msg: &str) -> LctStatus {
    set_error(msg);
    status
}

fn from_core(e: LctError) -> LctStatus {
    let status = match e {
        LctError::Parse { .. } => LctStatus::ParseError,
        LctError::OracleMismatch(_) | LctError::InvalidValue(_) | LctError::Infeasible => {
            LctStatus::OracleMismatch
        }
        _ => LctStatus::InvalidArgument,
    };
    fail(status, &e.to_string())
}

/// Runs `body`, converting a panic into `LctStatus::Panic`.
fn guard(body: impl FnOnce() -> LctStatus) -> LctStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            fail(LctStatus::Panic, &msg)
        }
    }
}

unsafe fn handle<'a>(ideal: *const LctIdeal) -> Result<&'a LctIdeal, LctStatus> {
    ideal
        .as_ref()
        .ok_or_else(|| fail(LctStatus::NullPointer, "null ideal handle"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> LctStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            LctStatus::Ok
        }
        Err(_) => fail(LctStatus::InvalidArgument, "result contains a NUL byte"),
    }
}

/// Parses ideal text (a `vars` header line, then one generator per line).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn lct_ideal_parse(
    text: *const c_char,
    out: *mut *mut LctIdeal,
) -> LctStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(LctStatus::NullPointer, "null argument");
        }
        *out = ptr::null_mut();
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return fail(LctStatus::InvalidUtf8, "input is not UTF-8");
        };
        match parse_ideal(text) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(LctIdeal { inner }));
                LctStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}

/// Releases a handle from [`lct_ideal_parse`]. Null is ignored.
///
/// # Safety
/// `ideal` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lct_ideal_free(ideal: *mut LctIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lct_ideal_num_vars(ideal: *const LctIdeal, out: *mut usize) -> LctStatus {
    guard(|| {
        let ideal = match handle(ideal) {
            Ok(i) => i,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(LctStatus::NullPointer, "null output");
        }
        *out = ideal.inner.nvars();
        LctStatus::Ok
    })
}

/// # Safety
/// `ideal` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lct_ideal_num_generators(
    ideal: *const LctIdeal,
    out: *mut usize,
) -> LctStatus {
    guard(|| {
        let ideal = match handle(ideal) {
            Ok(i) => i,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(LctStatus::NullPointer, "null output");
        }
        *out = ideal.inner.generators().len();
        LctStatus::Ok
    })
}

/// Log canonical threshold as `"p/q"`, `"p"` or `"inf"`.
///
/// # Safety
/// `ideal` must be a live handle and `out` writable. The string written to
/// `out` is released with [`lct_string_free`].
#[no_mangle]
pub unsafe extern "C" fn lct_ideal_global_lct(
    ideal: *const LctIdeal,
    out: *mut *mut c_char,
) -> LctStatus {
    guard(|| {
        let ideal = match handle(ideal) {
            Ok(i) => i,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(LctStatus::NullPointer, "null output");
        }
        match global_lct(&ideal.inner) {
            Ok(t) => write_string(out, t.global.to_record_string()),
            Err(e) => from_core(e),
        }
    })
}

/// Value of the lct function at the direction `v[0..len]`.
///
/// # Safety
/// `v` must point to `len` readable integers; `ideal` and `out` as for
/// [`lct_ideal_global_lct`].
#[no_mangle]
pub unsafe extern "C" fn lct_ideal_eval(
    ideal: *const LctIdeal,
    v: *const i64,
    len: usize,
    out: *mut *mut c_char,
) -> LctStatus {
    guard(|| {
        let ideal = match handle(ideal) {
            Ok(i) => i,
            Err(s) => return s,
        };
        if out.is_null() || (v.is_null() && len > 0) {
            return fail(LctStatus::NullPointer, "null argument");
        }
        let entries = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(v, len)
        };
        match evaluate(&ideal.inner.triple(), &IntVector::from_i64s(entries)) {
            Ok(b) => write_string(out, b.value.to_record_string()),
            Err(e) => from_core(e),
        }
    })
}

/// Full JSON report, the same record the CLI prints with `--json`.
///
/// # Safety
/// As for [`lct_ideal_global_lct`].
#[no_mangle]
pub unsafe extern "C" fn lct_ideal_report_json(
    ideal: *const LctIdeal,
    method: LctMethod,
    with_star: bool,
    out: *mut *mut c_char,
) -> LctStatus {
    guard(|| {
        let ideal = match handle(ideal) {
            Ok(i) => i,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(LctStatus::NullPointer, "null output");
        }
        match build_report(&ideal.inner, method.into(), with_star) {
            Ok(r) => write_string(out, r.to_json()),
            Err(e) => from_core(e),
        }
    })
}

/// Recomputes the threshold through the pseudo-resolution (and Howald's
/// formula for monomial ideals). Returns `LCT_STATUS_ORACLE_MISMATCH` when
/// the computations disagree.
///
/// # Safety
/// `ideal` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lct_ideal_verify(ideal: *const LctIdeal) -> LctStatus {
    guard(|| {
        let ideal = match handle(ideal) {
            Ok(i) => i,
            Err(s) => return s,
        };
        match build_verify_report(&ideal.inner) {
            Ok(r) if r.agree => LctStatus::Ok,
            Ok(_) => fail(
                LctStatus::OracleMismatch,
                "ray minimum and resolution disagree",
            ),
            Err(e) => from_core(e),
        }
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lct_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn lct_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub extern "C" fn lct_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn core_errors_map_to_statuses() {
        let parse = parse_ideal("vars x\nx^").unwrap_err();
        assert_eq!(from_core(parse), LctStatus::ParseError);
        assert_eq!(from_core(LctError::ZeroVector), LctStatus::InvalidArgument);
        assert_eq!(
            from_core(LctError::OracleMismatch("x".into())),
            LctStatus::OracleMismatch
        );
    }

    #[test]
    fn panics_are_contained() {
        let status = guard(|| panic!("boom"));
        assert_eq!(status, LctStatus::Panic);
        let msg = unsafe { CStr::from_ptr(lct_last_error_message()) };
        assert_eq!(msg.to_str().unwrap(), "boom");
    }
}
