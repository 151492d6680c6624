//! C interface to todacalc.
//!
//! Presentations are parsed into opaque handles; every computation returns a
//! canonical JSON report through an out-pointer. Strings handed out by this
//! library must be released with [`todacalc_string_free`], handles with
//! [`todacalc_presentation_free`]. No function panics across the boundary.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use todacalc::cli::{dispatch, emit, parse, print, Command, PresentationFile, Report, Status};
use todacalc::polytope::{folding_polytope, homology_report, modified_folding_polytope};

/// Result codes. The first three mirror the report status and the exit codes
/// of the command-line tool.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TodacalcStatus {
    Ok = 0,
    Invalid = 1,
    Obstruction = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    BadCommand = 5,
    Panic = 6,
}

impl From<Status> for TodacalcStatus {
    fn from(s: Status) -> Self {
        match s {
            Status::Ok => TodacalcStatus::Ok,
            Status::Invalid => TodacalcStatus::Invalid,
            Status::Obstruction => TodacalcStatus::Obstruction,
        }
    }
}

/// A parsed presentation file.
pub struct TodacalcPresentation {
    file: PresentationFile,
}

fn hand_out(s: String, out: *mut *mut c_char) {
    if out.is_null() {
        return;
    }
    let c = CString::new(s).unwrap_or_else(|e| {
        let mut v = e.into_vec();
        v.retain(|&b| b != 0);
        CString::new(v).expect("nul bytes removed")
    });
    unsafe { *out = c.into_raw() };
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, TodacalcStatus> {
    if p.is_null() {
        return Err(TodacalcStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| TodacalcStatus::InvalidUtf8)
}

fn guarded(out: *mut *mut c_char, f: impl FnOnce() -> TodacalcStatus) -> TodacalcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            hand_out(r#"{"error":{"code":"E_PANIC","message":"internal error"}}"#.into(), out);
            TodacalcStatus::Panic
        }
    }
}

fn report_out(r: &Report, out: *mut *mut c_char) -> TodacalcStatus {
    hand_out(emit(r), out);
    r.status.into()
}

/// Library version as a static NUL-terminated string.
///
/// # Safety
/// The returned pointer is owned by the library and must not be freed.
#[no_mangle]
pub unsafe extern "C" fn todacalc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parse presentation text. On success `*out` receives a new handle; on a
/// parse failure `*error_json` (when non-null) receives a report describing
/// the located error and the result is `Invalid`.
///
/// # Safety
/// `text` must be a valid NUL-terminated string. `out` must be a valid
/// pointer to writable storage. `error_json` may be null; otherwise it must
/// be writable, and any string written there must be released with
/// `todacalc_string_free`.
#[no_mangle]
pub unsafe extern "C" fn todacalc_presentation_parse(
    text: *const c_char,
    out: *mut *mut TodacalcPresentation,
    error_json: *mut *mut c_char,
) -> TodacalcStatus {
    guarded(error_json, || {
        if out.is_null() {
            return TodacalcStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse(text) {
            Ok(file) => {
                *out = Box::into_raw(Box::new(TodacalcPresentation { file }));
                TodacalcStatus::Ok
            }
            Err(e) => report_out(&Report::invalid(serde_json::json!("parse"), &e), error_json),
        }
    })
}

/// Number of blocks in a presentation, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a handle returned by `todacalc_presentation_parse`
/// that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn todacalc_presentation_item_count(p: *const TodacalcPresentation) -> usize {
    p.as_ref().map_or(0, |p| p.file.items.len())
}

/// Canonical text of a presentation.
///
/// # Safety
/// `p` must be a live handle. `out` must be writable; the string written
/// there must be released with `todacalc_string_free`.
#[no_mangle]
pub unsafe extern "C" fn todacalc_presentation_print(p: *const TodacalcPresentation, out: *mut *mut c_char) -> TodacalcStatus {
    guarded(out, || {
        let Some(p) = p.as_ref() else { return TodacalcStatus::NullPointer };
        if out.is_null() {
            return TodacalcStatus::NullPointer;
        }
        hand_out(print(&p.file), out);
        TodacalcStatus::Ok
    })
}

/// Release a presentation handle. Null is ignored.
///
/// # Safety
/// `p` must be null or a live handle; it must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn todacalc_presentation_free(p: *mut TodacalcPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Run a command given as JSON, e.g. `{"toda":{"maps":["f","g","h"]}}` or
/// `"check"`, against an optional presentation. `*out_json` receives the
/// report; the result mirrors its status, or `BadCommand` when the command
/// JSON does not describe a command.
///
/// # Safety
/// `p` must be null or a live handle. `command_json` must be a valid
/// NUL-terminated string. `out_json` must be writable; the string written
/// there must be released with `todacalc_string_free`.
#[no_mangle]
pub unsafe extern "C" fn todacalc_run(
    p: *const TodacalcPresentation,
    command_json: *const c_char,
    out_json: *mut *mut c_char,
) -> TodacalcStatus {
    guarded(out_json, || {
        if out_json.is_null() {
            return TodacalcStatus::NullPointer;
        }
        *out_json = ptr::null_mut();
        let text = match read_str(command_json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let cmd: Command = match serde_json::from_str(text) {
            Ok(c) => c,
            Err(e) => {
                let msg = serde_json::json!({ "error": { "code": "E_COMMAND", "message": e.to_string() } });
                hand_out(todacalc::cli::report::canonical(&msg), out_json);
                return TodacalcStatus::BadCommand;
            }
        };
        report_out(&dispatch(&cmd, p.as_ref().map(|p| &p.file)), out_json)
    })
}

/// Homology report of the folding polytope of dimension `n` (the modified
/// one when `modified` is true), as JSON.
///
/// # Safety
/// `out_json` must be writable; the string written there must be released
/// with `todacalc_string_free`.
#[no_mangle]
pub unsafe extern "C" fn todacalc_polytope_report(n: usize, modified: bool, out_json: *mut *mut c_char) -> TodacalcStatus {
    guarded(out_json, || {
        if out_json.is_null() {
            return TodacalcStatus::NullPointer;
        }
        let built = if modified { modified_folding_polytope(n) } else { folding_polytope(n) };
        match built {
            Ok((c, sel)) => {
                let v = todacalc::cli::report::to_value(&homology_report(&c, &sel, modified));
                hand_out(todacalc::cli::report::canonical(&v), out_json);
                TodacalcStatus::Ok
            }
            Err(e) => report_out(&Report::invalid(serde_json::json!("polytope"), &e), out_json),
        }
    })
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string produced by this library that has not
/// already been freed.
#[no_mangle]
pub unsafe extern "C" fn todacalc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
