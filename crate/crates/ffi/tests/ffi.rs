use std::ffi::{CStr, CString};
use std::ptr;
use todacalc_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { todacalc_string_free(s) };
    out
}

const MOORE: &str = "chain S3 over Z { deg 3 rank 1; }
chain S4 over Z { deg 4 rank 1; }
chain M over Z { deg 3 rank 1; deg 4 rank 1; boundary 4 = [2]; }
map pinch : M -> S4 { deg 4 = [1]; }
map inc : S3 -> M { deg 3 = [1]; }
map two : S3 -> S3 { deg 3 = [2]; }";

#[test]
fn parse_run_free() {
    let text = CString::new(MOORE).unwrap();
    let mut h = ptr::null_mut();
    let st = unsafe { todacalc_presentation_parse(text.as_ptr(), &mut h, ptr::null_mut()) };
    assert_eq!(st, TodacalcStatus::Ok);
    assert_eq!(unsafe { todacalc_presentation_item_count(h) }, 6);

    let cmd = CString::new(r#"{"toda":{"maps":["pinch","inc","two"]}}"#).unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { todacalc_run(h, cmd.as_ptr(), &mut out) };
    assert_eq!(st, TodacalcStatus::Ok);
    let json = take(out);
    assert!(json.contains(r#""representative":"1""#), "{json}");
    assert!(json.contains(r#""contains_zero":false"#));

    let mut printed = ptr::null_mut();
    assert_eq!(unsafe { todacalc_presentation_print(h, &mut printed) }, TodacalcStatus::Ok);
    assert!(take(printed).starts_with("chain S3 over Z {"));
    unsafe { todacalc_presentation_free(h) };
}

#[test]
fn located_parse_error() {
    let text = CString::new("dgl A { gen a : 2; d a = [a, b").unwrap();
    let (mut h, mut err) = (ptr::null_mut(), ptr::null_mut());
    let st = unsafe { todacalc_presentation_parse(text.as_ptr(), &mut h, &mut err) };
    assert_eq!(st, TodacalcStatus::Invalid);
    assert!(h.is_null());
    let json = take(err);
    assert!(json.contains(r#""code":"E_SYNTAX""#) && json.contains(r#""line":"1""#), "{json}");
}

#[test]
fn commands_without_presentation() {
    let mut out = ptr::null_mut();
    let cmd = CString::new(r#"{"augment":{"target":"B"}}"#).unwrap();
    assert_eq!(unsafe { todacalc_run(ptr::null(), cmd.as_ptr(), &mut out) }, TodacalcStatus::Obstruction);
    assert!(take(out).contains(r#""generator":"hwh""#));

    let cmd = CString::new(r#""check""#).unwrap();
    assert_eq!(unsafe { todacalc_run(ptr::null(), cmd.as_ptr(), &mut out) }, TodacalcStatus::Invalid);
    take(out);

    let cmd = CString::new(r#"{"frobnicate":{}}"#).unwrap();
    assert_eq!(unsafe { todacalc_run(ptr::null(), cmd.as_ptr(), &mut out) }, TodacalcStatus::BadCommand);
    assert!(take(out).contains("E_COMMAND"));

    assert_eq!(unsafe { todacalc_polytope_report(3, false, &mut out) }, TodacalcStatus::Ok);
    assert!(take(out).contains(r#""boundary_is_sphere":true"#));
    assert_eq!(unsafe { todacalc_polytope_report(0, false, &mut out) }, TodacalcStatus::Invalid);
    take(out);
}

#[test]
fn null_pointers_are_rejected() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { todacalc_run(ptr::null(), ptr::null(), &mut out) }, TodacalcStatus::NullPointer);
    assert_eq!(unsafe { todacalc_presentation_parse(ptr::null(), ptr::null_mut(), ptr::null_mut()) }, TodacalcStatus::NullPointer);
    assert_eq!(unsafe { todacalc_presentation_item_count(ptr::null()) }, 0);
    unsafe { todacalc_presentation_free(ptr::null_mut()) };
    unsafe { todacalc_string_free(ptr::null_mut()) };
    let v = unsafe { CStr::from_ptr(todacalc_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_is_generated() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/todacalc.h")).unwrap();
    for f in ["todacalc_presentation_parse", "todacalc_run", "todacalc_string_free", "TODACALC_STATUS_OBSTRUCTION"] {
        assert!(h.contains(f), "{f} missing from header");
    }
}
