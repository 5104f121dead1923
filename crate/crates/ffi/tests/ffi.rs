use std::ffi::{c_char, CStr, CString};
use std::ptr;

use girylab_ffi::*;

const DEMO: &str = include_str!("../../core/fixtures/demo.json");

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(girylab_last_error()) }
        .to_str()
        .unwrap()
        .to_owned()
}

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { girylab_string_free(s) };
    text
}

fn demo() -> *mut GirylabModel {
    let mut m = ptr::null_mut();
    let json = c(DEMO);
    assert_eq!(
        unsafe { girylab_model_from_json(json.as_ptr(), &mut m) },
        GirylabStatus::Ok
    );
    m
}

#[test]
fn barycenter_and_compose_through_the_c_interface() {
    let m = demo();
    let mut out = ptr::null_mut();
    let st = unsafe { girylab_barycenter(m, c("S").as_ptr(), c("bary").as_ptr(), &mut out) };
    assert_eq!(st, GirylabStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["barycenter"], "(1/6,1/3,1/2)");

    let st = unsafe { girylab_compose(m, c("half").as_ptr(), c("sticky").as_ptr(), &mut out) };
    assert_eq!(st, GirylabStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["rows"]["a"]["weights"]["a"], "2/3");
    assert_eq!(last_error(), "");
    unsafe { girylab_model_free(m) };
}

#[test]
fn check_and_separate() {
    let m = demo();
    let mut out = ptr::null_mut();
    let st = unsafe { girylab_check(m, c("kleisli").as_ptr(), 5, false, &mut out) };
    assert_eq!(st, GirylabStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["status"], "pass");

    let st = unsafe { girylab_separate(m, c("Y").as_ptr(), &mut out) };
    assert_eq!(st, GirylabStatus::Ok);
    assert!(take(out).contains("\"already_separated\": false"));
    unsafe { girylab_model_free(m) };
}

#[test]
fn errors_carry_codes_and_messages() {
    let m = demo();
    let mut out = ptr::null_mut();
    let st = unsafe { girylab_check(m, c("nope").as_ptr(), 0, false, &mut out) };
    assert_eq!(st, GirylabStatus::Input);
    assert!(last_error().contains("nope"));
    assert!(out.is_null());

    let st = unsafe { girylab_compose(m, c("spread").as_ptr(), c("half").as_ptr(), &mut out) };
    assert_eq!(st, GirylabStatus::Input);

    let st = unsafe {
        girylab_compose(
            ptr::null(),
            c("half").as_ptr(),
            c("half").as_ptr(),
            &mut out,
        )
    };
    assert_eq!(st, GirylabStatus::NullPointer);
    let st = unsafe { girylab_separate(m, ptr::null(), &mut out) };
    assert_eq!(st, GirylabStatus::NullPointer);

    let bad = [0xffu8, 0];
    let st = unsafe { girylab_separate(m, bad.as_ptr().cast(), &mut out) };
    assert_eq!(st, GirylabStatus::Utf8);
    unsafe { girylab_model_free(m) };
}

#[test]
fn corrupted_model_is_rejected() {
    let broken = DEMO.replace(
        r#""a": {"weights": {"a": "1/2", "b": "1/2"}}"#,
        r#""a": {"weights": {"a": "1/2", "b": "2/5"}}"#,
    );
    assert_ne!(broken, DEMO);
    let mut m = ptr::null_mut();
    let st = unsafe { girylab_model_from_json(c(&broken).as_ptr(), &mut m) };
    assert_eq!(st, GirylabStatus::Input);
    assert!(m.is_null());
    assert!(last_error().contains("9/10"), "{}", last_error());

    let st = unsafe { girylab_model_load(c("/nonexistent.json").as_ptr(), &mut m) };
    assert_eq!(st, GirylabStatus::Input);
}

#[test]
fn enumeration_cap_is_reported() {
    let m = demo();
    let mut out = ptr::null_mut();
    let before = girylab_max_enum();
    girylab_set_max_enum(2);
    let st = unsafe { girylab_check(m, c("separation").as_ptr(), 0, false, &mut out) };
    girylab_set_max_enum(before);
    assert_eq!(st, GirylabStatus::EnumerationCap);
    unsafe { girylab_model_free(m) };
}

#[test]
fn version_and_suites() {
    let v = unsafe { CStr::from_ptr(girylab_version()) }
        .to_str()
        .unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { girylab_list_suites(&mut out) }, GirylabStatus::Ok);
    assert!(take(out).contains("\"separation\""));
    unsafe {
        girylab_model_free(ptr::null_mut());
        girylab_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_interface_and_compiles() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/girylab.h");
    let text = std::fs::read_to_string(header).unwrap();
    for name in [
        "girylab_model_from_json",
        "girylab_check",
        "girylab_last_error",
        "GIRYLAB_STATUS_CHECK_FAILED",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let Ok(out) = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-x", "c", header])
        .output()
    else {
        return;
    };
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}
