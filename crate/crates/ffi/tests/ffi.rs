use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use bggc_ffi::*;

fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { bggc_string_free(p) };
    s
}

fn named(name: &str, degree: i64) -> (BggcStatus, *mut BggcDiagram) {
    let c = CString::new(name).unwrap();
    let mut d = ptr::null_mut();
    let s = unsafe { bggc_named_diagram(c.as_ptr(), degree, &mut d) };
    (s, d)
}

#[test]
fn elasticity_through_the_c_abi() {
    let (s, d) = named("elasticity3d", 6);
    assert_eq!(s, BggcStatus::Ok);
    let mut j = 0;
    assert_eq!(unsafe { bggc_diagram_j(d, &mut j) }, BggcStatus::Ok);
    assert_eq!(j, 1);
    let mut len = 0;
    assert_eq!(unsafe { bggc_output_len(d, &mut len) }, BggcStatus::Ok);
    assert_eq!(len, 4);
    let coh: Vec<usize> = (0..len)
        .map(|i| {
            let (mut dim, mut h) = (0, 0);
            assert_eq!(unsafe { bggc_output_dims(d, i, &mut dim, &mut h) }, BggcStatus::Ok);
            assert!(dim > 0);
            h
        })
        .collect();
    assert_eq!(coh, [6, 0, 0, 0]);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { bggc_operator_json(d, 1, &mut json) }, BggcStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(v["cols"], 6 * 56);
    assert_eq!(v["rows"], 6 * 20);
    unsafe { bggc_diagram_free(d) };
}

#[test]
fn status_codes_for_bad_input() {
    let (s, d) = named("conformal2d_fail", 6);
    assert_eq!(s, BggcStatus::NoValidJ);
    assert!(d.is_null());
    let msg = take_string(bggc_last_error());
    assert!(msg.contains("no valid J"), "{msg}");

    assert_eq!(named("nope", 6).0, BggcStatus::UnknownName);
    assert_eq!(named("elasticity3d", 2).0, BggcStatus::DegreeTooSmall);

    let mut d = ptr::null_mut();
    assert_eq!(unsafe { bggc_altij_diagram(3, 3, 4, &mut d) }, BggcStatus::InvalidArgument);
    assert_eq!(unsafe { bggc_named_diagram(ptr::null(), 4, &mut d) }, BggcStatus::NullPointer);

    let mut n = 0;
    assert_eq!(unsafe { bggc_output_len(ptr::null(), &mut n) }, BggcStatus::NullPointer);

    let (_, d) = named("hessian2d", 4);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { bggc_operator_json(d, 7, &mut json) }, BggcStatus::IndexOutOfRange);
    assert!(json.is_null());
    unsafe { bggc_diagram_free(d) };
    unsafe { bggc_diagram_free(ptr::null_mut()) };
}

#[test]
fn altij_family_handle() {
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { bggc_altij_diagram(3, 1, 6, &mut d) }, BggcStatus::Ok);
    let (mut dim, mut h) = (0, 0);
    assert_eq!(unsafe { bggc_output_dims(d, 0, &mut dim, &mut h) }, BggcStatus::Ok);
    assert_eq!(h, 6);
    unsafe { bggc_diagram_free(d) };
}

#[test]
fn verify_report_through_the_c_abi() {
    let suite = CString::new("lemma8").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { bggc_verify_json(suite.as_ptr(), 6, 3, &mut out) }, BggcStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["suite"], "lemma8");

    let bad = CString::new("everything").unwrap();
    assert_eq!(unsafe { bggc_verify_json(bad.as_ptr(), 6, 3, &mut out) }, BggcStatus::InvalidArgument);
}

#[test]
fn status_names_are_static() {
    let s = unsafe { CStr::from_ptr(bggc_status_name(BggcStatus::NoValidJ)) };
    assert_eq!(s.to_str().unwrap(), "no valid J");
}

#[test]
fn header_declares_the_api_and_compiles() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/include/bggc.h");
    let header = std::fs::read_to_string(path).unwrap();
    for f in [
        "bggc_named_diagram",
        "bggc_altij_diagram",
        "bggc_diagram_free",
        "bggc_output_dims",
        "bggc_operator_json",
        "bggc_verify_json",
        "bggc_string_free",
        "bggc_last_error",
        "typedef struct BggcDiagram BggcDiagram",
        "BGGC_STATUS_NO_VALID_J = 5",
    ] {
        assert!(header.contains(f), "header lacks {f}");
    }
    match Command::new("cc").args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", path]).status() {
        Ok(st) => assert!(st.success(), "header does not compile as C"),
        Err(_) => eprintln!("no C compiler found; skipped the syntax check"),
    }
}
