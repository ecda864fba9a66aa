//! Exercises the C ABI through the exported extern "C" functions.

use std::ffi::{CStr, CString};
use std::ptr;

use disk_ineq_ffi::*;

fn parse(json: &str) -> *mut DiskIneqFunction {
    let c = CString::new(json).unwrap();
    let mut handle: *mut DiskIneqFunction = ptr::null_mut();
    let status = unsafe { disk_ineq_function_parse(c.as_ptr(), &mut handle) };
    assert_eq!(status, DiskIneqStatus::Ok);
    assert!(!handle.is_null());
    handle
}

#[test]
fn version_is_a_static_string() {
    let v = unsafe { CStr::from_ptr(disk_ineq_version()) };
    assert!(!v.to_str().unwrap().is_empty());
}

#[test]
fn parse_eval_roundtrip() {
    let f = parse(r#"{"type":"fa","a":0.5}"#);
    let (mut re, mut im) = (0.0f64, 0.0f64);
    let status = unsafe { disk_ineq_eval(f, 1.0, 0.0, &mut re, &mut im) };
    assert_eq!(status, DiskIneqStatus::Ok);
    assert!((re - 2.0).abs() < 1e-13);
    assert_eq!(im, 0.0);

    let mut real = false;
    assert_eq!(unsafe { disk_ineq_is_real(f, &mut real) }, DiskIneqStatus::Ok);
    assert!(real);

    let mut json: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(
        unsafe { disk_ineq_function_to_json(f, &mut json) },
        DiskIneqStatus::Ok
    );
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_string();
    assert!(text.contains("\"fa\""));
    unsafe { disk_ineq_string_free(json) };
    unsafe { disk_ineq_function_free(f) };
}

#[test]
fn bad_inputs_surface_as_status_codes() {
    let mut handle: *mut DiskIneqFunction = ptr::null_mut();
    let garbage = CString::new("not json").unwrap();
    assert_eq!(
        unsafe { disk_ineq_function_parse(garbage.as_ptr(), &mut handle) },
        DiskIneqStatus::ParseError
    );
    assert_eq!(
        unsafe { disk_ineq_function_parse(ptr::null(), &mut handle) },
        DiskIneqStatus::NullPointer
    );
    let oversized = CString::new(r#"{"type":"fa","a":1.0}"#).unwrap();
    assert_eq!(
        unsafe { disk_ineq_function_parse(oversized.as_ptr(), &mut handle) },
        DiskIneqStatus::OutOfRange
    );

    let f = parse(r#"{"type":"monomial","n":1}"#);
    let (mut re, mut im) = (0.0, 0.0);
    assert_eq!(
        unsafe { disk_ineq_eval(f, 1.5, 0.0, &mut re, &mut im) },
        DiskIneqStatus::OutOfRange
    );
    unsafe { disk_ineq_function_free(f) };
    // Freeing null is a no-op.
    unsafe { disk_ineq_function_free(ptr::null_mut()) };
    unsafe { disk_ineq_string_free(ptr::null_mut()) };
}

#[test]
fn norms_through_the_abi() {
    let f = parse(r#"{"type":"monomial","n":1}"#);
    let mut norm = DiskIneqNorm {
        value: 0.0,
        err_est: 0.0,
        n: 0,
        m: 0,
        converged: false,
    };
    assert_eq!(
        unsafe { disk_ineq_hardy_norm(f, 2.0, 1e-10, &mut norm) },
        DiskIneqStatus::Ok
    );
    assert!((norm.value - 1.0).abs() < 1e-12);
    assert!(norm.converged);

    assert_eq!(
        unsafe { disk_ineq_bergman_norm(f, 4.0, 1e-10, &mut norm) },
        DiskIneqStatus::Ok
    );
    assert!((norm.value - (1.0f64 / 3.0).powf(0.25)).abs() < 1e-12);
    assert!(norm.m > 0);

    assert_eq!(
        unsafe { disk_ineq_hardy_norm(f, -2.0, 1e-10, &mut norm) },
        DiskIneqStatus::OutOfRange
    );
    unsafe { disk_ineq_function_free(f) };
}

#[test]
fn constants_table_through_the_abi() {
    let mut table = DiskIneqConstants {
        p: 0.0,
        r_p: 0.0,
        l_p: 0.0,
        m_p: 0.0,
        c_p: 0.0,
        e4: 0.0,
        pbar: 0.0,
        newt: 0.0,
        p1: 0.0,
    };
    assert_eq!(
        unsafe { disk_ineq_constants(4.0, &mut table) },
        DiskIneqStatus::Ok
    );
    assert!((table.c_p - 2.5629154477415062).abs() < 1e-12);
    assert!(table.m_p.is_finite());

    assert_eq!(
        unsafe { disk_ineq_constants(1.5, &mut table) },
        DiskIneqStatus::Ok
    );
    assert!(table.m_p.is_nan());

    assert_eq!(
        unsafe { disk_ineq_constants(1.0, &mut table) },
        DiskIneqStatus::OutOfRange
    );

    assert!((disk_ineq_p1_root() - 2.42484).abs() < 5e-6);
}

#[test]
fn check_reports_as_json() {
    let pair = parse(r#"{"type":"taylor_pair","g":[[0,0],[1,0]],"h":[[0,0],[0,0],[1,0]]}"#);
    let thm = CString::new("c4").unwrap();
    let mut json: *mut std::ffi::c_char = ptr::null_mut();
    let status = unsafe { disk_ineq_check(thm.as_ptr(), pair, 4.0, 0.01, 1e-10, &mut json) };
    assert_eq!(status, DiskIneqStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap();
    let reports: serde_json::Value = serde_json::from_str(text).unwrap();
    assert_eq!(reports[0]["name"], "c4");
    assert_eq!(reports[0]["pass"], true);
    unsafe { disk_ineq_string_free(json) };
    unsafe { disk_ineq_function_free(pair) };

    // Non-holomorphic input for a holomorphic-only theorem.
    let fa = parse(r#"{"type":"fa","a":0.5}"#);
    let riesz = CString::new("riesz").unwrap();
    assert_eq!(
        unsafe { disk_ineq_check(riesz.as_ptr(), fa, 2.0, 0.01, 1e-10, &mut json) },
        DiskIneqStatus::NotHolomorphic
    );
    let unknown = CString::new("nope").unwrap();
    assert_eq!(
        unsafe { disk_ineq_check(unknown.as_ptr(), fa, 2.0, 0.01, 1e-10, &mut json) },
        DiskIneqStatus::UnknownTheorem
    );
    unsafe { disk_ineq_function_free(fa) };
}

#[test]
fn generated_header_covers_the_surface() {
    let header = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/include/disk_ineq.h"
    ))
    .expect("cbindgen header exists");
    for symbol in [
        "disk_ineq_function_parse",
        "disk_ineq_function_free",
        "disk_ineq_eval",
        "disk_ineq_hardy_norm",
        "disk_ineq_bergman_norm",
        "disk_ineq_constants",
        "disk_ineq_p1_root",
        "disk_ineq_check",
        "disk_ineq_string_free",
        "DiskIneqStatus",
    ] {
        assert!(header.contains(symbol), "header is missing {symbol}");
    }
}
