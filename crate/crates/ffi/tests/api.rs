use std::ffi::{CStr, CString};
use std::ptr;

use groupcode_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(gc_last_error_message()) }.to_string_lossy().into_owned()
}

fn take_string(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_string_lossy().into_owned();
    unsafe { gc_string_free(s) };
    out
}

fn code_from_json(text: &str) -> (GcStatus, *mut GcCode) {
    let text = CString::new(text).unwrap();
    let mut code = ptr::null_mut();
    let status = unsafe { gc_code_from_json(text.as_ptr(), &mut code) };
    (status, code)
}

const EVEN_WEIGHT: &str = r#"{"alphabet": {"kind": "cyclic", "modulus": 2}, "length": 3, "generators": [[1,1,0],[0,1,1]], "group": true}"#;

#[test]
fn generated_code_parameters() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(gc_group_cyclic(4, &mut g), GcStatus::Ok);
        let mut order = 0;
        assert_eq!(gc_group_order(g, &mut order), GcStatus::Ok);
        assert_eq!(order, 4);
        // {2 (x, y, x + y)} over Z/4: the example with no split.
        let gens: [u32; 6] = [1, 0, 1, 0, 2, 0];
        let mut c = ptr::null_mut();
        assert_eq!(gc_code_generate(g, 3, gens.as_ptr(), 2, &mut c), GcStatus::Ok);
        gc_group_free(g);
        let (mut n, mut m, mut d) = (0, 0, 0);
        assert_eq!(gc_code_length(c, &mut n), GcStatus::Ok);
        assert_eq!(gc_code_cardinality(c, &mut m), GcStatus::Ok);
        assert_eq!(gc_code_min_distance(c, &mut d), GcStatus::Ok);
        assert_eq!((n, m, d), (3, 8, 1));
        let mut is_group = false;
        assert_eq!(gc_code_is_group(c, &mut is_group), GcStatus::Ok);
        assert!(is_group);
        gc_code_free(c);
    }
}

#[test]
fn decomposition_and_automorphisms() {
    let text = r#"{"alphabet": {"kind": "cyclic", "modulus": 2}, "length": 4, "generators": [[1,0,0,0],[0,1,1,1]], "group": true}"#;
    let (status, c) = code_from_json(text);
    assert_eq!(status, GcStatus::Ok);
    unsafe {
        let mut split = false;
        assert_eq!(gc_code_is_decomposable(c, 0, &mut split), GcStatus::Ok);
        assert!(split);
        let mut json = ptr::null_mut();
        assert_eq!(gc_code_decompose_json(c, 0, &mut json), GcStatus::Ok);
        let value: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(value["blocks"], serde_json::json!([[1], [2, 3, 4]]));
        // Z/2 (one free coordinate) + the length-3 repetition code: 1 · 3!.
        let mut order = ptr::null_mut();
        assert_eq!(gc_code_aut_order(c, 0, &mut order), GcStatus::Ok);
        assert_eq!(take_string(order), "6");
        gc_code_free(c);
    }
}

#[test]
fn analysis_report_is_json() {
    let (_, c) = code_from_json(EVEN_WEIGHT);
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(gc_code_analyze_json(c, &mut out), GcStatus::Ok);
        let value: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
        assert_eq!(value["indecomposable"], true);
        assert_eq!(value["cyclic"]["is_cyclic"], true);
        let mut round = ptr::null_mut();
        assert_eq!(gc_code_to_json(c, &mut round), GcStatus::Ok);
        let (status, again) = code_from_json(&take_string(round));
        assert_eq!(status, GcStatus::Ok);
        let mut iso = false;
        assert_eq!(gc_codes_isomorphic(c, again, 0, &mut iso), GcStatus::Ok);
        assert!(iso);
        gc_code_free(again);
        gc_code_free(c);
    }
}

#[test]
fn interleaving_keeps_cyclicity() {
    let (_, c) = code_from_json(EVEN_WEIGHT);
    unsafe {
        let mut big = ptr::null_mut();
        assert_eq!(gc_code_interleave(c, 2, &mut big), GcStatus::Ok);
        let (mut n, mut m) = (0, 0);
        gc_code_length(big, &mut n);
        gc_code_cardinality(big, &mut m);
        assert_eq!((n, m), (6, 16));
        let mut cyclic = false;
        assert_eq!(gc_code_is_cyclic(big, &mut cyclic), GcStatus::Ok);
        assert!(cyclic);
        let mut iso = true;
        assert_eq!(gc_codes_isomorphic(c, big, 0, &mut iso), GcStatus::Ok);
        assert!(!iso);
        gc_code_free(big);
        gc_code_free(c);
    }
}

#[test]
fn errors_carry_status_and_message() {
    let (status, c) = code_from_json("{\n  \"alphabet\": ,\n}");
    assert_eq!(status, GcStatus::Parse);
    assert!(c.is_null());
    assert!(last_error().contains("line 2"), "{}", last_error());

    // Z/3 with a broken row: not a latin square.
    let table: [u32; 9] = [0, 1, 2, 1, 1, 0, 2, 0, 1];
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { gc_group_from_table(table.as_ptr(), 3, &mut g) }, GcStatus::NotAGroup);
    assert!(!last_error().is_empty());

    let mut n = 0;
    assert_eq!(unsafe { gc_code_length(ptr::null(), &mut n) }, GcStatus::NullPointer);
    let (_, c) = code_from_json(EVEN_WEIGHT);
    assert_eq!(unsafe { gc_code_length(c, ptr::null_mut()) }, GcStatus::NullPointer);
    assert_eq!(unsafe { gc_code_length(c, &mut n) }, GcStatus::Ok);
    assert_eq!(last_error(), "");

    let not_group = r#"{"alphabet": {"kind": "cyclic", "modulus": 2}, "length": 2, "codewords": [[0,1],[1,0]], "group": true}"#;
    assert_eq!(code_from_json(not_group).0, GcStatus::NotAGroup);

    let mut out = ptr::null_mut();
    let plain = r#"{"alphabet": {"kind": "cyclic", "modulus": 2}, "length": 2, "codewords": [[0,1],[1,0]]}"#;
    let (_, p) = code_from_json(plain);
    assert_eq!(unsafe { gc_code_interleave(p, 2, &mut out) }, GcStatus::InvalidInput);
    unsafe {
        gc_code_free(p);
        gc_code_free(c);
        gc_code_free(ptr::null_mut());
        gc_string_free(ptr::null_mut());
    }
}

#[test]
fn search_cap_is_a_resource_limit() {
    let text = r#"{"alphabet": {"kind": "cyclic", "modulus": 2}, "length": 6, "generators": [[1,1,0,0,0,0],[0,1,1,0,0,0],[0,0,0,1,1,0],[0,0,0,0,1,1]], "group": true}"#;
    let (_, c) = code_from_json(text);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { gc_code_aut_order(c, 3, &mut out) }, GcStatus::ResourceLimit);
    assert!(out.is_null());
    unsafe { gc_code_free(c) };
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(gc_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
