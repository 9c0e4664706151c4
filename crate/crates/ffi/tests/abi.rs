use std::ffi::{c_char, CStr, CString};
use std::ptr;

use tractus_ffi::*;

fn bundled() -> *mut TractusModel {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { tractus_model_bundled(&mut m) }, TractusStatus::Ok);
    assert!(!m.is_null());
    m
}

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { tractus_string_free(s) };
    out
}

fn last_error() -> String {
    let p = tractus_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn solve_phoneme_and_read_scalars() {
    let m = bundled();
    let sampa = CString::new("t").unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { tractus_solve_phoneme(m, sampa.as_ptr(), &mut f) }, TractusStatus::Ok);
    let mut d = TractusDerived::default();
    assert_eq!(unsafe { tractus_frame_derived(f, &mut d) }, TractusStatus::Ok);
    assert!(d.apical_distance <= 1e-9);
    assert!(d.glottal_width > 0.0);
    assert_eq!(d.velopharyngeal_opening, 0.0);
    assert!(tractus_last_error().is_null());

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { tractus_frame_json(f, &mut json) }, TractusStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
    assert_eq!(v["state"]["tongueTipHeight"], 1.0);

    let view = CString::new("composite").unwrap();
    let mut svg = ptr::null_mut();
    assert_eq!(unsafe { tractus_render_svg(m, f, view.as_ptr(), 200, &mut svg) }, TractusStatus::Ok);
    assert!(take(svg).starts_with("<svg"));
    unsafe {
        tractus_frame_free(f);
        tractus_model_free(m);
    }
}

#[test]
fn error_codes() {
    let m = bundled();
    let mut f = ptr::null_mut();
    let zz = CString::new("zz").unwrap();
    assert_eq!(unsafe { tractus_solve_phoneme(m, zz.as_ptr(), &mut f) }, TractusStatus::UnknownPhoneme);
    assert!(last_error().contains("zz"));
    assert!(f.is_null());

    let bad = CString::new("{").unwrap();
    assert_eq!(unsafe { tractus_solve_json(m, bad.as_ptr(), &mut f) }, TractusStatus::InvalidJson);

    let mut state = tractus::params::neutral().to_value();
    state["highLow"] = 2.0.into();
    let doc = CString::new(state.to_string()).unwrap();
    assert_eq!(unsafe { tractus_solve_json(m, doc.as_ptr(), &mut f) }, TractusStatus::Validation);
    assert!(last_error().contains("highLow"));

    assert_eq!(unsafe { tractus_solve_json(ptr::null(), doc.as_ptr(), &mut f) }, TractusStatus::NullPointer);
    assert_eq!(unsafe { tractus_model_bundled(ptr::null_mut()) }, TractusStatus::NullPointer);

    let a = CString::new("a").unwrap();
    assert_eq!(unsafe { tractus_solve_phoneme(m, a.as_ptr(), &mut f) }, TractusStatus::Ok);
    let view = CString::new("side").unwrap();
    let mut svg = ptr::null_mut();
    assert_eq!(unsafe { tractus_render_svg(m, f, view.as_ptr(), 200, &mut svg) }, TractusStatus::InvalidArgument);

    let empty = CString::new("").unwrap();
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { tractus_animate_json(m, empty.as_ptr(), 25.0, &mut json) }, TractusStatus::InvalidArgument);

    let missing = CString::new("/nonexistent/dir").unwrap();
    let mut m2 = ptr::null_mut();
    assert_eq!(unsafe { tractus_model_load(missing.as_ptr(), &mut m2) }, TractusStatus::Data);
    unsafe {
        tractus_frame_free(f);
        tractus_model_free(m);
        tractus_model_free(ptr::null_mut());
        tractus_string_free(ptr::null_mut());
    }
}

#[test]
fn animate_and_inventory() {
    let m = bundled();
    let ta = CString::new("ta").unwrap();
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { tractus_animate_json(m, ta.as_ptr(), 25.0, &mut json) }, TractusStatus::Ok);
    let frames: Vec<serde_json::Value> = serde_json::from_str(&take(json)).unwrap();
    assert_eq!(frames.len(), 9);
    assert_eq!(frames[0]["time"], 0.0);

    let mut inv = ptr::null_mut();
    assert_eq!(unsafe { tractus_phonemes_json(m, &mut inv) }, TractusStatus::Ok);
    let list: Vec<serde_json::Value> = serde_json::from_str(&take(inv)).unwrap();
    assert!(list.len() >= 20);
    unsafe { tractus_model_free(m) };
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(tractus_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/tractus.h")).unwrap();
    let source = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 12);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(header.contains("typedef struct TractusModel TractusModel;"));
    assert!(header.contains("TRACTUS_STATUS_UNKNOWN_PHONEME = 5"));
}
