//! C ABI for the articulatory model.
//!
//! Handles are opaque and owned by the caller: free models with
//! `tractus_model_free`, frames with `tractus_frame_free` and returned strings
//! with `tractus_string_free`. Every fallible call returns a `TractusStatus`;
//! on failure `tractus_last_error` describes the error for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use tractus::sequencer::{from_phoneme_string, sample_frames, SequenceError, Timing};
use tractus::solver::ArticulatorFrame;
use tractus::views::{render_view, scene_to_svg, ViewKind};
use tractus::Model;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TractusStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidJson = 3,
    Validation = 4,
    UnknownPhoneme = 5,
    Data = 6,
    InvalidArgument = 7,
    Panic = 8,
}

/// Loaded contour library and phoneme inventory.
pub struct TractusModel {
    model: Model,
}

/// One solved articulator configuration.
pub struct TractusFrame {
    frame: ArticulatorFrame,
}

/// Derived scalars of a frame.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TractusDerived {
    pub labial_aperture: f64,
    pub apical_distance: f64,
    pub dorsal_distance: f64,
    pub velopharyngeal_opening: f64,
    pub glottal_width: f64,
    pub jaw_height: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(TractusStatus, String);

type FfiResult<T> = Result<T, Failure>;

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> FfiResult<()>) -> TractusStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            TractusStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            TractusStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(Failure(TractusStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(TractusStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, name: &str) -> FfiResult<&'a T> {
    p.as_ref().ok_or_else(|| Failure(TractusStatus::NullPointer, format!("{name} is null")))
}

fn out_arg<T>(p: *mut T, name: &str) -> FfiResult<()> {
    if p.is_null() {
        return Err(Failure(TractusStatus::NullPointer, format!("{name} is null")));
    }
    Ok(())
}

fn string_out(out: *mut *mut c_char, text: String) -> FfiResult<()> {
    let c =
        CString::new(text).map_err(|_| Failure(TractusStatus::InvalidArgument, "output contains a nul byte".into()))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn sequence_failure(e: SequenceError) -> Failure {
    let status = match e {
        SequenceError::UnknownPhoneme(_) => TractusStatus::UnknownPhoneme,
        SequenceError::InvalidKeyframe { .. } => TractusStatus::Validation,
        _ => TractusStatus::InvalidArgument,
    };
    Failure(status, e.to_string())
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn tractus_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn tractus_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Model built from the data compiled into the library.
///
/// # Safety
/// `out` must be a valid pointer to write a handle to.
#[no_mangle]
pub unsafe extern "C" fn tractus_model_bundled(out: *mut *mut TractusModel) -> TractusStatus {
    guard(|| {
        out_arg(out, "out")?;
        *out = Box::into_raw(Box::new(TractusModel { model: Model::bundled().clone() }));
        Ok(())
    })
}

/// Model loaded from a directory holding `contours.json` and `phonemes.json`.
///
/// # Safety
/// `dir` must be a nul-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tractus_model_load(dir: *const c_char, out: *mut *mut TractusModel) -> TractusStatus {
    guard(|| {
        out_arg(out, "out")?;
        let dir = str_arg(dir, "dir")?;
        let model = Model::load_dir(Path::new(dir)).map_err(|e| Failure(TractusStatus::Data, e.to_string()))?;
        *out = Box::into_raw(Box::new(TractusModel { model }));
        Ok(())
    })
}

/// # Safety
/// `model` must come from a `tractus_model_*` constructor or be null.
#[no_mangle]
pub unsafe extern "C" fn tractus_model_free(model: *mut TractusModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Phoneme inventory as a JSON array.
///
/// # Safety
/// `model` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tractus_phonemes_json(model: *const TractusModel, out: *mut *mut c_char) -> TractusStatus {
    guard(|| {
        out_arg(out, "out")?;
        let m = ref_arg(model, "model")?;
        let text = serde_json::to_string(m.model.inventory.list()).expect("inventory serializes");
        string_out(out, text)
    })
}

/// Solves a control-state JSON document.
///
/// # Safety
/// `model` must be a live handle, `state_json` nul-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn tractus_solve_json(
    model: *const TractusModel,
    state_json: *const c_char,
    out: *mut *mut TractusFrame,
) -> TractusStatus {
    guard(|| {
        out_arg(out, "out")?;
        let m = ref_arg(model, "model")?;
        let text = str_arg(state_json, "state_json")?;
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Failure(TractusStatus::InvalidJson, e.to_string()))?;
        let state = tractus::params::validate(&value).map_err(|e| Failure(TractusStatus::Validation, e.to_string()))?;
        let frame =
            tractus::solve(&m.model.library, &state).map_err(|e| Failure(TractusStatus::Validation, e.to_string()))?;
        *out = Box::into_raw(Box::new(TractusFrame { frame }));
        Ok(())
    })
}

/// Solves the preset state of a phoneme.
///
/// # Safety
/// `model` must be a live handle, `sampa` nul-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn tractus_solve_phoneme(
    model: *const TractusModel,
    sampa: *const c_char,
    out: *mut *mut TractusFrame,
) -> TractusStatus {
    guard(|| {
        out_arg(out, "out")?;
        let m = ref_arg(model, "model")?;
        let sampa = str_arg(sampa, "sampa")?;
        let entry =
            m.model.inventory.lookup(sampa).map_err(|e| Failure(TractusStatus::UnknownPhoneme, e.to_string()))?;
        let frame = tractus::solve(&m.model.library, &entry.state)
            .map_err(|e| Failure(TractusStatus::Validation, e.to_string()))?;
        *out = Box::into_raw(Box::new(TractusFrame { frame }));
        Ok(())
    })
}

/// # Safety
/// `frame` must come from a `tractus_solve_*` call or be null.
#[no_mangle]
pub unsafe extern "C" fn tractus_frame_free(frame: *mut TractusFrame) {
    if !frame.is_null() {
        drop(Box::from_raw(frame));
    }
}

/// # Safety
/// `frame` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tractus_frame_derived(frame: *const TractusFrame, out: *mut TractusDerived) -> TractusStatus {
    guard(|| {
        out_arg(out, "out")?;
        let d = &ref_arg(frame, "frame")?.frame.derived;
        *out = TractusDerived {
            labial_aperture: d.labial_aperture,
            apical_distance: d.apical_distance,
            dorsal_distance: d.dorsal_distance,
            velopharyngeal_opening: d.velopharyngeal_opening,
            glottal_width: d.glottal_width,
            jaw_height: d.jaw_height,
        };
        Ok(())
    })
}

/// Frame as a JSON document.
///
/// # Safety
/// `frame` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tractus_frame_json(frame: *const TractusFrame, out: *mut *mut c_char) -> TractusStatus {
    guard(|| {
        out_arg(out, "out")?;
        let f = ref_arg(frame, "frame")?;
        string_out(out, serde_json::to_string(&f.frame).expect("frame serializes"))
    })
}

/// SVG of one view ("sagittal", "glottal", "palatal" or "composite");
/// `size` is the pixel size of each panel.
///
/// # Safety
/// `model` and `frame` must be live handles, `view` nul-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn tractus_render_svg(
    model: *const TractusModel,
    frame: *const TractusFrame,
    view: *const c_char,
    size: u32,
    out: *mut *mut c_char,
) -> TractusStatus {
    guard(|| {
        out_arg(out, "out")?;
        let m = ref_arg(model, "model")?;
        let f = ref_arg(frame, "frame")?;
        let name = str_arg(view, "view")?;
        let kind = ViewKind::parse(name)
            .ok_or_else(|| Failure(TractusStatus::InvalidArgument, format!("unknown view {name:?}")))?;
        if size == 0 {
            return Err(Failure(TractusStatus::InvalidArgument, "size must be positive".into()));
        }
        string_out(out, scene_to_svg(&render_view(&m.model.library, &f.frame, kind, None), size))
    })
}

/// Timestamped frames for a SAMPA string with default timing, as JSON.
///
/// # Safety
/// `model` must be a live handle, `sampa` nul-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn tractus_animate_json(
    model: *const TractusModel,
    sampa: *const c_char,
    fps: f64,
    out: *mut *mut c_char,
) -> TractusStatus {
    guard(|| {
        out_arg(out, "out")?;
        let m = ref_arg(model, "model")?;
        let sampa = str_arg(sampa, "sampa")?;
        let timeline = from_phoneme_string(&m.model.inventory, sampa, Timing::default()).map_err(sequence_failure)?;
        let frames = sample_frames(&m.model.library, &timeline, fps).map_err(sequence_failure)?;
        string_out(out, serde_json::to_string(&frames).expect("frames serialize"))
    })
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn tractus_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
